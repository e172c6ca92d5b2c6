// Copyright 2026 The pbquad Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pbquad/result.hpp"

#include "pbquad/json_io.hpp"

namespace pbquad {

std::string result_to_json(const ReductionResult& r) {
    nlohmann::ordered_json doc;
    doc["algorithm"] = r.algorithm;
    if (!r.variant.empty()) doc["variant"] = r.variant;
    if (r.q) doc["q"] = *r.q;
    if (r.seed) doc["seed"] = *r.seed;
    doc["reduced"] = pbf_to_json(r.reduced);
    doc["penalty"] = pbf_to_json(r.penalty);
    nlohmann::ordered_json subs = nlohmann::ordered_json::array();
    for (const Substitution& s : r.substitutions) subs.push_back({s.h, s.i, s.j});
    doc["substitutions"] = std::move(subs);
    doc["iterations_stage1"] = r.iterations_stage1;
    doc["iterations_stage2"] = r.iterations_stage2;
    return doc.dump(2) + "\n";
}

Pbf combined_objective(const ReductionResult& r, double c) {
    Pbf g = r.reduced;
    for (const Monomial& m : r.penalty.canonical_terms()) {
        g.add_term(m.vars, c * m.coeff);
    }
    g.reserve_var(r.penalty.next_var() - 1);
    return g;
}

} // namespace pbquad
