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

#include "pbquad/json_io.hpp"

#include <algorithm>
#include <cmath>

namespace pbquad {

nlohmann::ordered_json pbf_to_json(const Pbf& f) {
    nlohmann::ordered_json terms = nlohmann::ordered_json::array();
    for (const Monomial& m : f.canonical_terms()) {
        nlohmann::ordered_json t;
        t["vars"] = m.vars;
        t["coeff"] = m.coeff;
        terms.push_back(std::move(t));
    }
    nlohmann::ordered_json doc;
    doc["n"] = f.next_var() - 1;
    doc["terms"] = std::move(terms);
    return doc;
}

Pbf pbf_from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("PBF document must be a JSON object");
    if (!doc.contains("n") || !doc["n"].is_number_integer() || doc["n"].get<long long>() < 0) {
        throw ParseError("field \"n\" must be a non-negative integer");
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw ParseError("field \"terms\" must be an array");
    }
    const auto n = doc["n"].get<long long>();
    if (n > 0xFFFFFFF) throw ParseError("field \"n\" is too large");
    Pbf f(static_cast<VarId>(n));

    std::size_t pos = 0;
    for (const auto& t : doc["terms"]) {
        const std::string where = "term " + std::to_string(pos++);
        if (!t.is_object() || !t.contains("vars") || !t["vars"].is_array()) {
            throw ParseError(where + ": missing \"vars\" array");
        }
        if (!t.contains("coeff") || !t["coeff"].is_number()) {
            throw ParseError(where + ": missing numeric \"coeff\"");
        }
        std::vector<VarId> vars;
        for (const auto& v : t["vars"]) {
            if (!v.is_number_integer()) throw ParseError(where + ": variable ids must be integers");
            const auto id = v.get<long long>();
            if (id < 1 || id > n) {
                throw ParseError(where + ": variable " + std::to_string(id) + " outside 1.." +
                                 std::to_string(n));
            }
            vars.push_back(static_cast<VarId>(id));
        }
        const double coeff = t["coeff"].get<double>();
        if (!std::isfinite(coeff)) throw ParseError(where + ": non-finite coefficient");
        std::sort(vars.begin(), vars.end());
        if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
            throw ParseError(where + ": duplicate variable inside one term");
        }
        f.add_term(std::move(vars), coeff);
    }
    return f;
}

} // namespace pbquad
