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

#ifndef PBQUAD_RESULT_HPP_INCLUDED
#define PBQUAD_RESULT_HPP_INCLUDED

#include <chrono>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbquad/pbf.hpp"

namespace pbquad {

/// y_h stands for the product x_i x_j (i < j; either may itself be auxiliary).
struct Substitution {
    VarId h = 0;
    VarId i = 0;
    VarId j = 0;

    friend bool operator==(const Substitution&, const Substitution&) = default;
};

struct IterationLogEntry {
    int stage = 1;
    VarId i = 0;
    VarId j = 0;
    VarId fresh = 0;
    std::size_t beta_selected = 0;
    std::size_t touched_monomials = 0;
    // multi-edge mass of the graph before this step (stage 1 only)
    std::size_t mass_before = 0;
};

struct ReductionResult {
    Pbf reduced;
    Pbf penalty;  // unscaled sum of penalty terms
    std::vector<Substitution> substitutions;
    std::size_t iterations_stage1 = 0;
    std::size_t iterations_stage2 = 0;
    std::vector<IterationLogEntry> log;

    // free-form run description carried into the JSON output
    std::string algorithm;
    std::string variant;
    std::optional<double> q;
    std::optional<std::uint64_t> seed;

    std::size_t introduced() const { return substitutions.size(); }
};

/// Thrown by the reducers when a deadline passes mid-run.
class ReductionTimeout : public std::runtime_error {
public:
    ReductionTimeout() : std::runtime_error("reduction exceeded its deadline") {}
};

using Clock = std::chrono::steady_clock;

/// Byte-stable JSON rendering: metadata, reduced, penalty, substitutions as
/// [h, i, j] triples, and iteration counters.
std::string result_to_json(const ReductionResult& r);

/// reduced + c * penalty as a single function.
Pbf combined_objective(const ReductionResult& r, double c);

} // namespace pbquad

#endif
