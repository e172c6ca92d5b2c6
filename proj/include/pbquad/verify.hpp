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

#ifndef PBQUAD_VERIFY_HPP_INCLUDED
#define PBQUAD_VERIFY_HPP_INCLUDED

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "pbquad/multigraph.hpp"
#include "pbquad/pbf.hpp"
#include "pbquad/result.hpp"

namespace pbquad {

struct CheckOutcome {
    std::string name;
    bool passed = true;
    std::string detail;
    // On failure: "assignment" lists x_1..x_N as 0/1 (originals then
    // auxiliaries); "step" holds {iteration, i, j}.
    std::string witness_kind;
    std::vector<long long> witness;
};

struct VerificationReport {
    std::string instance_id;
    std::vector<CheckOutcome> checks;

    std::size_t passed() const;
    std::size_t failed() const;
    bool ok() const { return failed() == 0; }

    void pass(std::string name, std::string detail = {});
    void fail(std::string name, std::string detail, std::string witness_kind,
              std::vector<long long> witness);
    void merge(const VerificationReport& other);

    std::string to_json() const;
};

/// Raised when exhaustive verification would exceed the bit budget.
class VerificationCapExceeded : public std::length_error {
public:
    using std::length_error::length_error;
};

struct QuadratisationCheckOptions {
    std::size_t max_bits = 22;
    double tolerance = 1e-9;
    // Above the cap, check this many random x instead of refusing (the
    // auxiliary count alone must still fit the cap). 0 disables sampling.
    std::size_t sample_x = 0;
    std::uint64_t sample_seed = 0;
};

/// Brute-force check that min over auxiliaries of reduced + c * penalty
/// equals the original for every x, that the substitution-consistent
/// auxiliary assignment reaches that value, and that it is the only
/// minimiser. Throws VerificationCapExceeded above the bit budget unless
/// sampling is enabled.
VerificationReport check_quadratisation(const Pbf& original, const ReductionResult& result, double c,
                                        const QuadratisationCheckOptions& options = {});

/// Enumerates the 8 assignments of the penalty gadget.
VerificationReport check_penalty_property();

struct IncrementalCheckOptions {
    std::size_t max_monomials = 200;
    UpdateFaults faults;
};

/// Runs lsr with hooks and checks after every stage-1 step: graph equals a
/// rebuild, index matches the graph, the selected pair is a multi-edge
/// carrying a monomial of degree > 2, the labels on the pair are exactly
/// the monomials holding it, edges away from i and j are unchanged, nodes
/// adjacent to only one of i, j keep their edges, and the multi-edge mass
/// strictly decreases.
VerificationReport check_incremental_graph(const Pbf& f, double q, std::uint64_t seed,
                                           const IncrementalCheckOptions& options = {});

struct VariableBounds {
    std::size_t lower = 0;  // max(|m|) - 2
    std::size_t upper = 0;  // sum of (|m| - 2) over |m| >= 2
};

VariableBounds variable_bounds(const Pbf& f);

VerificationReport check_variable_bounds(const Pbf& original, const ReductionResult& result);

/// True when the stage-1 masses recorded in the log are each >= 2 and
/// strictly decreasing. Only meaningful for lsr results.
bool mass_strictly_decreasing(const ReductionResult& result);

} // namespace pbquad

#endif
