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

#ifndef PBQUAD_LSR_HPP_INCLUDED
#define PBQUAD_LSR_HPP_INCLUDED

#include <functional>
#include <optional>
#include <span>

#include "pbquad/multigraph.hpp"
#include "pbquad/pbf.hpp"
#include "pbquad/random.hpp"
#include "pbquad/result.hpp"

namespace pbquad {

/// State visible to stage-1 observers. `f` is the working polynomial without
/// penalty terms; during before_step it still holds the pre-replacement
/// monomials.
struct Stage1View {
    const Pbf& f;
    const MultiGraph& graph;
    const MultiplicityIndex& index;
    NodePair pair;
    VarId fresh = 0;
    const GraphUpdate* update = nullptr;  // set in after_step only
};

struct LsrOptions {
    /// Stop once every monomial has at most this degree (2 = quadratise).
    std::size_t target_degree = 2;

    /// Rebuild the graph after every stage-1 step and compare; throws
    /// std::logic_error on divergence. O(build) per step.
    bool verify_graph = false;

    std::optional<Clock::time_point> deadline;

    /// Replaces the percentile choice when it returns a pair. The pair must
    /// be a multi-edge.
    std::function<std::optional<NodePair>(const Stage1View&)> select_override;

    std::function<void(const Stage1View&)> before_step;
    std::function<void(const Stage1View&)> after_step;

    UpdateFaults faults;
};

/// Local structure reduction. Stage 1 repeatedly picks a multi-edge pair via
/// the percentile q of the sorted multiplicities, rewrites exactly the
/// monomials labelled on it and patches graph and index locally. Stage 2
/// halves each remaining high-degree monomial independently. The penalty is
/// returned unscaled.
ReductionResult lsr(Pbf f, double q, Rng& rng, const LsrOptions& options = {});

/// lsr with an explicit stopping degree; k = 2 is identical to lsr.
ReductionResult reduce_to_degree_k(Pbf f, double q, std::size_t k, Rng& rng,
                                   LsrOptions options = {});

/// Rewrites the monomials whose running indices are listed in `touched`,
/// replacing {i, j} by h. Coefficients and all other monomials are left
/// untouched.
void replace_var_pair(Pbf& f, std::span<const TermIndex> touched, VarId i, VarId j, VarId h);

/// Same, reading the affected indices from the labels on {i, j} in g.
void replace_var_pair(const MultiGraph& g, Pbf& f, VarId i, VarId j, VarId h);

/// One halving pass over monomial z: consecutive variables are paired in
/// ascending order, each pair is replaced by a fresh variable and its
/// penalty is added to p. At most `max_pairs` pairs are formed. Requires
/// deg(m_z) > 2. Appends to `subs` and returns the number of pairs formed.
std::size_t multi_reduce(Pbf& f, Pbf& p, TermIndex z, VarId& next_fresh,
                         std::vector<Substitution>& subs,
                         std::size_t max_pairs = static_cast<std::size_t>(-1));

/// Number of halving passes taking a degree-d monomial to degree <= k.
std::size_t halving_passes(std::size_t d, std::size_t k = 2);

} // namespace pbquad

#endif
