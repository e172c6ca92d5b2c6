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

#ifndef PBQUAD_BASELINE_HPP_INCLUDED
#define PBQUAD_BASELINE_HPP_INCLUDED

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "pbquad/multigraph.hpp"
#include "pbquad/pbf.hpp"
#include "pbquad/result.hpp"

namespace pbquad {

// Monomial-based iterative quadratisation: pick a pair, rewrite it in every
// monomial that holds it (full scan), add a penalty, repeat until the
// function is quadratic. No graph is kept between iterations.

enum class SelectionVariant {
    Sparse,  // first pair of the lexicographically first max-degree monomial
    Medium,  // most frequent pair among max-degree monomials
    Dense,   // most frequent pair among all monomials
};

std::string_view to_string(SelectionVariant v);
/// Accepts "sparse", "medium", "dense"; throws std::invalid_argument otherwise.
SelectionVariant parse_variant(std::string_view name);

/// How Medium and Dense count pair occurrences. Both pick the same pair.
enum class PairCounting {
    PerPair,  // count each unique pair by scanning every monomial
    Hashed,   // one pass over all monomials into a hash map
};

/// Next pair to reduce. Candidates are pairs held by some monomial of degree
/// > 2; ties go to the lexicographically smallest (i, j). Throws
/// std::invalid_argument when f has no monomial of degree > 2.
NodePair get_next_var_pair(const Pbf& f, SelectionVariant v,
                           PairCounting counting = PairCounting::PerPair);

/// Custom pair chooser; must return a pair held by some monomial of f.
using PairSelector = std::function<NodePair(const Pbf& f)>;

struct BaselineOptions {
    std::optional<Clock::time_point> deadline;
    PairCounting counting = PairCounting::PerPair;
};

ReductionResult quadratise_baseline(Pbf f, SelectionVariant v, const BaselineOptions& options = {});

/// Same loop driven by an arbitrary selector.
ReductionResult quadratise_with(Pbf f, const PairSelector& select,
                                const BaselineOptions& options = {});

/// Selector replaying a fixed list of pairs; throws std::out_of_range once the
/// script is exhausted while the function is still above degree 2.
PairSelector scripted_selector(std::vector<std::pair<VarId, VarId>> script);

} // namespace pbquad

#endif
