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

#ifndef PBQUAD_MULTIGRAPH_HPP_INCLUDED
#define PBQUAD_MULTIGRAPH_HPP_INCLUDED

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "pbquad/pbf.hpp"
#include "pbquad/random.hpp"

namespace pbquad {

/// Unordered node pair, stored normalised so that lo < hi.
struct NodePair {
    VarId lo = 0;
    VarId hi = 0;

    NodePair() = default;
    NodePair(VarId a, VarId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}

    std::uint64_t key() const { return (std::uint64_t{lo} << 32) | hi; }
    static NodePair from_key(std::uint64_t k) {
        return NodePair(static_cast<VarId>(k >> 32), static_cast<VarId>(k & 0xFFFFFFFFU));
    }

    friend bool operator==(const NodePair&, const NodePair&) = default;
    friend auto operator<=>(const NodePair&, const NodePair&) = default;
};

/// Labelled edge (i, j, z) with i < j; z is the running index of the monomial
/// the edge stems from.
struct Edge {
    VarId i = 0;
    VarId j = 0;
    TermIndex z = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
    friend auto operator<=>(const Edge&, const Edge&) = default;
};

using LabelSet = std::unordered_set<TermIndex>;

/// Labelled undirected multigraph over variables. Each monomial of degree
/// >= 2 contributes one edge per variable pair it contains, labelled with the
/// monomial's running index. The multiplicity of a pair is its label count.
class MultiGraph {
public:
    /// Returns false if the edge was already present.
    bool add_edge(VarId a, VarId b, TermIndex z);
    /// Returns false if the edge was absent.
    bool remove_edge(VarId a, VarId b, TermIndex z);
    /// Drops every edge between a and b; returns how many were removed.
    std::size_t remove_pair(VarId a, VarId b);

    std::size_t multiplicity(VarId a, VarId b) const;
    std::size_t multiplicity(NodePair p) const { return multiplicity(p.lo, p.hi); }

    /// Labels on the pair, or nullptr if the nodes are unconnected.
    const LabelSet* labels(VarId a, VarId b) const;

    bool has_edge(VarId a, VarId b, TermIndex z) const;

    std::size_t edge_count() const { return edge_count_; }
    std::size_t pair_count() const { return adjacency_.size(); }

    /// Connected pairs in ascending order.
    std::vector<NodePair> pairs() const;

    /// All edges sorted lexicographically by (i, j, z).
    std::vector<Edge> edges() const;

    friend bool operator==(const MultiGraph& a, const MultiGraph& b) {
        return a.edge_count_ == b.edge_count_ && a.adjacency_ == b.adjacency_;
    }

private:
    std::unordered_map<std::uint64_t, LabelSet> adjacency_;
    std::size_t edge_count_ = 0;
};

/// Sorted map from multiplicity to the node pairs carrying it. Only
/// multiplicities >= 2 are stored; buckets are disjoint.
class MultiplicityIndex {
public:
    /// Files `pair` under `beta`; pairs with beta < 2 are ignored.
    void insert(NodePair pair, std::size_t beta);
    /// Removes `pair` from the bucket of `beta`; no-op for beta < 2.
    void erase(NodePair pair, std::size_t beta);

    bool empty() const { return buckets_.empty(); }
    /// Number of stored pairs.
    std::size_t size() const { return slot_.size(); }
    bool contains(NodePair pair) const { return slot_.contains(pair.key()); }

    /// Distinct stored multiplicities, ascending.
    std::vector<std::size_t> multiplicities() const;
    std::size_t distinct_count() const { return buckets_.size(); }

    /// Pairs stored under `beta` (empty span if none), in insertion order.
    std::span<const std::uint64_t> bucket(std::size_t beta) const;

    /// Sum over stored pairs of their multiplicity.
    std::size_t multi_edge_mass() const;

    /// Pair -> multiplicity view, for comparisons in tests.
    std::map<NodePair, std::size_t> as_map() const;

private:
    std::map<std::size_t, std::vector<std::uint64_t>> buckets_;
    std::unordered_map<std::uint64_t, std::size_t> slot_;
};

MultiGraph build_graph(const Pbf& f);
MultiplicityIndex build_index(const MultiGraph& g);

/// Rank of the percentile multiplicity: ceil(q * |B|) clamped to [1, |B|].
std::size_t percentile_rank(double q, std::size_t distinct);

/// Picks a uniformly random pair from the bucket of the percentile
/// multiplicity. Throws std::invalid_argument on an empty index or q outside
/// [0, 1].
NodePair select_pair(const MultiplicityIndex& idx, double q, Rng& rng);

/// What changed during one incremental graph update.
struct GraphUpdate {
    std::vector<TermIndex> touched;        // Z, ascending
    std::vector<Edge> removed;             // edges dropped, including those between i and j
    std::vector<Edge> added;               // edges (k, h, z)
    std::size_t beta_before = 0;
};

/// Test-only corruption knobs for the incremental update.
struct UpdateFaults {
    bool skip_one_removed_edge = false;
};

/// Evolves graph and index for the replacement of x_i x_j by the fresh
/// variable h. `f` must still hold the monomials as they were before the
/// replacement. Touches only edges of monomials labelled on {i, j}.
/// Throws std::logic_error if beta(i, j) < 2 or a label on {i, j} names a
/// monomial without both variables.
GraphUpdate update_graph_data(MultiGraph& g, MultiplicityIndex& idx, const Pbf& f, VarId i,
                              VarId j, VarId h, const UpdateFaults& faults = {});

/// True iff g equals build_graph(f) edge for edge.
bool rebuild_equals(const MultiGraph& g, const Pbf& f);

/// Index consistency against the graph (bucket partition, beta >= 2 only).
bool index_matches(const MultiplicityIndex& idx, const MultiGraph& g);

/// Edge list as JSON array of [i, j, z] triples in lexicographic order.
std::string dump_edges(const MultiGraph& g);

} // namespace pbquad

#endif
