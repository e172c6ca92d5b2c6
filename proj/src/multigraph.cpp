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

#include "pbquad/multigraph.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pbquad {

bool MultiGraph::add_edge(VarId a, VarId b, TermIndex z) {
    if (a == b) throw std::invalid_argument("self-edges are not allowed");
    const bool inserted = adjacency_[NodePair(a, b).key()].insert(z).second;
    if (inserted) ++edge_count_;
    return inserted;
}

bool MultiGraph::remove_edge(VarId a, VarId b, TermIndex z) {
    auto it = adjacency_.find(NodePair(a, b).key());
    if (it == adjacency_.end() || it->second.erase(z) == 0) return false;
    --edge_count_;
    if (it->second.empty()) adjacency_.erase(it);
    return true;
}

std::size_t MultiGraph::remove_pair(VarId a, VarId b) {
    auto it = adjacency_.find(NodePair(a, b).key());
    if (it == adjacency_.end()) return 0;
    const std::size_t n = it->second.size();
    edge_count_ -= n;
    adjacency_.erase(it);
    return n;
}

std::size_t MultiGraph::multiplicity(VarId a, VarId b) const {
    const LabelSet* ls = labels(a, b);
    return ls ? ls->size() : 0;
}

const LabelSet* MultiGraph::labels(VarId a, VarId b) const {
    auto it = adjacency_.find(NodePair(a, b).key());
    return it == adjacency_.end() ? nullptr : &it->second;
}

bool MultiGraph::has_edge(VarId a, VarId b, TermIndex z) const {
    const LabelSet* ls = labels(a, b);
    return ls && ls->contains(z);
}

std::vector<NodePair> MultiGraph::pairs() const {
    std::vector<NodePair> out;
    out.reserve(adjacency_.size());
    for (const auto& [key, ls] : adjacency_) out.push_back(NodePair::from_key(key));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Edge> MultiGraph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (const auto& [key, ls] : adjacency_) {
        const NodePair p = NodePair::from_key(key);
        for (TermIndex z : ls) out.push_back(Edge{p.lo, p.hi, z});
    }
    std::sort(out.begin(), out.end());
    return out;
}

void MultiplicityIndex::insert(NodePair pair, std::size_t beta) {
    if (beta < 2) return;
    auto& bucket = buckets_[beta];
    const auto [it, fresh] = slot_.emplace(pair.key(), bucket.size());
    if (!fresh) throw std::logic_error("MultiplicityIndex: pair filed twice");
    bucket.push_back(pair.key());
}

void MultiplicityIndex::erase(NodePair pair, std::size_t beta) {
    if (beta < 2) return;
    auto bit = buckets_.find(beta);
    auto sit = slot_.find(pair.key());
    if (bit == buckets_.end() || sit == slot_.end()) {
        throw std::logic_error("MultiplicityIndex: pair not filed under its multiplicity");
    }
    auto& bucket = bit->second;
    const std::size_t pos = sit->second;
    if (pos >= bucket.size() || bucket[pos] != pair.key()) {
        throw std::logic_error("MultiplicityIndex: pair not filed under its multiplicity");
    }
    // swap-with-last keeps removal O(1)
    bucket[pos] = bucket.back();
    slot_[bucket[pos]] = pos;
    bucket.pop_back();
    slot_.erase(pair.key());
    if (bucket.empty()) buckets_.erase(bit);
}

std::vector<std::size_t> MultiplicityIndex::multiplicities() const {
    std::vector<std::size_t> out;
    out.reserve(buckets_.size());
    for (const auto& [beta, bucket] : buckets_) out.push_back(beta);
    return out;
}

std::span<const std::uint64_t> MultiplicityIndex::bucket(std::size_t beta) const {
    auto it = buckets_.find(beta);
    if (it == buckets_.end()) return {};
    return it->second;
}

std::size_t MultiplicityIndex::multi_edge_mass() const {
    std::size_t mass = 0;
    for (const auto& [beta, bucket] : buckets_) mass += beta * bucket.size();
    return mass;
}

std::map<NodePair, std::size_t> MultiplicityIndex::as_map() const {
    std::map<NodePair, std::size_t> out;
    for (const auto& [beta, bucket] : buckets_) {
        for (std::uint64_t key : bucket) out.emplace(NodePair::from_key(key), beta);
    }
    return out;
}

MultiGraph build_graph(const Pbf& f) {
    MultiGraph g;
    f.for_each_term([&](TermIndex z, const Monomial& m) {
        const auto& v = m.vars;
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) {
                g.add_edge(v[a], v[b], z);
            }
        }
    });
    return g;
}

MultiplicityIndex build_index(const MultiGraph& g) {
    MultiplicityIndex idx;
    for (NodePair p : g.pairs()) idx.insert(p, g.multiplicity(p));
    return idx;
}

std::size_t percentile_rank(double q, std::size_t distinct) {
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile q must lie in [0, 1]");
    // the small slack absorbs products such as 0.6 * 5 = 3.0000000000000004
    const double scaled = q * static_cast<double>(distinct);
    auto rank = static_cast<std::size_t>(std::ceil(scaled - 1e-9));
    return std::clamp<std::size_t>(rank, 1, distinct);
}

NodePair select_pair(const MultiplicityIndex& idx, double q, Rng& rng) {
    if (idx.empty()) throw std::invalid_argument("select_pair: multiplicity index is empty");
    const auto betas = idx.multiplicities();
    const std::size_t beta = betas[percentile_rank(q, betas.size()) - 1];
    const auto bucket = idx.bucket(beta);
    return NodePair::from_key(bucket[rng.uniform_index(bucket.size())]);
}

GraphUpdate update_graph_data(MultiGraph& g, MultiplicityIndex& idx, const Pbf& f, VarId i,
                              VarId j, VarId h, const UpdateFaults& faults) {
    const NodePair ij(i, j);
    const LabelSet* on_pair = g.labels(i, j);
    GraphUpdate upd;
    upd.beta_before = on_pair ? on_pair->size() : 0;
    if (upd.beta_before < 2) {
        throw std::logic_error("update_graph_data: pair (" + std::to_string(ij.lo) + "," +
                               std::to_string(ij.hi) + ") is not a multi-edge");
    }
    upd.touched.assign(on_pair->begin(), on_pair->end());
    std::sort(upd.touched.begin(), upd.touched.end());

    std::vector<NodePair> changed{ij};
    for (TermIndex z : upd.touched) {
        const Monomial* m = f.term(z);
        if (m == nullptr || !m->contains(i) || !m->contains(j)) {
            throw std::logic_error("update_graph_data: label " + std::to_string(z) +
                                   " on the reduced pair names a monomial without it");
        }
        for (VarId k : m->vars) {
            if (k == i || k == j) continue;
            changed.emplace_back(k, i);
            changed.emplace_back(k, j);
            changed.emplace_back(k, h);
        }
    }
    std::sort(changed.begin(), changed.end());
    changed.erase(std::unique(changed.begin(), changed.end()), changed.end());

    for (NodePair p : changed) idx.erase(p, g.multiplicity(p));

    bool skip_pending = faults.skip_one_removed_edge;
    for (TermIndex z : upd.touched) {
        for (VarId k : f.term(z)->vars) {
            if (k == i || k == j) continue;
            for (VarId end : {i, j}) {
                if (skip_pending) {
                    skip_pending = false;
                    continue;
                }
                if (!g.remove_edge(k, end, z)) {
                    throw std::logic_error("update_graph_data: missing edge for label " +
                                           std::to_string(z));
                }
                const NodePair p(k, end);
                upd.removed.push_back(Edge{p.lo, p.hi, z});
            }
            g.add_edge(k, h, z);
            const NodePair p(k, h);
            upd.added.push_back(Edge{p.lo, p.hi, z});
        }
        upd.removed.push_back(Edge{ij.lo, ij.hi, z});
    }
    g.remove_pair(i, j);

    for (NodePair p : changed) idx.insert(p, g.multiplicity(p));
    return upd;
}

bool rebuild_equals(const MultiGraph& g, const Pbf& f) {
    return g == build_graph(f);
}

bool index_matches(const MultiplicityIndex& idx, const MultiGraph& g) {
    std::map<NodePair, std::size_t> expected;
    for (NodePair p : g.pairs()) {
        const std::size_t beta = g.multiplicity(p);
        if (beta >= 2) expected.emplace(p, beta);
    }
    return expected == idx.as_map();
}

std::string dump_edges(const MultiGraph& g) {
    std::ostringstream os;
    os << '[';
    bool first = true;
    for (const Edge& e : g.edges()) {
        if (!first) os << ',';
        first = false;
        os << '[' << e.i << ',' << e.j << ',' << e.z << ']';
    }
    os << ']';
    return os.str();
}

} // namespace pbquad
