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

#include "pbquad/baseline.hpp"

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <unordered_map>

namespace pbquad {

std::string_view to_string(SelectionVariant v) {
    switch (v) {
    case SelectionVariant::Sparse: return "sparse";
    case SelectionVariant::Medium: return "medium";
    case SelectionVariant::Dense: return "dense";
    }
    return "unknown";
}

SelectionVariant parse_variant(std::string_view name) {
    if (name == "sparse") return SelectionVariant::Sparse;
    if (name == "medium") return SelectionVariant::Medium;
    if (name == "dense") return SelectionVariant::Dense;
    throw std::invalid_argument("unknown selection variant: " + std::string(name));
}

namespace {

struct PairCount {
    std::uint32_t count = 0;
    bool eligible = false;  // held by a monomial of degree > 2
};

NodePair most_frequent_pair_hashed(const Pbf& f, std::size_t min_degree) {
    std::unordered_map<std::uint64_t, PairCount> counts;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (m.degree() < 2 || m.degree() < min_degree) return;
        const bool higher = m.degree() > 2;
        const auto& v = m.vars;
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) {
                PairCount& c = counts[NodePair(v[a], v[b]).key()];
                ++c.count;
                c.eligible = c.eligible || higher;
            }
        }
    });
    std::uint64_t best_key = 0;
    std::uint32_t best = 0;
    for (const auto& [key, c] : counts) {
        if (!c.eligible) continue;
        if (c.count > best || (c.count == best && key < best_key)) {
            best = c.count;
            best_key = key;
        }
    }
    return NodePair::from_key(best_key);
}

NodePair most_frequent_pair_per_pair(const Pbf& f, std::size_t min_degree) {
    std::vector<std::uint64_t> candidates;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (m.degree() <= 2 || m.degree() < min_degree) return;
        const auto& v = m.vars;
        for (std::size_t a = 0; a < v.size(); ++a) {
            for (std::size_t b = a + 1; b < v.size(); ++b) candidates.push_back(NodePair(v[a], v[b]).key());
        }
    });
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

    std::uint64_t best_key = 0;
    std::size_t best = 0;
    for (std::uint64_t key : candidates) {
        const NodePair p = NodePair::from_key(key);
        std::size_t count = 0;
        f.for_each_term([&](TermIndex, const Monomial& m) {
            if (m.degree() < min_degree) return;
            if (m.contains(p.lo) && m.contains(p.hi)) ++count;
        });
        if (count > best) {
            best = count;
            best_key = key;
        }
    }
    return NodePair::from_key(best_key);
}

NodePair most_frequent_pair(const Pbf& f, std::size_t min_degree, PairCounting counting) {
    return counting == PairCounting::Hashed ? most_frequent_pair_hashed(f, min_degree)
                                            : most_frequent_pair_per_pair(f, min_degree);
}

} // namespace

NodePair get_next_var_pair(const Pbf& f, SelectionVariant v, PairCounting counting) {
    const std::size_t deg = f.degree();
    if (deg <= 2) throw std::invalid_argument("get_next_var_pair: no monomial of degree > 2");
    switch (v) {
    case SelectionVariant::Sparse: {
        const Monomial* first = nullptr;
        f.for_each_term([&](TermIndex, const Monomial& m) {
            if (m.degree() == deg && (first == nullptr || m.vars < first->vars)) first = &m;
        });
        return NodePair(first->vars[0], first->vars[1]);
    }
    case SelectionVariant::Medium:
        return most_frequent_pair(f, deg, counting);
    case SelectionVariant::Dense:
        return most_frequent_pair(f, 2, counting);
    }
    throw std::invalid_argument("get_next_var_pair: bad variant");
}

ReductionResult quadratise_with(Pbf f, const PairSelector& select, const BaselineOptions& options) {
    ReductionResult r;
    r.algorithm = "baseline";
    Pbf penalty(0);
    std::vector<TermIndex> touched;
    while (f.degree() > 2) {
        if (options.deadline && Clock::now() > *options.deadline) throw ReductionTimeout();
        const NodePair pair = select(f);
        const VarId i = pair.lo;
        const VarId j = pair.hi;

        touched.clear();
        f.for_each_term([&](TermIndex z, const Monomial& m) {
            if (m.contains(i) && m.contains(j)) touched.push_back(z);
        });
        if (touched.empty()) {
            throw std::logic_error("selected pair (" + std::to_string(i) + "," + std::to_string(j) +
                                   ") occurs in no monomial");
        }
        const VarId h = f.fresh_var();
        for (TermIndex z : touched) f.replace_pair(z, i, j, h);

        penalty.add_term({h}, 3.0);
        penalty.add_term({i, j}, 1.0);
        penalty.add_term({i, h}, -2.0);
        penalty.add_term({j, h}, -2.0);
        r.substitutions.push_back(Substitution{h, i, j});
        r.log.push_back(IterationLogEntry{1, i, j, h, touched.size(), touched.size(), 0});
        ++r.iterations_stage1;
    }
    penalty.reserve_var(f.next_var() - 1);
    f.reserve_var(penalty.next_var() - 1);
    r.reduced = std::move(f);
    r.penalty = std::move(penalty);
    return r;
}

ReductionResult quadratise_baseline(Pbf f, SelectionVariant v, const BaselineOptions& options) {
    ReductionResult r = quadratise_with(
        std::move(f), [v, c = options.counting](const Pbf& g) { return get_next_var_pair(g, v, c); }, options);
    r.variant = std::string(to_string(v));
    return r;
}

PairSelector scripted_selector(std::vector<std::pair<VarId, VarId>> script) {
    auto state = std::make_shared<std::pair<std::vector<std::pair<VarId, VarId>>, std::size_t>>(
        std::move(script), 0);
    return [state](const Pbf&) {
        auto& [pairs, next] = *state;
        if (next >= pairs.size()) throw std::out_of_range("selection script exhausted");
        const auto [a, b] = pairs[next++];
        return NodePair(a, b);
    };
}

} // namespace pbquad
