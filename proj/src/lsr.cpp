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

#include "pbquad/lsr.hpp"

#include <algorithm>
#include <stdexcept>

namespace pbquad {

namespace {

void add_penalty(Pbf& p, VarId i, VarId j, VarId h) {
    if (i > j) std::swap(i, j);
    p.add_term({h}, 3.0);
    p.add_term({i, j}, 1.0);
    p.add_term({i, h}, -2.0);
    p.add_term({j, h}, -2.0);
}

void check_deadline(const std::optional<Clock::time_point>& deadline) {
    if (deadline && Clock::now() > *deadline) throw ReductionTimeout();
}

} // namespace

void replace_var_pair(Pbf& f, std::span<const TermIndex> touched, VarId i, VarId j, VarId h) {
    for (TermIndex z : touched) f.replace_pair(z, i, j, h);
}

void replace_var_pair(const MultiGraph& g, Pbf& f, VarId i, VarId j, VarId h) {
    const LabelSet* ls = g.labels(i, j);
    if (ls == nullptr) return;
    std::vector<TermIndex> touched(ls->begin(), ls->end());
    std::sort(touched.begin(), touched.end());
    replace_var_pair(f, touched, i, j, h);
}

std::size_t multi_reduce(Pbf& f, Pbf& p, TermIndex z, VarId& next_fresh,
                         std::vector<Substitution>& subs, std::size_t max_pairs) {
    const Monomial* m = f.term(z);
    if (m == nullptr) throw std::invalid_argument("multi_reduce: retired running index");
    const std::size_t d = m->degree();
    if (d <= 2) throw std::invalid_argument("multi_reduce: monomial is already quadratic");

    const std::size_t pairs = std::min(d / 2, max_pairs);
    std::vector<VarId> vars(m->vars.begin() + static_cast<std::ptrdiff_t>(2 * pairs),
                            m->vars.end());
    for (std::size_t t = 0; t < pairs; ++t) {
        const VarId a = m->vars[2 * t];
        const VarId b = m->vars[2 * t + 1];
        const VarId h = next_fresh++;
        add_penalty(p, a, b, h);
        subs.push_back(Substitution{h, a, b});
        vars.push_back(h);
    }
    std::sort(vars.begin(), vars.end());
    if (!vars.empty()) f.reserve_var(vars.back());
    f.rewrite_term(z, std::move(vars));
    return pairs;
}

std::size_t halving_passes(std::size_t d, std::size_t k) {
    std::size_t passes = 0;
    while (d > k) {
        d -= std::min(d / 2, d - k);
        ++passes;
    }
    return passes;
}

ReductionResult reduce_to_degree_k(Pbf f, double q, std::size_t k, Rng& rng,
                                   LsrOptions options) {
    if (k < 2) throw std::invalid_argument("reduce_to_degree_k: k must be at least 2");
    if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("percentile q must lie in [0, 1]");
    options.target_degree = k;

    ReductionResult r;
    r.algorithm = "lsr";
    r.q = q;
    Pbf penalty(0);

    if (f.degree() > k) {
        // Stage 1: graph-driven pair replacement while multi-edges remain.
        MultiGraph g = build_graph(f);
        MultiplicityIndex idx = build_index(g);
        while (!idx.empty() && f.degree() > k) {
            check_deadline(options.deadline);
            const std::size_t mass = idx.multi_edge_mass();

            Stage1View view{f, g, idx, {}, 0, nullptr};
            std::optional<NodePair> forced;
            if (options.select_override) forced = options.select_override(view);
            view.pair = forced ? *forced : select_pair(idx, q, rng);
            view.fresh = f.fresh_var();
            if (options.before_step) options.before_step(view);

            const VarId i = view.pair.lo;
            const VarId j = view.pair.hi;
            const VarId h = view.fresh;
            // graph first: the update reads the monomials before they change
            const GraphUpdate upd = update_graph_data(g, idx, f, i, j, h, options.faults);
            replace_var_pair(f, upd.touched, i, j, h);
            add_penalty(penalty, i, j, h);

            r.substitutions.push_back(Substitution{h, i, j});
            r.log.push_back(IterationLogEntry{1, i, j, h, upd.beta_before, upd.touched.size(), mass});
            ++r.iterations_stage1;

            if (options.verify_graph && (!rebuild_equals(g, f) || !index_matches(idx, g))) {
                throw std::logic_error("incremental graph diverged from rebuild after step " +
                                       std::to_string(r.iterations_stage1));
            }
            if (options.after_step) {
                view.update = &upd;
                options.after_step(view);
            }
        }

        // Stage 2: no pair is shared any more, so each monomial is halved on
        // its own, in ascending order of its index set.
        std::vector<std::pair<std::vector<VarId>, TermIndex>> pending;
        f.for_each_term([&](TermIndex z, const Monomial& m) {
            if (m.degree() > k) pending.emplace_back(m.vars, z);
        });
        std::sort(pending.begin(), pending.end());
        VarId next_fresh = f.next_var();
        for (const auto& [vars, z] : pending) {
            check_deadline(options.deadline);
            while (f.term(z)->degree() > k) {
                const std::size_t d = f.term(z)->degree();
                const std::size_t first = r.substitutions.size();
                multi_reduce(f, penalty, z, next_fresh, r.substitutions, d - k);
                for (std::size_t s = first; s < r.substitutions.size(); ++s) {
                    const Substitution& sub = r.substitutions[s];
                    r.log.push_back(IterationLogEntry{2, sub.i, sub.j, sub.h, 1, 1, 0});
                }
                ++r.iterations_stage2;
            }
        }
    }

    penalty.reserve_var(f.next_var() - 1);
    f.reserve_var(penalty.next_var() - 1);
    r.reduced = std::move(f);
    r.penalty = std::move(penalty);
    return r;
}

ReductionResult lsr(Pbf f, double q, Rng& rng, const LsrOptions& options) {
    return reduce_to_degree_k(std::move(f), q, options.target_degree, rng, options);
}

} // namespace pbquad
