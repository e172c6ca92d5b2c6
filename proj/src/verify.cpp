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

#include "pbquad/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#include "pbquad/lsr.hpp"
#include "pbquad/random.hpp"

namespace pbquad {

std::size_t VerificationReport::passed() const {
    return static_cast<std::size_t>(
        std::count_if(checks.begin(), checks.end(), [](const CheckOutcome& c) { return c.passed; }));
}

std::size_t VerificationReport::failed() const { return checks.size() - passed(); }

void VerificationReport::pass(std::string name, std::string detail) {
    checks.push_back(CheckOutcome{std::move(name), true, std::move(detail), {}, {}});
}

void VerificationReport::fail(std::string name, std::string detail, std::string witness_kind,
                              std::vector<long long> witness) {
    checks.push_back(CheckOutcome{std::move(name), false, std::move(detail),
                                  std::move(witness_kind), std::move(witness)});
}

void VerificationReport::merge(const VerificationReport& other) {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
}

std::string VerificationReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["instance"] = instance_id;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const CheckOutcome& c : checks) {
        nlohmann::ordered_json j;
        j["name"] = c.name;
        j["passed"] = c.passed;
        if (!c.detail.empty()) j["detail"] = c.detail;
        if (!c.passed) {
            j["witness_kind"] = c.witness_kind;
            j["witness"] = c.witness;
        }
        arr.push_back(std::move(j));
    }
    doc["checks"] = std::move(arr);
    doc["passed"] = passed();
    doc["failed"] = failed();
    return doc.dump(2) + "\n";
}

namespace {

// Polynomial over at most 64 bit positions, evaluated with masks. Kept apart
// from Pbf::evaluate so the oracle does not share the code it checks.
struct MaskPoly {
    long double constant = 0.0L;
    std::vector<std::pair<std::uint64_t, double>> terms;
    // per bit: (mask of the other variables, coefficient)
    std::vector<std::vector<std::pair<std::uint64_t, double>>> incident;

    long double value(std::uint64_t state) const {
        long double v = constant;
        for (const auto& [mask, coeff] : terms) {
            if ((state & mask) == mask) v += coeff;
        }
        return v;
    }

    // change of value when bit b goes from 0 to 1 in `state`
    long double gain(std::uint64_t state, unsigned b) const {
        long double d = 0.0L;
        for (const auto& [rest, coeff] : incident[b]) {
            if ((state & rest) == rest) d += coeff;
        }
        return d;
    }
};

MaskPoly to_mask_poly(const Pbf& f, const std::map<VarId, unsigned>& bit_of, unsigned bits) {
    MaskPoly p;
    p.incident.resize(bits);
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (m.vars.empty()) {
            p.constant += m.coeff;
            return;
        }
        std::uint64_t mask = 0;
        for (VarId v : m.vars) {
            auto it = bit_of.find(v);
            if (it == bit_of.end()) {
                throw std::invalid_argument("variable x" + std::to_string(v) +
                                            " is neither original nor a substitution");
            }
            mask |= std::uint64_t{1} << it->second;
        }
        p.terms.emplace_back(mask, m.coeff);
        for (VarId v : m.vars) {
            const unsigned b = bit_of.at(v);
            p.incident[b].emplace_back(mask & ~(std::uint64_t{1} << b), m.coeff);
        }
    });
    return p;
}

std::string fmt_double(long double v) {
    std::ostringstream os;
    os.precision(17);
    os << static_cast<double>(v);
    return os.str();
}

} // namespace

VerificationReport check_quadratisation(const Pbf& original, const ReductionResult& result, double c,
                                        const QuadratisationCheckOptions& options) {
    VerificationReport report;
    if (!(c > 0.0)) throw std::invalid_argument("penalty scale must be positive");

    const auto n = static_cast<unsigned>(original.next_var() - 1);
    const auto aux = static_cast<unsigned>(result.substitutions.size());
    const unsigned total = n + aux;
    const bool sampled = total > options.max_bits;
    if (options.max_bits > 62) throw std::invalid_argument("max_bits above 62 is not supported");
    if (total > 62) {
        throw VerificationCapExceeded("instance needs " + std::to_string(total) +
                                      " bits, masks hold at most 62");
    }
    if (sampled && (options.sample_x == 0 || aux > options.max_bits)) {
        throw VerificationCapExceeded("instance needs " + std::to_string(total) +
                                      " bits, cap is " + std::to_string(options.max_bits));
    }

    // auxiliaries take the low bits so that the x part stays fixed while
    // the y part runs through its Gray code
    std::map<VarId, unsigned> bit_of;
    for (unsigned s = 0; s < aux; ++s) {
        const VarId h = result.substitutions[s].h;
        if (h <= n || !bit_of.emplace(h, s).second) {
            report.fail("substitutions_well_formed",
                        "auxiliary y" + std::to_string(h) + " collides with another variable",
                        "step", {static_cast<long long>(s), h, 0});
            return report;
        }
    }
    for (VarId v = 1; v <= n; ++v) bit_of.emplace(v, aux + v - 1);
    report.pass("substitutions_well_formed");

    const std::size_t deg = result.reduced.degree();
    if (deg > 2) {
        report.fail("reduced_is_quadratic", "degree " + std::to_string(deg), "step", {0, 0, 0});
    } else {
        report.pass("reduced_is_quadratic");
    }

    const MaskPoly target = to_mask_poly(original, bit_of, total);
    MaskPoly objective;
    try {
        objective = to_mask_poly(combined_objective(result, c), bit_of, total);
    } catch (const std::invalid_argument& e) {
        report.fail("variables_accounted_for", e.what(), "step", {0, 0, 0});
        return report;
    }

    auto witness = [&](std::uint64_t state) {
        std::vector<long long> w(total);
        for (VarId v = 1; v <= n; ++v) w[v - 1] = (state >> bit_of.at(v)) & 1U;
        for (unsigned s = 0; s < aux; ++s) w[n + s] = (state >> s) & 1U;
        return w;
    };

    std::vector<std::uint64_t> xs;
    if (sampled) {
        Rng rng(options.sample_seed);
        for (std::size_t s = 0; s < options.sample_x; ++s) {
            xs.push_back(rng.next() & ((std::uint64_t{1} << n) - 1));
        }
    }
    const std::uint64_t x_count = sampled ? xs.size() : (std::uint64_t{1} << n);
    const std::uint64_t y_count = std::uint64_t{1} << aux;
    const long double tol = options.tolerance;

    bool minimum_ok = true;
    bool consistent_ok = true;
    bool unique_ok = true;
    for (std::uint64_t xi = 0; xi < x_count; ++xi) {
        const std::uint64_t x = sampled ? xs[xi] : xi;
        const std::uint64_t xstate = x << aux;
        const long double fx = target.value(xstate);

        // auxiliary values implied by the substitution chain
        std::uint64_t consistent = xstate;
        for (unsigned s = 0; s < aux; ++s) {
            const Substitution& sub = result.substitutions[s];
            const auto on = [&](VarId v) { return (consistent >> bit_of.at(v)) & 1U; };
            if (on(sub.i) && on(sub.j)) consistent |= std::uint64_t{1} << s;
        }
        const long double at_consistent = objective.value(consistent);
        if (consistent_ok && std::fabs(at_consistent - fx) > tol) {
            consistent_ok = false;
            report.fail("consistent_auxiliaries_reproduce_f",
                        "f(x)=" + fmt_double(fx) + " but f'(x,y*)=" + fmt_double(at_consistent),
                        "assignment", witness(consistent));
        }

        // Gray-code sweep over y
        std::uint64_t state = xstate;
        long double v = objective.value(state);
        long double best = v;
        std::uint64_t best_state = state;
        std::size_t near_best = 1;
        std::uint64_t alt_state = state;
        for (std::uint64_t t = 1; t < y_count; ++t) {
            const auto b = static_cast<unsigned>(std::countr_zero(t));
            const std::uint64_t bit = std::uint64_t{1} << b;
            const long double g = objective.gain(state, b);
            v += (state & bit) ? -g : g;
            state ^= bit;
            if (v < best - tol) {
                best = v;
                best_state = state;
                near_best = 1;
            } else if (v <= best + tol) {
                ++near_best;
                alt_state = state;
            }
        }
        if (minimum_ok && std::fabs(best - fx) > tol) {
            minimum_ok = false;
            report.fail("minimum_equals_f",
                        "f(x)=" + fmt_double(fx) + " but min_y f'(x,y)=" + fmt_double(best),
                        "assignment", witness(best_state));
        }
        if (unique_ok && minimum_ok && consistent_ok && near_best != 1) {
            unique_ok = false;
            report.fail("minimiser_is_consistent",
                        std::to_string(near_best) + " auxiliary assignments reach the minimum",
                        "assignment", witness(best_state == consistent ? alt_state : best_state));
        }
        if (!minimum_ok && !consistent_ok && !unique_ok) break;
    }
    const std::string scope = (sampled ? "sampled " : "all ") + std::to_string(x_count) + " x";
    if (consistent_ok) report.pass("consistent_auxiliaries_reproduce_f", scope);
    if (minimum_ok) report.pass("minimum_equals_f", scope);
    if (unique_ok && minimum_ok && consistent_ok) report.pass("minimiser_is_consistent", scope);
    return report;
}

VerificationReport check_penalty_property() {
    VerificationReport report;
    report.instance_id = "penalty";
    const Pbf p = penalty_term(1, 2, 3);
    for (unsigned bits = 0; bits < 8; ++bits) {
        const Assignment a = Assignment::from_bits(bits, 3);
        const bool xi = a.get(1);
        const bool xj = a.get(2);
        const bool y = a.get(3);
        const double value = evaluate(p, a);
        const bool consistent = (xi && xj) == y;
        const std::string name = "p(" + std::to_string(xi) + "," + std::to_string(xj) + "," +
                                 std::to_string(y) + ")";
        const bool ok = consistent ? value == 0.0 : (value == 1.0 || value == 3.0);
        if (ok) {
            report.pass(name, "value " + fmt_double(value));
        } else {
            report.fail(name, "value " + fmt_double(value), "assignment", {xi, xj, y});
        }
    }
    return report;
}

namespace {

struct StepProbe {
    VerificationReport report;
    std::set<std::string> failed_names;
    std::vector<Edge> pre_edges;
    std::size_t step = 0;

    void record(const std::string& name, bool ok, const std::string& detail, NodePair pair) {
        if (ok || failed_names.contains(name)) return;
        failed_names.insert(name);
        report.fail(name, "first failure at step " + std::to_string(step) + ": " + detail, "step",
                    {static_cast<long long>(step), pair.lo, pair.hi});
    }
};

} // namespace

VerificationReport check_incremental_graph(const Pbf& f, double q, std::uint64_t seed,
                                           const IncrementalCheckOptions& options) {
    if (f.size() > options.max_monomials) {
        throw std::length_error("instance has " + std::to_string(f.size()) +
                                " monomials, incremental check is limited to " +
                                std::to_string(options.max_monomials));
    }
    StepProbe probe;
    LsrOptions opt;
    opt.faults = options.faults;

    opt.before_step = [&](const Stage1View& v) {
        ++probe.step;
        probe.pre_edges = v.graph.edges();
        const NodePair p = v.pair;
        const LabelSet* labels = v.graph.labels(p.lo, p.hi);
        const std::size_t beta = labels ? labels->size() : 0;

        bool has_higher = false;
        std::set<TermIndex> on_pair;
        if (labels) {
            on_pair.insert(labels->begin(), labels->end());
            for (TermIndex z : *labels) {
                const Monomial* m = v.f.term(z);
                has_higher = has_higher || (m && m->degree() > 2);
            }
        }
        probe.record("selected_pair_has_higher_degree_monomial", beta >= 2 && has_higher,
                     "beta=" + std::to_string(beta), p);

        std::set<TermIndex> holding;
        v.f.for_each_term([&](TermIndex z, const Monomial& m) {
            if (m.contains(p.lo) && m.contains(p.hi)) holding.insert(z);
        });
        probe.record("labels_are_exactly_monomials_with_pair", holding == on_pair,
                     std::to_string(holding.size()) + " monomials hold the pair, " +
                         std::to_string(on_pair.size()) + " labels",
                     p);
    };

    opt.after_step = [&](const Stage1View& v) {
        const NodePair p = v.pair;
        const VarId h = v.fresh;
        probe.record("rebuild_equals", rebuild_equals(v.graph, v.f), "graph differs from rebuild",
                     p);
        probe.record("index_matches_graph", index_matches(v.index, v.graph),
                     "multiplicity index out of sync", p);

        const std::vector<Edge> post = v.graph.edges();
        const std::set<Edge> pre_set(probe.pre_edges.begin(), probe.pre_edges.end());
        const std::set<Edge> post_set(post.begin(), post.end());
        const auto touches = [](const Edge& e, VarId a) { return e.i == a || e.j == a; };

        bool far_ok = true;
        for (const Edge& e : probe.pre_edges) {
            if (!touches(e, p.lo) && !touches(e, p.hi) && !post_set.contains(e)) far_ok = false;
        }
        for (const Edge& e : post) {
            if (!touches(e, p.lo) && !touches(e, p.hi) && !touches(e, h) && !pre_set.contains(e)) {
                far_ok = false;
            }
        }
        probe.record("edges_away_from_pair_unchanged", far_ok, "edge set changed", p);

        std::set<VarId> near_i;
        std::set<VarId> near_j;
        for (const Edge& e : probe.pre_edges) {
            if (e.i == p.lo) near_i.insert(e.j);
            if (e.j == p.lo) near_i.insert(e.i);
            if (e.i == p.hi) near_j.insert(e.j);
            if (e.j == p.hi) near_j.insert(e.i);
        }
        bool side_ok = true;
        for (const auto& [mine, other] : {std::pair{&near_i, &near_j}, std::pair{&near_j, &near_i}}) {
            for (VarId a : *mine) {
                if (a == p.lo || a == p.hi || other->contains(a)) continue;
                std::vector<Edge> before;
                std::vector<Edge> after;
                for (const Edge& e : probe.pre_edges) {
                    if (touches(e, a)) before.push_back(e);
                }
                for (const Edge& e : post) {
                    if (touches(e, a)) after.push_back(e);
                }
                side_ok = side_ok && before == after;
            }
        }
        probe.record("single_side_neighbours_unchanged", side_ok,
                     "edges of a node adjacent to one endpoint changed", p);
    };

    ReductionResult result;
    Rng rng(seed);
    try {
        result = lsr(f, q, rng, opt);
        probe.report.pass("run_completed", std::to_string(result.iterations_stage1) + " stage-1 steps");
    } catch (const std::exception& e) {
        probe.report.fail("run_completed", e.what(), "step",
                          {static_cast<long long>(probe.step), 0, 0});
    }

    for (const char* name :
         {"selected_pair_has_higher_degree_monomial", "labels_are_exactly_monomials_with_pair",
          "rebuild_equals", "index_matches_graph", "edges_away_from_pair_unchanged",
          "single_side_neighbours_unchanged"}) {
        if (!probe.failed_names.contains(name)) {
            probe.report.pass(name, std::to_string(probe.step) + " steps");
        }
    }
    if (mass_strictly_decreasing(result)) {
        probe.report.pass("mass_strictly_decreasing");
    } else {
        probe.report.fail("mass_strictly_decreasing", "multi-edge mass did not drop", "step",
                          {0, 0, 0});
    }
    return probe.report;
}

VariableBounds variable_bounds(const Pbf& f) {
    VariableBounds b;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (m.degree() < 2) return;
        b.upper += m.degree() - 2;
        b.lower = std::max(b.lower, m.degree() - 2);
    });
    return b;
}

VerificationReport check_variable_bounds(const Pbf& original, const ReductionResult& result) {
    VerificationReport report;
    const VariableBounds b = variable_bounds(original);
    const std::size_t introduced = result.introduced();
    const std::string detail = std::to_string(b.lower) + " <= " + std::to_string(introduced) +
                               " <= " + std::to_string(b.upper);
    if (b.lower <= introduced && introduced <= b.upper) {
        report.pass("introduced_variables_within_bounds", detail);
    } else {
        report.fail("introduced_variables_within_bounds", detail, "step",
                    {static_cast<long long>(introduced), static_cast<long long>(b.lower),
                     static_cast<long long>(b.upper)});
    }
    return report;
}

bool mass_strictly_decreasing(const ReductionResult& result) {
    std::size_t prev = static_cast<std::size_t>(-1);
    for (const IterationLogEntry& e : result.log) {
        if (e.stage != 1) continue;
        if (e.mass_before >= prev || e.mass_before < 2) return false;
        prev = e.mass_before;
    }
    return true;
}

} // namespace pbquad
