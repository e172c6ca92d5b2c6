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

#include "pbquad/bench.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "pbquad/lsr.hpp"
#include "pbquad/random.hpp"

namespace pbquad {

namespace {

std::uint64_t exact_binomial(unsigned n, unsigned k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (unsigned i = 1; i <= k; ++i) {
        // r * (n - k + i) is divisible by i at every step
        r = r * (n - k + i) / i;
    }
    return r;
}

// Advances a sorted k-combination of {1..n}; false after the last one.
bool next_combination(std::vector<VarId>& c, VarId n) {
    const std::size_t k = c.size();
    for (std::size_t pos = k; pos-- > 0;) {
        if (c[pos] < n - (k - 1 - pos)) {
            ++c[pos];
            for (std::size_t q = pos + 1; q < k; ++q) c[q] = c[q - 1] + 1;
            return true;
        }
    }
    return false;
}

constexpr std::uint64_t kEnumerateLimit = 4'000'000;

std::vector<std::vector<VarId>> sample_subsets(VarId n, std::size_t k, std::uint64_t count,
                                               Rng& rng) {
    const std::uint64_t total = exact_binomial(n, static_cast<unsigned>(k));
    std::vector<std::vector<VarId>> out;
    if (count == 0) return out;
    if (total <= kEnumerateLimit) {
        std::vector<std::vector<VarId>> all;
        all.reserve(total);
        std::vector<VarId> c(k);
        for (std::size_t t = 0; t < k; ++t) c[t] = static_cast<VarId>(t + 1);
        do {
            all.push_back(c);
        } while (next_combination(c, n));
        // partial Fisher-Yates: the first `count` slots become the sample
        for (std::uint64_t t = 0; t < count; ++t) {
            const std::uint64_t pick = t + rng.uniform_index(total - t);
            std::swap(all[t], all[pick]);
        }
        all.resize(count);
        std::sort(all.begin(), all.end());
        return all;
    }
    // Floyd's sampling for each subset, rejection for repeats
    std::set<std::vector<VarId>> chosen;
    while (chosen.size() < count) {
        std::unordered_set<VarId> picked;
        for (VarId j = n - static_cast<VarId>(k) + 1; j <= n; ++j) {
            const auto t = static_cast<VarId>(1 + rng.uniform_index(j));
            if (!picked.insert(t).second) picked.insert(j);
        }
        std::vector<VarId> s(picked.begin(), picked.end());
        std::sort(s.begin(), s.end());
        chosen.insert(std::move(s));
    }
    return {chosen.begin(), chosen.end()};
}

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(10);
    os << v;
    return os.str();
}

} // namespace

std::uint64_t monomials_for_degree(VarId n, std::size_t k, double density) {
    const std::uint64_t total = exact_binomial(n, static_cast<unsigned>(k));
    // relative slack so that e.g. 0.2 * 45 = 9.000000000000002 rounds to 9
    const double scaled = density * static_cast<double>(total) * (1.0 - 1e-12);
    return std::min<std::uint64_t>(total, static_cast<std::uint64_t>(std::ceil(scaled)));
}

Pbf generate(const GeneratorSpec& spec) {
    if (!(spec.density > 0.0 && spec.density <= 1.0)) {
        throw std::invalid_argument("density must lie in (0, 1]");
    }
    if (spec.degree == 0 || spec.degree > spec.n) {
        throw std::invalid_argument("degree must lie in 1..n");
    }
    if (!(spec.coeff_min < spec.coeff_max)) {
        throw std::invalid_argument("coefficient range must be a proper interval");
    }
    if (spec.n > 64) {
        throw std::invalid_argument("generator supports at most 64 variables");
    }
    Rng rng(spec.seed);
    Pbf f(spec.n);
    for (std::size_t k = 1; k <= spec.degree; ++k) {
        const std::uint64_t count = monomials_for_degree(spec.n, k, spec.density);
        for (auto& vars : sample_subsets(spec.n, k, count, rng)) {
            double coeff = 0.0;
            while (coeff == 0.0) coeff = rng.uniform_real(spec.coeff_min, spec.coeff_max);
            f.add_term(std::move(vars), coeff);
        }
    }
    return f;
}

AlgorithmConfig parse_algorithm(std::string_view name) {
    AlgorithmConfig a;
    a.name = std::string(name);
    if (name.starts_with("lsr-q")) {
        a.graph_based = true;
        const std::string num(name.substr(5));
        std::size_t used = 0;
        try {
            a.q = std::stod(num, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != num.size() || num.empty() || !(a.q >= 0.0 && a.q <= 1.0)) {
            throw std::invalid_argument("bad percentile in algorithm name: " + a.name);
        }
        return a;
    }
    if (name.starts_with("base-")) {
        a.graph_based = false;
        a.variant = parse_variant(name.substr(5));
        return a;
    }
    throw std::invalid_argument("unknown algorithm: " + a.name);
}

std::vector<std::string> standard_algorithms() {
    return {"lsr-q0.0", "lsr-q0.5", "lsr-q0.8", "lsr-q1.0", "base-sparse", "base-medium", "base-dense"};
}

ReductionResult run_algorithm(const Pbf& f, const AlgorithmConfig& algo, std::uint64_t seed,
                              std::optional<Clock::time_point> deadline) {
    if (algo.graph_based) {
        Rng rng(seed);
        LsrOptions opt;
        opt.deadline = deadline;
        ReductionResult r = lsr(f, algo.q, rng, opt);
        r.seed = seed;
        return r;
    }
    BaselineOptions opt;
    opt.deadline = deadline;
    return quadratise_baseline(f, algo.variant, opt);
}

StructureMetrics structure_metrics(VarId n, const ReductionResult& r) {
    StructureMetrics m;
    m.vars_after = n + r.introduced();
    Pbf merged = r.reduced;
    merged.add(r.penalty);
    const auto vars = m.vars_after;
    if (vars >= 2) {
        m.d2_with_penalty = density(merged, 2, vars);
        m.d2_without_penalty = density(r.reduced, 2, vars);
    }
    if (vars >= 1) m.d1 = density(merged, 1, vars);
    return m;
}

BenchRecord bench_one(const Pbf& f, const AlgorithmConfig& algo, std::uint64_t seed,
                      double density_in, double timeout_s) {
    BenchRecord rec;
    rec.algorithm = algo.name;
    rec.n = f.n_original();
    rec.terms_before = f.size();
    rec.density_in = density_in;
    rec.seed = seed;

    const auto start = Clock::now();
    const auto deadline =
        start + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(timeout_s));
    try {
        const ReductionResult r = run_algorithm(f, algo, seed, deadline);
        rec.wall_time_s = std::chrono::duration<double>(Clock::now() - start).count();
        const StructureMetrics m = structure_metrics(f.n_original(), r);
        rec.vars_after = m.vars_after;
        rec.d2_out_with_penalty = m.d2_with_penalty;
        rec.d2_out_without_penalty = m.d2_without_penalty;
        rec.d1_out = m.d1;
        rec.iterations = r.iterations_stage1 + r.iterations_stage2;
    } catch (const ReductionTimeout&) {
        rec.wall_time_s = timeout_s;
        rec.timed_out = true;
    }
    return rec;
}

SweepConfig parse_sweep_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed sweep config: ") + e.what());
    }
    SweepConfig cfg;
    try {
        const auto& n = doc.at("n");
        if (n.is_array()) {
            cfg.n_values = n.get<std::vector<VarId>>();
        } else {
            const auto from = n.at("from").get<VarId>();
            const auto to = n.at("to").get<VarId>();
            const auto step = n.value("step", VarId{1});
            if (step == 0) throw ParseError("n.step must be positive");
            for (VarId v = from; v <= to; v += step) cfg.n_values.push_back(v);
        }
        cfg.degree = doc.value("degree", std::size_t{4});
        cfg.densities = doc.at("densities").get<std::vector<double>>();
        cfg.algorithms = doc.value("algorithms", standard_algorithms());
        if (doc.contains("seeds")) {
            cfg.seeds = doc["seeds"].get<std::vector<std::uint64_t>>();
        } else {
            const auto count = doc.value("seed_count", std::uint64_t{1});
            for (std::uint64_t s = 1; s <= count; ++s) cfg.seeds.push_back(s);
        }
        cfg.timeout_s = doc.value("timeout_s", 120.0);
        cfg.coeff_min = doc.value("coeff_min", -10.0);
        cfg.coeff_max = doc.value("coeff_max", 10.0);
        cfg.skip_larger_after_timeout = doc.value("skip_larger_after_timeout", true);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid sweep config: ") + e.what());
    }
    for (const auto& a : cfg.algorithms) parse_algorithm(a);
    std::sort(cfg.n_values.begin(), cfg.n_values.end());
    return cfg;
}

std::string csv_header() {
    return "algorithm,n,terms_before,density_in,wall_time_s,vars_after,d2_out_with_penalty,"
           "d2_out_without_penalty,d1_out,iterations,seed,timed_out";
}

std::string csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.algorithm << ',' << r.n << ',' << r.terms_before << ',' << format_double(r.density_in)
       << ',' << format_double(r.wall_time_s) << ',';
    if (r.timed_out) {
        os << ",,,,,";
    } else {
        os << r.vars_after << ',' << format_double(r.d2_out_with_penalty) << ','
           << format_double(r.d2_out_without_penalty) << ',' << format_double(r.d1_out) << ','
           << r.iterations << ',';
    }
    os << r.seed << ',' << (r.timed_out ? 1 : 0);
    return os.str();
}

std::vector<BenchRecord> run_sweep(const SweepConfig& config,
                                   const std::function<void(const BenchRecord&)>& on_record) {
    std::vector<AlgorithmConfig> algos;
    for (const auto& name : config.algorithms) algos.push_back(parse_algorithm(name));

    std::vector<BenchRecord> out;
    if (algos.empty()) return out;
    // smallest n at which (algorithm, density) timed out
    std::map<std::pair<std::string, double>, VarId> gave_up;
    for (VarId n : config.n_values) {
        for (double d : config.densities) {
            for (std::uint64_t seed : config.seeds) {
                GeneratorSpec spec;
                spec.n = n;
                spec.degree = config.degree;
                spec.density = d;
                spec.coeff_min = config.coeff_min;
                spec.coeff_max = config.coeff_max;
                spec.seed = seed;
                const Pbf f = generate(spec);
                for (const auto& algo : algos) {
                    BenchRecord rec;
                    const auto it = gave_up.find({algo.name, d});
                    if (config.skip_larger_after_timeout && it != gave_up.end() && n > it->second) {
                        rec.algorithm = algo.name;
                        rec.n = n;
                        rec.terms_before = f.size();
                        rec.density_in = d;
                        rec.wall_time_s = config.timeout_s;
                        rec.seed = seed;
                        rec.timed_out = true;
                    } else {
                        rec = bench_one(f, algo, seed, d, config.timeout_s);
                        if (rec.timed_out) gave_up.emplace(std::pair{algo.name, d}, n);
                    }
                    out.push_back(rec);
                    if (on_record) on_record(rec);
                }
            }
        }
    }
    return out;
}

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records) {
    os << kCsvSchemaLine << '\n' << csv_header() << '\n';
    for (const auto& r : records) os << csv_row(r) << '\n';
}

std::uint64_t full_density_terms(unsigned n, unsigned degree) {
    if (n > 62) throw std::invalid_argument("full_density_terms: n above 62 overflows");
    std::uint64_t sum = 0;
    for (unsigned k = 1; k <= std::min(degree, n); ++k) sum += exact_binomial(n, k);
    return sum;
}

std::vector<ScalingRow> terms_scaling_report(unsigned n_max, unsigned deg_max) {
    std::vector<ScalingRow> rows;
    for (unsigned n = 1; n <= n_max; ++n) {
        for (unsigned k = 1; k <= std::min(n, deg_max); ++k) {
            rows.push_back(ScalingRow{n, k, full_density_terms(n, k)});
        }
    }
    return rows;
}

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows) {
    os << "n,degree,terms\n";
    for (const auto& r : rows) os << r.n << ',' << r.degree << ',' << r.terms << '\n';
}

} // namespace pbquad
