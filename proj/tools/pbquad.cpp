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

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <spdlog/cfg/env.h>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "pbquad/baseline.hpp"
#include "pbquad/bench.hpp"
#include "pbquad/lsr.hpp"
#include "pbquad/verify.hpp"

using namespace pbquad;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

struct ReduceArgs {
    std::string input;
    std::string output;
    std::string algo = "lsr";
    double q = 1.0;
    std::string variant = "dense";
    std::uint64_t seed = 0;
    std::size_t k = 2;
};

ReductionResult reduce(const Pbf& f, const ReduceArgs& a) {
    if (a.algo == "lsr") {
        Rng rng(a.seed);
        ReductionResult r = reduce_to_degree_k(f, a.q, a.k, rng);
        r.seed = a.seed;
        return r;
    }
    if (a.algo == "baseline") {
        if (a.k != 2) throw std::invalid_argument("--k is only supported with --algo lsr");
        return quadratise_baseline(f, parse_variant(a.variant));
    }
    throw std::invalid_argument("unknown algorithm: " + a.algo);
}

void add_reduce_options(CLI::App* cmd, ReduceArgs& a) {
    cmd->add_option("--algo", a.algo, "lsr or baseline")->check(CLI::IsMember({"lsr", "baseline"}));
    cmd->add_option("--q", a.q, "percentile for lsr")->check(CLI::Range(0.0, 1.0));
    cmd->add_option("--variant", a.variant, "sparse, medium or dense (baseline)")
        ->check(CLI::IsMember({"sparse", "medium", "dense"}));
    cmd->add_option("--seed", a.seed, "seed for lsr pair choice");
}

int run_quadratise(const ReduceArgs& a) {
    const Pbf f = parse_pbf(read_file(a.input));
    const ReductionResult r = reduce(f, a);
    write_output(a.output, result_to_json(r));
    spdlog::info("{}: {} monomials, degree {} -> {} monomials, degree {}; {} auxiliaries, "
                 "{} + {} iterations",
                 a.input, f.size(), f.degree(), r.reduced.size(), r.reduced.degree(), r.introduced(),
                 r.iterations_stage1, r.iterations_stage2);
    return 0;
}

int run_verify(const ReduceArgs& a, std::size_t max_bits, std::size_t sample_x, bool weak_scale) {
    const Pbf f = parse_pbf(read_file(a.input));
    const ReductionResult r = reduce(f, a);
    const double c = weak_scale ? scale_heuristic(f) + 1.0 : safe_penalty_scale(f);

    VerificationReport report;
    report.instance_id = a.input;
    QuadratisationCheckOptions qopt;
    qopt.max_bits = max_bits;
    qopt.sample_x = sample_x;
    qopt.sample_seed = a.seed;
    report.merge(check_quadratisation(f, r, c, qopt));
    report.merge(check_variable_bounds(f, r));
    if (a.algo == "lsr" && a.k == 2) {
        IncrementalCheckOptions iopt;
        if (f.size() <= iopt.max_monomials) {
            report.merge(check_incremental_graph(f, a.q, a.seed, iopt));
        } else {
            spdlog::info("skipping incremental graph check: {} monomials", f.size());
        }
    }
    std::cout << report.to_json();
    spdlog::info("{}: {} checks passed, {} failed (c = {})", a.input, report.passed(), report.failed(), c);
    return report.ok() ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    spdlog::set_default_logger(spdlog::stderr_color_st("pbquad"));
    spdlog::set_pattern("%^%l%$: %v");
    spdlog::cfg::load_env_levels();

    CLI::App app{"Quadratisation of pseudo-Boolean functions"};
    app.require_subcommand(1);

    ReduceArgs qa;
    auto* quad = app.add_subcommand("quadratise", "reduce a PBF file to a quadratic function");
    quad->add_option("input", qa.input, "PBF JSON file")->required();
    quad->add_option("--out,-o", qa.output, "result JSON (default: stdout)");
    quad->add_option("--k", qa.k, "stop at this degree (lsr only)")->check(CLI::Range(2, 1 << 20));
    add_reduce_options(quad, qa);

    GeneratorSpec gs;
    std::string gen_out;
    auto* gen = app.add_subcommand("generate", "write a random PBF");
    gen->add_option("--n", gs.n, "number of variables")->required();
    gen->add_option("--degree", gs.degree, "maximum degree")->required();
    gen->add_option("--density", gs.density, "density per degree, in (0, 1]")->required();
    gen->add_option("--seed", gs.seed);
    gen->add_option("--coeff-min", gs.coeff_min);
    gen->add_option("--coeff-max", gs.coeff_max);
    gen->add_option("--out,-o", gen_out, "output file (default: stdout)");

    std::string bench_config;
    std::string bench_csv;
    auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
    bench->add_option("--config", bench_config, "sweep JSON")->required();
    bench->add_option("--csv", bench_csv, "CSV output (default: stdout)");

    ReduceArgs va;
    std::size_t max_bits = 22;
    std::size_t sample_x = 0;
    bool weak_scale = false;
    auto* ver = app.add_subcommand("verify", "reduce a PBF and check the result by enumeration");
    ver->add_option("--input", va.input, "PBF JSON file")->required();
    ver->add_option("--max-bits", max_bits, "enumeration budget in bits")->check(CLI::Range(1, 62));
    ver->add_option("--sample-x", sample_x, "above the budget, check this many random x");
    ver->add_flag("--positive-scale", weak_scale,
                  "use 1 + sum of positive coefficients as penalty scale");
    add_reduce_options(ver, va);

    unsigned n_max = 30;
    unsigned deg_max = 30;
    std::string scaling_csv;
    auto* scal = app.add_subcommand("scaling", "monomial counts of full-density functions");
    scal->add_option("--n-max", n_max)->check(CLI::Range(1, 62));
    scal->add_option("--deg-max", deg_max)->check(CLI::Range(1, 62));
    scal->add_option("--csv", scaling_csv, "CSV output (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*quad) return run_quadratise(qa);
        if (*gen) {
            write_output(gen_out, serialize_pbf(generate(gs)) + "\n");
            return 0;
        }
        if (*bench) {
            const SweepConfig cfg = parse_sweep_config(read_file(bench_config));
            const auto records = run_sweep(cfg, [](const BenchRecord& r) {
                spdlog::info("{} n={} d={} seed={}: {}", r.algorithm, r.n, r.density_in, r.seed,
                             r.timed_out ? std::string("timeout") : std::to_string(r.wall_time_s) + " s");
            });
            std::ostringstream os;
            write_csv(os, records);
            write_output(bench_csv, os.str());
            return 0;
        }
        if (*ver) return run_verify(va, max_bits, sample_x, weak_scale);
        if (*scal) {
            std::ostringstream os;
            write_scaling_csv(os, terms_scaling_report(n_max, deg_max));
            write_output(scaling_csv, os.str());
            return 0;
        }
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return 2;
    }
    return 0;
}
