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

#ifndef PBQUAD_BENCH_HPP_INCLUDED
#define PBQUAD_BENCH_HPP_INCLUDED

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pbquad/baseline.hpp"
#include "pbquad/pbf.hpp"
#include "pbquad/result.hpp"

namespace pbquad {

/// Random PBF with the same density for every degree 1..degree.
struct GeneratorSpec {
    VarId n = 0;
    std::size_t degree = 4;
    double density = 1.0;
    double coeff_min = -10.0;
    double coeff_max = 10.0;
    std::uint64_t seed = 0;
};

/// ceil(density * C(n, k)), the number of degree-k monomials generated.
std::uint64_t monomials_for_degree(VarId n, std::size_t k, double density);

/// Deterministic for a fixed spec. Monomials of each degree are drawn
/// uniformly without replacement; coefficients uniformly from the range,
/// never zero. Throws std::invalid_argument on an infeasible spec.
Pbf generate(const GeneratorSpec& spec);

/// One of lsr-q<q> or base-{sparse,medium,dense}.
struct AlgorithmConfig {
    std::string name;
    bool graph_based = true;
    double q = 1.0;
    SelectionVariant variant = SelectionVariant::Dense;
};

AlgorithmConfig parse_algorithm(std::string_view name);

/// The seven configurations of the standard sweep.
std::vector<std::string> standard_algorithms();

/// Runs a configured reducer. `seed` drives the percentile choice of lsr.
ReductionResult run_algorithm(const Pbf& f, const AlgorithmConfig& algo, std::uint64_t seed,
                              std::optional<Clock::time_point> deadline = std::nullopt);

struct StructureMetrics {
    std::size_t vars_after = 0;
    double d2_with_penalty = 0.0;
    double d2_without_penalty = 0.0;
    double d1 = 0.0;  // with penalty
};

StructureMetrics structure_metrics(VarId n, const ReductionResult& r);

struct BenchRecord {
    std::string algorithm;
    VarId n = 0;
    std::size_t terms_before = 0;
    double density_in = 0.0;
    double wall_time_s = 0.0;
    std::size_t vars_after = 0;
    double d2_out_with_penalty = 0.0;
    double d2_out_without_penalty = 0.0;
    double d1_out = 0.0;
    std::size_t iterations = 0;
    std::uint64_t seed = 0;
    bool timed_out = false;
};

/// Times the reduction call only. A run past `timeout_s` is recorded with
/// wall_time_s = timeout_s and timed_out set.
BenchRecord bench_one(const Pbf& f, const AlgorithmConfig& algo, std::uint64_t seed,
                      double density_in, double timeout_s);

struct SweepConfig {
    std::vector<VarId> n_values;
    std::size_t degree = 4;
    std::vector<double> densities;
    std::vector<std::string> algorithms;
    std::vector<std::uint64_t> seeds;
    double timeout_s = 120.0;
    double coeff_min = -10.0;
    double coeff_max = 10.0;
    // once an algorithm times out at some n, larger n for the same density
    // are recorded as timed out without running (the same n still runs for
    // every seed)
    bool skip_larger_after_timeout = true;
};

/// JSON sweep file. "n" is a list or {"from", "to", "step"}; "seeds" is a
/// list or "seed_count" gives seeds 1..count.
SweepConfig parse_sweep_config(std::string_view json_text);

inline constexpr std::string_view kCsvSchemaLine = "# pbquad bench csv v1";

std::string csv_header();
std::string csv_row(const BenchRecord& r);

/// Records in (n, density, seed, algorithm) order. `on_record` is called
/// after each record, e.g. for progress output.
std::vector<BenchRecord> run_sweep(const SweepConfig& config,
                                   const std::function<void(const BenchRecord&)>& on_record = {});

void write_csv(std::ostream& os, const std::vector<BenchRecord>& records);

/// Sum of C(n, k) for k = 1..degree: monomial count of a full-density
/// function. Exact for n <= 62.
std::uint64_t full_density_terms(unsigned n, unsigned degree);

struct ScalingRow {
    unsigned n = 0;
    unsigned degree = 0;
    std::uint64_t terms = 0;
};

/// One row per (n, degree) with 1 <= degree <= n <= n_max and degree <= deg_max.
std::vector<ScalingRow> terms_scaling_report(unsigned n_max, unsigned deg_max);

void write_scaling_csv(std::ostream& os, const std::vector<ScalingRow>& rows);

} // namespace pbquad

#endif
