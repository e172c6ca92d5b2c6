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

#ifndef PBQUAD_PBF_HPP_INCLUDED
#define PBQUAD_PBF_HPP_INCLUDED

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace pbquad {

/// Binary variable id. Original variables are 1..n, auxiliaries follow.
using VarId = std::uint32_t;

/// Running index of a monomial inside a Pbf. Starts at 1, never reused.
using TermIndex = std::uint32_t;

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A coefficient times a product of distinct variables. `vars` is kept
/// strictly increasing; the empty set is the constant term.
struct Monomial {
    std::vector<VarId> vars;
    double coeff = 0.0;

    std::size_t degree() const { return vars.size(); }

    bool contains(VarId v) const;

    friend bool operator==(const Monomial&, const Monomial&) = default;
};

struct VarSetHash {
    std::size_t operator()(const std::vector<VarId>& vars) const noexcept;
};

/// Pseudo-Boolean function in multilinear form.
///
/// Every monomial is addressed by a running index that stays attached to it
/// while its variable set is rewritten, so graph edge labels remain valid
/// across reduction steps. Index sets are unique: adding a monomial whose
/// index set already exists merges the coefficients, and a merged zero
/// removes the term.
class Pbf {
public:
    Pbf() = default;
    explicit Pbf(VarId n_original) : n_original_(n_original), next_var_(n_original + 1) {}

    /// Adds `coeff * prod(vars)`. vars need not be sorted but must not repeat.
    /// Returns the running index holding the merged term, or nullopt if the
    /// term cancelled (or coeff was zero).
    std::optional<TermIndex> add_term(std::vector<VarId> vars, double coeff);
    std::optional<TermIndex> add_term(const Monomial& m) { return add_term(m.vars, m.coeff); }

    /// Adds every term of `other`, in canonical order.
    void add(const Pbf& other);

    /// Monomial stored at running index z, or nullptr if z is retired.
    const Monomial* term(TermIndex z) const;

    /// Running index of the monomial with exactly this (sorted) index set.
    std::optional<TermIndex> find(std::span<const VarId> sorted_vars) const;

    /// Rewrites monomial z by replacing the pair {i, j} with h. The
    /// coefficient is kept and the running index is preserved. Throws
    /// std::logic_error if z does not hold both i and j, or if the rewritten
    /// index set collides with an existing monomial.
    void replace_pair(TermIndex z, VarId i, VarId j, VarId h);

    /// Replaces the variable set of monomial z wholesale (same coefficient).
    void rewrite_term(TermIndex z, std::vector<VarId> sorted_vars);

    void erase_term(TermIndex z);

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }

    /// Largest monomial degree, 0 for an empty or constant function.
    std::size_t degree() const;

    /// Number of monomials with exactly k variables.
    std::size_t count_of_degree(std::size_t k) const {
        return k < degree_count_.size() ? degree_count_[k] : 0;
    }

    VarId n_original() const { return n_original_; }
    VarId next_var() const { return next_var_; }

    /// Allocates the next auxiliary variable id.
    VarId fresh_var() { return next_var_++; }

    /// Makes sure `v` is counted as an allocated variable.
    void reserve_var(VarId v) {
        if (v >= next_var_) next_var_ = v + 1;
    }

    /// One past the largest running index ever issued.
    TermIndex index_end() const { return static_cast<TermIndex>(terms_.size()); }

    /// Live running indices in ascending order.
    std::vector<TermIndex> indices() const;

    template <typename Fn>
    void for_each_term(Fn&& fn) const {
        for (TermIndex z = 1; z < terms_.size(); ++z) {
            if (terms_[z]) fn(z, *terms_[z]);
        }
    }

    /// Terms sorted lexicographically by index set.
    std::vector<Monomial> canonical_terms() const;

    /// Equality of the represented polynomial (ignores running indices and
    /// variable counters).
    bool same_polynomial(const Pbf& other) const;

    /// Checks the index_of/terms bijection and the degree histogram.
    /// Intended for tests; linear in the size of the function.
    bool check_invariants() const;

private:
    void index_insert(TermIndex z);
    void index_erase(TermIndex z);

    std::vector<std::optional<Monomial>> terms_{std::nullopt};
    std::unordered_map<std::vector<VarId>, TermIndex, VarSetHash> index_of_;
    std::vector<std::size_t> degree_count_;
    std::size_t size_ = 0;
    VarId n_original_ = 0;
    VarId next_var_ = 1;
};

/// Variable values indexed by VarId; unset variables are rejected by evaluate.
class Assignment {
public:
    Assignment() = default;
    explicit Assignment(VarId max_var) : values_(max_var + 1, kUnset) {}

    /// Bits of `mask` become x_1..x_count (bit 0 is x_1).
    static Assignment from_bits(std::uint64_t mask, VarId count);

    void set(VarId v, bool value);
    bool has(VarId v) const { return v < values_.size() && values_[v] != kUnset; }
    bool get(VarId v) const;
    VarId max_var() const { return values_.empty() ? 0 : static_cast<VarId>(values_.size() - 1); }

private:
    static constexpr std::uint8_t kUnset = 2;
    std::vector<std::uint8_t> values_;
};

/// Sum over monomials of coeff times the product of assigned values.
/// Throws std::invalid_argument if a variable of f is unassigned.
double evaluate(const Pbf& f, const Assignment& a);

/// Ratio of degree-k monomials to C(n, k). Throws if k == 0 or k > n.
double density(const Pbf& f, std::size_t k, std::size_t n);

/// Binomial coefficient as a double (exact for the sizes used here).
double binomial(std::size_t n, std::size_t k);

/// 3 y_h + x_i x_j - 2 x_i y_h - 2 x_j y_h. Requires i < j and h outside {i, j}.
Pbf penalty_term(VarId i, VarId j, VarId h);

/// Sum of positive non-constant coefficients, or 1 if there is none.
double scale_heuristic(const Pbf& f);

/// Sum of absolute non-constant coefficients plus one. Any penalty scale
/// above the absolute coefficient mass keeps the minimum over auxiliaries
/// equal to the original function for every sign pattern.
double safe_penalty_scale(const Pbf& f);

// JSON format: {"n": <int>, "terms": [{"vars": [...], "coeff": <number>}, ...]}

Pbf parse_pbf(std::string_view text);

/// Canonical, byte-stable JSON (terms sorted by index set). `n` defaults to
/// the number of allocated variables.
std::string serialize_pbf(const Pbf& f);

} // namespace pbquad

#endif
