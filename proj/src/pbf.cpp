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

#include "pbquad/pbf.hpp"

#include <algorithm>
#include <cmath>

#include "pbquad/json_io.hpp"

namespace pbquad {

bool Monomial::contains(VarId v) const {
    return std::binary_search(vars.begin(), vars.end(), v);
}

std::size_t VarSetHash::operator()(const std::vector<VarId>& vars) const noexcept {
    // FNV-1a over the ids
    std::uint64_t h = 1469598103934665603ULL;
    for (VarId v : vars) {
        h ^= v;
        h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 32));
}

std::optional<TermIndex> Pbf::add_term(std::vector<VarId> vars, double coeff) {
    if (!std::isfinite(coeff)) {
        throw std::invalid_argument("non-finite coefficient");
    }
    std::sort(vars.begin(), vars.end());
    if (std::adjacent_find(vars.begin(), vars.end()) != vars.end()) {
        throw std::invalid_argument("duplicate variable inside one monomial");
    }
    if (!vars.empty() && vars.front() == 0) {
        throw std::invalid_argument("variable ids are 1-based");
    }
    if (auto it = index_of_.find(vars); it != index_of_.end()) {
        const TermIndex z = it->second;
        terms_[z]->coeff += coeff;
        if (terms_[z]->coeff == 0.0) {
            erase_term(z);
            return std::nullopt;
        }
        return z;
    }
    if (coeff == 0.0) return std::nullopt;
    if (!vars.empty()) reserve_var(vars.back());
    const auto z = static_cast<TermIndex>(terms_.size());
    terms_.emplace_back(Monomial{std::move(vars), coeff});
    index_insert(z);
    return z;
}

void Pbf::add(const Pbf& other) {
    for (const Monomial& m : other.canonical_terms()) {
        add_term(m);
    }
    reserve_var(other.next_var_ - 1);
}

const Monomial* Pbf::term(TermIndex z) const {
    if (z >= terms_.size() || !terms_[z]) return nullptr;
    return &*terms_[z];
}

std::optional<TermIndex> Pbf::find(std::span<const VarId> sorted_vars) const {
    auto it = index_of_.find(std::vector<VarId>(sorted_vars.begin(), sorted_vars.end()));
    if (it == index_of_.end()) return std::nullopt;
    return it->second;
}

void Pbf::replace_pair(TermIndex z, VarId i, VarId j, VarId h) {
    if (z >= terms_.size() || !terms_[z]) {
        throw std::logic_error("replace_pair: retired running index");
    }
    const Monomial& m = *terms_[z];
    if (!m.contains(i) || !m.contains(j) || i == j) {
        throw std::logic_error("replace_pair: monomial " + std::to_string(z) +
                               " does not hold the pair (" + std::to_string(i) + "," +
                               std::to_string(j) + ")");
    }
    std::vector<VarId> vars;
    vars.reserve(m.vars.size() - 1);
    for (VarId v : m.vars) {
        if (v != i && v != j) vars.push_back(v);
    }
    vars.insert(std::lower_bound(vars.begin(), vars.end(), h), h);
    rewrite_term(z, std::move(vars));
    reserve_var(h);
}

void Pbf::rewrite_term(TermIndex z, std::vector<VarId> sorted_vars) {
    if (index_of_.contains(sorted_vars)) {
        throw std::logic_error("rewrite_term: index set collides with an existing monomial");
    }
    index_erase(z);
    terms_[z]->vars = std::move(sorted_vars);
    index_insert(z);
}

void Pbf::erase_term(TermIndex z) {
    if (z >= terms_.size() || !terms_[z]) return;
    index_erase(z);
    terms_[z].reset();
}

void Pbf::index_insert(TermIndex z) {
    const Monomial& m = *terms_[z];
    index_of_.emplace(m.vars, z);
    if (degree_count_.size() <= m.degree()) degree_count_.resize(m.degree() + 1, 0);
    ++degree_count_[m.degree()];
    ++size_;
}

void Pbf::index_erase(TermIndex z) {
    const Monomial& m = *terms_[z];
    index_of_.erase(m.vars);
    --degree_count_[m.degree()];
    --size_;
}

std::size_t Pbf::degree() const {
    for (std::size_t k = degree_count_.size(); k-- > 0;) {
        if (degree_count_[k] != 0) return k;
    }
    return 0;
}

std::vector<TermIndex> Pbf::indices() const {
    std::vector<TermIndex> out;
    out.reserve(size_);
    for_each_term([&](TermIndex z, const Monomial&) { out.push_back(z); });
    return out;
}

std::vector<Monomial> Pbf::canonical_terms() const {
    std::vector<Monomial> out;
    out.reserve(size_);
    for_each_term([&](TermIndex, const Monomial& m) { out.push_back(m); });
    std::sort(out.begin(), out.end(),
              [](const Monomial& a, const Monomial& b) { return a.vars < b.vars; });
    return out;
}

bool Pbf::same_polynomial(const Pbf& other) const {
    return canonical_terms() == other.canonical_terms();
}

bool Pbf::check_invariants() const {
    std::size_t live = 0;
    std::vector<std::size_t> hist(degree_count_.size(), 0);
    for (TermIndex z = 1; z < terms_.size(); ++z) {
        if (!terms_[z]) continue;
        const Monomial& m = *terms_[z];
        ++live;
        if (m.coeff == 0.0 || !std::isfinite(m.coeff)) return false;
        if (!std::is_sorted(m.vars.begin(), m.vars.end())) return false;
        if (std::adjacent_find(m.vars.begin(), m.vars.end()) != m.vars.end()) return false;
        if (!m.vars.empty() && m.vars.back() >= next_var_) return false;
        auto it = index_of_.find(m.vars);
        if (it == index_of_.end() || it->second != z) return false;
        if (m.degree() >= hist.size()) return false;
        ++hist[m.degree()];
    }
    return live == size_ && index_of_.size() == size_ && hist == degree_count_;
}

Assignment Assignment::from_bits(std::uint64_t mask, VarId count) {
    Assignment a(count);
    for (VarId v = 1; v <= count; ++v) {
        a.set(v, (mask >> (v - 1)) & 1U);
    }
    return a;
}

void Assignment::set(VarId v, bool value) {
    if (v >= values_.size()) values_.resize(v + 1, kUnset);
    values_[v] = value ? 1 : 0;
}

bool Assignment::get(VarId v) const {
    if (!has(v)) {
        throw std::invalid_argument("assignment does not cover x" + std::to_string(v));
    }
    return values_[v] == 1;
}

double evaluate(const Pbf& f, const Assignment& a) {
    double total = 0.0;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        bool on = true;
        for (VarId v : m.vars) {
            // keep checking coverage even after a zero factor
            on = a.get(v) && on;
        }
        if (on) total += m.coeff;
    });
    return total;
}

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double r = 1.0;
    for (std::size_t i = 1; i <= k; ++i) {
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    }
    return std::round(r);
}

double density(const Pbf& f, std::size_t k, std::size_t n) {
    if (k == 0) throw std::invalid_argument("density: k must be positive");
    if (k > n) throw std::invalid_argument("density: k exceeds n");
    return static_cast<double>(f.count_of_degree(k)) / binomial(n, k);
}

Pbf penalty_term(VarId i, VarId j, VarId h) {
    if (i == j) throw std::invalid_argument("penalty_term: i == j");
    if (h == i || h == j) throw std::invalid_argument("penalty_term: h collides with the pair");
    if (i > j) std::swap(i, j);
    Pbf p(0);
    p.add_term({h}, 3.0);
    p.add_term({i, j}, 1.0);
    p.add_term({i, h}, -2.0);
    p.add_term({j, h}, -2.0);
    return p;
}

double scale_heuristic(const Pbf& f) {
    double sum = 0.0;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (!m.vars.empty() && m.coeff > 0.0) sum += m.coeff;
    });
    return sum > 0.0 ? sum : 1.0;
}

double safe_penalty_scale(const Pbf& f) {
    double sum = 0.0;
    f.for_each_term([&](TermIndex, const Monomial& m) {
        if (!m.vars.empty()) sum += std::abs(m.coeff);
    });
    return sum + 1.0;
}

Pbf parse_pbf(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed JSON: ") + e.what());
    }
    return pbf_from_json(doc);
}

std::string serialize_pbf(const Pbf& f) {
    return pbf_to_json(f).dump();
}

} // namespace pbquad
