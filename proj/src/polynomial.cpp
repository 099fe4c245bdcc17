// Copyright 2026 The tangle Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tangle/polynomial.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "tangle/error.hpp"

namespace tangle {

namespace {

Monomial canonical(std::vector<std::uint32_t> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    return vars;
}

void accumulate(std::map<Monomial, double> &terms, Monomial m, double coeff) {
    if (coeff == 0.0) {
        return;
    }
    auto [it, inserted] = terms.try_emplace(std::move(m), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) {
            terms.erase(it);
        }
    }
}

}  // namespace

BinaryPolynomial BinaryPolynomial::constant(std::uint32_t num_vars, double value) {
    BinaryPolynomial p(num_vars);
    p.add_term({}, value);
    return p;
}

BinaryPolynomial BinaryPolynomial::variable(std::uint32_t num_vars, std::uint32_t index) {
    BinaryPolynomial p(num_vars);
    p.add_term({index}, 1.0);
    return p;
}

double BinaryPolynomial::coefficient(std::vector<std::uint32_t> vars) const {
    auto it = terms_.find(canonical(std::move(vars)));
    return it == terms_.end() ? 0.0 : it->second;
}

double BinaryPolynomial::constant_term() const {
    return coefficient({});
}

std::size_t BinaryPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.size());
    }
    return d;
}

void BinaryPolynomial::add_term(std::vector<std::uint32_t> vars, double coeff) {
    Monomial m = canonical(std::move(vars));
    if (!m.empty() && m.back() >= num_vars_) {
        throw DomainError("variable index " + std::to_string(m.back()) + " out of range for " +
                          std::to_string(num_vars_) + " variables");
    }
    accumulate(terms_, std::move(m), coeff);
}

BinaryPolynomial &BinaryPolynomial::operator+=(const BinaryPolynomial &other) {
    num_vars_ = std::max(num_vars_, other.num_vars_);
    for (const auto &[m, c] : other.terms_) {
        accumulate(terms_, m, c);
    }
    return *this;
}

BinaryPolynomial &BinaryPolynomial::operator-=(const BinaryPolynomial &other) {
    num_vars_ = std::max(num_vars_, other.num_vars_);
    for (const auto &[m, c] : other.terms_) {
        accumulate(terms_, m, -c);
    }
    return *this;
}

BinaryPolynomial &BinaryPolynomial::operator*=(double scale) {
    if (scale == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto &[m, c] : terms_) {
        c *= scale;
    }
    return *this;
}

BinaryPolynomial &BinaryPolynomial::operator+=(double value) {
    accumulate(terms_, {}, value);
    return *this;
}

BinaryPolynomial operator*(const BinaryPolynomial &a, const BinaryPolynomial &b) {
    BinaryPolynomial out(std::max(a.num_vars_, b.num_vars_));
    Monomial merged;
    for (const auto &[ma, ca] : a.terms_) {
        for (const auto &[mb, cb] : b.terms_) {
            merged.clear();
            std::set_union(ma.begin(), ma.end(), mb.begin(), mb.end(), std::back_inserter(merged));
            accumulate(out.terms_, merged, ca * cb);
        }
    }
    return out;
}

double eval_binary(const BinaryPolynomial &p, std::span<const std::uint8_t> bits) {
    if (bits.size() != p.num_vars()) {
        throw DomainError("assignment has " + std::to_string(bits.size()) + " bits, polynomial has " +
                          std::to_string(p.num_vars()) + " variables");
    }
    double total = 0.0;
    for (const auto &[m, c] : p.terms()) {
        bool on = true;
        for (std::uint32_t v : m) {
            if (!bits[v]) {
                on = false;
                break;
            }
        }
        if (on) {
            total += c;
        }
    }
    return total;
}

std::vector<double> eval_all(const BinaryPolynomial &p, std::uint32_t max_vars) {
    const std::uint32_t n = p.num_vars();
    if (n > max_vars) {
        throw SizeError("cannot tabulate " + std::to_string(n) + " variables (cap " + std::to_string(max_vars) + ")");
    }
    std::vector<double> table(std::size_t{1} << n, 0.0);
    for (const auto &[m, c] : p.terms()) {
        std::uint64_t mask = 0;
        for (std::uint32_t v : m) {
            mask |= std::uint64_t{1} << v;
        }
        table[mask] += c;
    }
    // f(x) = sum over subsets S of x of c_S.
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t x = 0; x < table.size(); ++x) {
            if (x & step) {
                table[x] += table[x ^ step];
            }
        }
    }
    return table;
}

std::vector<std::uint8_t> index_to_bits(std::uint64_t index, std::uint32_t n) {
    std::vector<std::uint8_t> bits(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        bits[i] = static_cast<std::uint8_t>((index >> i) & 1);
    }
    return bits;
}

std::uint64_t bits_to_index(std::span<const std::uint8_t> bits) {
    if (bits.size() > 64) {
        throw DomainError("assignment too wide for an integer index");
    }
    std::uint64_t index = 0;
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) {
            index |= std::uint64_t{1} << i;
        }
    }
    return index;
}

namespace {

nlohmann::json coefficient_json(double c) {
    if (std::nearbyint(c) == c && std::abs(c) < 0x1.0p53) {
        return static_cast<std::int64_t>(c);
    }
    return c;
}

}  // namespace

std::string polynomial_to_json(const BinaryPolynomial &p) {
    nlohmann::json j;
    j["n_vars"] = p.num_vars();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : p.terms()) {
        terms.push_back({{"vars", m}, {"c", coefficient_json(c)}});
    }
    j["terms"] = std::move(terms);
    return j.dump() + "\n";
}

BinaryPolynomial polynomial_from_json(const std::string &text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        BinaryPolynomial p(j.at("n_vars").get<std::uint32_t>());
        for (const auto &t : j.at("terms")) {
            p.add_term(t.at("vars").get<std::vector<std::uint32_t>>(), t.at("c").get<double>());
        }
        return p;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("polynomial JSON: ") + e.what());
    }
}

}  // namespace tangle
