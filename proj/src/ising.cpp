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

#include "tangle/ising.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "tangle/error.hpp"

namespace tangle {

double IsingPolynomial::coefficient(std::vector<std::uint32_t> qubits) const {
    std::sort(qubits.begin(), qubits.end());
    if (qubits.empty()) {
        return constant_;
    }
    auto it = terms_.find(qubits);
    return it == terms_.end() ? 0.0 : it->second;
}

std::size_t IsingPolynomial::degree() const {
    std::size_t d = 0;
    for (const auto &[m, c] : terms_) {
        d = std::max(d, m.size());
    }
    return d;
}

void IsingPolynomial::add_term(std::vector<std::uint32_t> qubits, double coeff) {
    std::sort(qubits.begin(), qubits.end());
    Monomial m;
    for (std::size_t i = 0; i < qubits.size();) {
        std::size_t j = i;
        while (j < qubits.size() && qubits[j] == qubits[i]) {
            ++j;
        }
        if ((j - i) % 2 == 1) {
            m.push_back(qubits[i]);
        }
        i = j;
    }
    if (!m.empty() && m.back() >= num_qubits_) {
        throw DomainError("qubit index " + std::to_string(m.back()) + " out of range");
    }
    if (coeff == 0.0) {
        return;
    }
    if (m.empty()) {
        constant_ += coeff;
        return;
    }
    auto [it, inserted] = terms_.try_emplace(std::move(m), coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0.0) {
            terms_.erase(it);
        }
    }
}

IsingPolynomial to_ising(const BinaryPolynomial &p) {
    IsingPolynomial h(p.num_vars());
    std::vector<std::uint32_t> subset;
    for (const auto &[m, c] : p.terms()) {
        // prod_{i in m} (1 - Z_i)/2 = 2^-|m| sum_{U subset m} (-1)^|U| Z_U
        const double scale = std::ldexp(c, -static_cast<int>(m.size()));
        const std::uint64_t count = std::uint64_t{1} << m.size();
        for (std::uint64_t mask = 0; mask < count; ++mask) {
            subset.clear();
            for (std::size_t k = 0; k < m.size(); ++k) {
                if ((mask >> k) & 1) {
                    subset.push_back(m[k]);
                }
            }
            h.add_term(subset, (subset.size() % 2) ? -scale : scale);
        }
    }
    return h;
}

double ising_energy(const IsingPolynomial &h, std::span<const std::uint8_t> bits) {
    if (bits.size() != h.num_qubits()) {
        throw DomainError("assignment has " + std::to_string(bits.size()) + " bits, Hamiltonian has " +
                          std::to_string(h.num_qubits()) + " qubits");
    }
    double total = h.constant();
    for (const auto &[m, c] : h.terms()) {
        int parity = 0;
        for (std::uint32_t q : m) {
            parity ^= bits[q];
        }
        total += parity ? -c : c;
    }
    return total;
}

std::vector<double> diagonal(const IsingPolynomial &h, std::uint32_t max_qubits) {
    const std::uint32_t n = h.num_qubits();
    if (n > max_qubits) {
        throw SizeError("diagonal of " + std::to_string(n) + " qubits exceeds the cap of " +
                        std::to_string(max_qubits));
    }
    std::vector<double> table(std::size_t{1} << n, 0.0);
    table[0] = h.constant();
    for (const auto &[m, c] : h.terms()) {
        std::uint64_t mask = 0;
        for (std::uint32_t q : m) {
            mask |= std::uint64_t{1} << q;
        }
        table[mask] += c;
    }
    // E(x) = sum_S c_S (-1)^{|x & S|}
    for (std::uint32_t bit = 0; bit < n; ++bit) {
        const std::size_t step = std::size_t{1} << bit;
        for (std::size_t base = 0; base < table.size(); base += 2 * step) {
            for (std::size_t x = base; x < base + step; ++x) {
                const double a = table[x];
                const double b = table[x + step];
                table[x] = a + b;
                table[x + step] = a - b;
            }
        }
    }
    return table;
}

std::string ising_to_json(const IsingPolynomial &h) {
    nlohmann::json j;
    j["n_vars"] = h.num_qubits();
    j["constant"] = h.constant();
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : h.terms()) {
        terms.push_back({{"vars", m}, {"c", c}});
    }
    j["terms"] = std::move(terms);
    return j.dump() + "\n";
}

IsingPolynomial ising_from_json(const std::string &text) {
    try {
        const auto j = nlohmann::json::parse(text);
        IsingPolynomial h(j.at("n_vars").get<std::uint32_t>(), j.value("constant", 0.0));
        for (const auto &t : j.at("terms")) {
            h.add_term(t.at("vars").get<std::vector<std::uint32_t>>(), t.at("c").get<double>());
        }
        return h;
    } catch (const nlohmann::json::exception &e) {
        throw ParseError(std::string("Ising JSON: ") + e.what());
    }
}

}  // namespace tangle
