/*
   Copyright 2026 The rieszlab Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdlib>
#include <map>

namespace rieszlab {

using cplx = std::complex<double>;

/// Coefficients smaller than this are dropped after arithmetic so supports
/// stay finite under repeated multiplication.
inline constexpr double kCoeffPruneThreshold = 1e-15;

/// Sparse trigonometric (Laurent) polynomial on the unit circle:
/// f(lambda) = sum_k c(k) lambda^k over a finite set of integer frequencies.
///
/// The ordered map gives a canonical iteration order, so every reduction
/// over the support is deterministic.
class LaurentPoly {
public:
    using Coeffs = std::map<std::int64_t, cplx>;

    LaurentPoly() = default;

    static LaurentPoly constant(cplx c) {
        LaurentPoly f;
        f.set(0, c);
        return f;
    }

    static LaurentPoly monomial(std::int64_t k, cplx c) {
        LaurentPoly f;
        f.set(k, c);
        return f;
    }

    const Coeffs& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    cplx coeff(std::int64_t k) const {
        auto it = coeffs_.find(k);
        return it == coeffs_.end() ? cplx(0.0) : it->second;
    }

    void set(std::int64_t k, cplx c) {
        if (std::abs(c) <= kCoeffPruneThreshold)
            coeffs_.erase(k);
        else
            coeffs_[k] = c;
    }

    void add(std::int64_t k, cplx c) { set(k, coeff(k) + c); }

    std::int64_t max_abs_frequency() const {
        std::int64_t m = 0;
        for (const auto& [k, c] : coeffs_) m = std::max(m, std::abs(k));
        return m;
    }

    LaurentPoly operator+(const LaurentPoly& g) const {
        LaurentPoly out = *this;
        for (const auto& [k, c] : g.coeffs_) out.add(k, c);
        return out;
    }

    LaurentPoly operator*(const LaurentPoly& g) const {
        LaurentPoly out;
        for (const auto& [k1, c1] : coeffs_)
            for (const auto& [k2, c2] : g.coeffs_) out.add(k1 + k2, c1 * c2);
        return out;
    }

    LaurentPoly operator*(cplx s) const {
        LaurentPoly out;
        for (const auto& [k, c] : coeffs_) out.set(k, c * s);
        return out;
    }

    LaurentPoly conjugate() const {
        LaurentPoly out;
        for (const auto& [k, c] : coeffs_) out.set(-k, std::conj(c));
        return out;
    }

    /// True iff the polynomial is real-valued on T: c(-k) == conj(c(k)).
    bool is_real(double tol = 1e-12) const {
        for (const auto& [k, c] : coeffs_)
            if (std::abs(coeff(-k) - std::conj(c)) > tol) return false;
        return true;
    }

    /// Exact term summation at a point of T.
    cplx evaluate(cplx lambda) const {
        cplx acc(0.0);
        for (const auto& [k, c] : coeffs_) acc += c * unit_power(lambda, k);
        return acc;
    }

    double evaluate_real(double theta) const {
        return evaluate(std::polar(1.0, theta)).real();
    }

private:
    static cplx unit_power(cplx lambda, std::int64_t k) {
        // lambda^{-1} = conj(lambda) on T
        cplx base = k >= 0 ? lambda : std::conj(lambda);
        std::uint64_t e = static_cast<std::uint64_t>(k >= 0 ? k : -k);
        cplx acc(1.0);
        while (e != 0) {
            if (e & 1) acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    Coeffs coeffs_;
};

/// Parseval pairing on T: <f, g> = sum_k c_f(k) conj(c_g(k)).
inline cplx circle_inner_product(const LaurentPoly& f, const LaurentPoly& g) {
    cplx acc(0.0);
    for (const auto& [k, c] : f.coeffs()) acc += c * std::conj(g.coeff(k));
    return acc;
}

}  // namespace rieszlab
