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
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "rieszlab/laurent_poly.hpp"

namespace rieszlab {

/// Exponent quadruple of a monomial z1^a1 z2^a2 conj(z1)^b1 conj(z2)^b2.
/// Packed into one integer so the map key order is the lexicographic order
/// on (a1, a2, b1, b2).
struct Exponents {
    std::uint16_t a1 = 0, a2 = 0, b1 = 0, b2 = 0;

    std::uint64_t packed() const {
        return (std::uint64_t(a1) << 48) | (std::uint64_t(a2) << 32) |
               (std::uint64_t(b1) << 16) | std::uint64_t(b2);
    }
    static Exponents unpack(std::uint64_t key) {
        return {std::uint16_t(key >> 48), std::uint16_t(key >> 32),
                std::uint16_t(key >> 16), std::uint16_t(key)};
    }

    int holo_degree() const { return int(a1) + int(a2); }
    int anti_degree() const { return int(b1) + int(b2); }
    int total_degree() const { return holo_degree() + anti_degree(); }

    Exponents conjugated() const { return {b1, b2, a1, a2}; }

    bool operator==(const Exponents&) const = default;
};

/// Exact integral of z^alpha conj(z)^beta over the normalized surface
/// measure of the unit sphere of C^n: zero unless alpha == beta, else
/// (n-1)! alpha! / (n-1+|alpha|)!.  Factorial ratios go through lgamma so
/// large degrees cannot overflow.
inline double monomial_sphere_integral(const Exponents& e, int n = 2) {
    if (e.a1 != e.b1 || e.a2 != e.b2) return 0.0;
    const double log_num = std::lgamma(double(n)) + std::lgamma(double(e.a1) + 1.0) +
                           std::lgamma(double(e.a2) + 1.0);
    const double log_den = std::lgamma(double(n) + double(e.holo_degree()));
    return std::exp(log_num - log_den);
}

/// Sparse polynomial in z1, z2, conj(z1), conj(z2) with complex coefficients.
/// Values are immutable in spirit: all operations return new polynomials.
class MonomialPoly {
public:
    using Coeffs = std::map<std::uint64_t, cplx>;

    MonomialPoly() = default;

    static MonomialPoly constant(cplx c) {
        MonomialPoly f;
        f.set({0, 0, 0, 0}, c);
        return f;
    }

    static MonomialPoly monomial(Exponents e, cplx c) {
        MonomialPoly f;
        f.set(e, c);
        return f;
    }

    const Coeffs& coeffs() const { return coeffs_; }
    bool empty() const { return coeffs_.empty(); }
    std::size_t support_size() const { return coeffs_.size(); }

    cplx coeff(Exponents e) const {
        auto it = coeffs_.find(e.packed());
        return it == coeffs_.end() ? cplx(0.0) : it->second;
    }

    void set(Exponents e, cplx c) {
        if (std::abs(c) <= kCoeffPruneThreshold)
            coeffs_.erase(e.packed());
        else
            coeffs_[e.packed()] = c;
    }

    void add(Exponents e, cplx c) { set(e, coeff(e) + c); }

    int total_degree() const {
        int d = 0;
        for (const auto& [key, c] : coeffs_)
            d = std::max(d, Exponents::unpack(key).total_degree());
        return d;
    }

    MonomialPoly operator+(const MonomialPoly& g) const {
        MonomialPoly out = *this;
        for (const auto& [key, c] : g.coeffs_) out.add(Exponents::unpack(key), c);
        return out;
    }

    MonomialPoly operator*(cplx s) const {
        MonomialPoly out;
        for (const auto& [key, c] : coeffs_) out.set(Exponents::unpack(key), c * s);
        return out;
    }

    /// Coefficientwise convolution over exponents.
    MonomialPoly operator*(const MonomialPoly& g) const {
        MonomialPoly out;
        for (const auto& [k1, c1] : coeffs_) {
            const Exponents e1 = Exponents::unpack(k1);
            for (const auto& [k2, c2] : g.coeffs_) {
                const Exponents e2 = Exponents::unpack(k2);
                const Exponents e{std::uint16_t(e1.a1 + e2.a1), std::uint16_t(e1.a2 + e2.a2),
                                  std::uint16_t(e1.b1 + e2.b1), std::uint16_t(e1.b2 + e2.b2)};
                out.add(e, c1 * c2);
            }
        }
        return out;
    }

    MonomialPoly conjugate() const {
        MonomialPoly out;
        for (const auto& [key, c] : coeffs_)
            out.set(Exponents::unpack(key).conjugated(), std::conj(c));
        return out;
    }

    /// Real-valued on C^2 iff coeff(conjugated exponent) == conj(coeff).
    bool is_conjugate_symmetric(double tol = 1e-12) const {
        for (const auto& [key, c] : coeffs_) {
            const Exponents e = Exponents::unpack(key);
            if (std::abs(coeff(e.conjugated()) - std::conj(c)) > tol) return false;
        }
        return true;
    }

    /// Exact term summation at a point of C^2.  Powers of the two
    /// coordinates are cached up to the maximal exponent in the support.
    cplx evaluate(cplx z1, cplx z2) const {
        int m1 = 0, m2 = 0;
        for (const auto& [key, c] : coeffs_) {
            const Exponents e = Exponents::unpack(key);
            m1 = std::max({m1, int(e.a1), int(e.b1)});
            m2 = std::max({m2, int(e.a2), int(e.b2)});
        }
        thread_local std::vector<cplx> p1, p2;
        fill_powers(p1, z1, m1);
        fill_powers(p2, z2, m2);
        cplx acc(0.0);
        for (const auto& [key, c] : coeffs_) {
            const Exponents e = Exponents::unpack(key);
            acc += c * p1[e.a1] * p2[e.a2] * std::conj(p1[e.b1] * p2[e.b2]);
        }
        return acc;
    }

    cplx evaluate(const std::array<cplx, 2>& z) const { return evaluate(z[0], z[1]); }

    /// Restriction to the complex line lambda -> lambda * xi, as a Laurent
    /// polynomial in lambda: each term contributes at frequency
    /// holo_degree - anti_degree with weight xi^alpha conj(xi)^beta.
    LaurentPoly slice(const std::array<cplx, 2>& xi) const {
        LaurentPoly out;
        for (const auto& [key, c] : coeffs_) {
            const Exponents e = Exponents::unpack(key);
            const cplx w = MonomialPoly::monomial(e, 1.0).evaluate(xi[0], xi[1]);
            out.add(e.holo_degree() - e.anti_degree(), c * w);
        }
        return out;
    }

private:
    static void fill_powers(std::vector<cplx>& p, cplx z, int m) {
        p.assign(std::size_t(m) + 1, cplx(1.0));
        for (int i = 1; i <= m; ++i) p[std::size_t(i)] = p[std::size_t(i) - 1] * z;
    }

    Coeffs coeffs_;
};

/// <f, g> = integral of f * conj(g) over the normalized sphere measure,
/// term by term through the exact monomial identity.
inline cplx sphere_inner_product(const MonomialPoly& f, const MonomialPoly& g, int n = 2) {
    cplx acc(0.0);
    for (const auto& [kf, cf] : f.coeffs()) {
        const Exponents ef = Exponents::unpack(kf);
        for (const auto& [kg, cg] : g.coeffs()) {
            const Exponents eg = Exponents::unpack(kg);
            // f * conj(g) has holomorphic part alpha_f + beta_g and
            // antiholomorphic part beta_f + alpha_g.
            const Exponents prod{std::uint16_t(ef.a1 + eg.b1), std::uint16_t(ef.a2 + eg.b2),
                                 std::uint16_t(ef.b1 + eg.a1), std::uint16_t(ef.b2 + eg.a2)};
            const double w = monomial_sphere_integral(prod, n);
            if (w != 0.0) acc += cf * std::conj(cg) * w;
        }
    }
    return acc;
}

inline double sphere_norm_sq(const MonomialPoly& f) {
    return sphere_inner_product(f, f).real();
}

/// Homogeneous polynomial all of whose terms have bidegree exactly (p, q).
struct BidegreePoly {
    int p = 0;
    int q = 0;
    MonomialPoly poly;

    BidegreePoly() = default;
    BidegreePoly(int p_, int q_, MonomialPoly f) : p(p_), q(q_), poly(std::move(f)) {
        for (const auto& [key, c] : poly.coeffs()) {
            const Exponents e = Exponents::unpack(key);
            if (e.holo_degree() != p || e.anti_degree() != q)
                throw std::invalid_argument("BidegreePoly: term of bidegree (" +
                                            std::to_string(e.holo_degree()) + "," +
                                            std::to_string(e.anti_degree()) +
                                            ") in a (" + std::to_string(p) + "," +
                                            std::to_string(q) + ") polynomial");
        }
    }
};

/// Holomorphic degree-j polynomial sum_i c_i z1^i z2^(j-i) as a BidegreePoly.
inline BidegreePoly holomorphic_poly(int j, const std::vector<cplx>& coeffs) {
    if (int(coeffs.size()) != j + 1)
        throw std::invalid_argument("holomorphic_poly: need j+1 coefficients");
    MonomialPoly f;
    for (int i = 0; i <= j; ++i)
        f.add({std::uint16_t(i), std::uint16_t(j - i), 0, 0}, coeffs[std::size_t(i)]);
    return BidegreePoly(j, 0, std::move(f));
}

}  // namespace rieszlab
