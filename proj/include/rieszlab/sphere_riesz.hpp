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

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/circle_riesz.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/harmonics.hpp"
#include "rieszlab/monomial_poly.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/rw_search.hpp"

namespace rieszlab {

/// One factor of a Riesz triple: degree j_k, coefficient a_k in the open
/// unit disk, and a holomorphic polynomial R_k of bidegree (j_k, 0) with
/// certified sup norm <= 1 and L2 norm >= delta.
struct RieszFactor {
    std::int64_t degree = 0;
    cplx a;
    BidegreePoly r;

    std::vector<cplx> holo_coeffs() const {
        std::vector<cplx> c(std::size_t(degree) + 1, 0.0);
        for (const auto& [key, v] : r.poly.coeffs())
            c[Exponents::unpack(key).a1] = v;
        return c;
    }
};

struct RieszTriple {
    std::vector<RieszFactor> factors;
    double delta = 0.0;  // claimed common lower bound on the L2 norms

    std::size_t size() const { return factors.size(); }
    std::vector<std::int64_t> frequencies() const {
        std::vector<std::int64_t> j;
        for (const auto& f : factors) j.push_back(f.degree);
        return j;
    }
    std::vector<double> moduli() const {
        std::vector<double> m;
        for (const auto& f : factors) m.push_back(std::abs(f.a));
        return m;
    }
};

inline RieszFactor make_factor(cplx a, const RWCertificate& cert) {
    return RieszFactor{cert.degree, a, cert.to_poly()};
}

/// Validation report: every violated invariant is listed separately, and the
/// achieved L2 norm (the delta certificate) is recorded per factor.
struct TripleValidationReport {
    struct Violation {
        std::size_t factor_index;
        std::string what;
    };
    std::vector<Violation> violations;
    std::vector<double> l2_per_factor;
    std::vector<double> sup_per_factor;
    bool valid() const { return violations.empty(); }
};

inline TripleValidationReport validate(const RieszTriple& triple) {
    TripleValidationReport report;
    for (std::size_t k = 0; k < triple.size(); ++k) {
        const RieszFactor& f = triple.factors[k];
        if (f.degree <= 0)
            report.violations.push_back({k, "degree must be positive"});
        if (k > 0 && f.degree < 3 * triple.factors[k - 1].degree)
            report.violations.push_back({k, "lacunarity j_{k+1} >= 3 j_k violated"});
        if (std::abs(f.a) >= 1.0)
            report.violations.push_back({k, "|a_k| < 1 violated"});
        if (f.r.p != int(f.degree) || f.r.q != 0)
            report.violations.push_back({k, "R_k is not of bidegree (j_k, 0)"});

        const double l2 = std::sqrt(sphere_norm_sq(f.r.poly));
        report.l2_per_factor.push_back(l2);
        double sup = 0.0;
        if (f.r.q == 0 && f.r.p == int(f.degree)) {
            sup = rw_sup_certify(f.holo_coeffs(), int(f.degree));
            if (sup > 1.0 + 1e-6)
                report.violations.push_back(
                    {k, "certified sup norm " + std::to_string(sup) + " exceeds 1 + 1e-6"});
        }
        report.sup_per_factor.push_back(sup);
        if (l2 < triple.delta - 1e-12)
            report.violations.push_back(
                {k, "L2 norm " + std::to_string(l2) + " below delta = " +
                        std::to_string(triple.delta)});
    }
    return report;
}

/// Finite truncation prod_{k<=K} (conj(a_k R_k)/2 + 1 + a_k R_k / 2) as an
/// expanded polynomial density on the sphere.
struct SpherePartialProduct {
    std::size_t factor_count = 0;
    MonomialPoly poly;
};

inline SpherePartialProduct sphere_partial_product(const RieszTriple& triple,
                                                   std::size_t k_count) {
    if (k_count > triple.size())
        throw std::invalid_argument("sphere_partial_product: K exceeds factor count");
    MonomialPoly prod = MonomialPoly::constant(1.0);
    for (std::size_t k = 0; k < k_count; ++k) {
        const RieszFactor& f = triple.factors[k];
        MonomialPoly factor = MonomialPoly::constant(1.0) + f.r.poly * (f.a * 0.5) +
                              f.r.poly.conjugate() * (std::conj(f.a) * 0.5);
        prod = prod * factor;
    }
    return SpherePartialProduct{k_count, std::move(prod)};
}

/// Pointwise value of the same product in factored form,
/// prod_k (1 + Re(a_k R_k(z))); exact nonnegativity makes this the
/// reference for evaluation checks and Monte Carlo.
inline double factored_density_value(const RieszTriple& triple, std::size_t k_count,
                                     const std::array<cplx, 2>& z) {
    double value = 1.0;
    for (std::size_t k = 0; k < k_count; ++k)
        value *= 1.0 + (triple.factors[k].a * triple.factors[k].r.poly.evaluate(z)).real();
    return value;
}

/// Gamma_k = {±j_k + sum_{l<k} eps_l j_l : eps_l in {0, ±1}}, enumerated in
/// a canonical order (top sign first, then base-3 digits of the lower eps).
inline std::vector<SignedCombination> gamma_set(const std::vector<std::int64_t>& j,
                                                std::size_t k) {
    if (k == 0 || k > j.size()) throw std::invalid_argument("gamma_set: bad index");
    std::vector<SignedCombination> out;
    std::uint64_t lower_count = 1;
    for (std::size_t l = 0; l + 1 < k; ++l) lower_count *= 3;
    out.reserve(2 * lower_count);
    for (int top : {+1, -1}) {
        for (std::uint64_t code = 0; code < lower_count; ++code) {
            SignedCombination comb;
            comb.eps.assign(k, 0);
            comb.eps[k - 1] = top;
            std::uint64_t c = code;
            for (std::size_t l = 0; l + 1 < k; ++l) {
                const int digit = int(c % 3);  // 0, 1, 2 -> 0, +1, -1
                comb.eps[l] = digit == 2 ? -1 : digit;
                c /= 3;
            }
            comb.gamma = comb.recompute(j);
            out.push_back(std::move(comb));
        }
    }
    return out;
}

/// All frequencies p - q that the K-factor product can carry:
/// {0} united with Gamma_1, ..., Gamma_K.
inline std::set<std::int64_t> spectrum_structure(const std::vector<std::int64_t>& j,
                                                 std::size_t k_count) {
    std::set<std::int64_t> out{0};
    for (std::size_t k = 1; k <= k_count; ++k)
        for (const auto& comb : gamma_set(j, k)) out.insert(comb.gamma);
    return out;
}

/// Squared L2 norm of the expansion term selected by eps: the product of
/// (a_l / 2) R_{j_l} (or its conjugate, per the sign) over the nonzero
/// entries.  By uniqueness of signed representations this equals
/// sum_{p-q=gamma} ||Pi_{p,q}||^2 for the corresponding partial product.
inline double gamma_projection_mass(const RieszTriple& triple, const SignedCombination& comb) {
    if (comb.eps.empty() || comb.eps.size() > triple.size())
        throw std::invalid_argument("gamma_projection_mass: eps length out of range");
    if (comb.eps.back() == 0)
        throw std::invalid_argument("gamma_projection_mass: top index must have eps = ±1");
    MonomialPoly term = MonomialPoly::constant(1.0);
    for (std::size_t l = 0; l < comb.eps.size(); ++l) {
        const RieszFactor& f = triple.factors[l];
        if (comb.eps[l] == 1)
            term = term * (f.r.poly * (f.a * 0.5));
        else if (comb.eps[l] == -1)
            term = term * (f.r.poly.conjugate() * (std::conj(f.a) * 0.5));
    }
    return sphere_norm_sq(term);
}

/// Lower bounds for the sphere of C^2 (ambient Hausdorff dimension 3).
struct SphereDimensionReport {
    double alpha0 = 0.0;
    double energy_lb = 3.0;      // 3 - alpha0
    double hausdorff_lb = 3.0;   // 3 - alpha0
    double simplified_term = 0.0;
    double simplified_lb = 3.0;  // 3 - simplified_term
    double band_floor = 2.0;     // spectral-band floor 2n - 2
    double final_lb = 3.0;       // max of the floors
    std::size_t truncation = 0;
    std::size_t window = 0;
};

inline SphereDimensionReport sphere_bounds(const RieszTriple& triple, std::size_t k_max,
                                           std::size_t window) {
    SphereDimensionReport r;
    r.alpha0 = alpha0(triple.frequencies(), triple.moduli(), k_max, window);
    r.energy_lb = 3.0 - r.alpha0;
    r.hausdorff_lb = 3.0 - r.alpha0;
    r.simplified_term = simplified_bound_term(triple.frequencies(), triple.moduli(), k_max, window);
    r.simplified_lb = 3.0 - r.simplified_term;
    r.final_lb = std::max({r.hausdorff_lb, r.simplified_lb, r.band_floor});
    r.truncation = k_max;
    r.window = window;
    return r;
}

struct McEstimate {
    double estimate = 0.0;
    double stderr_ = 0.0;
    std::size_t pairs = 0;
};

/// Monte Carlo t-energy of the K-factor density f:
/// E[f(x) f(y) |x - y|^{-t}] over independent uniform pairs on the sphere.
/// Refuses t >= 3, where the integrand is no longer integrable for uniform
/// pairs.  Deterministic given the seed; sample i depends only on (seed, i).
inline McEstimate mc_energy(const RieszTriple& triple, std::size_t k_count, double t,
                            std::size_t pairs, std::uint64_t seed) {
    if (!(t > 0.0 && t < 3.0))
        throw std::invalid_argument("mc_energy: t must lie in (0, 3)");
    if (pairs < 2) throw std::invalid_argument("mc_energy: need at least 2 pairs");
    const CounterRng root(seed);
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t i = 0; i < pairs; ++i) {
        CounterRng rx = root.at(2 * i);
        CounterRng ry = root.at(2 * i + 1);
        const auto x = rx.sphere_point();
        const auto y = ry.sphere_point();
        const double dx0 = (x[0] - y[0]).real(), dx1 = (x[0] - y[0]).imag();
        const double dx2 = (x[1] - y[1]).real(), dx3 = (x[1] - y[1]).imag();
        const double dist = std::sqrt(dx0 * dx0 + dx1 * dx1 + dx2 * dx2 + dx3 * dx3);
        const double v = factored_density_value(triple, k_count, x) *
                         factored_density_value(triple, k_count, y) * std::pow(dist, -t);
        sum += v;
        sum_sq += v * v;
    }
    const double n = double(pairs);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return McEstimate{mean, std::sqrt(var / n), pairs};
}

/// The slice of the triple along the complex line through xi: the classical
/// circle Riesz product with c_k = a_k R_{j_k}(xi).
inline CircleRieszSpec slice_spec(const RieszTriple& triple, const std::array<cplx, 2>& xi) {
    const double norm = std::sqrt(std::norm(xi[0]) + std::norm(xi[1]));
    if (std::abs(norm - 1.0) > 1e-12)
        throw std::invalid_argument("slice_spec: xi must lie on the unit sphere");
    CircleRieszSpec spec;
    for (const RieszFactor& f : triple.factors) {
        spec.frequencies.push_back(f.degree);
        spec.coefficients.push_back(f.a * f.r.poly.evaluate(xi[0], xi[1]));
    }
    return spec;
}

struct DisintegrationResult {
    cplx lhs;    // exact sphere-side integral of f against the density
    cplx rhs;    // Monte Carlo average of the exact slice integrals
    double stderr_ = 0.0;
    std::size_t slices = 0;
};

/// Both sides of the disintegration identity for a test polynomial f:
/// the sphere pairing is computed from exact monomial integrals, the slice
/// side averages exact circle integrals of f restricted to random lines.
/// The two paths share no polynomial arithmetic beyond evaluation.
inline DisintegrationResult disintegration_check(const RieszTriple& triple, std::size_t k_count,
                                                 const MonomialPoly& f, std::size_t slice_count,
                                                 std::uint64_t seed) {
    if (slice_count < 2) throw std::invalid_argument("disintegration_check: need >= 2 slices");
    const SpherePartialProduct product = sphere_partial_product(triple, k_count);
    DisintegrationResult out;
    out.lhs = sphere_inner_product(f * product.poly, MonomialPoly::constant(1.0));
    out.slices = slice_count;

    const CounterRng root(seed);
    cplx sum(0.0);
    double sum_abs_sq = 0.0;
    for (std::size_t s = 0; s < slice_count; ++s) {
        CounterRng r = root.at(s);
        const auto xi = r.sphere_point();
        const CircleRieszSpec spec = slice_spec(triple, xi);
        const LaurentPoly f_on_line = f.slice(xi);
        cplx v(0.0);
        for (const auto& [d, g] : f_on_line.coeffs())
            v += g * circle_fourier_coefficient(spec, k_count, -d);
        sum += v;
        sum_abs_sq += std::norm(v);
    }
    const double n = double(slice_count);
    out.rhs = sum / n;
    const double var = std::max(0.0, (sum_abs_sq - n * std::norm(out.rhs)) / (n - 1.0));
    out.stderr_ = std::sqrt(var / n);
    return out;
}

struct BandedSpectrumReport {
    double epsilon0 = 0.0;     // min over the spectrum of |p/q - 1|, (0,0) excluded
    bool banded = false;       // epsilon0 > 0
    std::pair<int, int> witness{0, 0};
};

/// The spectral-band gap: every (p, q) != (0, 0) carrying mass keeps
/// |p/q - 1| at least epsilon0 away from the diagonal.  Components with
/// q = 0 are infinitely far from the diagonal and cannot be witnesses.
inline BandedSpectrumReport banded_spectrum(const SpectralDecomposition& d, double mass_tol = 1e-10) {
    BandedSpectrumReport report;
    double best = std::numeric_limits<double>::infinity();
    for (const auto& [pq, comp] : d.entries) {
        if (pq == std::make_pair(0, 0) || comp.norm_sq <= mass_tol) continue;
        if (pq.second == 0) continue;
        const double gap = std::abs(double(pq.first) / double(pq.second) - 1.0);
        if (gap < best) {
            best = gap;
            report.witness = pq;
        }
    }
    report.epsilon0 = std::isfinite(best) ? best : 1.0;
    report.banded = report.epsilon0 > 0.0;
    return report;
}

}  // namespace rieszlab
