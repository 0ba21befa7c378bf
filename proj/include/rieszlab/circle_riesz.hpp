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
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "rieszlab/errors.hpp"
#include "rieszlab/laurent_poly.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab {

/// Data of a classical Riesz product on T: lacunary frequencies J with
/// ratio >= 3 and factor coefficients c with |c_k| <= 1.  For a slice of a
/// sphere product, c_k = a_k R_{j_k}(xi).
struct CircleRieszSpec {
    std::vector<std::int64_t> frequencies;
    std::vector<cplx> coefficients;

    std::size_t size() const { return frequencies.size(); }
};

inline void validate(const CircleRieszSpec& spec) {
    if (spec.frequencies.size() != spec.coefficients.size())
        throw std::invalid_argument("circle spec: J and c length mismatch");
    for (std::size_t k = 0; k < spec.frequencies.size(); ++k) {
        if (spec.frequencies[k] <= 0)
            throw std::invalid_argument("circle spec: frequencies must be positive");
        if (k > 0 && spec.frequencies[k] < 3 * spec.frequencies[k - 1])
            throw std::invalid_argument("circle spec: lacunarity j_{k+1} >= 3 j_k violated at k=" +
                                        std::to_string(k));
        if (std::abs(spec.coefficients[k]) > 1.0 + 1e-12)
            throw std::invalid_argument("circle spec: |c_k| <= 1 violated at k=" +
                                        std::to_string(k));
    }
}

/// Finite truncation of the Riesz product density:
/// prod_{k<=N} (1 + (c_k lambda^{j_k} + conj(c_k) lambda^{-j_k}) / 2).
inline LaurentPoly circle_partial_product(const CircleRieszSpec& spec, std::size_t n_factors) {
    if (n_factors > spec.size())
        throw std::invalid_argument("circle_partial_product: N exceeds spec length");
    LaurentPoly prod = LaurentPoly::constant(1.0);
    for (std::size_t k = 0; k < n_factors; ++k) {
        LaurentPoly factor = LaurentPoly::constant(1.0);
        factor.add(spec.frequencies[k], spec.coefficients[k] * 0.5);
        factor.add(-spec.frequencies[k], std::conj(spec.coefficients[k]) * 0.5);
        prod = prod * factor;
    }
    return prod;
}

/// A representation gamma = sum_l eps_l j_l with eps_l in {-1, 0, +1}.
struct SignedCombination {
    std::vector<int> eps;
    std::int64_t gamma = 0;

    std::int64_t recompute(const std::vector<std::int64_t>& j) const {
        std::int64_t acc = 0;
        for (std::size_t l = 0; l < eps.size(); ++l) acc += eps[l] * j[l];
        return acc;
    }
};

/// The unique signed representation of gamma over j_1 < ... < j_K, when one
/// exists.  Lacunarity (ratio >= 3) makes the greedy choice forced: from the
/// top index down, eps_k = sign(gamma) exactly when |gamma| exceeds the sum
/// of the remaining lower frequencies, else eps_k = 0.
inline std::optional<SignedCombination> unique_representation(
    const std::vector<std::int64_t>& j, std::size_t k_count, std::int64_t gamma) {
    if (k_count > j.size())
        throw std::invalid_argument("unique_representation: K exceeds J length");
    std::vector<std::int64_t> prefix(k_count + 1, 0);
    for (std::size_t l = 0; l < k_count; ++l) prefix[l + 1] = prefix[l] + j[l];

    if (std::abs(gamma) > prefix[k_count]) return std::nullopt;
    SignedCombination comb;
    comb.eps.assign(k_count, 0);
    comb.gamma = gamma;
    std::int64_t rest = gamma;
    for (std::size_t k = k_count; k-- > 0;) {
        if (std::abs(rest) > prefix[k]) {
            const int sign = rest > 0 ? 1 : -1;
            comb.eps[k] = sign;
            rest -= sign * j[k];
            if (std::abs(rest) > prefix[k]) return std::nullopt;
        }
    }
    return rest == 0 ? std::optional<SignedCombination>(comb) : std::nullopt;
}

/// Closed-form Fourier coefficient of the N-factor partial product at
/// frequency gamma: the product of c_l/2 over eps_l = +1 and conj(c_l)/2
/// over eps_l = -1, or zero when gamma has no representation.
inline cplx circle_fourier_coefficient(const CircleRieszSpec& spec, std::size_t n_factors,
                                       std::int64_t gamma) {
    if (n_factors > spec.size())
        throw std::invalid_argument("circle_fourier_coefficient: N exceeds spec length");
    const auto comb = unique_representation(spec.frequencies, n_factors, gamma);
    if (!comb) return 0.0;
    cplx acc(1.0);
    for (std::size_t l = 0; l < n_factors; ++l) {
        if (comb->eps[l] == 1)
            acc *= spec.coefficients[l] * 0.5;
        else if (comb->eps[l] == -1)
            acc *= std::conj(spec.coefficients[l]) * 0.5;
    }
    return acc;
}

/// Fourier-side t-energy on T:
/// |mu_hat(0)|^2 + sum_{0 < |k| <= cutoff} |k|^{t-1} |mu_hat(k)|^2.
/// Symmetric in k -> -k, so the Fourier convention of the coefficient map
/// does not change the value.
inline double energy_fourier(const LaurentPoly& coeff_map, double t, std::int64_t cutoff) {
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("energy_fourier: t must lie in (0, 1)");
    double acc = 0.0;
    for (const auto& [k, c] : coeff_map.coeffs()) {
        if (k == 0)
            acc += std::norm(c);
        else if (std::abs(k) <= cutoff)
            acc += std::pow(double(std::abs(k)), t - 1.0) * std::norm(c);
    }
    return acc;
}

/// Direct double Riemann sum for the t-energy of a polynomial density:
/// (1/M^2) sum_{i != j} d_i d_j |lambda_i - lambda_j|^{-t} on the M-point
/// grid, diagonal pairs excluded.  For t < 1 this increases to I_t as M
/// grows.  The kernel only depends on i - j mod M, so the sum is a
/// circular correlation.
inline double energy_direct(const LaurentPoly& density, double t, std::size_t grid_size) {
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("energy_direct: t must lie in (0, 1)");
    const std::size_t m = grid_size;
    std::vector<double> d(m);
    double min_val = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        d[i] = density.evaluate_real(CounterRng::two_pi * double(i) / double(m));
        min_val = std::min(min_val, d[i]);
    }
    if (min_val < -1e-8)
        throw invariant_error("energy_direct: density is negative beyond tolerance (min " +
                              std::to_string(min_val) + ")");

    double acc = 0.0;
    for (std::size_t shift = 1; shift < m; ++shift) {
        const double w =
            std::pow(2.0 * std::sin(3.14159265358979323846 * double(shift) / double(m)), -t);
        double corr = 0.0;
        for (std::size_t i = 0; i + shift < m; ++i) corr += d[i] * d[i + shift];
        for (std::size_t i = m - shift; i < m; ++i) corr += d[i] * d[i + shift - m];
        acc += w * corr;
    }
    return acc / (double(m) * double(m));
}

namespace detail {

/// Numerators of the dimension-deficit ratio: num(k) = log(|a_k|^2/2)
/// + sum_{l<k} log(1 + |a_l|^2/2), plus the prefix sums needed for window
/// differences.  a entries are moduli in [0, 1]; zeros are flagged.
struct Alpha0Terms {
    std::vector<double> log_penalty;   // log(a_k^2 / 2), -inf encoded by skip flag
    std::vector<bool> skip;            // a_k == 0
    std::vector<double> sum_log1p;     // prefix: sum_{l<=k} log(1 + a_l^2/2)
    std::vector<double> sum_sq;        // prefix: sum_{l<=k} a_l^2
    std::vector<double> log_j;
};

inline Alpha0Terms alpha0_terms(const std::vector<double>& j, const std::vector<double>& a_mod,
                                std::size_t k_max) {
    if (k_max < 2) throw std::invalid_argument("alpha0: K must be at least 2");
    if (j.size() < k_max || a_mod.size() < k_max)
        throw std::invalid_argument("alpha0: J or a shorter than K");
    Alpha0Terms t;
    t.log_penalty.resize(k_max);
    t.skip.resize(k_max);
    t.sum_log1p.assign(k_max + 1, 0.0);
    t.sum_sq.assign(k_max + 1, 0.0);
    t.log_j.resize(k_max);
    for (std::size_t k = 0; k < k_max; ++k) {
        const double a = a_mod[k];
        if (a < 0.0 || a > 1.0 + 1e-12)
            throw std::invalid_argument("alpha0: moduli must lie in [0, 1]");
        if (k > 0 && j[k] < 3.0 * j[k - 1] * (1.0 - 1e-12))
            throw std::invalid_argument("alpha0: lacunarity ratio >= 3 violated");
        t.skip[k] = (a == 0.0);
        t.log_penalty[k] = t.skip[k] ? 0.0 : std::log(a * a / 2.0);
        t.sum_log1p[k + 1] = t.sum_log1p[k] + std::log1p(a * a / 2.0);
        t.sum_sq[k + 1] = t.sum_sq[k] + a * a;
        t.log_j[k] = std::log(j[k]);
    }
    return t;
}

inline std::vector<double> as_doubles(const std::vector<std::int64_t>& v) {
    return std::vector<double>(v.begin(), v.end());
}

}  // namespace detail

/// Finite surrogate for the limsup alpha_0 controlling the dimension
/// deficit.  Over the trailing `window` indices k, the asymptotic ratio
/// num(k) / log j_k is estimated by the difference quotient against the
/// baseline index k - window:
///
///   [num(k) - num(k0)] / [log j_k - log j_{k0}],
///   num(k) = log(|a_k|^2/2) + sum_{l<k} log(1 + |a_l|^2/2),
///
/// which reproduces the limsup exactly for geometric families (the plain
/// ratio converges only at rate 1/k and lands outside desk tolerances at
/// K = 50).  With an empty baseline (k0 = 0) the quotient reduces to the
/// plain ratio.  Indices with a_k = 0 contribute -inf and are skipped; the
/// result is clamped below at 0.
inline double alpha0(const std::vector<double>& j, const std::vector<double>& a_mod,
                     std::size_t k_max, std::size_t window) {
    if (window < 1 || window > k_max) throw std::invalid_argument("alpha0: bad window");
    const detail::Alpha0Terms terms = detail::alpha0_terms(j, a_mod, k_max);

    bool any = false;
    double best = 0.0;
    for (std::size_t k = k_max - window + 1; k <= k_max; ++k) {
        if (terms.skip[k - 1]) continue;
        std::size_t k0 = k > window ? k - window : 0;
        while (k0 >= 1 && terms.skip[k0 - 1]) --k0;  // baseline needs a finite penalty

        const double num_k = terms.log_penalty[k - 1] + terms.sum_log1p[k - 1];
        double slope;
        if (k0 == 0) {
            if (terms.log_j[k - 1] <= 0.0) continue;  // j_k = 1: ratio degenerates
            slope = num_k / terms.log_j[k - 1];
        } else {
            const double num_k0 = terms.log_penalty[k0 - 1] + terms.sum_log1p[k0 - 1];
            slope = (num_k - num_k0) / (terms.log_j[k - 1] - terms.log_j[k0 - 1]);
        }
        best = any ? std::max(best, slope) : slope;
        any = true;
    }
    if (!any) return 0.0;  // a == 0 everywhere: every term is -inf, the outer max clamps
    return std::max(0.0, best);
}

inline double alpha0(const std::vector<std::int64_t>& j, const std::vector<double>& a_mod,
                     std::size_t k_max, std::size_t window) {
    return alpha0(detail::as_doubles(j), a_mod, k_max, window);
}

/// The subtracted term of the simplified lower bound:
/// limsup (1/(2 log j_k)) sum_{l<k} |a_l|^2, estimated with the same
/// trailing-window difference quotient as alpha0.
inline double simplified_bound_term(const std::vector<double>& j,
                                    const std::vector<double>& a_mod, std::size_t k_max,
                                    std::size_t window) {
    if (window < 1 || window > k_max) throw std::invalid_argument("simplified_bound: bad window");
    const detail::Alpha0Terms terms = detail::alpha0_terms(j, a_mod, k_max);

    bool any = false;
    double best = 0.0;
    for (std::size_t k = k_max - window + 1; k <= k_max; ++k) {
        const std::size_t k0 = k > window ? k - window : 0;
        const double denom =
            k0 == 0 ? terms.log_j[k - 1] : terms.log_j[k - 1] - terms.log_j[k0 - 1];
        if (denom <= 0.0) continue;
        const double sum_hi = terms.sum_sq[k - 1];
        const double sum_lo = k0 == 0 ? 0.0 : terms.sum_sq[k0 - 1];
        const double value = (sum_hi - sum_lo) / (2.0 * denom);
        best = any ? std::max(best, value) : value;
        any = true;
    }
    if (!any) return 0.0;  // only when every difference quotient degenerates
    return best;
}

inline double simplified_bound_term(const std::vector<std::int64_t>& j,
                                    const std::vector<double>& a_mod, std::size_t k_max,
                                    std::size_t window) {
    return simplified_bound_term(detail::as_doubles(j), a_mod, k_max, window);
}

/// Lower bounds for the circle (ambient dimension 1).
struct CircleDimensionReport {
    double alpha0 = 0.0;
    double energy_dim_lb = 1.0;     // 1 - alpha0
    double hausdorff_lb = 1.0;      // 1 - alpha0
    double simplified_term = 0.0;   // the limsup term of the simplified bound
    double simplified_lb = 1.0;     // 1 - simplified_term
    std::size_t truncation = 0;
    std::size_t window = 0;
};

inline CircleDimensionReport circle_dimension_report(const std::vector<double>& j,
                                                     const std::vector<double>& a_mod,
                                                     std::size_t k_max, std::size_t window) {
    CircleDimensionReport r;
    r.alpha0 = alpha0(j, a_mod, k_max, window);
    r.energy_dim_lb = 1.0 - r.alpha0;
    r.hausdorff_lb = 1.0 - r.alpha0;
    r.simplified_term = simplified_bound_term(j, a_mod, k_max, window);
    r.simplified_lb = 1.0 - r.simplified_term;
    r.truncation = k_max;
    r.window = window;
    return r;
}

inline CircleDimensionReport circle_dimension_report(const std::vector<std::int64_t>& j,
                                                     const std::vector<double>& a_mod,
                                                     std::size_t k_max, std::size_t window) {
    return circle_dimension_report(detail::as_doubles(j), a_mod, k_max, window);
}

/// Inverse-CDF sampling of the N-factor density on a 2^16-cell grid.  The
/// density is evaluated in factored form, which is exactly nonnegative.
inline std::vector<double> sample_circle_riesz(const CircleRieszSpec& spec, std::size_t n_factors,
                                               std::size_t count, std::uint64_t seed) {
    if (n_factors > spec.size())
        throw std::invalid_argument("sample_circle_riesz: N exceeds spec length");
    constexpr std::size_t grid = 1u << 16;
    std::vector<double> mass(grid);
    double total = 0.0;
    for (std::size_t m = 0; m < grid; ++m) {
        const double theta = CounterRng::two_pi * (double(m) + 0.5) / double(grid);
        double value = 1.0;
        for (std::size_t k = 0; k < n_factors; ++k) {
            const cplx rot = std::polar(1.0, double(spec.frequencies[k]) * theta);
            value *= 1.0 + (spec.coefficients[k] * rot).real();
        }
        mass[m] = std::max(value, 0.0);
        total += mass[m];
    }
    std::vector<double> cum(grid + 1, 0.0);
    for (std::size_t m = 0; m < grid; ++m) cum[m + 1] = cum[m] + mass[m];

    CounterRng rng(seed);
    std::vector<double> angles(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double u = rng.u01() * total;
        const auto it = std::upper_bound(cum.begin() + 1, cum.end(), u);
        const std::size_t cell = std::size_t(it - cum.begin()) - 1;
        const double frac = mass[cell] > 0.0 ? (u - cum[cell]) / mass[cell] : 0.5;
        angles[i] = CounterRng::two_pi * (double(cell) + frac) / double(grid);
    }
    return angles;
}

}  // namespace rieszlab
