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
#include <cstdint>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "rieszlab/circle_riesz.hpp"
#include "rieszlab/errors.hpp"
#include "rieszlab/laurent_poly.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab {

struct DimensionEstimate {
    std::string method;
    double value = 0.0;
    double stderr_ = 0.0;            // from the fit residuals
    std::vector<double> log_scale;   // abscissa of the fitted line
    std::vector<double> log_count;   // ordinate
    bool degenerate = false;
};

namespace detail {

/// Least-squares slope with residual-based standard error.
inline void fit_slope(const std::vector<double>& x, const std::vector<double>& y,
                      double& slope, double& stderr_out) {
    const std::size_t n = x.size();
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= double(n);
    my /= double(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    slope = sxy / sxx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - my - slope * (x[i] - mx);
        rss += r * r;
    }
    stderr_out = n > 2 ? std::sqrt(rss / double(n - 2) / sxx) : 0.0;
}

}  // namespace detail

/// Correlation-integral dimension: the slope of log C(r) against log r,
/// with C(r) the fraction of point pairs within distance r.  `distance` is
/// called with index pairs i < j.
inline DimensionEstimate correlation_dimension(
    std::size_t n_points, const std::function<double(std::size_t, std::size_t)>& distance,
    std::vector<double> radii) {
    if (n_points < 32) throw std::invalid_argument("correlation_dimension: too few samples");
    std::sort(radii.begin(), radii.end());
    std::vector<std::uint64_t> bucket(radii.size() + 1, 0);
    for (std::size_t i = 0; i < n_points; ++i) {
        for (std::size_t j = i + 1; j < n_points; ++j) {
            const double d = distance(i, j);
            const auto it = std::lower_bound(radii.begin(), radii.end(), d);
            ++bucket[std::size_t(it - radii.begin())];
        }
    }
    const double total_pairs = 0.5 * double(n_points) * double(n_points - 1);
    DimensionEstimate est;
    est.method = "correlation";
    std::uint64_t cum = 0;
    for (std::size_t r = 0; r < radii.size(); ++r) {
        cum += bucket[r];
        if (cum == 0) continue;  // no pairs this close yet: skip the scale
        est.log_scale.push_back(std::log(radii[r]));
        est.log_count.push_back(std::log(double(cum) / total_pairs));
    }
    if (est.log_scale.size() < 2) {
        est.degenerate = true;
        return est;
    }
    detail::fit_slope(est.log_scale, est.log_count, est.value, est.stderr_);
    return est;
}

inline double circle_distance(double theta_a, double theta_b) {
    return 2.0 * std::abs(std::sin(0.5 * (theta_a - theta_b)));
}

inline DimensionEstimate correlation_dimension_circle(const std::vector<double>& angles,
                                                      const std::vector<double>& radii) {
    return correlation_dimension(
        angles.size(),
        [&](std::size_t i, std::size_t j) { return circle_distance(angles[i], angles[j]); },
        radii);
}

inline DimensionEstimate correlation_dimension_sphere(
    const std::vector<std::array<cplx, 2>>& points, const std::vector<double>& radii) {
    return correlation_dimension(
        points.size(),
        [&](std::size_t i, std::size_t j) {
            return std::sqrt(std::norm(points[i][0] - points[j][0]) +
                             std::norm(points[i][1] - points[j][1]));
        },
        radii);
}

/// Box counting on the flat torus T^n.  `boxes_per_side` holds the scale
/// ladder; the estimate is the slope of log N(B) against log B.
inline DimensionEstimate box_counting(const std::vector<std::vector<double>>& angle_tuples,
                                      const std::vector<int>& boxes_per_side) {
    if (angle_tuples.empty()) throw std::invalid_argument("box_counting: no samples");
    const std::size_t dim = angle_tuples.front().size();
    if (dim == 0 || dim > 3) throw std::invalid_argument("box_counting: dimension must be 1..3");
    DimensionEstimate est;
    est.method = "box";
    for (int b : boxes_per_side) {
        std::set<std::uint64_t> occupied;
        for (const auto& point : angle_tuples) {
            std::uint64_t key = 0;
            for (std::size_t c = 0; c < dim; ++c) {
                double frac = point[c] / CounterRng::two_pi;
                frac -= std::floor(frac);
                const auto cell = std::uint64_t(std::min(double(b) - 1.0, frac * double(b)));
                key = key * std::uint64_t(b) + cell;
            }
            occupied.insert(key);
        }
        if (occupied.empty()) continue;
        est.log_scale.push_back(std::log(double(b)));
        est.log_count.push_back(std::log(double(occupied.size())));
    }
    if (est.log_scale.size() < 2) {
        est.degenerate = true;
        return est;
    }
    detail::fit_slope(est.log_scale, est.log_count, est.value, est.stderr_);
    return est;
}

inline std::vector<double> uniform_circle_samples(std::size_t count, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> out(count);
    for (double& a : out) a = rng.angle();
    return out;
}

inline std::vector<std::vector<double>> uniform_torus_samples(std::size_t dim, std::size_t count,
                                                              std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<std::vector<double>> out(count, std::vector<double>(dim));
    for (auto& point : out)
        for (double& a : point) a = rng.angle();
    return out;
}

inline std::vector<std::array<cplx, 2>> uniform_sphere_samples(std::size_t count,
                                                               std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<std::array<cplx, 2>> out(count);
    for (auto& z : out) z = rng.sphere_point();
    return out;
}

/// One tensor factor of a product measure on T^n.
struct TorusFactor {
    enum class Kind { point_mass, lebesgue, density };
    Kind kind = Kind::lebesgue;
    double angle = 0.0;       // point_mass position
    LaurentPoly density;      // density w.r.t. m, must integrate to 1

    cplx fourier(std::int64_t k) const {
        switch (kind) {
            case Kind::point_mass: return std::polar(1.0, -double(k) * angle);
            case Kind::lebesgue: return k == 0 ? 1.0 : 0.0;
            case Kind::density: return density.coeff(k);
        }
        return 0.0;
    }

    /// Frequencies with a nonzero coefficient, clipped to |k| <= cutoff.
    std::vector<std::int64_t> support(std::int64_t cutoff) const {
        std::vector<std::int64_t> out;
        switch (kind) {
            case Kind::point_mass:
                for (std::int64_t k = -cutoff; k <= cutoff; ++k) out.push_back(k);
                break;
            case Kind::lebesgue: out.push_back(0); break;
            case Kind::density:
                for (const auto& [k, c] : density.coeffs())
                    if (std::abs(k) <= cutoff) out.push_back(k);
                break;
        }
        return out;
    }
};

/// Product measure on T^n with computable Fourier coefficients
/// mu_hat(k_1, ..., k_n) = prod of factor coefficients.
struct TorusMeasureSpec {
    std::vector<TorusFactor> factors;

    std::size_t dim() const { return factors.size(); }

    cplx fourier(const std::vector<std::int64_t>& k) const {
        cplx acc(1.0);
        for (std::size_t i = 0; i < factors.size(); ++i) acc *= factors[i].fourier(k[i]);
        return acc;
    }

    std::vector<std::vector<double>> sample(std::size_t count, std::uint64_t seed) const {
        CounterRng rng(seed);
        std::vector<std::vector<double>> out(count, std::vector<double>(dim()));
        std::vector<std::vector<double>> density_samples(factors.size());
        for (std::size_t f = 0; f < factors.size(); ++f) {
            if (factors[f].kind != TorusFactor::Kind::density) continue;
            density_samples[f] = sample_laurent_density(factors[f].density, count,
                                                        rng.next_u64());
        }
        for (std::size_t i = 0; i < count; ++i)
            for (std::size_t f = 0; f < factors.size(); ++f) {
                switch (factors[f].kind) {
                    case TorusFactor::Kind::point_mass: out[i][f] = factors[f].angle; break;
                    case TorusFactor::Kind::lebesgue: out[i][f] = rng.angle(); break;
                    case TorusFactor::Kind::density: out[i][f] = density_samples[f][i]; break;
                }
            }
        return out;
    }

private:
    static std::vector<double> sample_laurent_density(const LaurentPoly& density,
                                                      std::size_t count, std::uint64_t seed) {
        constexpr std::size_t grid = 1u << 12;
        std::vector<double> mass(grid);
        double total = 0.0;
        for (std::size_t m = 0; m < grid; ++m) {
            const double theta = CounterRng::two_pi * (double(m) + 0.5) / double(grid);
            mass[m] = std::max(0.0, density.evaluate_real(theta));
            total += mass[m];
        }
        std::vector<double> cum(grid + 1, 0.0);
        for (std::size_t m = 0; m < grid; ++m) cum[m + 1] = cum[m] + mass[m];
        CounterRng rng(seed);
        std::vector<double> out(count);
        for (std::size_t i = 0; i < count; ++i) {
            const double u = rng.u01() * total;
            const auto it = std::upper_bound(cum.begin() + 1, cum.end(), u);
            const std::size_t cell = std::size_t(it - cum.begin()) - 1;
            const double frac = mass[cell] > 0.0 ? (u - cum[cell]) / mass[cell] : 0.5;
            out[i] = CounterRng::two_pi * (double(cell) + frac) / double(grid);
        }
        return out;
    }
};

struct PluriharmonicReport {
    bool pluriharmonic = false;
    double max_violation = 0.0;
    std::vector<std::int64_t> worst_index;
};

/// A measure on T^n is pluriharmonic iff mu_hat vanishes off
/// Z_+^n union Z_-^n.  Scans every mixed-sign multi-index with
/// |k_i| <= cutoff and reports the largest violating coefficient.
/// The functor form works for any measure with computable coefficients.
inline PluriharmonicReport is_pluriharmonic(
    std::size_t n, const std::function<cplx(const std::vector<std::int64_t>&)>& fourier,
    std::int64_t cutoff, double tol = 1e-12) {
    if (cutoff < 1) throw std::invalid_argument("is_pluriharmonic: cutoff must be >= 1");
    PluriharmonicReport report;
    report.worst_index.assign(n, 0);
    std::vector<std::int64_t> k(n, -cutoff);
    while (true) {
        bool has_pos = false, has_neg = false;
        for (std::int64_t ki : k) {
            has_pos |= ki > 0;
            has_neg |= ki < 0;
        }
        if (has_pos && has_neg) {
            const double v = std::abs(fourier(k));
            if (v > report.max_violation) {
                report.max_violation = v;
                report.worst_index = k;
            }
        }
        std::size_t c = 0;
        while (c < n && ++k[c] > cutoff) k[c++] = -cutoff;
        if (c == n) break;
    }
    report.pluriharmonic = report.max_violation <= tol;
    return report;
}

inline PluriharmonicReport is_pluriharmonic(const TorusMeasureSpec& spec, std::int64_t cutoff,
                                            double tol = 1e-12) {
    return is_pluriharmonic(
        spec.dim(), [&](const std::vector<std::int64_t>& k) { return spec.fourier(k); }, cutoff,
        tol);
}

/// Fourier-side torus energy: sum over 0 < |k| <= cutoff (Euclidean |k|,
/// componentwise |k_i| <= cutoff) of |k|^{t-n} |mu_hat(k)|^2, enumerated
/// over the product of the factor supports.
inline double torus_energy(const TorusMeasureSpec& spec, double t, std::int64_t cutoff) {
    const std::size_t n = spec.dim();
    if (!(t > 0.0 && t < double(n)))
        throw std::invalid_argument("torus_energy: t must lie in (0, n)");
    std::vector<std::vector<std::int64_t>> supports;
    double combinations = 1.0;
    for (const TorusFactor& f : spec.factors) {
        supports.push_back(f.support(cutoff));
        combinations *= double(supports.back().size());
    }
    if (combinations > 5e7)
        throw invariant_error("torus_energy: spectrum enumeration too large");

    double acc = 0.0;
    std::vector<std::size_t> idx(n, 0);
    std::vector<std::int64_t> k(n, 0);
    while (true) {
        double norm_sq = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            k[i] = supports[i][idx[i]];
            norm_sq += double(k[i]) * double(k[i]);
        }
        if (norm_sq > 0.0) {
            const double coeff_sq = std::norm(spec.fourier(k));
            if (coeff_sq > 0.0)
                acc += std::pow(std::sqrt(norm_sq), t - double(n)) * coeff_sq;
        }
        std::size_t c = 0;
        while (c < n && ++idx[c] == supports[c].size()) idx[c++] = 0;
        if (c == n) break;
    }
    return acc;
}

/// The sharp example delta_1 x m^(n-1): a pluriharmonic measure of
/// Hausdorff dimension exactly n - 1.
inline TorusMeasureSpec plh_sharp_example(std::size_t n) {
    if (n < 2) throw std::invalid_argument("plh_sharp_example: n must be >= 2");
    TorusMeasureSpec spec;
    spec.factors.push_back({TorusFactor::Kind::point_mass, 0.0, {}});
    for (std::size_t i = 1; i < n; ++i)
        spec.factors.push_back({TorusFactor::Kind::lebesgue, 0.0, {}});
    return spec;
}

struct PlhExampleReport {
    std::size_t n = 0;
    PluriharmonicReport pluriharmonic;
    /// I_m = S(2^{m+1}) - S(2^m) doubling increments of the partial energy
    /// sums; their ratio separates convergent (< 1) from divergent (> 1).
    double increment_ratio_below = 0.0;  // at t = n - 1 - 0.2
    double increment_ratio_above = 0.0;  // at t = n - 1 + 0.2
    double relative_increment_below = 0.0;  // (S(2^10) - S(2^9)) / S(2^10)
    double relative_increment_above = 0.0;
    DimensionEstimate box;
};

inline PlhExampleReport plh_example(std::size_t n, std::size_t samples, std::uint64_t seed) {
    const TorusMeasureSpec spec = plh_sharp_example(n);
    PlhExampleReport report;
    report.n = n;
    report.pluriharmonic = is_pluriharmonic(spec, 8);

    auto increments = [&](double t, double& last_ratio, double& rel_increment) {
        std::vector<double> s;
        for (int m = 5; m <= 10; ++m) s.push_back(torus_energy(spec, t, std::int64_t(1) << m));
        std::vector<double> inc;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) inc.push_back(s[i + 1] - s[i]);
        last_ratio = inc.back() / inc[inc.size() - 2];
        rel_increment = (s.back() - s[s.size() - 2]) / s.back();
    };
    increments(double(n) - 1.2, report.increment_ratio_below, report.relative_increment_below);
    increments(double(n) - 0.8, report.increment_ratio_above, report.relative_increment_above);

    report.box = box_counting(spec.sample(samples, seed), {4, 8, 16, 32});
    return report;
}

}  // namespace rieszlab
