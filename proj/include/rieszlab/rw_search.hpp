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
#include <queue>
#include <stdexcept>
#include <vector>

#include "rieszlab/laurent_poly.hpp"  // cplx
#include "rieszlab/monomial_poly.hpp"
#include "rieszlab/rng.hpp"

namespace rieszlab {

/// A degree-j homogeneous holomorphic polynomial sum_i c_i z1^i z2^(j-i)
/// together with its exact L2 norm, a certified upper bound on its sup norm
/// over the sphere, and the quality ratio delta = l2 / sup.
struct RWCertificate {
    int degree = 0;
    std::vector<cplx> coeffs;
    double l2_norm = 0.0;
    double sup_bound = 0.0;
    double delta = 0.0;
    std::uint64_t seed = 0;
    std::uint64_t evaluations = 0;

    BidegreePoly to_poly() const { return holomorphic_poly(degree, coeffs); }
};

/// ||R||_{L2(S)} = sqrt(sum_i |c_i|^2 i! (j-i)! / (j+1)!), the n = 2 case of
/// the exact monomial integral.
inline double rw_l2_norm(const std::vector<cplx>& coeffs, int j) {
    if (int(coeffs.size()) != j + 1) throw std::invalid_argument("rw_l2_norm: need j+1 coeffs");
    double acc = 0.0;
    for (int i = 0; i <= j; ++i) {
        const double log_w = std::lgamma(double(i) + 1.0) + std::lgamma(double(j - i) + 1.0) -
                             std::lgamma(double(j) + 2.0);
        acc += std::norm(coeffs[std::size_t(i)]) * std::exp(log_w);
    }
    return std::sqrt(acc);
}

namespace detail {

/// max over the sphere of |z1^i z2^(j-i)| = sqrt(i^i (j-i)^(j-i) / j^j).
inline double monomial_sup(int i, int j) {
    if (j == 0) return 1.0;
    const double fi = double(i), fm = double(j - i), fj = double(j);
    double log_v = -fj * std::log(fj);
    if (i > 0) log_v += fi * std::log(fi);
    if (j - i > 0) log_v += fm * std::log(fm);
    return std::exp(0.5 * log_v);
}

/// Evaluates F = |R|^2 and its gradient on the chart
/// z = (cos(theta) e^{i phi}, sin(theta)); by homogeneity this chart covers
/// every value of |R| on the sphere.
struct RwChart {
    int j;
    const std::vector<cplx>& c;
    mutable std::vector<double> cp, sp;  // powers of cos/sin up to j+1

    explicit RwChart(int degree, const std::vector<cplx>& coeffs) : j(degree), c(coeffs) {
        cp.resize(std::size_t(j) + 2);
        sp.resize(std::size_t(j) + 2);
    }

    double value(double theta, double phi) const {
        fill(theta);
        const cplx rot = std::polar(1.0, phi);
        cplx r(0.0), e(1.0);
        for (int i = 0; i <= j; ++i) {
            r += c[std::size_t(i)] * cp[std::size_t(i)] * sp[std::size_t(j - i)] * e;
            e *= rot;
        }
        return std::norm(r);
    }

    double value_and_gradient(double theta, double phi, double& g_theta, double& g_phi) const {
        fill(theta);
        const cplx rot = std::polar(1.0, phi);
        cplx r(0.0), r_theta(0.0), r_phi(0.0), e(1.0);
        for (int i = 0; i <= j; ++i) {
            const int m = j - i;
            const cplx term = c[std::size_t(i)] * e;
            r += term * cp[std::size_t(i)] * sp[std::size_t(m)];
            double dtheta = 0.0;
            if (i > 0) dtheta -= double(i) * cp[std::size_t(i - 1)] * sp[std::size_t(m + 1)];
            if (m > 0) dtheta += double(m) * cp[std::size_t(i + 1)] * sp[std::size_t(m - 1)];
            r_theta += term * dtheta;
            r_phi += term * cp[std::size_t(i)] * sp[std::size_t(m)] * cplx(0.0, double(i));
            e *= rot;
        }
        g_theta = 2.0 * (std::conj(r) * r_theta).real();
        g_phi = 2.0 * (std::conj(r) * r_phi).real();
        return std::norm(r);
    }

private:
    void fill(double theta) const {
        const double ct = std::cos(theta), st = std::sin(theta);
        cp[0] = sp[0] = 1.0;
        for (int i = 1; i <= j + 1; ++i) {
            cp[std::size_t(i)] = cp[std::size_t(i - 1)] * ct;
            sp[std::size_t(i)] = sp[std::size_t(i - 1)] * st;
        }
    }
};

}  // namespace detail

struct SupCertOptions {
    double rel_gap = 2.5e-7;          // relative gap on |R|^2; ~1.25e-7 on |R|
    std::int64_t max_expansions = 500000;
    int coarse_cells_per_degree = 8;  // initial grid is (8j) x (8j), clamped
};

/// Certified upper bound on sup_S |R| for R = sum_i c_i z1^i z2^(j-i).
///
/// Branch-and-bound over the (theta, phi) chart.  Each rectangle gets the
/// second-order bound F(center) + |grad F(center)| r + H r^2 / 2 with
/// H = 5 j^2 * (running upper bound): F is a trigonometric polynomial of
/// degree 2j in theta and j in phi, so the directional Bernstein inequality
/// caps every second derivative by 5 j^2 sup F.  Rectangles whose bound
/// cannot beat the best evaluated value are discarded; the maximum surviving
/// bound is the certificate.  All tolerances are relative, which makes the
/// result exactly scale-equivariant: certifying rescaled coefficients
/// retraces the same path.
inline double rw_sup_certify(const std::vector<cplx>& coeffs, int j,
                             SupCertOptions opts = SupCertOptions{}) {
    if (int(coeffs.size()) != j + 1)
        throw std::invalid_argument("rw_sup_certify: need j+1 coeffs");
    if (j == 0) return std::abs(coeffs[0]);

    // Single-monomial supports have a closed-form maximum.
    int support = 0, only = -1;
    for (int i = 0; i <= j; ++i)
        if (std::abs(coeffs[std::size_t(i)]) != 0.0) {
            ++support;
            only = i;
        }
    if (support == 0) return 0.0;
    if (support == 1) return std::abs(coeffs[std::size_t(only)]) * detail::monomial_sup(only, j);

    const detail::RwChart chart(j, coeffs);

    double crude = 0.0;  // triangle-inequality bound on sup |R|
    for (int i = 0; i <= j; ++i)
        crude += std::abs(coeffs[std::size_t(i)]) * detail::monomial_sup(i, j);
    double running_ub = crude * crude;

    struct Cell {
        double theta, phi, h_theta, h_phi;
        double bound;
        std::uint64_t seq;
        bool operator<(const Cell& o) const {
            if (bound != o.bound) return bound < o.bound;
            return seq > o.seq;
        }
    };

    const double pi = 3.14159265358979323846;
    const int cells = std::clamp(opts.coarse_cells_per_degree * j, 16, 512);
    const double h_theta = (pi / 2.0) / (2.0 * cells);
    const double h_phi = (2.0 * pi) / (2.0 * cells);

    std::priority_queue<Cell> frontier;
    std::uint64_t seq = 0;
    double best = 0.0;

    auto push_cell = [&](double theta, double phi, double ht, double hp) {
        double g_theta, g_phi;
        const double f = chart.value_and_gradient(theta, phi, g_theta, g_phi);
        best = std::max(best, f);
        const double r = std::sqrt(ht * ht + hp * hp);
        const double grad = std::sqrt(g_theta * g_theta + g_phi * g_phi);
        const double hess = 5.0 * double(j) * double(j) * running_ub;
        const double bound = f + grad * r + 0.5 * hess * r * r;
        if (bound > best) frontier.push({theta, phi, ht, hp, bound, seq++});
    };

    for (int a = 0; a < cells; ++a)
        for (int b = 0; b < cells; ++b)
            push_cell((2 * a + 1) * h_theta, (2 * b + 1) * h_phi, h_theta, h_phi);

    std::int64_t expansions = 0;
    double cert = running_ub;
    while (!frontier.empty()) {
        const Cell top = frontier.top();
        cert = std::max(best, top.bound);
        if (top.bound <= best * (1.0 + opts.rel_gap)) break;
        if (expansions++ >= opts.max_expansions) break;  // still a valid bound, just loose
        frontier.pop();
        if (top.bound <= best) continue;  // stale: best improved after push
        running_ub = std::min(running_ub, cert);
        const double ht = top.h_theta / 2.0, hp = top.h_phi / 2.0;
        for (int dt = -1; dt <= 1; dt += 2)
            for (int dp = -1; dp <= 1; dp += 2)
                push_cell(top.theta + dt * ht, top.phi + dp * hp, ht, hp);
    }
    if (frontier.empty()) cert = best;
    return std::sqrt(cert);
}

/// Fast, non-certified sup estimate used to steer the search: coarse grid plus a
/// few shrinking local refinements around the best cell.
inline double rw_sup_estimate(const std::vector<cplx>& coeffs, int j) {
    if (j == 0) return std::abs(coeffs[0]);
    const detail::RwChart chart(j, coeffs);
    const double pi = 3.14159265358979323846;
    const int cells = std::clamp(8 * j + 8, 24, 160);
    double best = 0.0, best_theta = 0.0, best_phi = 0.0;
    for (int a = 0; a <= cells; ++a) {
        for (int b = 0; b < cells; ++b) {
            const double theta = (pi / 2.0) * double(a) / double(cells);
            const double phi = (2.0 * pi) * double(b) / double(cells);
            const double f = chart.value(theta, phi);
            if (f > best) {
                best = f;
                best_theta = theta;
                best_phi = phi;
            }
        }
    }
    double span_theta = (pi / 2.0) / double(cells);
    double span_phi = (2.0 * pi) / double(cells);
    for (int level = 0; level < 5; ++level) {
        const double t0 = best_theta, p0 = best_phi;
        for (int a = -4; a <= 4; ++a) {
            for (int b = -4; b <= 4; ++b) {
                const double theta =
                    std::clamp(t0 + span_theta * double(a) / 4.0, 0.0, pi / 2.0);
                const double phi = p0 + span_phi * double(b) / 4.0;
                const double f = chart.value(theta, phi);
                if (f > best) {
                    best = f;
                    best_theta = theta;
                    best_phi = phi;
                }
            }
        }
        span_theta /= 4.0;
        span_phi /= 4.0;
    }
    return std::sqrt(best);
}

namespace detail {

inline bool coeffs_less(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
        if (a[i].real() != b[i].real()) return a[i].real() < b[i].real();
        if (a[i].imag() != b[i].imag()) return a[i].imag() < b[i].imag();
    }
    return a.size() < b.size();
}

/// Rotate the global phase so the largest coefficient is real positive.
inline void canonicalize_phase(std::vector<cplx>& c) {
    std::size_t top = 0;
    for (std::size_t i = 1; i < c.size(); ++i)
        if (std::abs(c[i]) > std::abs(c[top])) top = i;
    if (std::abs(c[top]) == 0.0) return;
    const cplx rot = std::conj(c[top]) / std::abs(c[top]);
    for (cplx& x : c) x *= rot;
}

}  // namespace detail

/// Multi-start coordinate ascent on delta(c) = l2(c) / sup(c).
///
/// Starts: the sqrt-binomial profile and two sign-flipped variants, every
/// monomial, and seeded complex Gaussian vectors.  The ascent uses the fast
/// sup estimate; the final comparison between surviving candidates is done
/// with fully certified sup norms, and the winner is rescaled to certified
/// sup 1.  `budget` caps the number of objective evaluations; exhausting it
/// returns the best candidate so far.
inline RWCertificate rw_search(int j, std::uint64_t budget, std::uint64_t seed) {
    if (j < 1) throw std::invalid_argument("rw_search: degree must be >= 1");

    std::vector<std::vector<cplx>> starts;
    std::vector<cplx> binom(std::size_t(j) + 1);
    for (int i = 0; i <= j; ++i) {
        const double log_c = std::lgamma(double(j) + 1.0) - std::lgamma(double(i) + 1.0) -
                             std::lgamma(double(j - i) + 1.0);
        binom[std::size_t(i)] = std::exp(0.5 * log_c);
    }
    starts.push_back(binom);
    auto flipped = binom;
    for (int i = 0; i <= j; ++i)
        if (i % 2 == 1) flipped[std::size_t(i)] *= -1.0;
    starts.push_back(flipped);
    auto flipped2 = binom;
    for (int i = 0; i <= j; ++i)
        if ((i / 2) % 2 == 1) flipped2[std::size_t(i)] *= -1.0;
    starts.push_back(flipped2);
    for (int i = 0; i <= j; ++i) {
        std::vector<cplx> mono(std::size_t(j) + 1, 0.0);
        mono[std::size_t(i)] = 1.0;
        starts.push_back(std::move(mono));
    }
    CounterRng rng(seed);
    for (int s = 0; s < 6; ++s) {
        std::vector<cplx> c(std::size_t(j) + 1);
        for (cplx& x : c) x = cplx(rng.gaussian(), rng.gaussian());
        starts.push_back(std::move(c));
    }

    std::uint64_t evals = 0;
    auto objective = [&](const std::vector<cplx>& c) {
        ++evals;
        const double sup = rw_sup_estimate(c, j);
        return sup > 0.0 ? rw_l2_norm(c, j) / sup : 0.0;
    };

    std::vector<cplx> best_c = starts.front();
    double best_delta = objective(best_c);

    for (const auto& start : starts) {
        std::vector<cplx> c = start;
        double delta = objective(c);
        double step = 0.25;
        while (step > 3e-4 && evals < budget) {
            bool improved = false;
            double scale = 0.0;
            for (const cplx& x : c) scale = std::max(scale, std::abs(x));
            for (std::size_t i = 0; i <= std::size_t(j) && evals < budget; ++i) {
                const cplx dirs[4] = {cplx(1, 0), cplx(-1, 0), cplx(0, 1), cplx(0, -1)};
                for (const cplx& d : dirs) {
                    std::vector<cplx> cand = c;
                    cand[i] += d * step * scale;
                    const double v = objective(cand);
                    if (v > delta + 1e-12) {
                        delta = v;
                        c = std::move(cand);
                        improved = true;
                    }
                }
            }
            if (!improved) step *= 0.5;
        }
        if (delta > best_delta + 1e-12 ||
            (std::abs(delta - best_delta) <= 1e-12 && detail::coeffs_less(c, best_c))) {
            best_delta = delta;
            best_c = c;
        }
        if (evals >= budget) break;
    }

    // Final pick: certify the ascent winner against the safe reference profiles
    // so a sup underestimate during the search cannot degrade the result.
    std::vector<std::vector<cplx>> finalists;
    finalists.push_back(best_c);
    std::vector<cplx> mono(std::size_t(j) + 1, 0.0);
    mono[std::size_t((j + 1) / 2)] = 1.0;
    finalists.push_back(std::move(mono));

    double top_delta = -1.0;
    std::vector<cplx> top_c;
    double top_sup = 1.0;
    for (const auto& cand : finalists) {
        const double sup = rw_sup_certify(cand, j);
        if (sup <= 0.0) continue;
        const double delta = rw_l2_norm(cand, j) / sup;
        if (delta > top_delta) {
            top_delta = delta;
            top_c = cand;
            top_sup = sup;
        }
    }

    for (cplx& x : top_c) x /= top_sup;
    detail::canonicalize_phase(top_c);

    RWCertificate cert;
    cert.degree = j;
    cert.coeffs = top_c;
    cert.l2_norm = rw_l2_norm(top_c, j);
    cert.sup_bound = rw_sup_certify(top_c, j);
    cert.delta = cert.l2_norm / cert.sup_bound;
    cert.seed = seed;
    cert.evaluations = evals;
    return cert;
}

/// The normalized monomial RW polynomial of degree j with the given split
/// index: z1^i z2^(j-i) scaled to sup norm exactly 1.  Used by triple specs
/// that ask for a deterministic "monomial" factor.
inline RWCertificate monomial_rw(int j, int split_index) {
    if (j < 0) throw std::invalid_argument("monomial_rw: negative degree");
    const int i = ((split_index % (j + 1)) + (j + 1)) % (j + 1);
    std::vector<cplx> c(std::size_t(j) + 1, 0.0);
    c[std::size_t(i)] = 1.0 / detail::monomial_sup(i, j);
    RWCertificate cert;
    cert.degree = j;
    cert.coeffs = c;
    cert.l2_norm = rw_l2_norm(c, j);
    cert.sup_bound = 1.0;
    cert.delta = cert.l2_norm;
    return cert;
}

/// Balanced monomial: split at ceil(j/2).
inline RWCertificate monomial_rw(int j) { return monomial_rw(j, (j + 1) / 2); }

}  // namespace rieszlab
