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
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rieszlab/errors.hpp"
#include "rieszlab/jacobi_eigen.hpp"
#include "rieszlab/monomial_poly.hpp"

namespace rieszlab {

/// Eigenvalues of a Gram matrix below this are treated as zero when
/// deciding ranks during orthonormalization.
inline constexpr double kGramRankCutoff = 1e-12;

inline constexpr const char* kBasisCacheVersion = "hpq-gram-1";

/// dim H(p, q) on the sphere of C^n:
/// (p+q+n-1) (p+n-2)! (q+n-2)! / (p! q! (n-1)! (n-2)!).  For n = 2 this is
/// p + q + 1.
inline int hpq_dimension(int p, int q, int n = 2) {
    if (p < 0 || q < 0 || n < 2) throw std::invalid_argument("hpq_dimension: bad arguments");
    const double lg = std::log(double(p + q + n - 1)) + std::lgamma(double(p + n - 1)) +
                      std::lgamma(double(q + n - 1)) - std::lgamma(double(p + 1)) -
                      std::lgamma(double(q + 1)) - std::lgamma(double(n)) -
                      std::lgamma(double(n - 1));
    return int(std::llround(std::exp(lg)));
}

/// Orthonormal basis of the complex spherical harmonics of bidegree (p, q),
/// restricted to the unit sphere of C^2.
struct HpqBasis {
    int p = 0;
    int q = 0;
    int n = 2;
    std::vector<BidegreePoly> elements;

    int dimension() const { return int(elements.size()); }
};

namespace detail {

/// All bidegree-(p, q) monomial exponents, in canonical order.
inline std::vector<Exponents> bidegree_monomials(int p, int q) {
    std::vector<Exponents> out;
    out.reserve(std::size_t(p + 1) * std::size_t(q + 1));
    for (int a1 = 0; a1 <= p; ++a1)
        for (int b1 = 0; b1 <= q; ++b1)
            out.push_back({std::uint16_t(a1), std::uint16_t(p - a1), std::uint16_t(b1),
                           std::uint16_t(q - b1)});
    return out;
}

/// <m_i, m_j> over sigma; real because monomial integrals are real.
inline SymMatrix monomial_gram(const std::vector<Exponents>& ms) {
    const std::size_t n = ms.size();
    SymMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const Exponents prod{std::uint16_t(ms[i].a1 + ms[j].b1),
                                 std::uint16_t(ms[i].a2 + ms[j].b2),
                                 std::uint16_t(ms[i].b1 + ms[j].a1),
                                 std::uint16_t(ms[i].b2 + ms[j].a2)};
            g(i, j) = g(j, i) = monomial_sphere_integral(prod);
        }
    }
    return g;
}

}  // namespace detail

/// Build the orthonormal basis of H(p, q) for n = 2.
///
/// Construction: take the span of bidegree-(p, q) monomials on the sphere,
/// remove the subspace |z|^2 * (bidegree (p-1, q-1)), and orthonormalize the
/// complement through the eigendecomposition of its exact Gram matrix.  The
/// Gram matrix is formed over unit-norm monomials: raw monomial norms decay
/// factorially with the degree, and without the rescaling legitimate
/// eigenvalues would sink below the rank cutoff.  A resulting rank different
/// from p + q + 1 means the Gram matrix lost conditioning and is reported as
/// an error.
inline HpqBasis build_hpq_basis(int p, int q) {
    if (p < 0 || q < 0) throw std::invalid_argument("build_hpq_basis: negative bidegree");
    const std::vector<Exponents> ms = detail::bidegree_monomials(p, q);
    const std::size_t nm = ms.size();

    std::vector<double> scale(nm);  // 1 / ||m_i||_2
    SymMatrix gram = detail::monomial_gram(ms);
    for (std::size_t i = 0; i < nm; ++i) scale[i] = 1.0 / std::sqrt(gram(i, i));
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t k = 0; k < nm; ++k) gram(i, k) *= scale[i] * scale[k];

    // Coordinate vectors of |z|^2 * g for g over bidegree (p-1, q-1), in the
    // normalized monomial basis.
    std::vector<std::vector<double>> w;
    if (p >= 1 && q >= 1) {
        auto index_of = [&](const Exponents& e) {
            return std::size_t(e.a1) * std::size_t(q + 1) + std::size_t(e.b1);
        };
        for (const Exponents& g : detail::bidegree_monomials(p - 1, q - 1)) {
            std::vector<double> col(nm, 0.0);
            const Exponents t1{std::uint16_t(g.a1 + 1), g.a2, std::uint16_t(g.b1 + 1), g.b2};
            const Exponents t2{g.a1, std::uint16_t(g.a2 + 1), g.b1, std::uint16_t(g.b2 + 1)};
            col[index_of(t1)] += 1.0 / scale[index_of(t1)];
            col[index_of(t2)] += 1.0 / scale[index_of(t2)];
            w.push_back(std::move(col));
        }
    }

    auto gram_apply = [&](const std::vector<double>& x) {
        std::vector<double> y(nm, 0.0);
        for (std::size_t i = 0; i < nm; ++i) {
            double acc = 0.0;
            for (std::size_t j = 0; j < nm; ++j) acc += gram(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    };
    auto dot = [](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
        return acc;
    };

    // Orthonormalize the removed subspace in the L2(sigma) inner product.
    std::vector<std::vector<double>> w_on;
    if (!w.empty()) {
        const std::size_t nw = w.size();
        std::vector<std::vector<double>> gw(nw);
        for (std::size_t i = 0; i < nw; ++i) gw[i] = gram_apply(w[i]);
        SymMatrix sw(nw);
        for (std::size_t i = 0; i < nw; ++i)
            for (std::size_t j = 0; j < nw; ++j) sw(i, j) = dot(w[i], gw[j]);
        const EigenDecomposition ew = jacobi_eigen(sw);
        for (std::size_t k = 0; k < nw; ++k) {
            if (ew.values[k] <= kGramRankCutoff) continue;
            std::vector<double> col(nm, 0.0);
            const double inv = 1.0 / std::sqrt(ew.values[k]);
            for (std::size_t i = 0; i < nw; ++i)
                for (std::size_t j = 0; j < nm; ++j) col[j] += w[i][j] * ew.vectors[k][i] * inv;
            w_on.push_back(std::move(col));
        }
    }

    // Complement spanning set: x_i = e_i - P e_i.
    std::vector<std::vector<double>> x(nm, std::vector<double>(nm, 0.0));
    std::vector<std::vector<double>> gw_on(w_on.size());
    for (std::size_t k = 0; k < w_on.size(); ++k) gw_on[k] = gram_apply(w_on[k]);
    for (std::size_t i = 0; i < nm; ++i) {
        x[i][i] = 1.0;
        for (std::size_t k = 0; k < w_on.size(); ++k) {
            const double c = gw_on[k][i];  // <e_i, w_k>_G
            for (std::size_t j = 0; j < nm; ++j) x[i][j] -= c * w_on[k][j];
        }
    }

    std::vector<std::vector<double>> gx(nm);
    for (std::size_t i = 0; i < nm; ++i) gx[i] = gram_apply(x[i]);
    SymMatrix s(nm);
    for (std::size_t i = 0; i < nm; ++i)
        for (std::size_t j = 0; j < nm; ++j) s(i, j) = dot(x[i], gx[j]);

    const EigenDecomposition es = jacobi_eigen(s);
    const int expected = hpq_dimension(p, q, 2);
    HpqBasis basis{p, q, 2, {}};
    for (std::size_t k = 0; k < nm; ++k) {
        if (es.values[k] <= kGramRankCutoff) continue;
        const double inv = 1.0 / std::sqrt(es.values[k]);
        std::vector<double> col(nm, 0.0);
        for (std::size_t i = 0; i < nm; ++i)
            for (std::size_t j = 0; j < nm; ++j) col[j] += x[i][j] * es.vectors[k][i] * inv;
        MonomialPoly f;
        for (std::size_t j = 0; j < nm; ++j) {
            const double coeff = col[j] * scale[j];  // back to raw monomials
            if (std::abs(col[j]) > kCoeffPruneThreshold) f.add(ms[j], coeff);
        }
        basis.elements.emplace_back(p, q, std::move(f));
    }
    if (basis.dimension() != expected)
        throw invariant_error("build_hpq_basis(" + std::to_string(p) + "," + std::to_string(q) +
                              "): Gram rank " + std::to_string(basis.dimension()) +
                              " does not match dim H(p,q) = " + std::to_string(expected));
    return basis;
}

/// Lazily built, shareable store of H(p, q) bases.
class BasisCache {
public:
    const HpqBasis& get(int p, int q) {
        const auto key = std::make_pair(p, q);
        auto it = store_.find(key);
        if (it == store_.end()) it = store_.emplace(key, build_hpq_basis(p, q)).first;
        return it->second;
    }

    bool contains(int p, int q) const { return store_.count({p, q}) != 0; }
    void put(int p, int q, HpqBasis b) { store_.insert_or_assign({p, q}, std::move(b)); }
    const std::map<std::pair<int, int>, HpqBasis>& entries() const { return store_; }

    static BasisCache& shared() {
        static BasisCache cache;
        return cache;
    }

private:
    std::map<std::pair<int, int>, HpqBasis> store_;
};

struct SpectralComponent {
    BidegreePoly projection;
    double norm_sq = 0.0;
};

/// Map (p, q) -> H(p,q)-projection of a polynomial density and its squared
/// L2 norm.  The key set is the spectrum.
struct SpectralDecomposition {
    std::map<std::pair<int, int>, SpectralComponent> entries;

    double total_norm_sq() const {
        double acc = 0.0;
        for (const auto& [pq, comp] : entries) acc += comp.norm_sq;
        return acc;
    }

    double norm_sq_at(int p, int q) const {
        auto it = entries.find({p, q});
        return it == entries.end() ? 0.0 : it->second.norm_sq;
    }
};

/// H(p, q)-projection of f: sum_b <f, b> b over the orthonormal basis.
inline BidegreePoly project_hpq(const MonomialPoly& f, int p, int q,
                                BasisCache& cache = BasisCache::shared()) {
    const HpqBasis& basis = cache.get(p, q);
    MonomialPoly acc;
    for (const BidegreePoly& b : basis.elements) {
        const cplx c = sphere_inner_product(f, b.poly);
        if (std::abs(c) > kCoeffPruneThreshold) acc = acc + b.poly * c;
    }
    return BidegreePoly(p, q, std::move(acc));
}

/// Full spectral decomposition of the sphere restriction of f: every (p, q)
/// with p + q <= deg f that can receive mass is scanned.
inline SpectralDecomposition decompose(const MonomialPoly& f,
                                       BasisCache& cache = BasisCache::shared(),
                                       double drop_below = 1e-24) {
    SpectralDecomposition out;
    if (f.empty()) return out;

    // A term of bidegree (A, B) projects only onto (A - l, B - l); the
    // candidate set is the union over the bidegrees present in f.
    std::set<std::pair<int, int>> candidates;
    for (const auto& [key, c] : f.coeffs()) {
        const Exponents e = Exponents::unpack(key);
        const int a = e.holo_degree(), b = e.anti_degree();
        for (int l = 0; l <= std::min(a, b); ++l) candidates.insert({a - l, b - l});
    }

    for (const auto& [p, q] : candidates) {
        const HpqBasis& basis = cache.get(p, q);
        MonomialPoly acc;
        double norm_sq = 0.0;
        for (const BidegreePoly& b : basis.elements) {
            const cplx c = sphere_inner_product(f, b.poly);
            norm_sq += std::norm(c);
            if (std::abs(c) > kCoeffPruneThreshold) acc = acc + b.poly * c;
        }
        if (norm_sq > drop_below)
            out.entries.insert_or_assign(
                {p, q}, SpectralComponent{BidegreePoly(p, q, std::move(acc)), norm_sq});
    }
    return out;
}

/// K_{p,q}(z, zeta) = sum_b b(z) conj(b(zeta)).
inline cplx reproducing_kernel(int p, int q, const std::array<cplx, 2>& z,
                               const std::array<cplx, 2>& zeta,
                               BasisCache& cache = BasisCache::shared()) {
    const HpqBasis& basis = cache.get(p, q);
    cplx acc(0.0);
    for (const BidegreePoly& b : basis.elements)
        acc += b.poly.evaluate(z) * std::conj(b.poly.evaluate(zeta));
    return acc;
}

/// The window of the H(p,q) multiplication rule:
/// fg in sum of H(p+r-l, q+s-l), 0 <= l <= min(p,s) + min(q,r).
inline std::vector<std::pair<int, int>> multiplication_window(int p, int q, int r, int s) {
    const int big_l = std::min(p, s) + std::min(q, r);
    std::vector<std::pair<int, int>> window;
    for (int l = 0; l <= big_l; ++l)
        if (p + r - l >= 0 && q + s - l >= 0) window.emplace_back(p + r - l, q + s - l);
    return window;
}

struct MultiplicationRuleReport {
    std::vector<std::pair<int, int>> window;
    double in_window_mass = 0.0;
    double off_window_mass = 0.0;
    bool holds(double tol = 1e-10) const { return off_window_mass < tol; }
};

inline MultiplicationRuleReport verify_multiplication_rule(
    const BidegreePoly& f, const BidegreePoly& g, BasisCache& cache = BasisCache::shared()) {
    MultiplicationRuleReport report;
    report.window = multiplication_window(f.p, f.q, g.p, g.q);
    const SpectralDecomposition dec = decompose(f.poly * g.poly, cache);
    for (const auto& [pq, comp] : dec.entries) {
        const bool inside =
            std::find(report.window.begin(), report.window.end(), pq) != report.window.end();
        (inside ? report.in_window_mass : report.off_window_mass) += comp.norm_sq;
    }
    return report;
}

/// Fourier-side energy sum on the sphere of C^n:
/// ||mu_{0,0}||^2 + sum_{j>=1} j^{t-2n+1} sum_{p+q=j} ||mu_{p,q}||^2.
inline double sphere_energy_sum(const SpectralDecomposition& d, double t, int n = 2) {
    if (!(t > 0.0 && t < 2.0 * n - 1.0))
        throw std::invalid_argument("sphere_energy_sum: t must lie in (0, 2n-1)");
    double acc = d.norm_sq_at(0, 0);
    for (const auto& [pq, comp] : d.entries) {
        const int j = pq.first + pq.second;
        if (j == 0) continue;
        acc += std::pow(double(j), t - 2.0 * n + 1.0) * comp.norm_sq;
    }
    return acc;
}

}  // namespace rieszlab
