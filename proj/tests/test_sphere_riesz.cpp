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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>
#include <vector>

#include "oracles.hpp"
#include "rieszlab/harmonics.hpp"
#include "rieszlab/rng.hpp"
#include "rieszlab/sphere_riesz.hpp"

using namespace rieszlab;

namespace {

/// Balanced-monomial triple over the given frequencies, constant coefficient.
RieszTriple monomial_triple(const std::vector<std::int64_t>& j, cplx a, double delta = 0.1) {
    RieszTriple triple;
    triple.delta = delta;
    for (std::int64_t degree : j) triple.factors.push_back(make_factor(a, monomial_rw(int(degree))));
    return triple;
}

}  // namespace

TEST_CASE("triple validation") {
    SUBCASE("a clean monomial triple validates, with per-factor deltas reported") {
        const RieszTriple triple = monomial_triple({1, 3}, 0.8, 0.5);
        const TripleValidationReport r = validate(triple);
        CHECK(r.valid());
        REQUIRE(r.l2_per_factor.size() == 2);
        CHECK(r.l2_per_factor[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
        CHECK(r.l2_per_factor[1] == doctest::Approx(0.75).epsilon(1e-12));
        CHECK(r.sup_per_factor[0] <= 1.0 + 1e-6);
        CHECK(r.sup_per_factor[1] <= 1.0 + 1e-6);
    }
    SUBCASE("lacunarity violation is reported") {
        const RieszTriple triple = monomial_triple({1, 2}, 0.5);
        const auto r = validate(triple);
        CHECK(!r.valid());
        CHECK(r.violations.size() == 1);
        CHECK(r.violations[0].what.find("lacunarity") != std::string::npos);
    }
    SUBCASE("|a| = 1 is excluded") {
        const RieszTriple triple = monomial_triple({1, 3}, 1.0);
        const auto r = validate(triple);
        CHECK(!r.valid());
    }
    SUBCASE("delta claims above the achieved L2 norm fail") {
        const RieszTriple triple = monomial_triple({1, 3}, 0.5, 0.9);
        const auto r = validate(triple);
        CHECK(!r.valid());  // ||z1||_2 = 0.707 < 0.9
    }
}

TEST_CASE("sphere partial products") {
    SUBCASE("K = 0 is the uniform measure") {
        const SpherePartialProduct p = sphere_partial_product(monomial_triple({1, 3}, 0.8), 0);
        CHECK(p.poly.support_size() == 1);
        CHECK(p.poly.coeff({0, 0, 0, 0}) == cplx(1.0));
    }
    SUBCASE("one factor with R = z1 and real a") {
        RieszTriple triple;
        triple.delta = 0.5;
        triple.factors.push_back(
            {1, 0.6, BidegreePoly(1, 0, MonomialPoly::monomial({1, 0, 0, 0}, 1.0))});
        const SpherePartialProduct p = sphere_partial_product(triple, 1);
        CHECK(std::abs(sphere_inner_product(p.poly, MonomialPoly::constant(1.0)) - cplx(1.0)) <
              1e-12);
        CHECK(sphere_norm_sq(p.poly) == doctest::Approx(1.0 + 0.36 / 4.0).epsilon(1e-12));
    }
    SUBCASE("expanded polynomial equals the factored form pointwise") {
        const RieszTriple triple = monomial_triple({1, 3}, cplx(0.5, 0.5));
        const SpherePartialProduct p = sphere_partial_product(triple, 2);
        CHECK(p.poly.is_conjugate_symmetric());
        CounterRng rng(71);
        for (int i = 0; i < 100; ++i) {
            const auto z = rng.sphere_point();
            const cplx expanded = p.poly.evaluate(z);
            CHECK(std::abs(expanded.imag()) < 1e-12);
            CHECK(std::abs(expanded.real() - factored_density_value(triple, 2, z)) < 1e-9);
        }
    }
    SUBCASE("normalization and nonnegativity at random points") {
        const RieszTriple triple = monomial_triple({2, 6}, cplx(-0.3, 0.8));
        const SpherePartialProduct p = sphere_partial_product(triple, 2);
        CHECK(std::abs(sphere_inner_product(p.poly, MonomialPoly::constant(1.0)) - cplx(1.0)) <
              1e-10);
        CounterRng rng(73);
        for (int i = 0; i < 10000; ++i) {
            const auto z = rng.sphere_point();
            CHECK(factored_density_value(triple, 2, z) >= -1e-9);
        }
    }
    SUBCASE("K out of range throws") {
        CHECK_THROWS_AS(sphere_partial_product(monomial_triple({1, 3}, 0.5), 3),
                        std::invalid_argument);
    }
}

TEST_CASE("gamma sets") {
    SUBCASE("k = 1 gives the top pair") {
        const auto g = gamma_set({3, 9}, 1);
        REQUIRE(g.size() == 2);
        CHECK(g[0].gamma == 3);
        CHECK(g[1].gamma == -3);
    }
    SUBCASE("k = 2 over {3, 9}") {
        const auto g = gamma_set({3, 9}, 2);
        std::set<std::int64_t> values;
        for (const auto& comb : g) {
            values.insert(comb.gamma);
            CHECK(comb.recompute({3, 9}) == comb.gamma);
        }
        CHECK(values == std::set<std::int64_t>{9, 12, 6, -9, -12, -6});
    }
    SUBCASE("distinctness and localization for K = 4") {
        const std::vector<std::int64_t> j{3, 9, 27, 81};
        const auto g = gamma_set(j, 4);
        CHECK(g.size() == 54);
        std::set<std::int64_t> values;
        for (const auto& comb : g) {
            values.insert(comb.gamma);
            CHECK(std::abs(comb.gamma) >= 81 - 39);
            CHECK(std::abs(comb.gamma) <= 81 + 39);
            CHECK(std::abs(comb.gamma) * 2 >= 81);  // |gamma| ~ j_k
        }
        CHECK(values.size() == 54);
    }
}

TEST_CASE("gamma projection masses") {
    SUBCASE("single factor R = z1") {
        RieszTriple triple;
        triple.delta = 0.5;
        triple.factors.push_back(
            {1, 0.6, BidegreePoly(1, 0, MonomialPoly::monomial({1, 0, 0, 0}, 1.0))});
        SignedCombination comb{{1}, 1};
        CHECK(gamma_projection_mass(triple, comb) ==
              doctest::Approx(0.09 * 0.5).epsilon(1e-12));  // (a/2)^2 ||z1||^2
    }
    SUBCASE("zero top coefficient kills the mass") {
        RieszTriple triple = monomial_triple({1, 3}, 0.5);
        triple.factors[1].a = 0.0;
        SignedCombination comb{{0, 1}, 3};
        CHECK(gamma_projection_mass(triple, comb) == 0.0);
    }
    SUBCASE("masses match the decomposition of the partial product") {
        const RieszTriple triple = monomial_triple({1, 3}, cplx(0.4, 0.4));
        const SpherePartialProduct product = sphere_partial_product(triple, 2);
        BasisCache cache;
        const SpectralDecomposition dec = decompose(product.poly, cache);
        for (std::size_t k = 1; k <= 2; ++k) {
            for (const auto& comb : gamma_set(triple.frequencies(), k)) {
                double dec_mass = 0.0;
                for (const auto& [pq, c] : dec.entries)
                    if (pq.first - pq.second == comb.gamma) dec_mass += c.norm_sq;
                CHECK(gamma_projection_mass(triple, comb) ==
                      doctest::Approx(dec_mass).epsilon(1e-9));
            }
        }
    }
    SUBCASE("proof bound: mass <= prod (|a_l|/2)^2 over active indices") {
        const RieszTriple triple = monomial_triple({1, 3, 9}, cplx(0.3, 0.7));
        for (std::size_t k = 1; k <= 3; ++k) {
            for (const auto& comb : gamma_set(triple.frequencies(), k)) {
                double bound = 1.0;
                for (std::size_t l = 0; l < comb.eps.size(); ++l)
                    if (comb.eps[l] != 0)
                        bound *= std::norm(triple.factors[l].a) / 4.0;
                CHECK(gamma_projection_mass(triple, comb) <= bound + 1e-12);
            }
        }
    }
}

TEST_CASE("spectral structure of partial products") {
    const RieszTriple triple = monomial_triple({1, 3}, cplx(0.5, -0.6));
    const SpherePartialProduct product = sphere_partial_product(triple, 2);
    BasisCache cache;
    const SpectralDecomposition dec = decompose(product.poly, cache);

    SUBCASE("supported on {0} and the gamma sets") {
        const std::set<std::int64_t> structure = spectrum_structure(triple.frequencies(), 2);
        for (const auto& [pq, comp] : dec.entries) {
            if (structure.count(pq.first - pq.second) == 0) CHECK(comp.norm_sq < 1e-10);
        }
    }
    SUBCASE("decomposition agrees with the Fischer peeling oracle") {
        const auto oracle_masses = oracle::peel_masses(product.poly);
        CHECK(oracle_masses.size() == dec.entries.size());
        for (const auto& [pq, mass] : oracle_masses)
            CHECK(dec.norm_sq_at(pq.first, pq.second) == doctest::Approx(mass).epsilon(1e-9));
        // and again for a 3-factor product, where degrees reach 13
        const RieszTriple t3 = monomial_triple({1, 3, 9}, 0.9);
        const MonomialPoly poly3 = sphere_partial_product(t3, 3).poly;
        const auto oracle3 = oracle::peel_masses(poly3);
        const SpectralDecomposition dec3 = decompose(poly3, cache);
        CHECK(oracle3.size() == dec3.entries.size());
        double total = 0.0;
        for (const auto& [pq, mass] : oracle3) {
            CHECK(dec3.norm_sq_at(pq.first, pq.second) == doctest::Approx(mass).epsilon(1e-8));
            total += mass;
        }
        CHECK(total == doctest::Approx(sphere_norm_sq(poly3)).epsilon(1e-10));
    }
    SUBCASE("banded spectrum with a computable epsilon_0") {
        const BandedSpectrumReport r = banded_spectrum(dec);
        CHECK(r.banded);
        CHECK(r.epsilon0 == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
        CHECK(r.witness == std::pair<int, int>{1, 3});
    }
}

TEST_CASE("dimension bounds") {
    SUBCASE("zero coefficients give the full dimension 3") {
        const RieszTriple triple = monomial_triple({1, 3, 9}, 0.0);
        const SphereDimensionReport r = sphere_bounds(triple, 3, 2);
        CHECK(r.alpha0 == 0.0);
        CHECK(r.hausdorff_lb == 3.0);
        CHECK(r.final_lb == 3.0);
    }
    SUBCASE("boundary family approaches 3 - log(3/2)/log 3") {
        std::vector<std::int64_t> j;
        std::int64_t v = 3;
        for (int k = 0; k < 12; ++k) {
            j.push_back(v);
            v *= 3;
        }
        const double a0 = alpha0(j, std::vector<double>(12, 1.0), 12, 4);
        CHECK(3.0 - a0 == doctest::Approx(2.63093).epsilon(1e-4));
    }
    SUBCASE("the AW22 floor keeps every reported bound at least 2") {
        const RieszTriple triple = monomial_triple({1, 3}, 0.999);
        const SphereDimensionReport r = sphere_bounds(triple, 2, 2);
        CHECK(r.final_lb >= 2.0);
        CHECK(r.band_floor == 2.0);
    }
}

TEST_CASE("Monte Carlo energies") {
    const RieszTriple uniform = monomial_triple({1, 3}, 0.0);

    SUBCASE("f = 1 at t = 1 matches the closed form 8 / (3 pi)") {
        const McEstimate e = mc_energy(uniform, 0, 1.0, 200000, 99);
        CHECK(std::abs(e.estimate - 8.0 / (3.0 * 3.14159265358979323846)) <
              4.0 * e.stderr_);
        CHECK(e.stderr_ < 0.01);
    }
    SUBCASE("t -> 0 recovers the squared mass") {
        const McEstimate e = mc_energy(uniform, 0, 1e-9, 50000, 100);
        CHECK(std::abs(e.estimate - 1.0) < 3.0 * e.stderr_ + 1e-6);
    }
    SUBCASE("comparable to the Fourier-side sum for a 2-factor product") {
        const RieszTriple triple = monomial_triple({1, 3}, 0.8);
        BasisCache cache;
        const SpectralDecomposition dec =
            decompose(sphere_partial_product(triple, 2).poly, cache);
        for (double t : {1.0, 2.0}) {
            const McEstimate e = mc_energy(triple, 2, t, 200000, 101);
            const double ratio = e.estimate / sphere_energy_sum(dec, t, 2);
            CHECK(ratio > 0.1);
            CHECK(ratio < 10.0);
        }
    }
    SUBCASE("t >= 3 is refused") {
        CHECK_THROWS_AS(mc_energy(uniform, 0, 3.0, 100, 1), std::invalid_argument);
    }
    SUBCASE("deterministic given the seed") {
        const McEstimate a = mc_energy(uniform, 0, 1.0, 1000, 5);
        const McEstimate b = mc_energy(uniform, 0, 1.0, 1000, 5);
        CHECK(a.estimate == b.estimate);
        CHECK(a.stderr_ == b.stderr_);
    }
}

TEST_CASE("energy boundedness across truncations (upper-estimate shadow)") {
    // monomial family a = 0.9, J = {1, 3, 9, 27}; for alpha > alpha0 + 0.05
    // the energies at t = 3 - alpha stay bounded in K.  Since p + q >= |p - q|
    // and t - 3 < 0, the gamma-grouped sum
    //   S(K) = 1 + sum_{k<=K} sum_{gamma in Gamma_k} |gamma|^{t-3} mass(gamma)
    // dominates sphere_energy_sum; its masses are single-term norms, which
    // stay well conditioned at degree 40 where full decompositions do not.
    const std::vector<std::int64_t> j{1, 3, 9, 27};
    const RieszTriple triple = monomial_triple(j, 0.9);
    const double a0 = alpha0(std::vector<double>{3, 9, 27, 81}, std::vector<double>(4, 0.9), 4, 2);
    const double t = 3.0 - (a0 + 0.1);

    auto gamma_majorant = [&](std::size_t k_count) {
        double acc = 1.0;
        for (std::size_t k = 1; k <= k_count; ++k)
            for (const auto& comb : gamma_set(j, k))
                acc += std::pow(double(std::abs(comb.gamma)), t - 3.0) *
                       gamma_projection_mass(triple, comb);
        return acc;
    };

    std::vector<double> majorants;
    for (std::size_t k = 2; k <= 4; ++k) majorants.push_back(gamma_majorant(k));
    const double sup = *std::max_element(majorants.begin(), majorants.end());
    CHECK(sup <= 2.0 * majorants.front());

    // cross-check the domination against the exact decomposition at K <= 3
    BasisCache cache;
    for (std::size_t k = 2; k <= 3; ++k) {
        const SpectralDecomposition dec =
            decompose(sphere_partial_product(triple, k).poly, cache);
        CHECK(sphere_energy_sum(dec, t, 2) <= gamma_majorant(k) * (1.0 + 1e-9));
    }
}

TEST_CASE("slices") {
    const RieszTriple triple = monomial_triple({1, 3}, cplx(0.6, 0.2));

    SUBCASE("monomial R1 = z1 at xi = (1, 0) passes a1 through") {
        RieszTriple t1;
        t1.delta = 0.1;
        t1.factors.push_back(
            {1, cplx(0.3, 0.4), BidegreePoly(1, 0, MonomialPoly::monomial({1, 0, 0, 0}, 1.0))});
        const CircleRieszSpec spec = slice_spec(t1, {cplx(1.0), cplx(0.0)});
        CHECK(std::abs(spec.coefficients[0] - cplx(0.3, 0.4)) < 1e-15);
        // and R(xi) = 0 degenerates the factor
        const CircleRieszSpec spec0 = slice_spec(t1, {cplx(0.0), cplx(1.0)});
        CHECK(std::abs(spec0.coefficients[0]) < 1e-15);
    }
    SUBCASE("slice coefficients are dominated by |a_k| and inherit lacunarity") {
        CounterRng rng(301);
        for (int i = 0; i < 20; ++i) {
            const CircleRieszSpec spec = slice_spec(triple, rng.sphere_point());
            CHECK_NOTHROW(validate(spec));
            for (std::size_t k = 0; k < spec.size(); ++k)
                CHECK(std::abs(spec.coefficients[k]) <= std::abs(triple.factors[k].a) + 1e-12);
        }
    }
    SUBCASE("phase rotation of xi rotates the slice density") {
        CounterRng rng(303);
        const auto xi = rng.sphere_point();
        const double psi = 1.234;
        const cplx rot = std::polar(1.0, psi);
        const CircleRieszSpec spec = slice_spec(triple, xi);
        const CircleRieszSpec spec_rot = slice_spec(triple, {rot * xi[0], rot * xi[1]});
        for (std::size_t k = 0; k < 2; ++k)
            CHECK(std::abs(spec_rot.coefficients[k] -
                           spec.coefficients[k] *
                               std::polar(1.0, double(spec.frequencies[k]) * psi)) < 1e-12);
        // density identity: P_{rot xi}(w) = P_xi(rot w) on a grid
        const LaurentPoly p = circle_partial_product(spec, 2);
        const LaurentPoly p_rot = circle_partial_product(spec_rot, 2);
        for (int i = 0; i < 64; ++i) {
            const cplx w = std::polar(1.0, CounterRng::two_pi * double(i) / 64.0);
            CHECK(std::abs(p_rot.evaluate(w) - p.evaluate(rot * w)) < 1e-12);
        }
    }
}

TEST_CASE("disintegration identity") {
    const RieszTriple triple = monomial_triple({1, 3}, 0.8);

    SUBCASE("f = 1 is exact: both sides are probability measures") {
        const DisintegrationResult r =
            disintegration_check(triple, 2, MonomialPoly::constant(1.0), 100, 11);
        CHECK(std::abs(r.lhs - cplx(1.0)) < 1e-12);
        CHECK(std::abs(r.rhs - cplx(1.0)) < 1e-12);
        CHECK(r.stderr_ < 1e-12);
    }
    SUBCASE("f = |z1|^2 within four standard errors") {
        const DisintegrationResult r = disintegration_check(
            triple, 2, MonomialPoly::monomial({1, 0, 1, 0}, 1.0), 10000, 12);
        CHECK(std::abs(r.lhs - r.rhs) <= 4.0 * r.stderr_);
        CHECK(r.stderr_ > 0.0);
    }
    SUBCASE("spectrum-disjoint f: lhs vanishes exactly, rhs within noise") {
        const DisintegrationResult r = disintegration_check(
            triple, 2, MonomialPoly::monomial({5, 0, 0, 0}, 1.0), 10000, 13);
        CHECK(std::abs(r.lhs) < 1e-14);
        CHECK(std::abs(r.rhs) <= 4.0 * r.stderr_);
    }
}
