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
#include <vector>

#include "rieszlab/circle_riesz.hpp"
#include "rieszlab/estimators.hpp"

using namespace rieszlab;

namespace {

std::vector<double> geometric_radii(double lo, double hi, int count) {
    std::vector<double> out;
    for (int i = 0; i < count; ++i)
        out.push_back(lo * std::pow(hi / lo, double(i) / double(count - 1)));
    return out;
}

}  // namespace

TEST_CASE("correlation dimension calibration") {
    SUBCASE("uniform circle samples give dimension 1") {
        const auto angles = uniform_circle_samples(10000, 77);
        const DimensionEstimate est =
            correlation_dimension_circle(angles, geometric_radii(0.05, 0.5, 8));
        CHECK(!est.degenerate);
        CHECK(est.value > 0.9);
        CHECK(est.value < 1.1);
    }
    SUBCASE("uniform S^3 samples give dimension 3") {
        const auto points = uniform_sphere_samples(10000, 78);
        const DimensionEstimate est =
            correlation_dimension_sphere(points, geometric_radii(0.15, 0.7, 8));
        CHECK(!est.degenerate);
        CHECK(est.value > 2.7);
        CHECK(est.value < 3.3);
    }
    SUBCASE("a point mass has dimension 0") {
        const std::vector<double> angles(2000, 1.0);
        const DimensionEstimate est =
            correlation_dimension_circle(angles, geometric_radii(0.05, 0.5, 6));
        CHECK(est.value == doctest::Approx(0.0));
    }
    SUBCASE("degenerate fits are reported") {
        // equally spaced points: every pairwise distance exceeds the radii
        std::vector<double> angles;
        for (int i = 0; i < 50; ++i) angles.push_back(CounterRng::two_pi * double(i) / 50.0);
        const DimensionEstimate est =
            correlation_dimension_circle(angles, geometric_radii(0.01, 0.02, 4));
        CHECK(est.degenerate);
    }
}

TEST_CASE("box counting") {
    const std::vector<int> scales{4, 8, 16, 32};
    SUBCASE("uniform T") {
        std::vector<std::vector<double>> pts;
        for (double a : uniform_circle_samples(10000, 80)) pts.push_back({a});
        const DimensionEstimate est = box_counting(pts, scales);
        CHECK(est.value > 0.9);
        CHECK(est.value < 1.1);
    }
    SUBCASE("uniform T^2") {
        const DimensionEstimate est = box_counting(uniform_torus_samples(2, 10000, 81), scales);
        CHECK(est.value > 1.85);
        CHECK(est.value < 2.15);
    }
    SUBCASE("a circle frozen inside T^2 keeps dimension 1") {
        auto pts = uniform_torus_samples(2, 10000, 82);
        for (auto& p : pts) p[0] = 2.0;
        const DimensionEstimate est = box_counting(pts, scales);
        CHECK(est.value > 0.9);
        CHECK(est.value < 1.1);
    }
}

TEST_CASE("pluriharmonic spectra on the torus") {
    SUBCASE("delta_1 x m is pluriharmonic: only axis coefficients survive") {
        const PluriharmonicReport r = is_pluriharmonic(plh_sharp_example(2), 8);
        CHECK(r.pluriharmonic);
        CHECK(r.max_violation <= 1e-12);
    }
    SUBCASE("m x m is pluriharmonic") {
        TorusMeasureSpec spec;
        spec.factors.assign(2, TorusFactor{TorusFactor::Kind::lebesgue, 0.0, {}});
        CHECK(is_pluriharmonic(spec, 8).pluriharmonic);
    }
    SUBCASE("the density 1 + Re(l1 conj(l2)) carries mass at (1, -1)") {
        const auto fourier = [](const std::vector<std::int64_t>& k) -> cplx {
            if (k[0] == 0 && k[1] == 0) return 1.0;
            if (k[0] == 1 && k[1] == -1) return 0.5;
            if (k[0] == -1 && k[1] == 1) return 0.5;
            return 0.0;
        };
        const PluriharmonicReport r = is_pluriharmonic(2, fourier, 8);
        CHECK(!r.pluriharmonic);
        CHECK(r.max_violation == doctest::Approx(0.5));
        CHECK((r.worst_index == std::vector<std::int64_t>{1, -1} ||
               r.worst_index == std::vector<std::int64_t>{-1, 1}));
    }
}

TEST_CASE("torus energies") {
    SUBCASE("Lebesgue on T^n has no nonzero frequencies") {
        TorusMeasureSpec spec;
        spec.factors.assign(2, TorusFactor{TorusFactor::Kind::lebesgue, 0.0, {}});
        for (double t : {0.5, 1.0, 1.5}) CHECK(torus_energy(spec, t, 1 << 10) == 0.0);
    }
    SUBCASE("delta x m at t = 0.9 converges, increments shrinking") {
        const TorusMeasureSpec spec = plh_sharp_example(2);
        std::vector<double> s;
        for (int m = 5; m <= 10; ++m) s.push_back(torus_energy(spec, 0.9, 1 << m));
        for (std::size_t i = 2; i < s.size(); ++i) {
            const double inc_prev = s[i - 1] - s[i - 2];
            const double inc = s[i] - s[i - 1];
            CHECK(inc < inc_prev);                         // increments decay
            CHECK(inc / s[i] < (s[i - 1] - s[i - 2]) / s[i - 1]);  // relative increment shrinks
        }
    }
    SUBCASE("delta x m at t = 1.1 grows with increment ratio about 2^0.1") {
        const TorusMeasureSpec spec = plh_sharp_example(2);
        std::vector<double> s;
        for (int m = 5; m <= 10; ++m) s.push_back(torus_energy(spec, 1.1, 1 << m));
        for (std::size_t i = 2; i < s.size(); ++i) {
            const double ratio = (s[i] - s[i - 1]) / (s[i - 1] - s[i - 2]);
            CHECK(ratio > 1.05);
            CHECK(ratio < 1.10);
        }
    }
    SUBCASE("t outside (0, n) is rejected") {
        CHECK_THROWS_AS(torus_energy(plh_sharp_example(2), 2.0, 16), std::invalid_argument);
    }
}

TEST_CASE("generated samples live on their manifolds") {
    for (const auto& z : uniform_sphere_samples(500, 83)) {
        const double norm = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
        CHECK(std::abs(norm - 1.0) < 1e-12);
    }
    for (double a : uniform_circle_samples(500, 84)) {
        CHECK(a >= 0.0);
        CHECK(a < CounterRng::two_pi);
    }
}

TEST_CASE("sampling product measures") {
    SUBCASE("density factors sample their distribution") {
        LaurentPoly density = LaurentPoly::constant(1.0);
        density.add(1, 0.5);
        density.add(-1, 0.5);  // 1 + cos(theta)
        TorusMeasureSpec spec;
        spec.factors.push_back({TorusFactor::Kind::density, 0.0, density});
        const auto samples = spec.sample(50000, 88);
        double mean_cos = 0.0;
        for (const auto& p : samples) mean_cos += std::cos(p[0]);
        mean_cos /= double(samples.size());
        CHECK(std::abs(mean_cos - 0.5) < 4.0 / std::sqrt(50000.0));
    }
    SUBCASE("point-mass factors are frozen") {
        const auto samples = plh_sharp_example(3).sample(100, 89);
        for (const auto& p : samples) {
            CHECK(p[0] == 0.0);
            CHECK(p.size() == 3);
        }
    }
}

TEST_CASE("sharp pluriharmonic example end to end") {
    SUBCASE("n = 2") {
        const PlhExampleReport r = plh_example(2, 10000, 90);
        CHECK(r.pluriharmonic.pluriharmonic);
        CHECK(r.box.value > 0.85);
        CHECK(r.box.value < 1.15);
        CHECK(r.increment_ratio_below < 0.93);
        CHECK(r.increment_ratio_above > 1.05);
    }
    SUBCASE("n = 3") {
        const PlhExampleReport r = plh_example(3, 10000, 91);
        CHECK(r.pluriharmonic.pluriharmonic);
        CHECK(r.box.value > 1.8);
        CHECK(r.box.value < 2.2);
        CHECK(r.increment_ratio_below < 0.93);
        CHECK(r.increment_ratio_above > 1.05);
    }
}

TEST_CASE("empirical dimension of circle Riesz samples stays near the bound") {
    // soft regression guard: finite truncations are absolutely continuous, so
    // the finite-scale correlation slope must not collapse far below the
    // limit measure's bound 1 - alpha0
    CircleRieszSpec spec;
    std::int64_t v = 3;
    for (int k = 0; k < 6; ++k) {
        spec.frequencies.push_back(v);
        spec.coefficients.push_back(0.9);
        v *= 3;
    }
    const double a0 = alpha0(spec.frequencies, std::vector<double>(6, 0.9), 6, 3);
    const auto angles = sample_circle_riesz(spec, 6, 10000, 92);
    const DimensionEstimate est =
        correlation_dimension_circle(angles, geometric_radii(0.005, 0.08, 8));
    CHECK(!est.degenerate);
    CHECK(est.value >= (1.0 - a0) - 0.25);
}
