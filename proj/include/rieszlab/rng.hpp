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
#include <complex>
#include <cstdint>

namespace rieszlab {

/// Counter-based deterministic random source.
///
/// Every draw is a pure function of (seed, stream, counter), so independent
/// streams can be split off for parallel loops without coordination and a
/// run is reproducible bit-for-bit from a single named seed.
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0) noexcept
        : key_(mix(mix(seed) ^ stream)) {}

    /// Derive the rng for an indexed substream (sample i of a Monte Carlo loop).
    CounterRng at(std::uint64_t stream) const noexcept {
        CounterRng r(0);
        r.key_ = mix(key_ ^ mix(stream + 0x632be59bd9b4e019ULL));
        return r;
    }

    std::uint64_t next_u64() noexcept { return mix(key_ ^ mix(counter_++)); }

    /// Uniform in [0, 1).
    double u01() noexcept {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform in (0, 1]; safe as a log() argument.
    double u01_open() noexcept {
        return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
    }

    /// Standard normal via Box-Muller (no spare caching, two draws per call).
    double gaussian() noexcept {
        const double u = u01_open();
        const double v = u01();
        return std::sqrt(-2.0 * std::log(u)) * std::cos(two_pi * v);
    }

    /// Angle uniform on [0, 2*pi).
    double angle() noexcept { return two_pi * u01(); }

    /// Uniform point of the unit sphere of C^2 (= S^3 in R^4), via
    /// normalized 4-dimensional Gaussian vectors.
    std::array<std::complex<double>, 2> sphere_point() noexcept {
        double g[4];
        double norm_sq = 0.0;
        for (double& x : g) {
            x = gaussian();
            norm_sq += x * x;
        }
        const double inv = 1.0 / std::sqrt(norm_sq);
        return {std::complex<double>(g[0] * inv, g[1] * inv),
                std::complex<double>(g[2] * inv, g[3] * inv)};
    }

    static constexpr double two_pi = 6.283185307179586476925286766559;

private:
    static std::uint64_t mix(std::uint64_t z) noexcept {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t key_;
    std::uint64_t counter_ = 0;
};

}  // namespace rieszlab
