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

// Test-only oracles.  Everything here recomputes library quantities through
// an independent route and must stay free of the implementation paths it is
// used to check.

#include <map>
#include <utility>

#include "rieszlab/monomial_poly.hpp"

namespace rieszlab::oracle {

/// Delta f = 4 (d^2/dz1 dconj(z1) + d^2/dz2 dconj(z2)) f, term by term.
inline MonomialPoly laplacian(const MonomialPoly& f) {
    MonomialPoly out;
    for (const auto& [key, c] : f.coeffs()) {
        const Exponents e = Exponents::unpack(key);
        if (e.a1 >= 1 && e.b1 >= 1)
            out.add({std::uint16_t(e.a1 - 1), e.a2, std::uint16_t(e.b1 - 1), e.b2},
                    4.0 * double(e.a1) * double(e.b1) * c);
        if (e.a2 >= 1 && e.b2 >= 1)
            out.add({e.a1, std::uint16_t(e.a2 - 1), e.b1, std::uint16_t(e.b2 - 1)},
                    4.0 * double(e.a2) * double(e.b2) * c);
    }
    return out;
}

inline MonomialPoly times_norm_sq(const MonomialPoly& f) {
    static const MonomialPoly w = MonomialPoly::monomial({1, 0, 1, 0}, 1.0) +
                                  MonomialPoly::monomial({0, 1, 0, 1}, 1.0);
    return f * w;
}

/// Harmonic (Fischer) decomposition of a single bidegree-(A,B) piece:
/// f = sum_l |z|^{2l} h_l with h_l harmonic of bidegree (A-l, B-l).
/// Uses Delta(|z|^{2l} h) = 4 l (l + p + q + n - 1) |z|^{2(l-1)} h and peels
/// from the top: h_L = Delta^L f / prod, then subtract and recurse.
inline std::map<std::pair<int, int>, MonomialPoly> peel_bidegree_piece(MonomialPoly f, int a,
                                                                       int b) {
    std::map<std::pair<int, int>, MonomialPoly> components;
    for (int l = std::min(a, b); l >= 0; --l) {
        const int p = a - l, q = b - l;
        MonomialPoly top = f;
        for (int m = 0; m < l; ++m) top = laplacian(top);
        double scale = 1.0;
        for (int m = 1; m <= l; ++m) scale *= 4.0 * double(m) * double(m + p + q + 1);
        MonomialPoly h = top * (1.0 / scale);
        if (!h.empty()) components[{p, q}] = h;
        MonomialPoly lifted = h;
        for (int m = 0; m < l; ++m) lifted = times_norm_sq(lifted);
        f = f + lifted * cplx(-1.0);
    }
    return components;
}

/// Independent spectral decomposition: split f by bidegree, apply the
/// Fischer peeling to each piece, accumulate the harmonic parts per (p, q)
/// and return their squared sphere norms.
inline std::map<std::pair<int, int>, double> peel_masses(const MonomialPoly& f) {
    std::map<std::pair<int, int>, MonomialPoly> pieces;
    for (const auto& [key, c] : f.coeffs()) {
        const Exponents e = Exponents::unpack(key);
        pieces[{e.holo_degree(), e.anti_degree()}].add(e, c);
    }
    std::map<std::pair<int, int>, MonomialPoly> harmonics;
    for (const auto& [bidegree, piece] : pieces)
        for (auto& [pq, h] : peel_bidegree_piece(piece, bidegree.first, bidegree.second)) {
            auto it = harmonics.find(pq);
            if (it == harmonics.end())
                harmonics.emplace(pq, std::move(h));
            else
                it->second = it->second + h;
        }
    std::map<std::pair<int, int>, double> masses;
    for (const auto& [pq, h] : harmonics) {
        const double m = sphere_norm_sq(h);
        if (m > 1e-24) masses[pq] = m;
    }
    return masses;
}

}  // namespace rieszlab::oracle
