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
#include <cstddef>
#include <vector>

namespace rieszlab {

/// Dense real symmetric matrix, row-major.
struct SymMatrix {
    std::size_t n = 0;
    std::vector<double> a;  // n*n entries

    SymMatrix() = default;
    explicit SymMatrix(std::size_t size) : n(size), a(size * size, 0.0) {}

    double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
    double operator()(std::size_t i, std::size_t j) const { return a[i * n + j]; }
};

struct EigenDecomposition {
    std::vector<double> values;        // descending
    std::vector<std::vector<double>> vectors;  // vectors[k] is the k-th eigenvector
};

/// Cyclic Jacobi eigensolver for real symmetric matrices.
///
/// Gram matrices in this project stay below ~200x200, where Jacobi is
/// accurate and its fixed sweep order keeps results deterministic.
/// Eigenpairs are returned sorted by descending eigenvalue; each vector's
/// largest-magnitude entry is made positive so the output is canonical.
inline EigenDecomposition jacobi_eigen(SymMatrix m, int max_sweeps = 64) {
    const std::size_t n = m.n;
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;  // v[i] = column i of V

    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(m(i, i)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) scale = std::max(scale, std::abs(m(i, j)));
    if (scale == 0.0) scale = 1.0;

    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += m(i, j) * m(i, j);
        if (std::sqrt(off) <= 1e-15 * scale * static_cast<double>(n)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = m(p, q);
                if (std::abs(apq) <= 1e-18 * scale) continue;
                const double theta = (m(q, q) - m(p, p)) / (2.0 * apq);
                const double t = (theta >= 0.0)
                                     ? 1.0 / (theta + std::sqrt(1.0 + theta * theta))
                                     : 1.0 / (theta - std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t k = 0; k < n; ++k) {
                    const double mkp = m(k, p), mkq = m(k, q);
                    m(k, p) = c * mkp - s * mkq;
                    m(k, q) = s * mkp + c * mkq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double mpk = m(p, k), mqk = m(q, k);
                    m(p, k) = c * mpk - s * mqk;
                    m(q, k) = s * mpk + c * mqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (m(a, a) != m(b, b)) return m(a, a) > m(b, b);
        return a < b;
    });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t c = order[k];
        out.values[k] = m(c, c);
        double best = 0.0;
        std::size_t best_i = 0;
        for (std::size_t i = 0; i < n; ++i) {
            out.vectors[k][i] = v[i][c];
            if (std::abs(v[i][c]) > std::abs(best)) {
                best = v[i][c];
                best_i = i;
            }
        }
        if (out.vectors[k][best_i] < 0.0)
            for (double& x : out.vectors[k]) x = -x;
    }
    return out;
}

}  // namespace rieszlab
