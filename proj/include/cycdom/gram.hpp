#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/highprec.hpp"
#include "cycdom/quadrature.hpp"
#include "cycdom/weights.hpp"

namespace cycdom {

/// Gram matrix of the monomials z^0..z^N under the derivative-augmented
/// inner product <f, g> = sum_{m=0}^{n} <f^(m), g^(m)>_v.
struct GramMatrix {
    int N = 0;
    int n = 0;
    unsigned digits = 70;
    std::vector<Cx> a;  // row-major (N+1) x (N+1), a[j*(N+1)+k] = <z^j, z^k>
    bool hermitian = true;
    Real condition_estimate{0};  // squared Cholesky pivot ratio

    const Cx& at(int j, int k) const { return a[static_cast<std::size_t>(j) * (N + 1) + k]; }
    Cx& at(int j, int k) { return a[static_cast<std::size_t>(j) * (N + 1) + k]; }
};

namespace detail {

/// Cholesky pivots of a Hermitian matrix reached through `at`, used for the
/// condition proxy and the positive-definiteness check.  Returns the pivots
/// (diagonal of L); throws PrecisionLoss when a pivot collapses.
inline std::vector<Real> cholesky_pivots(const GramMatrix& G) {
    int size = G.N + 1;
    std::vector<Cx> L(static_cast<std::size_t>(size) * size, Cx(Real(0), Real(0)));
    auto l = [&](int j, int k) -> Cx& { return L[static_cast<std::size_t>(j) * size + k]; };
    std::vector<Real> pivots(size);
    for (int j = 0; j < size; ++j) {
        for (int k = 0; k <= j; ++k) {
            Cx s = G.at(j, k);
            for (int m = 0; m < k; ++m) s -= l(j, m) * l(k, m).conj();
            if (k == j) {
                if (!(s.re > 0))
                    throw PrecisionLoss("Gram matrix lost positive definiteness at pivot " +
                                        std::to_string(j));
                pivots[j] = sqrt(s.re);
                l(j, j) = Cx(pivots[j], Real(0));
            } else {
                l(j, k) = s / Cx(pivots[k], Real(0));
            }
        }
    }
    return pivots;
}

}  // namespace detail

/// Assembles the Gram matrix on the polar grid.  The angular integral is the
/// uniform M-point rule, which is exact for the trigonometric monomials that
/// appear here; together with the radial rule this defines one fixed discrete
/// measure, so the result is Hermitian positive definite by construction and
/// bit-identical for every thread count.
inline GramMatrix gram_matrix(const WeightSpec& weight, int n, int N, const QuadratureGrid& grid,
                              unsigned threads = 1) {
    if (N < 0) throw Error("degree cap must be nonnegative");
    if (n < 0) throw Error("derivative order must be nonnegative");
    if (2 * N + 1 >= grid.angular)
        throw Error("angular grid too coarse for the requested degree cap");
    PrecisionGuard guard(grid.digits);

    const std::size_t radial = grid.r.size();
    const int M = grid.angular;
    const int size = N + 1;

    // phase table for the angular transform: cos/sin of 2 pi j / M
    std::vector<Cx> phase(static_cast<std::size_t>(M), Cx(Real(0), Real(0)));
    {
        Real step = 2 * real_pi() / M;
        for (int j = 0; j < M; ++j) {
            Real t = step * j;
            phase[static_cast<std::size_t>(j)] = Cx(cos(t), sin(t));
        }
    }

    // angular transforms W[q][i] = (2/M) sum_m v(r_i, theta_m) e^{i q theta_m},
    // one slot per radial node
    std::vector<std::vector<Cx>> W(static_cast<std::size_t>(N) + 1);
    for (auto& row : W) row.assign(radial, Cx(Real(0), Real(0)));
    {
        Real step = 2 * real_pi() / M;
        Real two_over_m = Real(2) / M;
        parallel_for(radial, threads, grid.digits, [&](std::size_t i) {
            std::vector<Real> row(static_cast<std::size_t>(M));
            for (int m = 0; m < M; ++m)
                row[static_cast<std::size_t>(m)] = weight_eval(weight, grid.r[i], step * m);
            for (int q = 0; q <= N; ++q) {
                Cx acc(Real(0), Real(0));
                std::size_t idx = 0;
                for (int m = 0; m < M; ++m) {
                    acc += phase[idx] * row[static_cast<std::size_t>(m)];
                    idx += static_cast<std::size_t>(q);
                    if (idx >= static_cast<std::size_t>(M)) idx -= static_cast<std::size_t>(M);
                }
                W[static_cast<std::size_t>(q)][i] = acc * two_over_m;
            }
        });
    }

    // radial moments R[q][s] = sum_i w_i r_i^{s+1} W[q][i] = <z^a, z^b> for
    // s = a + b, q = a - b >= 0; one slot per q
    std::vector<std::vector<Cx>> R(static_cast<std::size_t>(N) + 1);
    for (auto& row : R) row.assign(static_cast<std::size_t>(2 * N) + 1, Cx(Real(0), Real(0)));
    parallel_for(static_cast<std::size_t>(N) + 1, threads, grid.digits, [&](std::size_t q) {
        for (std::size_t i = 0; i < radial; ++i) {
            Real p = grid.w[i] * grid.r[i];
            const Cx& wq = W[q][i];
            for (int s = 0; s <= 2 * N; ++s) {
                R[q][static_cast<std::size_t>(s)] += wq * p;
                p *= grid.r[i];
            }
        }
    });

    GramMatrix G;
    G.N = N;
    G.n = n;
    G.digits = grid.digits;
    G.a.assign(static_cast<std::size_t>(size) * size, Cx(Real(0), Real(0)));
    for (int j = 0; j < size; ++j) {
        for (int k = 0; k <= j; ++k) {
            Cx entry(Real(0), Real(0));
            int q = j - k;
            int mmax = std::min(std::min(j, k), n);
            for (int m = 0; m <= mmax; ++m) {
                Real factor(1);
                for (int t = 0; t < m; ++t) factor *= (j - t) * (k - t);
                // factor = (j!/(j-m)!) * (k!/(k-m)!)
                entry += R[static_cast<std::size_t>(q)][static_cast<std::size_t>(j + k - 2 * m)] *
                         factor;
            }
            G.at(j, k) = entry;
            if (k != j) G.at(k, j) = entry.conj();
        }
    }
    G.hermitian = true;

    std::vector<Real> pivots = detail::cholesky_pivots(G);
    Real lo = pivots.front(), hi = pivots.front();
    for (const Real& p : pivots) {
        if (p < lo) lo = p;
        if (p > hi) hi = p;
    }
    G.condition_estimate = (hi / lo) * (hi / lo);
    Real budget = pow(Real(10), static_cast<int>(grid.digits) - 10);
    if (G.condition_estimate > budget)
        throw PrecisionLoss("Gram condition estimate exceeds the working precision budget");
    return G;
}

}  // namespace cycdom
