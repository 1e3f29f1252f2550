#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <vector>

#include "cycdom/groebner.hpp"

namespace cycdom {

struct VarietyOptions {
    double residual_tol = 1e-9;
    double cluster_tol = 1e-6;
    int polish_iters = 12;
    std::uint64_t seed = 20260822;
};

struct VarietyPoint {
    std::vector<std::complex<double>> w;
    double residual = 0.0;  // max |g(w)| over the basis generators
    int multiplicity = 1;   // size of the eigenvalue cluster
};

struct VarietySolution {
    std::vector<VarietyPoint> points;
    bool well_conditioned = true;
    double max_residual = 0.0;
    std::size_t quotient_dim = 0;
};

/// Nearest rational with denominator at most `max_den`, accepted only when it
/// approximates x within `tol`.  Continued-fraction convergents.
inline std::optional<Rational> snap_rational(double x, std::int64_t max_den = 1000000,
                                             double tol = 1e-7) {
    if (!std::isfinite(x) || std::abs(x) > 1e6) return std::nullopt;
    std::int64_t p_prev = 1, q_prev = 0;
    std::int64_t p_cur, q_cur;
    double y = x;
    {
        double a0 = std::floor(y);
        if (std::abs(a0) > 1e15) return std::nullopt;
        p_cur = static_cast<std::int64_t>(a0);
        q_cur = 1;
    }
    for (int iter = 0; iter < 64; ++iter) {
        double approx = static_cast<double>(p_cur) / static_cast<double>(q_cur);
        if (std::abs(approx - x) <= tol) return Rational(p_cur) / Rational(q_cur);
        double frac = y - std::floor(y);
        if (frac < 1e-15) break;
        y = 1.0 / frac;
        double a = std::floor(y);
        if (a > 4.0 * static_cast<double>(max_den)) break;
        std::int64_t ai = static_cast<std::int64_t>(a);
        std::int64_t p_next = ai * p_cur + p_prev;
        std::int64_t q_next = ai * q_cur + q_prev;
        if (q_next > max_den || q_next <= 0) break;
        p_prev = p_cur;
        q_prev = q_cur;
        p_cur = p_next;
        q_cur = q_next;
    }
    return std::nullopt;
}

inline std::optional<GaussianRational> snap_gaussian(const std::complex<double>& z,
                                                     std::int64_t max_den = 1000000,
                                                     double tol = 1e-7) {
    auto re = snap_rational(z.real(), max_den, tol);
    auto im = snap_rational(z.imag(), max_den, tol);
    if (!re || !im) return std::nullopt;
    return GaussianRational(std::move(*re), std::move(*im));
}

inline std::optional<std::vector<GaussianRational>> snap_point(
    const std::vector<std::complex<double>>& w, std::int64_t max_den = 1000000,
    double tol = 1e-7) {
    std::vector<GaussianRational> out;
    out.reserve(w.size());
    for (const auto& z : w) {
        auto g = snap_gaussian(z, max_den, tol);
        if (!g) return std::nullopt;
        out.push_back(std::move(*g));
    }
    return out;
}

namespace detail {

/// Multiplication-by-z_{j+1} matrix on the standard monomial basis.
inline Eigen::MatrixXcd multiplication_matrix(const GroebnerBasis& basis,
                                              const QuotientBasis& qb, int var) {
    const std::size_t k = qb.monomials.size();
    std::map<ExponentVector, std::size_t, GradedLexLess> index;
    for (std::size_t s = 0; s < k; ++s) index.emplace(qb.monomials[s], s);

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k),
                                                static_cast<Eigen::Index>(k));
    for (std::size_t s = 0; s < k; ++s) {
        ExponentVector shifted = qb.monomials[s];
        ++shifted[var];
        auto it = index.find(shifted);
        if (it != index.end()) {
            m(static_cast<Eigen::Index>(it->second), static_cast<Eigen::Index>(s)) = 1.0;
            continue;
        }
        MultiPolynomial mono =
            MultiPolynomial::monomial(basis.dim, shifted, GaussianRational(1));
        MultiPolynomial nf = normal_form(mono, basis);
        for (const auto& [e, c] : nf.terms()) {
            auto row = index.find(e);
            if (row == index.end())
                throw Error("internal: normal form leaves the standard monomial span");
            m(static_cast<Eigen::Index>(row->second), static_cast<Eigen::Index>(s)) =
                c.to_complex_double();
        }
    }
    return m;
}

inline double family_residual(const std::vector<MultiPolynomial>& gens,
                              const std::vector<std::complex<double>>& w) {
    double r = 0.0;
    for (const auto& g : gens) r = std::max(r, std::abs(g.evaluate(w)));
    return r;
}

/// Gauss-Newton refinement of a candidate root of the generator system.
inline void polish_root(const std::vector<MultiPolynomial>& gens,
                        const std::vector<std::vector<MultiPolynomial>>& jacobian,
                        std::vector<std::complex<double>>& w, int iters, double tol) {
    const int d = static_cast<int>(w.size());
    const int m = static_cast<int>(gens.size());
    std::vector<std::complex<double>> best = w;
    double best_res = family_residual(gens, w);
    for (int it = 0; it < iters && best_res > tol * 1e-4; ++it) {
        Eigen::VectorXcd f(m);
        Eigen::MatrixXcd jac(m, d);
        for (int i = 0; i < m; ++i) {
            f(i) = gens[static_cast<std::size_t>(i)].evaluate(w);
            for (int j = 0; j < d; ++j)
                jac(i, j) = jacobian[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                .evaluate(w);
        }
        Eigen::VectorXcd step = jac.completeOrthogonalDecomposition().solve(f);
        if (!step.allFinite()) break;
        for (int j = 0; j < d; ++j) w[static_cast<std::size_t>(j)] -= step(j);
        double res = family_residual(gens, w);
        if (res < best_res) {
            best_res = res;
            best = w;
        } else {
            break;
        }
    }
    w = best;
}

}  // namespace detail

/// Solves a zero-dimensional system from its Groebner basis: a random
/// unit-modulus combination of the multiplication matrices is diagonalized,
/// coordinates are read off as Rayleigh quotients of the shared eigenvectors,
/// then each candidate is polished by Gauss-Newton against the exact
/// generators.  Nearby candidates merge into one point whose multiplicity is
/// the cluster size, so multiplicities sum to the codimension.
inline VarietySolution solve_variety(const GroebnerBasis& basis, const QuotientBasis& qb,
                                     const VarietyOptions& opts = {}) {
    if (!qb.finite) throw Error("solve_variety requires a finite quotient basis");
    VarietySolution out;
    out.quotient_dim = qb.monomials.size();
    if (qb.monomials.empty()) return out;  // unit ideal: empty variety

    const int d = basis.dim;
    const std::size_t k = qb.monomials.size();

    std::vector<Eigen::MatrixXcd> mult;
    mult.reserve(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j) mult.push_back(detail::multiplication_matrix(basis, qb, j));

    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * 3.14159265358979323846);
    Eigen::MatrixXcd combo = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(k),
                                                    static_cast<Eigen::Index>(k));
    for (int j = 0; j < d; ++j)
        combo += std::polar(1.0, angle(rng)) * mult[static_cast<std::size_t>(j)];

    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(combo);
    if (solver.info() != Eigen::Success) {
        out.well_conditioned = false;
        return out;
    }

    std::vector<std::vector<MultiPolynomial>> jacobian;
    for (const auto& g : basis.gens) {
        std::vector<MultiPolynomial> row;
        for (int j = 0; j < d; ++j) row.push_back(g.derivative(j));
        jacobian.push_back(std::move(row));
    }

    std::vector<std::vector<std::complex<double>>> cand;
    for (std::size_t s = 0; s < k; ++s) {
        Eigen::VectorXcd v = solver.eigenvectors().col(static_cast<Eigen::Index>(s));
        double nrm = v.squaredNorm();
        std::vector<std::complex<double>> w(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            Eigen::VectorXcd mv = mult[static_cast<std::size_t>(j)] * v;
            w[static_cast<std::size_t>(j)] = v.dot(mv) / nrm;
        }
        detail::polish_root(basis.gens, jacobian, w, opts.polish_iters, opts.residual_tol);
        cand.push_back(std::move(w));
    }

    // Greedy clustering; representative is the member with least residual.
    std::vector<bool> used(cand.size(), false);
    for (std::size_t a = 0; a < cand.size(); ++a) {
        if (used[a]) continue;
        std::vector<std::size_t> cluster{a};
        used[a] = true;
        for (std::size_t b = a + 1; b < cand.size(); ++b) {
            if (used[b]) continue;
            double dist = 0.0, scale = 1.0;
            for (int j = 0; j < d; ++j) {
                dist = std::max(dist, std::abs(cand[a][static_cast<std::size_t>(j)] -
                                               cand[b][static_cast<std::size_t>(j)]));
                scale = std::max(scale, std::abs(cand[a][static_cast<std::size_t>(j)]));
            }
            if (dist <= opts.cluster_tol * scale) {
                used[b] = true;
                cluster.push_back(b);
            }
        }
        VarietyPoint pt;
        pt.multiplicity = static_cast<int>(cluster.size());
        pt.residual = std::numeric_limits<double>::infinity();
        for (std::size_t idx : cluster) {
            double r = detail::family_residual(basis.gens, cand[idx]);
            if (r < pt.residual) {
                pt.residual = r;
                pt.w = cand[idx];
            }
        }
        out.points.push_back(std::move(pt));
    }

    std::sort(out.points.begin(), out.points.end(), [](const VarietyPoint& x,
                                                       const VarietyPoint& y) {
        for (std::size_t j = 0; j < x.w.size(); ++j) {
            if (x.w[j].real() != y.w[j].real()) return x.w[j].real() < y.w[j].real();
            if (x.w[j].imag() != y.w[j].imag()) return x.w[j].imag() < y.w[j].imag();
        }
        return false;
    });

    for (const auto& p : out.points) out.max_residual = std::max(out.max_residual, p.residual);
    out.well_conditioned = out.max_residual <= opts.residual_tol;
    return out;
}

/// Exact confirmation of a numeric candidate: snaps each coordinate to a
/// small rational and checks that every generator vanishes exactly there.
inline std::optional<std::vector<GaussianRational>> confirm_exact_zero(
    const std::vector<MultiPolynomial>& gens, const std::vector<std::complex<double>>& w,
    std::int64_t max_den = 1000000, double tol = 1e-7) {
    auto cand = snap_point(w, max_den, tol);
    if (!cand) return std::nullopt;
    for (const auto& g : gens)
        if (!g.evaluate(*cand).is_zero()) return std::nullopt;
    return cand;
}

}  // namespace cycdom
