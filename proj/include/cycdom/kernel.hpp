#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/gram.hpp"
#include "cycdom/highprec.hpp"
#include "cycdom/quadrature.hpp"
#include "cycdom/weights.hpp"

namespace cycdom {

/// Orthonormal polynomial system obtained from starting vectors by modified
/// Gram-Schmidt in the weighted inner product.  Column k of U holds the
/// monomial coefficients of the k-th orthonormal function.  When a pivot
/// collapses below the precision budget the process stops; `usable` is the
/// number of columns that survived.
struct OrthonormalSystem {
    int size = 0;    // columns requested
    int usable = 0;  // columns completed before conditioning gave out
    unsigned digits = 70;
    std::vector<Cx> U;          // row-major size x size, column k = coefficients of phi_k
    std::vector<Real> pivots;   // Gram-Schmidt pivot norms
    bool ill_conditioned = false;

    const Cx& u(int j, int k) const { return U[static_cast<std::size_t>(j) * size + k]; }
    Cx& u(int j, int k) { return U[static_cast<std::size_t>(j) * size + k]; }
};

namespace detail {

/// <x, y> in the Gram inner product, given t = G^T x precomputed:
/// <x, y> = sum_b conj(y_b) t_b.
inline Cx gram_pair(const std::vector<Cx>& t, const std::vector<Cx>& y) {
    Cx acc(Real(0), Real(0));
    for (std::size_t b = 0; b < y.size(); ++b) acc += y[b].conj() * t[b];
    return acc;
}

inline std::vector<Cx> gram_transform(const GramMatrix& G, const std::vector<Cx>& x) {
    int size = G.N + 1;
    std::vector<Cx> t(static_cast<std::size_t>(size), Cx(Real(0), Real(0)));
    for (int a = 0; a < size; ++a) {
        if (x[static_cast<std::size_t>(a)].re == 0 && x[static_cast<std::size_t>(a)].im == 0)
            continue;
        const Cx& xa = x[static_cast<std::size_t>(a)];
        for (int b = 0; b < size; ++b) t[static_cast<std::size_t>(b)] += G.at(a, b) * xa;
    }
    return t;
}

}  // namespace detail

/// Modified Gram-Schmidt over arbitrary starting columns.  Alongside each
/// vector v the transform s = G^T v is maintained, so inner products against
/// finished columns cost O(size) each and the whole run O(size^3).
inline OrthonormalSystem orthonormalize_columns(const GramMatrix& G,
                                                const std::vector<std::vector<Cx>>& starts) {
    PrecisionGuard guard(G.digits);
    int size = static_cast<int>(starts.size());
    int dim = G.N + 1;
    OrthonormalSystem sys;
    sys.size = size;
    sys.digits = G.digits;
    sys.U.assign(static_cast<std::size_t>(dim) * size, Cx(Real(0), Real(0)));
    sys.pivots.assign(static_cast<std::size_t>(size), Real(0));

    Real floor_sq = pow(Real(10), -2 * (static_cast<int>(G.digits) - 10));
    std::vector<std::vector<Cx>> phi;      // finished columns
    std::vector<std::vector<Cx>> phi_g;    // their Gram transforms
    phi.reserve(size);
    phi_g.reserve(size);

    for (int k = 0; k < size; ++k) {
        std::vector<Cx> v = starts[static_cast<std::size_t>(k)];
        if (static_cast<int>(v.size()) != dim)
            throw Error("orthonormalize_columns: starting vector has the wrong length");
        std::vector<Cx> s = detail::gram_transform(G, v);
        Real start_norm_sq = detail::gram_pair(s, v).re;
        for (int j = 0; j < k; ++j) {
            Cx h = detail::gram_pair(s, phi[static_cast<std::size_t>(j)]);
            // h = <v, phi_j>; subtract the projection from v and its transform
            for (int b = 0; b < dim; ++b) {
                v[static_cast<std::size_t>(b)] -= h * phi[static_cast<std::size_t>(j)][b];
                s[static_cast<std::size_t>(b)] -= h * phi_g[static_cast<std::size_t>(j)][b];
            }
        }
        Real norm_sq = detail::gram_pair(s, v).re;
        if (!(norm_sq > start_norm_sq * floor_sq) || !(norm_sq > 0)) {
            sys.ill_conditioned = true;
            break;
        }
        Real pivot = sqrt(norm_sq);
        sys.pivots[static_cast<std::size_t>(k)] = pivot;
        for (auto& c : v) c /= pivot;
        for (auto& c : s) c /= pivot;
        for (int b = 0; b < dim; ++b) sys.u(b, k) = v[static_cast<std::size_t>(b)];
        phi.push_back(std::move(v));
        phi_g.push_back(std::move(s));
        sys.usable = k + 1;
    }
    return sys;
}

/// Orthonormal system of the monomials z^0..z^N themselves.
inline OrthonormalSystem orthonormalize(const GramMatrix& G) {
    int dim = G.N + 1;
    std::vector<std::vector<Cx>> starts(static_cast<std::size_t>(dim));
    for (int k = 0; k < dim; ++k) {
        starts[static_cast<std::size_t>(k)].assign(static_cast<std::size_t>(dim),
                                                   Cx(Real(0), Real(0)));
        starts[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = Cx(Real(1), Real(0));
    }
    return orthonormalize_columns(G, starts);
}

/// lambda_N(w) = sum_{k <= N} |phi_k(w)|^2, reported at each requested cap.
/// The samples are partial sums of nonnegative terms, so the profile is
/// nondecreasing by construction.  Caps beyond the usable range are flagged.
struct LambdaProfile {
    std::vector<std::pair<int, Real>> samples;
    bool flagged = false;  // some requested cap exceeded the usable columns
};

inline LambdaProfile lambda_profile(const OrthonormalSystem& sys, const Cx& w,
                                    const std::vector<int>& caps) {
    PrecisionGuard guard(sys.digits);
    LambdaProfile out;
    int dim = sys.size;
    std::vector<Cx> wpow(static_cast<std::size_t>(dim));
    wpow[0] = Cx(Real(1), Real(0));
    for (int j = 1; j < dim; ++j) wpow[static_cast<std::size_t>(j)] = wpow[j - 1] * w;

    std::vector<int> sorted = caps;
    std::sort(sorted.begin(), sorted.end());
    Real running(0);
    int k = 0;
    for (int cap : sorted) {
        if (cap >= dim) {
            out.flagged = true;
            break;
        }
        for (; k <= cap; ++k) {
            if (k >= sys.usable) {
                out.flagged = true;
                break;
            }
            Cx value(Real(0), Real(0));
            for (int j = 0; j <= k; ++j) value += sys.u(j, k) * wpow[static_cast<std::size_t>(j)];
            running += value.norm_sq();
        }
        if (k <= cap) break;
        out.samples.emplace_back(cap, running);
    }
    return out;
}

inline Real lambda_N(const GramMatrix& G, const Cx& w) {
    OrthonormalSystem sys = orthonormalize(G);
    if (sys.ill_conditioned && sys.usable <= G.N)
        throw PrecisionLoss("orthonormalization exhausted the precision budget");
    LambdaProfile p = lambda_profile(sys, w, {G.N});
    return p.samples.front().second;
}

/// Independent route to the same number: solve G x = e_N(w) by the Cholesky
/// factorization and return e_N(w)^* x.  Used as a cross-check oracle for
/// the Gram-Schmidt path.
inline Real lambda_N_least_squares(const GramMatrix& G, const Cx& w) {
    PrecisionGuard guard(G.digits);
    int size = G.N + 1;
    std::vector<Cx> L(static_cast<std::size_t>(size) * size, Cx(Real(0), Real(0)));
    auto l = [&](int j, int k) -> Cx& { return L[static_cast<std::size_t>(j) * size + k]; };
    for (int j = 0; j < size; ++j) {
        for (int k = 0; k <= j; ++k) {
            Cx s = G.at(j, k);
            for (int m = 0; m < k; ++m) s -= l(j, m) * l(k, m).conj();
            if (k == j) {
                if (!(s.re > 0)) throw PrecisionLoss("Cholesky pivot collapsed");
                l(j, j) = Cx(sqrt(s.re), Real(0));
            } else {
                l(j, k) = s / l(k, k);
            }
        }
    }
    std::vector<Cx> e(static_cast<std::size_t>(size));
    e[0] = Cx(Real(1), Real(0));
    for (int j = 1; j < size; ++j) e[static_cast<std::size_t>(j)] = e[j - 1] * w;
    // forward solve L y = e, then lambda = |y|^2 since G = L L^*
    std::vector<Cx> y(static_cast<std::size_t>(size));
    for (int j = 0; j < size; ++j) {
        Cx s = e[static_cast<std::size_t>(j)];
        for (int m = 0; m < j; ++m) s -= l(j, m) * y[static_cast<std::size_t>(m)];
        y[static_cast<std::size_t>(j)] = s / l(j, j);
    }
    Real acc(0);
    for (const auto& c : y) acc += c.norm_sq();
    return acc;
}

/// delta_N(w) = min { ||1 - (z-w) q|| : deg q <= N-1 }, reported at each cap:
/// the distance from 1 to the subspace spanned by z^{k+1} - w z^k.  The
/// squared profile is G[0][0] minus a sum of nonnegative terms, hence
/// nonincreasing by construction.
struct DeltaProfile {
    std::vector<std::pair<int, Real>> samples;
    bool flagged = false;
};

inline DeltaProfile delta_profile(const GramMatrix& G, const Cx& w, const std::vector<int>& caps) {
    PrecisionGuard guard(G.digits);
    int dim = G.N + 1;
    int count = G.N;  // shifts z^{k+1} - w z^k for k = 0..N-1
    std::vector<std::vector<Cx>> starts(static_cast<std::size_t>(count));
    for (int k = 0; k < count; ++k) {
        auto& col = starts[static_cast<std::size_t>(k)];
        col.assign(static_cast<std::size_t>(dim), Cx(Real(0), Real(0)));
        col[static_cast<std::size_t>(k + 1)] = Cx(Real(1), Real(0));
        col[static_cast<std::size_t>(k)] = -w;
    }
    OrthonormalSystem sys = orthonormalize_columns(G, starts);

    // projections of the constant 1 on the orthonormal shifts
    std::vector<Cx> one(static_cast<std::size_t>(dim), Cx(Real(0), Real(0)));
    one[0] = Cx(Real(1), Real(0));
    std::vector<Cx> t = detail::gram_transform(G, one);

    DeltaProfile out;
    std::vector<int> sorted = caps;
    std::sort(sorted.begin(), sorted.end());
    Real remaining = G.at(0, 0).re;  // ||1||^2
    int k = 0;
    for (int cap : sorted) {
        if (cap > count) {
            out.flagged = true;
            break;
        }
        for (; k < cap; ++k) {
            if (k >= sys.usable) {
                out.flagged = true;
                break;
            }
            std::vector<Cx> col(static_cast<std::size_t>(dim));
            for (int b = 0; b < dim; ++b) col[static_cast<std::size_t>(b)] = sys.u(b, k);
            Cx proj = detail::gram_pair(t, col);  // <1, psi_k>
            remaining -= proj.norm_sq();
        }
        if (k < cap) break;
        Real clamped = remaining > 0 ? remaining : Real(0);
        out.samples.emplace_back(cap, sqrt(clamped));
    }
    return out;
}

enum class GrowthClass { Bounded, Divergent, Inconclusive };

inline std::string to_string(GrowthClass c) {
    switch (c) {
        case GrowthClass::Bounded: return "Bounded";
        case GrowthClass::Divergent: return "Divergent";
        case GrowthClass::Inconclusive: return "Inconclusive";
    }
    return "?";
}

struct GrowthThresholds {
    double slope_lo = 0.3;
    double slope_hi = 1.0;
    double monotone_tol = 1e-25;
};

struct KernelDiagnostic {
    std::complex<double> w;
    std::vector<std::pair<int, Real>> samples;
    GrowthClass classification = GrowthClass::Inconclusive;
    double slope = 0.0;
    double slope_lo = 0.3;
    double slope_hi = 1.0;
    bool ill_conditioned = false;
    bool monotone_ok = true;
};

namespace detail {

/// Least-squares slope of log(value) against log(N) over the top half of the
/// samples; the dichotomy lives in the tail, the head is transient.
inline double log_log_slope(const std::vector<std::pair<int, Real>>& samples) {
    std::size_t half = samples.size() - samples.size() / 2;
    std::vector<double> xs, ys;
    for (std::size_t i = half - 1; i < samples.size(); ++i) {
        xs.push_back(std::log(static_cast<double>(samples[i].first)));
        ys.push_back(static_cast<double>(log(samples[i].second)));
    }
    double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom == 0) return 0.0;
    return (n * sxy - sx * sy) / denom;
}

inline GrowthClass classify_slope(double slope, const GrowthThresholds& th) {
    if (slope < th.slope_lo) return GrowthClass::Bounded;
    if (slope > th.slope_hi) return GrowthClass::Divergent;
    return GrowthClass::Inconclusive;
}

}  // namespace detail

/// Classifies a boundary point from a precomputed orthonormal system: the
/// log-log growth of lambda_N across the schedule decides Bounded versus
/// Divergent; conditioning trouble or broken monotonicity forces
/// Inconclusive.
inline KernelDiagnostic classify_point(const OrthonormalSystem& sys, std::complex<double> w,
                                       const std::vector<int>& schedule,
                                       const GrowthThresholds& th = {}) {
    if (schedule.size() < 2) throw Error("classification needs at least two schedule points");
    PrecisionGuard guard(sys.digits);
    KernelDiagnostic diag;
    diag.w = w;
    diag.slope_lo = th.slope_lo;
    diag.slope_hi = th.slope_hi;
    LambdaProfile prof = lambda_profile(sys, Cx(w.real(), w.imag()), schedule);
    diag.samples = prof.samples;
    diag.ill_conditioned = prof.flagged || sys.ill_conditioned;
    for (std::size_t i = 1; i < diag.samples.size(); ++i) {
        if (diag.samples[i].second <
            diag.samples[i - 1].second * (1 - Real(th.monotone_tol)))
            diag.monotone_ok = false;
    }
    if (diag.ill_conditioned || !diag.monotone_ok || diag.samples.size() < 2) {
        diag.classification = GrowthClass::Inconclusive;
        return diag;
    }
    diag.slope = detail::log_log_slope(diag.samples);
    diag.classification = detail::classify_slope(diag.slope, th);
    return diag;
}

/// Convenience wrapper that assembles the Gram matrix itself.
inline KernelDiagnostic classify_point(const WeightSpec& weight, int n, std::complex<double> w,
                                       const std::vector<int>& schedule, const QuadratureGrid& grid,
                                       const GrowthThresholds& th = {}, unsigned threads = 1) {
    int cap = *std::max_element(schedule.begin(), schedule.end());
    GramMatrix G = gram_matrix(weight, n, cap, grid, threads);
    return classify_point(orthonormalize(G), w, schedule, th);
}

/// Distance-side diagnostic for the same dichotomy: delta_N -> 0 exactly when
/// lambda_N diverges, so the growth of 1/delta_N^2 is classified with the
/// same thresholds.
struct DistanceDiagnostic {
    std::complex<double> w;
    std::vector<std::pair<int, Real>> samples;  // (N, delta_N)
    GrowthClass classification = GrowthClass::Inconclusive;
    double slope = 0.0;
    bool ill_conditioned = false;
};

inline DistanceDiagnostic dist_to_invariant_subspace(const GramMatrix& G, std::complex<double> w,
                                                     const std::vector<int>& schedule,
                                                     const GrowthThresholds& th = {}) {
    PrecisionGuard guard(G.digits);
    DistanceDiagnostic diag;
    diag.w = w;
    DeltaProfile prof = delta_profile(G, Cx(w.real(), w.imag()), schedule);
    diag.samples = prof.samples;
    diag.ill_conditioned = prof.flagged;
    if (diag.ill_conditioned || diag.samples.size() < 2) {
        diag.classification = GrowthClass::Inconclusive;
        return diag;
    }
    std::vector<std::pair<int, Real>> inverted;
    inverted.reserve(diag.samples.size());
    for (const auto& [cap, d] : diag.samples) {
        if (!(d > 0)) {
            diag.classification = GrowthClass::Divergent;  // distance hit zero outright
            return diag;
        }
        inverted.emplace_back(cap, 1 / (d * d));
    }
    diag.slope = detail::log_log_slope(inverted);
    diag.classification = detail::classify_slope(diag.slope, th);
    return diag;
}

/// Quadrature estimate of ||1/(z-w)^3||_v^2 with a refinement check: the
/// value is trusted only when a finer grid moves it by at most 5%.
struct ReciprocalNormReport {
    Real value{0};
    Real refined{0};
    bool converged = false;
    double boundary_dist = 0.0;  // chordal distance from w/|w| to the arc set, 0 for Constant
    Real dist_ratio{0};          // value * boundary_dist^6 when that distance is positive
};

namespace detail {

inline Real reciprocal_norm_on_grid(const WeightSpec& weight, std::complex<double> w,
                                    const QuadratureGrid& grid, unsigned threads) {
    const std::size_t radial = grid.r.size();
    const int M = grid.angular;
    Real step = 2 * real_pi() / M;
    Real wr(w.real()), wi(w.imag());
    Real wnorm = wr * wr + wi * wi;
    std::vector<Real> contrib(radial, Real(0));
    parallel_for(radial, threads, grid.digits, [&](std::size_t i) {
        const Real& r = grid.r[i];
        Real acc(0);
        for (int m = 0; m < M; ++m) {
            Real theta = step * m;
            Real c = cos(theta), s = sin(theta);
            Real dist_sq = r * r - 2 * r * (c * wr + s * wi) + wnorm;
            Real cube = dist_sq * dist_sq * dist_sq;
            acc += weight_eval(weight, r, theta) / cube;
        }
        contrib[i] = acc * (grid.w[i] * r * 2 / M);
    });
    Real total(0);
    for (const Real& c : contrib) total += c;
    return total;
}

}  // namespace detail

inline ReciprocalNormReport reciprocal_norm(const WeightSpec& weight, std::complex<double> w,
                                            const QuadratureGrid& grid, unsigned threads = 1) {
    if (std::abs(w) < 1.0) throw Error("reciprocal norm probe expects |w| >= 1");
    PrecisionGuard guard(grid.digits);
    ReciprocalNormReport rep;
    rep.value = detail::reciprocal_norm_on_grid(weight, w, grid, threads);
    QuadratureGrid finer = build_grid(grid.digits, grid.levels + 6, grid.points_per_panel,
                                      grid.angular * 2);
    rep.refined = detail::reciprocal_norm_on_grid(weight, w, finer, threads);
    Real scale = rep.refined > rep.value ? rep.refined : rep.value;
    rep.converged = scale > 0 && abs(rep.value - rep.refined) <= Real(0.05) * scale;

    if (weight.kind == WeightSpec::Kind::ArcSet) {
        double theta = std::arg(w);
        rep.boundary_dist =
            detail::chord_dist_to_arcs(theta, weight.arcs, 3.14159265358979323846);
        if (rep.boundary_dist > 0)
            rep.dist_ratio = rep.refined * pow(Real(rep.boundary_dist), 6);
    }
    return rep;
}

/// Truncated extension of the evaluation functional: F is expanded in the
/// orthonormal system and evaluated through it.  For deg F <= usable columns
/// this reproduces F(w); the point of the helper is that products P*Q route
/// through the same linear algebra used by lambda_N.
inline Cx apply_truncated_functional(const GramMatrix& G, const OrthonormalSystem& sys,
                                     const std::vector<Cx>& coeffs, const Cx& w) {
    PrecisionGuard guard(G.digits);
    int dim = G.N + 1;
    if (static_cast<int>(coeffs.size()) > dim)
        throw Error("functional argument exceeds the degree cap");
    std::vector<Cx> padded(static_cast<std::size_t>(dim), Cx(Real(0), Real(0)));
    for (std::size_t j = 0; j < coeffs.size(); ++j) padded[j] = coeffs[j];
    std::vector<Cx> t = detail::gram_transform(G, padded);

    std::vector<Cx> wpow(static_cast<std::size_t>(dim));
    wpow[0] = Cx(Real(1), Real(0));
    for (int j = 1; j < dim; ++j) wpow[static_cast<std::size_t>(j)] = wpow[j - 1] * w;

    Cx acc(Real(0), Real(0));
    std::vector<Cx> col(static_cast<std::size_t>(dim));
    for (int k = 0; k < sys.usable; ++k) {
        for (int b = 0; b < dim; ++b) col[static_cast<std::size_t>(b)] = sys.u(b, k);
        Cx coeff = detail::gram_pair(t, col);  // <F, phi_k>
        Cx value(Real(0), Real(0));
        for (int j = 0; j <= k; ++j) value += sys.u(j, k) * wpow[static_cast<std::size_t>(j)];
        acc += coeff * value;
    }
    return acc;
}

}  // namespace cycdom
