#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/highprec.hpp"

namespace cycdom {

/// Gauss-Legendre rule on [-1, 1] at the current working precision.
struct GaussLegendre {
    std::vector<Real> nodes;
    std::vector<Real> weights;
};

/// Nodes as Legendre roots by Newton iteration from the Chebyshev-based
/// double-precision seeds; quadratic convergence makes eight steps plenty
/// for a few hundred digits.
inline GaussLegendre gauss_legendre(int n) {
    if (n < 2) throw Error("Gauss-Legendre rule needs at least two points");
    GaussLegendre rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double seed = std::cos(3.14159265358979323846 * (i + 0.75) / (n + 0.5));
        Real x(seed);
        Real dp(0);
        for (int step = 0; step < 8; ++step) {
            Real p0(1), p1(0);
            for (int k = 0; k < n; ++k) {
                Real p2 = p1;
                p1 = p0;
                p0 = ((2 * k + 1) * x * p1 - k * p2) / (k + 1);
            }
            // p0 = P_n(x), p1 = P_{n-1}(x)
            dp = n * (x * p0 - p1) / (x * x - 1);
            x -= p0 / dp;
        }
        Real w = 2 / ((1 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

/// Polar quadrature data for integrals over the unit disk against the
/// normalized area measure.  The radial rule integrates f over [0, 1]; the
/// angular rule is the uniform M-point grid.  Radial panels refine
/// geometrically toward r = 1, where both the weights and the diagnostics
/// concentrate; the final panel closes the gap so polynomials are handled
/// exactly rather than truncated.
struct QuadratureGrid {
    std::vector<Real> r;
    std::vector<Real> w;
    int angular = 512;
    unsigned digits = 70;
    int levels = 44;
    int points_per_panel = 32;
};

inline QuadratureGrid build_grid(unsigned digits, int levels = 44, int points_per_panel = 32,
                                 int angular = 512) {
    if (levels < 2) throw Error("radial grid needs at least two refinement levels");
    if (angular < 8) throw Error("angular grid needs at least eight points");
    PrecisionGuard guard(digits);
    GaussLegendre base = gauss_legendre(points_per_panel);

    QuadratureGrid grid;
    grid.angular = angular;
    grid.digits = digits;
    grid.levels = levels;
    grid.points_per_panel = points_per_panel;

    auto add_panel = [&](const Real& lo, const Real& hi) {
        Real mid = (lo + hi) / 2;
        Real half = (hi - lo) / 2;
        for (int i = 0; i < points_per_panel; ++i) {
            grid.r.push_back(mid + half * base.nodes[i]);
            grid.w.push_back(half * base.weights[i]);
        }
    };

    Real one(1);
    Real lo(0), hi = one / 2;
    add_panel(lo, hi);
    for (int j = 1; j < levels; ++j) {
        lo = hi;
        hi = one - ldexp(one, -(j + 1));
        add_panel(lo, hi);
    }
    add_panel(hi, one);
    return grid;
}

}  // namespace cycdom
