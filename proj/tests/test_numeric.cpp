#include "catch2/catch_amalgamated.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cycdom/gram.hpp"
#include "cycdom/highprec.hpp"
#include "cycdom/kernel.hpp"
#include "cycdom/quadrature.hpp"
#include "cycdom/weights.hpp"

using namespace cycdom;

namespace {

constexpr double kPi = 3.14159265358979323846;

double as_double(const Real& x) { return static_cast<double>(x); }

double rel_diff(const Real& got, double want) {
    return std::abs(as_double(got) - want) / std::abs(want);
}

/// Small grid for matrix-level tests: plenty of accuracy for degree caps in
/// the dozens, much faster to fill than the production default.
QuadratureGrid test_grid(int angular = 128) { return build_grid(50, 16, 32, angular); }

}  // namespace

TEST_CASE("Gauss-Legendre rule integrates low polynomials exactly") {
    PrecisionGuard guard(50);
    GaussLegendre rule = gauss_legendre(12);
    Real total(0), second(0), tenth(0);
    for (int i = 0; i < 12; ++i) {
        total += rule.weights[i];
        second += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
        Real p(1);
        for (int k = 0; k < 10; ++k) p *= rule.nodes[i];
        tenth += rule.weights[i] * p;
    }
    CHECK(rel_diff(total, 2.0) < 1e-40);
    CHECK(rel_diff(second, 2.0 / 3.0) < 1e-40);
    CHECK(rel_diff(tenth, 2.0 / 11.0) < 1e-40);
    CHECK_THROWS_AS(gauss_legendre(1), Error);
}

TEST_CASE("radial grid reproduces disk monomial moments") {
    QuadratureGrid grid = build_grid(70);
    CHECK(grid.r.size() == static_cast<std::size_t>((grid.levels + 1) * grid.points_per_panel));
    PrecisionGuard guard(70);
    // 2 * integral_0^1 r^(2k+1) dr = 1/(k+1), the Bergman diagonal
    for (int k = 0; k <= 70; k += 7) {
        Real acc(0);
        for (std::size_t i = 0; i < grid.r.size(); ++i) {
            Real p = grid.r[i];
            for (int t = 0; t < 2 * k; ++t) p *= grid.r[i];
            acc += 2 * grid.w[i] * p;
        }
        CHECK(rel_diff(acc, 1.0 / (k + 1)) < 1e-12);
    }
    CHECK_THROWS_AS(build_grid(50, 1), Error);
    CHECK_THROWS_AS(build_grid(50, 16, 32, 4), Error);
}

TEST_CASE("weight evaluation matches the closed forms") {
    WeightSpec flat = WeightSpec::constant_weight(2.5);
    CHECK(as_double(weight_eval(flat, Real(0.3), Real(1.1))) == 2.5);
    CHECK(weight_eval(flat, std::complex<double>(0.1, -0.4)) == 2.5);
    CHECK_THROWS_AS(WeightSpec::constant_weight(0.0), Error);
    CHECK_THROWS_AS(WeightSpec::constant_weight(-1.0), Error);

    // the whole circle leaves no gap anywhere
    WeightSpec full = WeightSpec::arc_set({CircleArc{0.0, kPi}});
    CHECK(weight_eval(full, std::complex<double>(0.5, 0.5)) == 1.0);

    // single arc around angle 0, evaluated on the negative axis: the gap is
    // pi - h, the chord 2 cos(h/2), the exponent -chord/(1 - r)
    double h = 0.3, r = 0.5;
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.0, h}});
    double expect = std::exp(-2.0 * std::cos(h / 2.0) / (1.0 - r));
    CHECK(std::abs(weight_eval(arc, std::complex<double>(-r, 0.0)) - expect) < 1e-15);
    double high = as_double(weight_eval(arc, Real(r), Real(kPi)));
    CHECK(std::abs(high - expect) < 1e-15);
    // on the arc itself the weight is identically one
    CHECK(weight_eval(arc, std::complex<double>(0.9 * std::cos(0.2), 0.9 * std::sin(0.2))) ==
          1.0);

    // arcs wrap across the angle seam
    WeightSpec seam = WeightSpec::arc_set({CircleArc{3.1, 0.1}});
    CHECK(weight_eval(seam, std::polar(0.5, -3.1)) == 1.0);
    CHECK(weight_eval(seam, std::polar(0.5, -2.8)) < 1.0);

    // a series is the weighted sum of its component arc weights
    WeightSpec left = WeightSpec::arc_set({CircleArc{kPi, 0.4}});
    WeightSpec series = WeightSpec::series({{{CircleArc{0.0, h}}, 0.75}, {{CircleArc{kPi, 0.4}}, 0.25}});
    std::complex<double> z(0.3, 0.45);
    double combined = 0.75 * weight_eval(arc, z) + 0.25 * weight_eval(left, z);
    CHECK(std::abs(weight_eval(series, z) - combined) < 1e-15);
    CHECK_THROWS_AS(WeightSpec::arc_set({}), Error);
    CHECK_THROWS_AS(WeightSpec::series({}), Error);
    CHECK_THROWS_AS(WeightSpec::series({{{}, 1.0}}), Error);
    CHECK_THROWS_AS(WeightSpec::series({{{CircleArc{0.0, 0.1}}, -1.0}}), Error);
}

TEST_CASE("weights are positive and radially nondecreasing toward the center") {
    std::mt19937 rng(20240817);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    // stay clear of the rim: exp(-2/(1-r)) underflows double past r ~ 0.997
    std::uniform_real_distribution<double> radius(0.0, 0.995);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.4, 0.6}, CircleArc{-2.0, 0.3}});
    WeightSpec series =
        WeightSpec::series({{{CircleArc{0.0, 0.2}}, 1.0}, {{CircleArc{2.5, 0.5}}, 0.125}});
    for (int trial = 0; trial < 10000; ++trial) {
        double theta = angle(rng);
        double r1 = radius(rng), r2 = radius(rng);
        if (r1 > r2) std::swap(r1, r2);
        for (const WeightSpec* spec : {&arc, &series}) {
            double outer = weight_eval(*spec, std::polar(r2, theta));
            double inner = weight_eval(*spec, std::polar(r1, theta));
            REQUIRE(outer > 0.0);
            REQUIRE(inner >= outer - 1e-15);
        }
    }
}

TEST_CASE("automatic series coefficients follow the gap geometry") {
    // one target set against one antipodal complement set: unit coefficient
    std::vector<CircleArc> at_zero{CircleArc{0.0, 0.0}};
    std::vector<CircleArc> at_pi{CircleArc{kPi, 0.0}};
    auto a = auto_coefficients({at_zero}, {at_pi});
    REQUIRE(a.size() == 1);
    CHECK(a[0] == 1.0);

    // chordal distance 1 (angular gap pi/3) gives (1/2)^6
    std::vector<CircleArc> third{CircleArc{kPi / 3.0, 0.0}};
    auto b = auto_coefficients({at_zero}, {third});
    CHECK(std::abs(b[0] - 1.0 / 64.0) < 1e-12);

    // second coefficient picks up the 1/2^k damping on top of the products
    auto c = auto_coefficients({at_zero, at_zero}, {at_pi, at_pi});
    REQUIRE(c.size() == 2);
    CHECK(c[0] == 1.0);
    CHECK(std::abs(c[1] - 0.5) < 1e-15);

    // every coefficient is bounded by the damping alone, so the series sums
    std::mt19937 rng(555);
    std::uniform_real_distribution<double> up(0.2, kPi - 0.2), low(-kPi + 0.2, -0.2);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<std::vector<CircleArc>> gamma, complement;
        for (int k = 0; k < 6; ++k) {
            gamma.push_back({CircleArc{up(rng), 0.05}});
            complement.push_back({CircleArc{low(rng), 0.05}});
        }
        auto coeffs = auto_coefficients(gamma, complement);
        double total = 0.0;
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
            REQUIRE(coeffs[k] > 0.0);
            REQUIRE(coeffs[k] <= std::pow(0.5, static_cast<double>(k)) + 1e-15);
            total += coeffs[k];
        }
        CHECK(total <= 2.0 + 1e-12);
        CHECK(auto_tail_bound(coeffs.size()) == std::pow(0.5, 5.0));
    }

    // touching sets have no usable gap
    CHECK_THROWS_AS(auto_coefficients({{CircleArc{0.0, 0.5}}}, {{CircleArc{0.3, 0.5}}}),
                    NonDisjoint);
}

TEST_CASE("Bergman Gram matrix matches its closed form") {
    QuadratureGrid grid = test_grid();
    WeightSpec flat = WeightSpec::constant_weight(1.0);
    GramMatrix G = gram_matrix(flat, 0, 60, grid, 4);
    PrecisionGuard guard(grid.digits);
    for (int k = 0; k <= 60; ++k) {
        CHECK(rel_diff(G.at(k, k).re, 1.0 / (k + 1)) < 1e-10);
        CHECK(as_double(G.at(k, k).im) == 0.0);
    }
    // off-diagonal entries vanish: the angular rule kills every q != 0 mode
    for (int j = 1; j <= 60; j += 13)
        for (int k = 0; k < j; k += 7) CHECK(as_double(G.at(j, k).abs()) < 1e-40);
    CHECK(as_double(G.condition_estimate) > 1.0);

    // first derivative term adds k^2 * ||z^(k-1)||^2 = k on the diagonal
    GramMatrix G1 = gram_matrix(flat, 1, 40, grid, 4);
    for (int k = 0; k <= 40; ++k)
        CHECK(rel_diff(G1.at(k, k).re, 1.0 / (k + 1) + k) < 1e-10);

    CHECK_THROWS_AS(gram_matrix(flat, 0, 70, test_grid(128), 1), Error);  // 2N+1 >= angular
}

TEST_CASE("monomial norms grow at the derivative-order rate") {
    QuadratureGrid grid = test_grid();
    WeightSpec flat = WeightSpec::constant_weight(1.0);
    for (int n : {1, 2}) {
        GramMatrix G = gram_matrix(flat, n, 60, grid, 4);
        // least-squares slope of log ||z^k||^2 against log k over k in [20, 60]
        double sx = 0, sy = 0, sxx = 0, sxy = 0, count = 0;
        for (int k = 20; k <= 60; ++k) {
            double x = std::log(static_cast<double>(k));
            double y = std::log(as_double(G.at(k, k).re));
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            count += 1;
        }
        double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
        CHECK(std::abs(slope - (2.0 * n - 1.0)) < 0.15);
    }
}

TEST_CASE("kernel values against the Bergman closed forms") {
    QuadratureGrid grid = test_grid();
    WeightSpec flat = WeightSpec::constant_weight(1.0);
    GramMatrix G = gram_matrix(flat, 0, 60, grid, 4);
    OrthonormalSystem sys = orthonormalize(G);
    REQUIRE(sys.usable == 61);
    REQUIRE_FALSE(sys.ill_conditioned);
    PrecisionGuard guard(grid.digits);

    // lambda_N(0) = 1: only the constant survives at the origin
    LambdaProfile at_zero = lambda_profile(sys, Cx(0.0, 0.0), {10, 60});
    CHECK(rel_diff(at_zero.samples[0].second, 1.0) < 1e-10);
    CHECK(rel_diff(at_zero.samples[1].second, 1.0) < 1e-10);

    // lambda_N(w) = sum_(k<=N) (k+1) |w|^(2k)
    double w = 1.0 / std::sqrt(2.0);
    LambdaProfile mid = lambda_profile(sys, Cx(w, 0.0), {20, 40, 60});
    for (const auto& [cap, value] : mid.samples) {
        double expect = 0.0;
        for (int k = 0; k <= cap; ++k) expect += (k + 1) * std::pow(0.5, k);
        CHECK(rel_diff(value, expect) < 1e-6);
    }

    // on the rim the kernel grows quadratically: lambda_N(1) = (N+1)(N+2)/2
    LambdaProfile rim = lambda_profile(sys, Cx(1.0, 0.0), {10, 30, 60});
    for (const auto& [cap, value] : rim.samples)
        CHECK(rel_diff(value, 0.5 * (cap + 1.0) * (cap + 2.0)) < 1e-8);

    // independent route through the Cholesky solve agrees
    Real direct = lambda_N_least_squares(G, Cx(w, 0.3));
    LambdaProfile prof = lambda_profile(sys, Cx(w, 0.3), {60});
    CHECK(as_double(abs(direct - prof.samples[0].second) / direct) < 1e-25);

    // partial sums never decrease
    LambdaProfile walk = lambda_profile(sys, Cx(0.8, -0.1), {10, 20, 30, 40, 50, 60});
    for (std::size_t i = 1; i < walk.samples.size(); ++i)
        CHECK(walk.samples[i].second >= walk.samples[i - 1].second);
}

TEST_CASE("distance profile starts at one and pairs with the kernel") {
    QuadratureGrid grid = test_grid();
    WeightSpec flat = WeightSpec::constant_weight(1.0);
    GramMatrix G = gram_matrix(flat, 0, 40, grid, 4);
    PrecisionGuard guard(grid.digits);

    // deg q <= 0 cannot approximate 1 by z*q at the origin at all
    DeltaProfile first = delta_profile(G, Cx(0.0, 0.0), {1});
    CHECK(rel_diff(first.samples[0].second, 1.0) < 1e-12);

    // delta_N^2 * lambda_N = 1: both sides solve the same extremal problem
    OrthonormalSystem sys = orthonormalize(G);
    for (double wr : {0.0, 0.5, 0.9, 1.0}) {
        std::vector<int> caps{10, 25, 40};
        DeltaProfile dp = delta_profile(G, Cx(wr, 0.2), caps);
        LambdaProfile lp = lambda_profile(sys, Cx(wr, 0.2), caps);
        REQUIRE(dp.samples.size() == caps.size());
        for (std::size_t i = 0; i < caps.size(); ++i) {
            Real product = dp.samples[i].second * dp.samples[i].second * lp.samples[i].second;
            CHECK(as_double(abs(product - 1)) < 1e-25);
        }
        for (std::size_t i = 1; i < dp.samples.size(); ++i)
            CHECK(dp.samples[i].second <= dp.samples[i - 1].second);
    }
}

TEST_CASE("arc-weight Gram stays positive definite with exact duality") {
    QuadratureGrid grid = build_grid(50, 20, 32, 64);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.0, kPi / 2.0}});
    GramMatrix G = gram_matrix(arc, 1, 24, grid, 4);
    PrecisionGuard guard(grid.digits);
    CHECK(as_double(G.condition_estimate) >= 1.0);

    OrthonormalSystem sys = orthonormalize(G);
    REQUIRE(sys.usable == 25);
    for (double theta : {0.0, 1.2, kPi}) {
        Cx w(std::cos(theta), std::sin(theta));
        std::vector<int> caps{8, 16, 24};
        LambdaProfile lp = lambda_profile(sys, w, caps);
        DeltaProfile dp = delta_profile(G, w, caps);
        for (std::size_t i = 0; i < caps.size(); ++i) {
            Real product = dp.samples[i].second * dp.samples[i].second * lp.samples[i].second;
            CHECK(as_double(abs(product - 1)) < 1e-20);
        }
        Real direct = lambda_N_least_squares(G, w);
        CHECK(as_double(abs(direct - lp.samples[2].second) / direct) < 1e-20);
    }
}

TEST_CASE("truncated functional is multiplicative under the degree cap") {
    QuadratureGrid grid = build_grid(50, 20, 32, 64);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.0, kPi / 2.0}});
    GramMatrix G = gram_matrix(arc, 1, 24, grid, 1);
    OrthonormalSystem sys = orthonormalize(G);
    PrecisionGuard guard(grid.digits);

    // P = 1 - 2z + z^3, Q = 2 + z^2; deg P + deg Q = 5 <= 24
    std::vector<Cx> p{Cx(1.0), Cx(-2.0), Cx(0.0), Cx(1.0)};
    std::vector<Cx> q{Cx(2.0), Cx(0.0), Cx(1.0)};
    std::vector<Cx> pq{Cx(2.0), Cx(-4.0), Cx(1.0), Cx(0.0), Cx(0.0), Cx(1.0)};
    for (double theta : {0.3, 2.0}) {
        Cx w(std::cos(theta), std::sin(theta));
        Cx left = apply_truncated_functional(G, sys, pq, w);
        Cx pw = p[0] + p[1] * w + p[3] * w * w * w;
        Cx right = pw * apply_truncated_functional(G, sys, q, w);
        CHECK(as_double((left - right).abs()) < 1e-20);
    }
    std::vector<Cx> too_long(26, Cx(1.0));
    CHECK_THROWS_AS(apply_truncated_functional(G, sys, too_long, Cx(1.0)), Error);
}

TEST_CASE("classification runs the growth dichotomy end to end") {
    QuadratureGrid grid = build_grid(50, 24, 32, 128);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.0, kPi / 4.0}});
    GramMatrix G = gram_matrix(arc, 1, 48, grid, 4);
    OrthonormalSystem sys = orthonormalize(G);
    std::vector<int> schedule{8, 16, 24, 32, 40, 48};

    KernelDiagnostic on_arc = classify_point(sys, {1.0, 0.0}, schedule);
    CHECK(on_arc.monotone_ok);
    REQUIRE(on_arc.samples.size() == schedule.size());

    KernelDiagnostic off_arc = classify_point(sys, {-1.0, 0.0}, schedule);
    CHECK(off_arc.monotone_ok);
    // the gap point grows much faster than the arc point at equal caps
    CHECK(as_double(off_arc.samples.back().second) >
          10.0 * as_double(on_arc.samples.back().second));
    CHECK(off_arc.slope > on_arc.slope);

    DistanceDiagnostic dd = dist_to_invariant_subspace(G, {-1.0, 0.0}, schedule);
    REQUIRE(dd.samples.size() == schedule.size());
    CHECK(std::abs(dd.slope - off_arc.slope) < 0.05);

    CHECK_THROWS_AS(classify_point(sys, {1.0, 0.0}, {10}), Error);
}

TEST_CASE("reciprocal norm probe distinguishes arc from gap") {
    QuadratureGrid grid = build_grid(40, 18, 24, 128);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{kPi, kPi / 2.0}});
    CHECK_THROWS_AS(reciprocal_norm(arc, {0.5, 0.0}, grid), Error);

    // deep in the gap the weight quenches the pole: finite, stable value
    ReciprocalNormReport gap = reciprocal_norm(arc, {1.0, 0.0}, grid, 2);
    CHECK(gap.converged);
    CHECK(gap.boundary_dist > 1.0);
    CHECK(as_double(gap.dist_ratio) > 0.0);

    // on the arc the integral diverges and refinement keeps growing
    ReciprocalNormReport on_arc = reciprocal_norm(arc, {-1.0, 0.0}, grid, 2);
    CHECK_FALSE(on_arc.converged);
    CHECK(on_arc.refined > on_arc.value);
    CHECK(on_arc.boundary_dist == 0.0);
}

TEST_CASE("Gram assembly is identical for every thread count") {
    QuadratureGrid grid = build_grid(40, 12, 24, 64);
    WeightSpec arc = WeightSpec::arc_set({CircleArc{0.5, 0.8}});
    GramMatrix serial = gram_matrix(arc, 1, 12, grid, 1);
    GramMatrix threaded = gram_matrix(arc, 1, 12, grid, 4);
    for (int j = 0; j <= 12; ++j) {
        for (int k = 0; k <= 12; ++k) {
            CHECK(serial.at(j, k).re == threaded.at(j, k).re);
            CHECK(serial.at(j, k).im == threaded.at(j, k).im);
        }
    }
    CHECK(serial.condition_estimate == threaded.condition_estimate);
}

TEST_CASE("precision budget failures surface as PrecisionLoss") {
    QuadratureGrid grid = build_grid(12, 10, 16, 64);
    WeightSpec flat = WeightSpec::constant_weight(1.0);
    CHECK_THROWS_AS(gram_matrix(flat, 2, 20, grid, 1), PrecisionLoss);
}
