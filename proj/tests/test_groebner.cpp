#include "catch2/catch_amalgamated.hpp"

#include <complex>
#include <random>

#include "cycdom/groebner.hpp"
#include "cycdom/parse.hpp"
#include "cycdom/variety.hpp"
#include "test_support.hpp"

using namespace cycdom;

namespace {

MultiPolynomial P(const std::string& text, int dim) { return parse_polynomial(text, dim); }

std::vector<MultiPolynomial> F(std::initializer_list<const char*> texts, int dim) {
    std::vector<MultiPolynomial> out;
    for (const char* t : texts) out.push_back(P(t, dim));
    return out;
}

/// Every S-polynomial of a Groebner basis must reduce to zero.
bool spoly_certificate(const GroebnerBasis& b) {
    std::vector<ExponentVector> lts;
    for (const auto& g : b.gens) lts.push_back(leading_exponent(g, b.order));
    for (std::size_t i = 0; i < b.gens.size(); ++i) {
        for (std::size_t j = i + 1; j < b.gens.size(); ++j) {
            ExponentVector l = exp_lcm(lts[i], lts[j]);
            MultiPolynomial s = detail::s_polynomial(b.gens[i], b.gens[j], lts[i], lts[j], l);
            if (!normal_form(s, b).is_zero()) return false;
        }
    }
    return true;
}

}  // namespace

TEST_CASE("term order comparisons") {
    TermOrder lex = TermOrder::lex(3);
    TermOrder grlex = TermOrder::graded_lex(3);
    TermOrder grevlex = TermOrder::graded_revlex(3);

    // Degree dominates for the graded orders.
    CHECK(grlex.less({1, 0, 0}, {1, 1, 0}));
    CHECK(grevlex.less({1, 0, 0}, {0, 1, 1}));
    CHECK_FALSE(lex.less({1, 0, 0}, {0, 5, 5}));

    // grlex vs grevlex split on the classical pair of degree-4 monomials.
    CHECK(grlex.less({1, 3, 0}, {2, 1, 1}));
    CHECK(grevlex.less({2, 1, 1}, {1, 3, 0}));

    // Multiplicativity: a < b implies a + c < b + c.
    std::mt19937 rng(5);
    std::uniform_int_distribution<std::uint32_t> e(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        ExponentVector a{e(rng), e(rng), e(rng)}, b{e(rng), e(rng), e(rng)},
            c{e(rng), e(rng), e(rng)};
        for (const TermOrder& o : {lex, grlex, grevlex}) {
            if (o.less(a, b)) CHECK(o.less(exp_add(a, c), exp_add(b, c)));
            CHECK((o.compare(a, b) == 0) == (a == b));
        }
    }
}

TEST_CASE("buchberger on a classical pair") {
    TermOrder lex = TermOrder::lex(2);
    GroebnerBasis b = buchberger(F({"z1^2", "z1*z2 + z2^2"}, 2), lex);
    REQUIRE(b.gens.size() == 3);
    // Reduced basis sorted by leading term: z2^3, z1*z2 + z2^2, z1^2.
    CHECK(b.gens[0] == P("z2^3", 2));
    CHECK(b.gens[1] == P("z1*z2 + z2^2", 2));
    CHECK(b.gens[2] == P("z1^2", 2));
    CHECK(spoly_certificate(b));

    QuotientBasis q = quotient_basis(b);
    REQUIRE(q.finite);
    CHECK(q.codimension() == 4);
    std::vector<ExponentVector> expect{{0, 0}, {0, 1}, {1, 0}, {0, 2}};
    CHECK(q.monomials == expect);
}

TEST_CASE("normal form against a basis") {
    TermOrder lex = TermOrder::lex(2);
    GroebnerBasis b = buchberger(F({"z1^2", "z1*z2 + z2^2"}, 2), lex);

    CHECK(normal_form(P("z1^2 * z2 + 7", 2), b) == P("7", 2));
    CHECK(normal_form(P("z2^3 + z1", 2), b) == P("z1", 2));

    // Normal form is linear and idempotent.
    std::mt19937 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        MultiPolynomial p = testing::random_poly(rng, 2, 4, 6);
        MultiPolynomial q = testing::random_poly(rng, 2, 4, 6);
        MultiPolynomial np = normal_form(p, b);
        CHECK(normal_form(np, b) == np);
        CHECK(normal_form(p + q, b) == normal_form(np + normal_form(q, b), b));
    }

    // Members of the ideal reduce to zero.
    for (int trial = 0; trial < 20; ++trial) {
        MultiPolynomial h0 = testing::random_poly(rng, 2, 3, 4);
        MultiPolynomial h1 = testing::random_poly(rng, 2, 3, 4);
        MultiPolynomial member = h0 * b.gens[0] + h1 * b.gens[1];
        CHECK(normal_form(member, b).is_zero());
    }
}

TEST_CASE("zero and unit ideals") {
    GroebnerBasis zero = buchberger({MultiPolynomial::zero(2)}, TermOrder::graded_lex(2));
    CHECK(zero.is_zero_ideal());
    CHECK_FALSE(quotient_basis(zero).finite);

    GroebnerBasis unit = buchberger(F({"z1", "z1 + 1"}, 2), TermOrder::graded_lex(2));
    CHECK(unit.is_unit_ideal());
    QuotientBasis q = quotient_basis(unit);
    REQUIRE(q.finite);
    CHECK(q.codimension() == 0);
}

TEST_CASE("infinite codimension is detected") {
    // Two coordinate functions in three variables leave z3 free.
    GroebnerBasis b = buchberger(F({"z1", "z2"}, 3), TermOrder::graded_lex(3));
    CHECK_FALSE(quotient_basis(b).finite);
    // A single curve in the plane.
    GroebnerBasis c = buchberger(F({"z1 - z2^2"}, 2), TermOrder::graded_lex(2));
    CHECK_FALSE(quotient_basis(c).finite);
}

TEST_CASE("codimension of point ideals") {
    for (const char* w1 : {"1/2", "0", "2"}) {
        std::vector<MultiPolynomial> fam;
        fam.push_back(P(std::string("z1 - (") + w1 + ")", 2));
        fam.push_back(P("z2 - i", 2));
        GroebnerBasis b = buchberger(fam, TermOrder::graded_lex(2));
        QuotientBasis q = quotient_basis(b);
        REQUIRE(q.finite);
        CHECK(q.codimension() == 1);
    }
}

TEST_CASE("codimension is independent of the term order") {
    std::mt19937 rng(37);
    for (int trial = 0; trial < 12; ++trial) {
        // Force finite codimension with dominating pure powers.
        std::vector<MultiPolynomial> fam;
        fam.push_back(P("z1^3", 2) + testing::random_poly(rng, 2, 2, 3));
        fam.push_back(P("z2^3", 2) + testing::random_poly(rng, 2, 2, 3));
        fam.push_back(testing::random_poly(rng, 2, 2, 3));
        std::vector<std::size_t> codims;
        bool all_finite = true;
        for (TermOrder o :
             {TermOrder::lex(2), TermOrder::graded_lex(2), TermOrder::graded_revlex(2)}) {
            GroebnerBasis b = buchberger(fam, o);
            CHECK(spoly_certificate(b));
            QuotientBasis q = quotient_basis(b);
            all_finite = all_finite && q.finite;
            codims.push_back(q.codimension());
        }
        // The quotient dimension is an invariant of the ideal.
        CHECK(all_finite);
        CHECK(codims[0] == codims[1]);
        CHECK(codims[1] == codims[2]);
    }
}

TEST_CASE("random bases satisfy the S-polynomial certificate") {
    std::mt19937 rng(41);
    for (int trial = 0; trial < 15; ++trial) {
        std::vector<MultiPolynomial> fam;
        int n = 2 + static_cast<int>(rng() % 2);
        for (int k = 0; k < n; ++k)
            fam.push_back(testing::random_nonzero_poly(rng, 2, 3, 4));
        GroebnerBasis b = buchberger(fam, TermOrder::graded_lex(2));
        CHECK(spoly_certificate(b));
        for (const auto& f : fam) CHECK(normal_form(f, b).is_zero());
    }
}

TEST_CASE("factor_ideal splits the common divisor") {
    auto fam = F({"(z1 - 1) * (z2 - 3)", "(z1 - 1) * z1"}, 2);
    FactoredFamily split = factor_ideal(fam);
    CHECK(split.common == P("z1 - 1", 2));
    REQUIRE(split.cofactors.size() == 2);
    CHECK(split.cofactors[0] == P("z2 - 3", 2));
    CHECK(split.cofactors[1] == P("z1", 2));

    // Coprime family: gcd is constant, cofactors are the family itself.
    FactoredFamily coprime = factor_ideal(F({"z1", "z2"}, 2));
    CHECK(coprime.common.is_constant());
}

TEST_CASE("variety of a point ideal") {
    GroebnerBasis b = buchberger(F({"z1 - 1/2", "z2 - i"}, 2), TermOrder::graded_lex(2));
    QuotientBasis q = quotient_basis(b);
    VarietySolution sol = solve_variety(b, q);
    REQUIRE(sol.points.size() == 1);
    CHECK(sol.well_conditioned);
    CHECK(sol.points[0].multiplicity == 1);
    CHECK(std::abs(sol.points[0].w[0] - std::complex<double>(0.5, 0)) < 1e-10);
    CHECK(std::abs(sol.points[0].w[1] - std::complex<double>(0, 1)) < 1e-10);
    CHECK(sol.points[0].residual < 1e-9);
}

TEST_CASE("variety with multiplicity") {
    // The quotient is four dimensional and the only zero is the origin.
    GroebnerBasis b = buchberger(F({"z1^2", "z1*z2 + z2^2"}, 2), TermOrder::graded_lex(2));
    QuotientBasis q = quotient_basis(b);
    VarietySolution sol = solve_variety(b, q);
    REQUIRE(sol.points.size() == 1);
    CHECK(sol.points[0].multiplicity == 4);
    CHECK(std::abs(sol.points[0].w[0]) < 1e-6);
    CHECK(std::abs(sol.points[0].w[1]) < 1e-6);
    CHECK(sol.quotient_dim == 4);
}

TEST_CASE("variety of split univariate systems") {
    GroebnerBasis b = buchberger(F({"(z1 - 1) * (z1 + 1) * (z1 - 2)", "z2 - z1^2"}, 2),
                                 TermOrder::graded_lex(2));
    QuotientBasis q = quotient_basis(b);
    REQUIRE(q.finite);
    CHECK(q.codimension() == 3);
    VarietySolution sol = solve_variety(b, q);
    REQUIRE(sol.points.size() == 3);
    int total_mult = 0;
    for (const auto& p : sol.points) {
        total_mult += p.multiplicity;
        CHECK(p.residual < 1e-9);
        CHECK(std::abs(p.w[1] - p.w[0] * p.w[0]) < 1e-8);
    }
    CHECK(total_mult == 3);
    CHECK(sol.points.front().w[0].real() == Catch::Approx(-1.0).margin(1e-8));
    CHECK(sol.points.back().w[0].real() == Catch::Approx(2.0).margin(1e-8));
}

TEST_CASE("variety results are deterministic for a fixed seed") {
    GroebnerBasis b = buchberger(F({"z1^2 - 1/4", "z2^2 - z1"}, 2), TermOrder::graded_lex(2));
    QuotientBasis q = quotient_basis(b);
    VarietySolution a = solve_variety(b, q);
    VarietySolution c = solve_variety(b, q);
    REQUIRE(a.points.size() == c.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i)
        for (std::size_t j = 0; j < a.points[i].w.size(); ++j)
            CHECK(a.points[i].w[j] == c.points[i].w[j]);

    VarietyOptions other;
    other.seed = 99;
    VarietySolution d = solve_variety(b, q, other);
    CHECK(d.points.size() == a.points.size());
}

TEST_CASE("rational snapping") {
    CHECK(*snap_rational(0.5) == Rational(1) / 2);
    CHECK(*snap_rational(-0.25) == Rational(-1) / 4);
    CHECK(*snap_rational(3.0) == Rational(3));
    CHECK(*snap_rational(1.0 / 3.0 + 1e-12) == Rational(1) / 3);
    CHECK_FALSE(snap_rational(std::sqrt(2.0), 1000, 1e-9).has_value());

    auto g = snap_gaussian({0.5, -1.0});
    REQUIRE(g.has_value());
    CHECK(*g == GaussianRational(Rational(1) / 2, Rational(-1)));
}

TEST_CASE("exact confirmation of numeric zeros") {
    auto gens = F({"z1 - 1/2", "z2 - i"}, 2);
    auto pt = confirm_exact_zero(gens, {{0.5 + 1e-12, 0.0}, {0.0, 1.0 - 1e-12}});
    REQUIRE(pt.has_value());
    CHECK((*pt)[0] == GaussianRational(Rational(1) / 2));
    CHECK((*pt)[1] == GaussianRational::i());

    // A point that is close to rational but not a zero is rejected.
    CHECK_FALSE(confirm_exact_zero(gens, {{0.6, 0.0}, {0.0, 1.0}}).has_value());
}
