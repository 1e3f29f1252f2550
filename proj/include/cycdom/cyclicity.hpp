#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/gcd.hpp"
#include "cycdom/groebner.hpp"
#include "cycdom/polynomial.hpp"
#include "cycdom/space.hpp"
#include "cycdom/variety.hpp"
#include "cycdom/zeros.hpp"

namespace cycdom {

enum class CyclicityStatus { Cyclic, NotCyclic, JointlyCyclic, NotJointlyCyclic, Uncertain };

inline std::string to_string(CyclicityStatus s) {
    switch (s) {
        case CyclicityStatus::Cyclic: return "Cyclic";
        case CyclicityStatus::NotCyclic: return "NotCyclic";
        case CyclicityStatus::JointlyCyclic: return "JointlyCyclic";
        case CyclicityStatus::NotJointlyCyclic: return "NotJointlyCyclic";
        case CyclicityStatus::Uncertain: return "Uncertain";
    }
    return "?";
}

struct CyclicityVerdict {
    CyclicityStatus status = CyclicityStatus::Uncertain;
    bool hypothesis_met = true;
    std::vector<std::complex<double>> witness;                      // a zero backing a negative verdict
    std::optional<std::vector<GaussianRational>> exact_witness;
    std::string certificate;
};

namespace detail {

/// Splits off the one-variable factors of a two-variable polynomial:
/// p = c1(z1) * c2(z2) * core with core primitive in both directions.
struct ContentSplit {
    MultiPolynomial c1, c2, core;
};

inline ContentSplit split_univariate_contents(const MultiPolynomial& p) {
    MultiPolynomial c1 = cycdom::content_in(p, 1);  // gcd of the z2-coefficients, a polynomial in z1
    auto rest = divide_exact(p, c1);
    if (!rest) throw Error("content extraction failed to divide");
    MultiPolynomial c2 = cycdom::content_in(*rest, 0);
    auto core = divide_exact(*rest, c2);
    if (!core) throw Error("content extraction failed to divide");
    return {std::move(c1), std::move(c2), std::move(*core)};
}

/// Detects p == c * (z_var - w)^k with |w| = 1 exactly.  Returns the root
/// when p has that shape.
inline std::optional<GaussianRational> boundary_power_root(const MultiPolynomial& p) {
    auto vars = p.support_vars();
    if (vars.size() != 1) return std::nullopt;
    int var = vars.front();
    DenseUni a = to_dense(p, var);
    std::int64_t k = dense_degree(a);
    if (k <= 0) return std::nullopt;
    GaussianRational w = -(a[static_cast<std::size_t>(k - 1)] / a[static_cast<std::size_t>(k)]) /
                         GaussianRational(static_cast<long>(k));
    if (w.norm_sq() != Rational(1)) return std::nullopt;
    // verify p = lc * (z - w)^k by expanding the power
    MultiPolynomial lin(p.dim());
    ExponentVector e(static_cast<std::size_t>(p.dim()), 0);
    e[static_cast<std::size_t>(var)] = 1;
    lin.add_term(e, GaussianRational(1));
    lin.add_term(ExponentVector(static_cast<std::size_t>(p.dim()), 0), -w);
    MultiPolynomial expanded = lin.pow(static_cast<std::uint32_t>(k));
    expanded *= a[static_cast<std::size_t>(k)];
    if (!(expanded == p)) return std::nullopt;
    return w;
}

inline std::vector<std::complex<double>> pad_coordinate(std::complex<double> value, int var, int dim,
                                                        std::complex<double> fill) {
    std::vector<std::complex<double>> w(static_cast<std::size_t>(dim), fill);
    w[static_cast<std::size_t>(var)] = value;
    return w;
}

inline std::vector<GaussianRational> pad_coordinate_exact(const GaussianRational& value, int var,
                                                          int dim, const GaussianRational& fill) {
    std::vector<GaussianRational> w(static_cast<std::size_t>(dim), fill);
    w[static_cast<std::size_t>(var)] = value;
    return w;
}

/// Lifts a one-variable disk report to a verdict about a polynomial that only
/// uses variable `var` inside a d-dimensional space.  Interior witnesses get
/// padded with zeros, which stay inside every polydisk.
inline CyclicityVerdict verdict_from_disk_report(const DiskZeroReport& report, int var, int dim,
                                                 const std::string& context) {
    CyclicityVerdict v;
    switch (report.status) {
        case ZeroStatus::NoZero:
            v.status = CyclicityStatus::Cyclic;
            break;
        case ZeroStatus::HasZero:
            v.status = CyclicityStatus::NotCyclic;
            v.witness = pad_coordinate(report.witness, var, dim, {0.0, 0.0});
            if (report.exact_witness)
                v.exact_witness = pad_coordinate_exact(*report.exact_witness, var, dim, GaussianRational(0));
            break;
        case ZeroStatus::Uncertain:
            v.status = CyclicityStatus::Uncertain;
            break;
    }
    v.certificate = context + ": " + report.method;
    return v;
}

inline CyclicityVerdict verdict_from_bidisk_report(const BidiskZeroReport& report,
                                                   const std::string& context) {
    CyclicityVerdict v;
    switch (report.status) {
        case ZeroStatus::NoZero:
            v.status = CyclicityStatus::Cyclic;
            break;
        case ZeroStatus::HasZero:
            v.status = CyclicityStatus::NotCyclic;
            v.witness = {report.witness[0], report.witness[1]};
            if (report.exact_witness)
                v.exact_witness = std::vector<GaussianRational>{(*report.exact_witness)[0],
                                                                (*report.exact_witness)[1]};
            break;
        case ZeroStatus::Uncertain:
            v.status = CyclicityStatus::Uncertain;
            break;
    }
    v.certificate = context + ": " + report.method;
    return v;
}

}  // namespace detail

inline CyclicityVerdict is_cyclic(const SpaceSpec& space, const MultiPolynomial& p);

namespace detail {

/// Hardy-style rule shared by H^p (all t <= 1/2 Dirichlet cases too): cyclic
/// exactly when the open polydisk is free of zeros.
inline CyclicityVerdict open_polydisk_rule(const MultiPolynomial& p, int dim,
                                           const std::string& context) {
    if (dim == 1) return verdict_from_disk_report(zeros_in_open_disk(p, 0), 0, 1, context);
    if (dim == 2) return verdict_from_bidisk_report(zeros_in_open_bidisk(p), context);

    // Dimension three and up: split off one-variable factors, refuse to
    // guess about anything genuinely multivariate that remains.
    auto vars = p.support_vars();
    if (vars.size() == 1)
        return verdict_from_disk_report(zeros_in_open_disk(p, vars.front()), vars.front(), dim, context);
    MultiPolynomial rest = monic(p);
    bool any_uncertain = false;
    for (int var = 0; var < dim; ++var) {
        // iterated contents strip everything involving the other variables,
        // leaving a divisor of rest that depends on var alone
        MultiPolynomial c = rest;
        for (int other = 0; other < dim; ++other)
            if (other != var) c = cycdom::content_in(c, other);
        if (c.is_constant()) continue;
        auto q = divide_exact(rest, c);
        if (!q) throw Error("one-variable factor failed to divide");
        rest = *q;
        CyclicityVerdict factor = verdict_from_disk_report(zeros_in_open_disk(c, var), var, dim, context);
        if (factor.status == CyclicityStatus::NotCyclic) return factor;
        if (factor.status == CyclicityStatus::Uncertain) any_uncertain = true;
    }
    CyclicityVerdict v;
    if (rest.is_constant() && !any_uncertain) {
        v.status = CyclicityStatus::Cyclic;
        v.certificate = context + ": product of one-variable factors, none vanishing in the open disk";
    } else {
        v.status = CyclicityStatus::Uncertain;
        v.certificate = context +
                        ": no decision procedure for genuinely multivariate polynomials in dimension >= 3";
    }
    return v;
}

/// The Dirichlet-type middle window 1/2 < t <= 1 on the bidisk: no zeros in
/// the open bidisk, and either finitely many torus zeros or the polynomial is
/// a scalar multiple of a power of a single z_j - w with w on the circle.
inline CyclicityVerdict dirichlet_middle_rule(const MultiPolynomial& p, const std::string& context) {
    CyclicityVerdict interior = verdict_from_bidisk_report(zeros_in_open_bidisk(p), context);
    if (interior.status != CyclicityStatus::Cyclic) return interior;

    if (auto w = boundary_power_root(p)) {
        CyclicityVerdict v;
        v.status = CyclicityStatus::Cyclic;
        int var = p.support_vars().front();
        v.certificate = context + ": power of z" + std::to_string(var + 1) +
                        " - w with w on the unit circle; " + interior.certificate;
        return v;
    }

    ContentSplit split = split_univariate_contents(p);
    CyclicityVerdict v;
    v.certificate = interior.certificate;
    for (int var = 0; var < 2; ++var) {
        const MultiPolynomial& c = var == 0 ? split.c1 : split.c2;
        if (c.is_constant()) continue;
        CircleZeroReport cz = circle_zeros(c, var);
        if (cz.distinct_count > 0) {
            v.status = CyclicityStatus::NotCyclic;
            std::complex<double> root =
                cz.zeros.empty() ? std::complex<double>(-1.0, 0.0) : cz.zeros.front();
            v.witness = pad_coordinate(root, var, 2, {1.0, 0.0});
            if (cz.root_at_minus_one)
                v.exact_witness = pad_coordinate_exact(GaussianRational(Rational(-1)), var, 2,
                                                       GaussianRational(1));
            v.certificate = context + ": one-variable factor carries a unimodular root, " +
                            "an entire torus line of zeros, and the polynomial is not a power " +
                            "of a single boundary linear";
            return v;
        }
    }
    TorusZeroReport torus = torus_zero_finiteness(split.core);
    switch (torus.count) {
        case TorusCount::Finite:
            v.status = CyclicityStatus::Cyclic;
            v.certificate += "; torus zeros finite (" + std::to_string(torus.zeros.size()) +
                             " found), no boundary-power structure needed";
            break;
        case TorusCount::Infinite:
            v.status = CyclicityStatus::NotCyclic;
            if (!torus.zeros.empty()) v.witness = {torus.zeros.front()[0], torus.zeros.front()[1]};
            if (!torus.exact_zeros.empty())
                v.exact_witness =
                    std::vector<GaussianRational>{torus.exact_zeros.front()[0], torus.exact_zeros.front()[1]};
            v.certificate = context + ": infinitely many torus zeros (" + torus.detail +
                            ") and not a power of a single boundary linear";
            break;
        case TorusCount::Uncertain:
            v.status = CyclicityStatus::Uncertain;
            v.certificate += "; torus census uncertain: " + torus.detail;
            break;
    }
    return v;
}

inline CyclicityVerdict closed_polydisk_rule(const MultiPolynomial& p, int dim,
                                             const std::string& context) {
    if (dim == 1) return verdict_from_disk_report(zeros_in_closed_disk(p, 0), 0, 1, context);
    if (dim == 2) return verdict_from_bidisk_report(zeros_in_closed_bidisk(p), context);
    throw UnsupportedSpace("closed-polydisk cyclicity is only cataloged up to two variables");
}

}  // namespace detail

/// Cyclicity of a single polynomial.  Hardy spaces: cyclic exactly when the
/// open polydisk carries no zero.  Dirichlet-type spaces: zero location
/// against the maximal domain, with the extra torus-finiteness condition in
/// the window 1/2 < t <= 1 on the bidisk.
inline CyclicityVerdict is_cyclic(const SpaceSpec& space, const MultiPolynomial& p) {
    if (p.dim() != space.dim) throw DimensionMismatch("polynomial dimension does not match the space");
    CyclicityVerdict v;
    if (p.is_zero()) {
        v.status = CyclicityStatus::NotCyclic;
        v.certificate = "the zero function generates the zero subspace";
        return v;
    }
    if (p.is_constant()) {
        v.status = CyclicityStatus::Cyclic;
        v.certificate = "nonzero constants generate the polynomials";
        return v;
    }
    switch (space.family) {
        case SpaceFamily::Hardy:
            return detail::open_polydisk_rule(p, space.dim, "open polydisk zero test");
        case SpaceFamily::DirichletType: {
            if (space.dim == 1) {
                if (space.t > 1.0)
                    return detail::closed_polydisk_rule(p, 1, "closed disk zero test (t > 1)");
                return detail::open_polydisk_rule(p, 1, "open disk zero test (t <= 1)");
            }
            if (space.dim == 2) {
                if (space.t > 1.0)
                    return detail::closed_polydisk_rule(p, 2, "closed bidisk zero test (t > 1)");
                if (space.t > 0.5)
                    return detail::dirichlet_middle_rule(p, "open bidisk zero test (1/2 < t <= 1)");
                return detail::open_polydisk_rule(p, 2, "open bidisk zero test (t <= 1/2)");
            }
            throw UnsupportedSpace("Dirichlet-type cyclicity is only cataloged up to two variables");
        }
        case SpaceFamily::WeightedDisk:
            throw UnsupportedSpace("no cyclicity classification is cataloged for the weighted disk family");
    }
    return v;
}

namespace detail {

inline CyclicityStatus lift_joint(CyclicityStatus s) {
    if (s == CyclicityStatus::Cyclic) return CyclicityStatus::JointlyCyclic;
    if (s == CyclicityStatus::NotCyclic) return CyclicityStatus::NotJointlyCyclic;
    return s;
}

/// Joint verdict once the family is presented as common factor g times a
/// coprime cofactor family: the cofactors cut out a finite zero set (or an
/// empty one); joint cyclicity holds exactly when that set avoids the
/// maximal domain and g itself is cyclic.
inline CyclicityVerdict joint_verdict_from_parts(const SpaceSpec& space, const MultiPolynomial& g,
                                                 const std::vector<MultiPolynomial>& cofactors) {
    const MaximalDomainSpec domain = maximal_domain(space);
    bool all_constant = true;
    for (const auto& c : cofactors)
        if (!c.is_constant()) all_constant = false;

    CyclicityVerdict v;
    if (!all_constant) {
        GroebnerBasis gb = buchberger(cofactors, TermOrder::graded_lex(space.dim));
        if (!gb.is_unit_ideal()) {
            QuotientBasis qb = quotient_basis(gb);
            if (!qb.finite) {
                if (space.dim == 2)
                    throw Error("coprime cofactors produced an infinite zero set in two variables");
                v.status = CyclicityStatus::Uncertain;
                v.hypothesis_met = false;
                v.certificate =
                    "the coprime part has an infinite zero set, so the finite-codimension route "
                    "does not apply in dimension " +
                    std::to_string(space.dim);
                return v;
            }
            VarietySolution sol = solve_variety(gb, qb);
            bool boundary_unresolved = false;
            for (const auto& pt : sol.points) {
                auto exact = confirm_exact_zero(cofactors, pt.w);
                if (exact) {
                    auto inside = domain.contains_exact(*exact);
                    if (inside.has_value() && *inside) {
                        v.status = CyclicityStatus::NotJointlyCyclic;
                        v.witness = pt.w;
                        v.exact_witness = *exact;
                        v.certificate =
                            "the coprime part vanishes at an exactly confirmed point of the "
                            "maximal domain";
                        return v;
                    }
                    if (!inside.has_value()) boundary_unresolved = true;
                    continue;
                }
                switch (domain.locate(pt.w)) {
                    case PointLocation::Inside:
                        v.status = CyclicityStatus::NotJointlyCyclic;
                        v.witness = pt.w;
                        v.certificate = "the coprime part vanishes inside the maximal domain "
                                        "(numerically certified)";
                        return v;
                    case PointLocation::Boundary:
                        boundary_unresolved = true;
                        break;
                    case PointLocation::Outside:
                        break;
                }
            }
            if (boundary_unresolved) {
                v.status = CyclicityStatus::Uncertain;
                v.certificate =
                    "a common zero sits in the numeric boundary band and resisted exact "
                    "confirmation";
                return v;
            }
        }
    }
    CyclicityVerdict gv = is_cyclic(space, g);
    v.status = lift_joint(gv.status);
    v.witness = gv.witness;
    v.exact_witness = gv.exact_witness;
    v.certificate = "zero set of the coprime part avoids the maximal domain; reduced to the "
                    "common factor [" +
                    gv.certificate + "]";
    return v;
}

}  // namespace detail

/// Joint cyclicity of a finite family.  The family is split as common factor
/// times coprime cofactors; the cofactor zero set is finite (in two
/// variables this is guaranteed), and the verdict combines its position
/// against the maximal domain with the cyclicity of the common factor.
inline CyclicityVerdict is_jointly_cyclic(const SpaceSpec& space,
                                          const std::vector<MultiPolynomial>& family) {
    if (family.empty()) throw Error("joint cyclicity needs a nonempty family");
    std::vector<MultiPolynomial> members;
    for (const auto& f : family) {
        if (f.dim() != space.dim)
            throw DimensionMismatch("family member dimension does not match the space");
        if (!f.is_zero()) members.push_back(f);
    }
    if (members.empty()) throw Error("joint cyclicity needs at least one nonzero member");
    if (space.family == SpaceFamily::WeightedDisk)
        throw UnsupportedSpace("no joint cyclicity classification is cataloged for the weighted disk family");

    FactoredFamily split = factor_ideal(members);

    if (space.dim == 1) {
        // PID cross-check: the cofactors must be globally coprime, so the
        // family's common zeros are exactly the zeros of the gcd
        MultiPolynomial cross = gcd_family(split.cofactors);
        if (!cross.is_constant())
            throw Error("one-variable cofactors kept a common factor after division");
        CyclicityVerdict gv = is_cyclic(space, split.common);
        CyclicityVerdict v;
        v.status = detail::lift_joint(gv.status);
        v.witness = gv.witness;
        v.exact_witness = gv.exact_witness;
        v.certificate = "one variable: joint cyclicity is cyclicity of the gcd [" + gv.certificate + "]";
        return v;
    }
    return detail::joint_verdict_from_parts(space, split.common, split.cofactors);
}

/// Cross-checks the product decomposition: the family {g*q : q in Q} run
/// through the full joint pipeline, against the explicit regrouping
/// (g * gcd(Q)) plus the coprime part of Q.  The two must agree.
struct ProductCyclicityReport {
    CyclicityVerdict combined;
    CyclicityVerdict factored;
    bool agree = false;
};

inline ProductCyclicityReport product_cyclicity_check(const SpaceSpec& space, const MultiPolynomial& g,
                                                      const std::vector<MultiPolynomial>& q_family) {
    if (g.is_zero()) throw Error("product check needs a nonzero common factor");
    if (q_family.empty()) throw Error("product check needs a nonempty family");
    std::vector<MultiPolynomial> products;
    for (const auto& q : q_family) {
        if (q.dim() != space.dim)
            throw DimensionMismatch("family member dimension does not match the space");
        if (!q.is_zero()) products.push_back(g * q);
    }
    if (products.empty()) throw Error("product check needs at least one nonzero member");

    ProductCyclicityReport report;
    report.combined = is_jointly_cyclic(space, products);

    std::vector<MultiPolynomial> nonzero_q;
    for (const auto& q : q_family)
        if (!q.is_zero()) nonzero_q.push_back(q);
    MultiPolynomial gq = gcd_family(nonzero_q);
    MultiPolynomial g_eff = monic(g * gq);
    std::vector<MultiPolynomial> cofactors;
    for (const auto& q : nonzero_q) {
        auto c = divide_exact(q, gq);
        if (!c) throw Error("product check failed to divide by the family gcd");
        cofactors.push_back(*c);
    }
    if (space.dim == 1) {
        CyclicityVerdict gv = is_cyclic(space, g_eff);
        report.factored.status = detail::lift_joint(gv.status);
        report.factored.witness = gv.witness;
        report.factored.exact_witness = gv.exact_witness;
        report.factored.certificate = "one variable: reduced to the regrouped gcd [" + gv.certificate + "]";
    } else {
        report.factored = detail::joint_verdict_from_parts(space, g_eff, cofactors);
    }
    report.agree = report.combined.status == report.factored.status;
    return report;
}

}  // namespace cycdom
