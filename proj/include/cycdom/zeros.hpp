#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "cycdom/errors.hpp"
#include "cycdom/gcd.hpp"
#include "cycdom/groebner.hpp"
#include "cycdom/polynomial.hpp"
#include "cycdom/variety.hpp"

namespace cycdom {

namespace detail {

/// Dense real-rational univariate polynomial, coefficient at index k times t^k.
using RealUni = std::vector<Rational>;

inline void real_trim(RealUni& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::int64_t real_degree(const RealUni& a) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (!(a[k] == 0)) return static_cast<std::int64_t>(k);
    return -1;
}

inline RealUni real_derivative(const RealUni& a) {
    RealUni d;
    for (std::size_t k = 1; k < a.size(); ++k) d.push_back(a[k] * Rational(static_cast<unsigned>(k)));
    real_trim(d);
    return d;
}

/// Divides by the content (a positive scale, so every sign is preserved;
/// Sturm chains tolerate exactly that) to keep rational coefficients from
/// snowballing.
inline void real_reduce(RealUni& a) {
    real_trim(a);
    if (a.empty()) return;
    Integer num_gcd(0), den_lcm(1);
    for (const auto& c : a) {
        num_gcd = gcd(num_gcd, numerator(c));
        den_lcm = lcm(den_lcm, denominator(c));
    }
    if (num_gcd < 0) num_gcd = -num_gcd;
    Rational scale = Rational(den_lcm) / Rational(num_gcd);
    for (auto& c : a) c *= scale;
}

/// Content reduction plus a positive leading coefficient; only for uses where
/// the overall sign is irrelevant (gcds, chain heads).
inline void real_normalize(RealUni& a) {
    real_reduce(a);
    if (!a.empty() && a.back() < 0)
        for (auto& c : a) c = -c;
}

inline RealUni real_remainder(const RealUni& a, const RealUni& b) {
    RealUni r = a;
    real_trim(r);
    std::int64_t m = real_degree(b);
    const Rational& lcb = b[static_cast<std::size_t>(m)];
    while (real_degree(r) >= m) {
        std::int64_t n = real_degree(r);
        Rational q = r[static_cast<std::size_t>(n)] / lcb;
        for (std::int64_t k = 0; k <= m; ++k)
            r[static_cast<std::size_t>(n - m + k)] -= q * b[static_cast<std::size_t>(k)];
        r[static_cast<std::size_t>(n)] = 0;
        real_trim(r);
    }
    return r;
}

inline RealUni real_gcd(RealUni a, RealUni b) {
    real_normalize(a);
    real_normalize(b);
    if (a.empty()) return b;
    if (b.empty()) return a;
    while (!b.empty()) {
        RealUni r = real_remainder(a, b);
        real_normalize(r);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

inline int real_sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

/// Number of distinct real roots of a nonzero rational polynomial, by the
/// classical Sturm count over (-inf, inf).  Multiple roots are fine: the
/// chain then ends at the repeated-root gcd and still counts each root once.
inline int count_distinct_real_roots(RealUni f) {
    real_normalize(f);
    if (real_degree(f) <= 0) return 0;
    std::vector<RealUni> chain;
    chain.push_back(f);
    RealUni d = real_derivative(f);
    real_reduce(d);
    if (!d.empty()) chain.push_back(d);
    while (chain.size() >= 2) {
        RealUni r = real_remainder(chain[chain.size() - 2], chain.back());
        real_trim(r);
        if (r.empty()) break;
        for (auto& c : r) c = -c;
        real_reduce(r);
        chain.push_back(std::move(r));
    }
    int v_neg = 0, v_pos = 0, prev_neg = 0, prev_pos = 0;
    for (const auto& p : chain) {
        std::int64_t n = real_degree(p);
        int lc = real_sign(p[static_cast<std::size_t>(n)]);
        int at_pos = lc;
        int at_neg = (n % 2 == 0) ? lc : -lc;
        if (prev_pos != 0 && at_pos != 0 && at_pos != prev_pos) ++v_pos;
        if (prev_neg != 0 && at_neg != 0 && at_neg != prev_neg) ++v_neg;
        if (at_pos != 0) prev_pos = at_pos;
        if (at_neg != 0) prev_neg = at_neg;
    }
    return v_neg - v_pos;
}

inline DenseUni dense_univariate(const MultiPolynomial& p, int var) {
    if (!p.is_univariate_in(var))
        throw Error("polynomial is not univariate in the requested variable");
    return to_dense(p, var);
}

}  // namespace detail

/// Numeric roots of a univariate polynomial (counted with multiplicity), via
/// the companion matrix plus a few Newton corrections on each eigenvalue.
struct RootSet {
    std::vector<std::complex<double>> roots;
    bool well_conditioned = true;
};

inline RootSet univariate_roots(const MultiPolynomial& p, int var = 0) {
    using CD = std::complex<double>;
    detail::DenseUni a = detail::dense_univariate(p, var);
    RootSet out;
    std::int64_t n = detail::dense_degree(a);
    if (n <= 0) return out;

    std::vector<CD> c(static_cast<std::size_t>(n) + 1);
    for (std::size_t k = 0; k < c.size(); ++k) c[k] = k < a.size() ? a[k].to_complex_double() : CD(0);

    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n, n);
    for (std::int64_t k = 0; k + 1 < n; ++k) companion(k + 1, k) = 1.0;
    for (std::int64_t k = 0; k < n; ++k)
        companion(k, n - 1) = -c[static_cast<std::size_t>(k)] / c[static_cast<std::size_t>(n)];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    out.well_conditioned = solver.info() == Eigen::Success;

    auto horner = [&](CD z, CD& value, CD& slope) {
        value = c.back();
        slope = CD(0);
        for (std::size_t k = c.size() - 1; k-- > 0;) {
            slope = slope * z + value;
            value = value * z + c[k];
        }
    };
    for (std::int64_t k = 0; k < n; ++k) {
        CD r = solver.eigenvalues()(k);
        CD best = r, value, slope;
        horner(r, value, slope);
        double best_abs = std::abs(value);
        for (int it = 0; it < 10; ++it) {
            if (std::abs(slope) < 1e-300) break;
            CD next = r - value / slope;
            if (!std::isfinite(next.real()) || !std::isfinite(next.imag())) break;
            r = next;
            horner(r, value, slope);
            if (std::abs(value) < best_abs) {
                best_abs = std::abs(value);
                best = r;
            }
        }
        out.roots.push_back(best);
    }
    std::sort(out.roots.begin(), out.roots.end(), [](CD x, CD y) {
        if (x.real() != y.real()) return x.real() < y.real();
        return x.imag() < y.imag();
    });
    return out;
}

/// Exact census of the roots on the unit circle.  The count is rigorous
/// (rational arithmetic throughout); the listed values are numeric and only
/// trustworthy when values_resolved is set.
struct CircleZeroReport {
    int distinct_count = 0;
    std::vector<std::complex<double>> zeros;
    bool values_resolved = true;
    bool root_at_minus_one = false;
};

/// Moebius substitution z = (1+it)/(1-it) turns unit-circle roots into real
/// roots of W(t) = (1-it)^deg P((1+it)/(1-it)); those are the common real
/// roots of Re W and Im W, counted exactly with a Sturm chain.  z = -1 is the
/// one circle point the substitution misses and gets an explicit check.
inline CircleZeroReport circle_zeros(const MultiPolynomial& p, int var = 0) {
    if (p.is_zero()) throw Error("circle census needs a nonzero polynomial");
    CircleZeroReport report;
    detail::DenseUni a = detail::dense_univariate(p, var);
    std::int64_t n = detail::dense_degree(a);
    if (n <= 0) return report;

    std::vector<GaussianRational> w{a[static_cast<std::size_t>(n)]};
    std::vector<GaussianRational> minus_pow{GaussianRational(1)};
    const GaussianRational plus_i = GaussianRational::i();
    auto mul_linear = [](const std::vector<GaussianRational>& v, const GaussianRational& it_coeff) {
        std::vector<GaussianRational> r(v.size() + 1, GaussianRational(0));
        for (std::size_t k = 0; k < v.size(); ++k) {
            r[k] += v[k];
            r[k + 1] += v[k] * it_coeff;
        }
        return r;
    };
    for (std::int64_t k = n - 1; k >= 0; --k) {
        w = mul_linear(w, plus_i);
        minus_pow = mul_linear(minus_pow, -plus_i);
        const GaussianRational& ck = a[static_cast<std::size_t>(k)];
        if (!ck.is_zero()) {
            if (w.size() < minus_pow.size()) w.resize(minus_pow.size(), GaussianRational(0));
            for (std::size_t j = 0; j < minus_pow.size(); ++j) w[j] += ck * minus_pow[j];
        }
    }
    detail::RealUni re(w.size()), im(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        re[k] = w[k].real();
        im[k] = w[k].imag();
    }
    detail::real_trim(re);
    detail::real_trim(im);
    detail::RealUni common;
    if (re.empty()) common = im;
    else if (im.empty()) common = re;
    else common = detail::real_gcd(re, im);
    report.distinct_count = detail::count_distinct_real_roots(common);

    std::vector<GaussianRational> at(static_cast<std::size_t>(p.dim()), GaussianRational(0));
    at[static_cast<std::size_t>(var)] = GaussianRational(Rational(-1));
    if (p.evaluate<GaussianRational>(at).is_zero()) {
        report.root_at_minus_one = true;
        ++report.distinct_count;
    }

    // numeric values for the exact count
    RootSet rs = univariate_roots(p, var);
    std::vector<std::complex<double>> near;
    for (auto r : rs.roots) {
        if (std::abs(std::abs(r) - 1.0) > 1e-6) continue;
        std::complex<double> u = r / std::abs(r);
        bool dup = false;
        for (auto& z : near)
            if (std::abs(z - u) < 1e-7) dup = true;
        if (!dup) near.push_back(u);
    }
    report.zeros = near;
    report.values_resolved = static_cast<int>(near.size()) == report.distinct_count && rs.well_conditioned;
    return report;
}

enum class ZeroStatus { NoZero, HasZero, Uncertain };

inline std::string to_string(ZeroStatus s) {
    switch (s) {
        case ZeroStatus::NoZero: return "NoZero";
        case ZeroStatus::HasZero: return "HasZero";
        case ZeroStatus::Uncertain: return "Uncertain";
    }
    return "?";
}

struct DiskZeroReport {
    ZeroStatus status = ZeroStatus::Uncertain;
    std::complex<double> witness{};
    std::optional<GaussianRational> exact_witness;
    int circle_count = 0;
    std::string method;
};

namespace detail {

struct DiskRootTally {
    int inside = 0, outside = 0, on_exact = 0, unresolved = 0;
    std::complex<double> inside_witness{};
    std::optional<GaussianRational> inside_exact;
};

/// Classifies the distinct roots of a squarefree polynomial against the unit
/// circle.  Roots clear of the band are taken at face value; roots inside the
/// band are resolved exactly when they snap to a Gaussian rational root.
inline DiskRootTally classify_roots_against_circle(const MultiPolynomial& sqfree, int var, double band) {
    DiskRootTally tally;
    RootSet rs = univariate_roots(sqfree, var);
    for (auto r : rs.roots) {
        double m = std::abs(r);
        if (m < 1.0 - band) {
            ++tally.inside;
            tally.inside_witness = r;
            auto exact = snap_gaussian(r);
            if (exact) {
                std::vector<GaussianRational> at(static_cast<std::size_t>(sqfree.dim()), GaussianRational(0));
                at[static_cast<std::size_t>(var)] = *exact;
                if (sqfree.evaluate<GaussianRational>(at).is_zero() && exact->norm_sq() < Rational(1))
                    tally.inside_exact = *exact;
            }
            continue;
        }
        if (m > 1.0 + band) {
            ++tally.outside;
            continue;
        }
        auto exact = snap_gaussian(r);
        if (exact) {
            std::vector<GaussianRational> at(static_cast<std::size_t>(sqfree.dim()), GaussianRational(0));
            at[static_cast<std::size_t>(var)] = *exact;
            if (sqfree.evaluate<GaussianRational>(at).is_zero()) {
                Rational ns = exact->norm_sq();
                if (ns < Rational(1)) {
                    ++tally.inside;
                    tally.inside_witness = r;
                    tally.inside_exact = *exact;
                } else if (ns == Rational(1)) {
                    ++tally.on_exact;
                } else {
                    ++tally.outside;
                }
                continue;
            }
        }
        ++tally.unresolved;
    }
    return tally;
}

inline MultiPolynomial squarefree_part(const MultiPolynomial& p, int var) {
    MultiPolynomial d = p.derivative(var);
    if (d.is_zero()) return monic(p);
    MultiPolynomial g = gcd(p, d);
    if (g.is_constant()) return monic(p);
    auto q = divide_exact(p, g);
    if (!q) throw Error("squarefree reduction failed to divide");
    return monic(*q);
}

}  // namespace detail

/// Decides whether a univariate polynomial has a root in the open unit disk.
/// The circle census is exact; off-circle roots are certified numerically
/// outside a 1e-7 band, with rational snapping to settle band stragglers.
inline DiskZeroReport zeros_in_open_disk(const MultiPolynomial& p, int var = 0, double band = 1e-7) {
    if (p.is_zero()) throw Error("zero polynomial vanishes everywhere");
    DiskZeroReport report;
    if (p.is_constant()) {
        report.status = ZeroStatus::NoZero;
        report.method = "nonzero constant";
        return report;
    }
    MultiPolynomial f = detail::squarefree_part(p, var);
    CircleZeroReport circle = circle_zeros(f, var);
    report.circle_count = circle.distinct_count;
    detail::DiskRootTally tally = detail::classify_roots_against_circle(f, var, band);
    std::int64_t deg = f.degree_in(var);

    if (tally.inside > 0) {
        report.status = ZeroStatus::HasZero;
        report.witness = tally.inside_witness;
        report.exact_witness = tally.inside_exact;
        report.method = tally.inside_exact ? "exact interior root" : "certified interior root";
        return report;
    }
    if (tally.unresolved == 0) {
        report.status = ZeroStatus::NoZero;
        report.method = "all roots certified outside or on the circle";
        return report;
    }
    // Counting argument: the squarefree part has exactly deg distinct roots,
    // the circle census pins how many sit on the circle, and outside
    // certifications cover the rest, so no room remains for an interior root.
    if (tally.outside + circle.distinct_count == deg) {
        report.status = ZeroStatus::NoZero;
        report.method = "circle census accounts for every non-exterior root";
        return report;
    }
    report.status = ZeroStatus::Uncertain;
    report.method = "roots too close to the circle to classify";
    return report;
}

inline DiskZeroReport zeros_in_closed_disk(const MultiPolynomial& p, int var = 0, double band = 1e-7) {
    if (p.is_zero()) throw Error("zero polynomial vanishes everywhere");
    DiskZeroReport report;
    if (p.is_constant()) {
        report.status = ZeroStatus::NoZero;
        report.method = "nonzero constant";
        return report;
    }
    MultiPolynomial f = detail::squarefree_part(p, var);
    CircleZeroReport circle = circle_zeros(f, var);
    report.circle_count = circle.distinct_count;
    if (circle.distinct_count > 0) {
        report.status = ZeroStatus::HasZero;
        report.method = "root on the unit circle";
        if (circle.root_at_minus_one)
            report.exact_witness = GaussianRational(Rational(-1));
        if (!circle.zeros.empty())
            report.witness = circle.zeros.front();
        else if (circle.root_at_minus_one)
            report.witness = std::complex<double>(-1.0, 0.0);
        return report;
    }
    detail::DiskRootTally tally = detail::classify_roots_against_circle(f, var, band);
    std::int64_t deg = f.degree_in(var);
    if (tally.inside > 0) {
        report.status = ZeroStatus::HasZero;
        report.witness = tally.inside_witness;
        report.exact_witness = tally.inside_exact;
        report.method = tally.inside_exact ? "exact interior root" : "certified interior root";
        return report;
    }
    if (tally.outside + tally.on_exact == deg) {
        report.status = ZeroStatus::NoZero;
        report.method = "all roots certified outside the closed disk";
        return report;
    }
    report.status = ZeroStatus::Uncertain;
    report.method = "roots too close to the circle to classify";
    return report;
}

/// Bidegree-reversed conjugate partner: coefficients conjugated, exponents
/// flipped within the bidegree box.  On the torus |partner| = |p| pointwise,
/// so the two share exactly their torus zeros.
inline MultiPolynomial torus_partner(const MultiPolynomial& p) {
    if (p.dim() != 2) throw DimensionMismatch("torus partner is defined for two variables");
    std::uint32_t m1 = static_cast<std::uint32_t>(std::max<std::int64_t>(p.degree_in(0), 0));
    std::uint32_t m2 = static_cast<std::uint32_t>(std::max<std::int64_t>(p.degree_in(1), 0));
    MultiPolynomial out(2);
    for (const auto& [e, c] : p.terms())
        out.add_term(ExponentVector{m1 - e[0], m2 - e[1]}, c.conj());
    return out;
}

/// Exact points of the unit circle, rational in both coordinates, produced by
/// the Moebius parametrization t -> (1-t^2, 2t)/(1+t^2).
inline std::vector<GaussianRational> exact_unimodular_samples(int count) {
    std::vector<GaussianRational> points;
    long t = 0;
    while (static_cast<int>(points.size()) < count) {
        Rational tt(t);
        Rational denom = tt * tt + 1;
        points.emplace_back((1 - tt * tt) / denom, 2 * tt / denom);
        t = t > 0 ? -t : -t + 1;
    }
    return points;
}

enum class TorusCount { Finite, Infinite, Uncertain };

inline std::string to_string(TorusCount c) {
    switch (c) {
        case TorusCount::Finite: return "Finite";
        case TorusCount::Infinite: return "Infinite";
        case TorusCount::Uncertain: return "Uncertain";
    }
    return "?";
}

using TorusPoint = std::array<std::complex<double>, 2>;
using ExactTorusPoint = std::array<GaussianRational, 2>;

struct TorusZeroReport {
    TorusCount count = TorusCount::Uncertain;
    std::vector<TorusPoint> zeros;
    std::vector<ExactTorusPoint> exact_zeros;
    std::optional<MultiPolynomial> infinite_factor;
    std::string detail;
};

namespace detail {

struct TorusAccumulator {
    std::vector<TorusPoint> points;
    std::vector<ExactTorusPoint> exact_points;
    bool uncertain = false;
    bool infinite = false;
    std::optional<MultiPolynomial> infinite_factor;
    std::vector<std::string> notes;

    void add_exact(const GaussianRational& x, const GaussianRational& y) {
        for (const auto& q : exact_points)
            if (q[0] == x && q[1] == y) return;
        exact_points.push_back({x, y});
        points.push_back({x.to_complex_double(), y.to_complex_double()});
    }
};

/// Enumerates the common zeros of a coprime pair and keeps the ones that land
/// exactly on the torus.  Points that sit in the numeric boundary band but
/// refuse exact confirmation poison the verdict.
inline void torus_points_of_coprime_pair(const MultiPolynomial& a, const MultiPolynomial& b,
                                         TorusAccumulator& acc) {
    GroebnerBasis gb = buchberger({a, b}, TermOrder::graded_lex(a.dim()));
    if (gb.is_unit_ideal()) return;
    QuotientBasis qb = quotient_basis(gb);
    if (!qb.finite) throw Error("coprime pair produced an infinite variety");
    if (qb.codimension() == 0) return;
    VarietySolution sol = solve_variety(gb, qb);
    const Rational one(1);
    for (const auto& pt : sol.points) {
        auto exact = confirm_exact_zero(std::vector<MultiPolynomial>{a, b}, pt.w);
        if (exact) {
            if ((*exact)[0].norm_sq() == one && (*exact)[1].norm_sq() == one)
                acc.add_exact((*exact)[0], (*exact)[1]);
            continue;
        }
        double m1 = std::abs(pt.w[0]), m2 = std::abs(pt.w[1]);
        if (std::abs(m1 - 1.0) < 1e-7 && std::abs(m2 - 1.0) < 1e-7) {
            acc.uncertain = true;
            acc.notes.push_back("variety point near the torus resisted exact confirmation");
        }
    }
}

inline void analyze_common_factor(const MultiPolynomial& h, TorusAccumulator& acc, int depth);

/// Genuinely two-variable common factor: slice along exact unit-circle points
/// and count each fiber's circle roots exactly.  Every sampled fiber meeting
/// the circle forces an infinite family; a clean miss on all fibers falls
/// back to the finite-variety route against the partner polynomial.
inline void sample_bivariate_factor(const MultiPolynomial& h, TorusAccumulator& acc, int depth) {
    std::int64_t d1 = h.degree_in(0), d2 = h.degree_in(1);
    int sample_count = static_cast<int>(d1 * d2 + h.degree() * h.degree() + 5);
    auto samples = exact_unimodular_samples(sample_count);
    int hits = 0;
    TorusPoint representative{};
    bool have_representative = false;
    for (const auto& z1 : samples) {
        MultiPolynomial fiber = h.substitute(0, z1);
        if (fiber.is_zero()) {
            // h is divisible by (z1 - sample), a full unimodular line
            acc.infinite = true;
            acc.infinite_factor = h;
            acc.notes.push_back("factor vanishes on a vertical unimodular line");
            return;
        }
        if (fiber.is_constant()) continue;
        CircleZeroReport cz = circle_zeros(fiber, 1);
        if (cz.distinct_count > 0) {
            ++hits;
            if (!have_representative && !cz.zeros.empty()) {
                representative = {z1.to_complex_double(), cz.zeros.front()};
                have_representative = true;
            }
        }
    }
    if (hits == sample_count) {
        acc.infinite = true;
        acc.infinite_factor = h;
        if (have_representative) acc.points.push_back(representative);
        acc.notes.push_back("every sampled unimodular fiber meets the circle");
        return;
    }
    if (hits == 0) {
        MultiPolynomial partner = torus_partner(h);
        MultiPolynomial g = gcd(h, partner);
        if (g.is_constant()) {
            torus_points_of_coprime_pair(h, partner, acc);
            return;
        }
        if (depth >= 4 || g == monic(h)) {
            acc.uncertain = true;
            acc.notes.push_back("self-paired factor with no sampled torus contact");
            return;
        }
        analyze_common_factor(g, acc, depth + 1);
        auto hc = divide_exact(h, g);
        auto pc = divide_exact(partner, g);
        if (!hc || !pc) throw Error("torus factor split failed to divide");
        if (!hc->is_constant() && !pc->is_constant())
            torus_points_of_coprime_pair(*hc, *pc, acc);
        return;
    }
    acc.uncertain = true;
    acc.notes.push_back("sampled fibers disagree about torus contact");
}

inline void analyze_common_factor(const MultiPolynomial& h, TorusAccumulator& acc, int depth) {
    if (h.is_constant()) return;
    bool uses1 = h.degree_in(0) > 0, uses2 = h.degree_in(1) > 0;
    if (uses1 && !uses2) {
        CircleZeroReport cz = circle_zeros(h, 0);
        if (cz.distinct_count > 0) {
            acc.infinite = true;
            acc.infinite_factor = h;
            for (auto z : cz.zeros) acc.points.push_back({z, std::complex<double>(1.0, 0.0)});
            acc.notes.push_back("one-variable factor with a unimodular root sweeps a torus line");
        }
        return;
    }
    if (uses2 && !uses1) {
        CircleZeroReport cz = circle_zeros(h, 1);
        if (cz.distinct_count > 0) {
            acc.infinite = true;
            acc.infinite_factor = h;
            for (auto z : cz.zeros) acc.points.push_back({std::complex<double>(1.0, 0.0), z});
            acc.notes.push_back("one-variable factor with a unimodular root sweeps a torus line");
        }
        return;
    }
    sample_bivariate_factor(h, acc, depth);
}

}  // namespace detail

/// Is the zero set of p on the torus T^2 finite or infinite?  Torus zeros of
/// p coincide with the common zeros of p and its bidegree-reversed partner;
/// the gcd carries any positive-dimensional part, the coprime cofactors
/// supply at most finitely many points.
inline TorusZeroReport torus_zero_finiteness(const MultiPolynomial& p) {
    if (p.dim() != 2) throw DimensionMismatch("torus census is defined for two variables");
    if (p.is_zero()) throw Error("zero polynomial vanishes everywhere");
    TorusZeroReport report;
    if (p.is_constant()) {
        report.count = TorusCount::Finite;
        report.detail = "nonzero constant";
        return report;
    }
    MultiPolynomial partner = torus_partner(p);
    MultiPolynomial h = gcd(p, partner);
    detail::TorusAccumulator acc;
    if (!h.is_constant()) detail::analyze_common_factor(h, acc, 0);
    if (!acc.infinite) {
        auto pc = divide_exact(p, h);
        auto rc = divide_exact(partner, h);
        if (!pc || !rc) throw Error("torus partner split failed to divide");
        if (!pc->is_constant() && !rc->is_constant())
            detail::torus_points_of_coprime_pair(*pc, *rc, acc);
    }
    if (acc.infinite) {
        report.count = TorusCount::Infinite;
        report.infinite_factor = acc.infinite_factor;
    } else if (acc.uncertain) {
        report.count = TorusCount::Uncertain;
    } else {
        report.count = TorusCount::Finite;
    }
    report.zeros = acc.points;
    report.exact_zeros = acc.exact_points;
    for (std::size_t k = 0; k < acc.notes.size(); ++k) {
        if (k) report.detail += "; ";
        report.detail += acc.notes[k];
    }
    return report;
}

struct BidiskZeroReport {
    ZeroStatus status = ZeroStatus::Uncertain;
    TorusPoint witness{};
    std::optional<ExactTorusPoint> exact_witness;
    std::string method;
    std::optional<TorusZeroReport> torus;
};

namespace detail {

/// Numeric fiber of p at z_{var} = a: dense coefficients in the other
/// variable with the frozen variable evaluated in double precision.
inline std::vector<std::complex<double>> numeric_fiber(const MultiPolynomial& p, int var,
                                                       std::complex<double> a) {
    using CD = std::complex<double>;
    int other = 1 - var;
    std::vector<CD> coeffs(static_cast<std::size_t>(std::max<std::int64_t>(p.degree_in(other), 0)) + 1,
                           CD(0));
    for (const auto& [e, c] : p.terms())
        coeffs[e[static_cast<std::size_t>(other)]] +=
            c.to_complex_double() * std::pow(a, static_cast<double>(e[static_cast<std::size_t>(var)]));
    return coeffs;
}

inline std::vector<std::complex<double>> roots_of_dense(const std::vector<std::complex<double>>& c) {
    using CD = std::complex<double>;
    std::size_t n = c.size();
    while (n > 0 && std::abs(c[n - 1]) < 1e-300) --n;
    if (n <= 1) return {};
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(n - 1, n - 1);
    for (std::size_t k = 0; k + 2 < n; ++k) companion(k + 1, k) = 1.0;
    for (std::size_t k = 0; k + 1 < n; ++k) companion(k, n - 2) = -c[k] / c[n - 1];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    std::vector<CD> roots;
    for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k)
        roots.push_back(solver.eigenvalues()(k));
    return roots;
}

struct InteriorCandidate {
    bool found = false;
    std::complex<double> a{}, b{};
    double radius = 2.0;    // max(|a|, |b|) of the best candidate
    int var = 0;            // which variable was frozen
};

inline void scan_fiber(const MultiPolynomial& p, int var, std::complex<double> a, double scale,
                       InteriorCandidate& best) {
    auto coeffs = numeric_fiber(p, var, a);
    double mass = 0.0;
    for (auto c : coeffs) mass = std::max(mass, std::abs(c));
    if (mass < 1e-13 * scale) {
        // the whole line is numerically in the zero set
        double r = std::max(std::abs(a), 0.0);
        if (r < best.radius) best = {true, a, std::complex<double>(0, 0), r, var};
        return;
    }
    for (auto b : roots_of_dense(coeffs)) {
        double r = std::max(std::abs(a), std::abs(b));
        if (r < best.radius) best = {true, a, b, r, var};
    }
}

inline double coefficient_scale(const MultiPolynomial& p) {
    double s = 0.0;
    for (const auto& [e, c] : p.terms()) s = std::max(s, std::abs(c.to_complex_double()));
    return s > 0 ? s : 1.0;
}

inline double evaluate_abs(const MultiPolynomial& p, std::complex<double> a, std::complex<double> b) {
    return std::abs(p.evaluate<std::complex<double>>({a, b}));
}

/// Steers the best scan candidate further into the bidisk by nudging the
/// frozen coordinate and re-solving the fiber.
inline void compass_descent(const MultiPolynomial& p, double scale, InteriorCandidate& best) {
    if (!best.found) return;
    double step = 0.05;
    for (int it = 0; it < 60 && step > 1e-5; ++it) {
        bool moved = false;
        for (int dir = 0; dir < 8; ++dir) {
            double ang = dir * 3.14159265358979323846 / 4.0;
            std::complex<double> a = best.a + std::polar(step, ang);
            InteriorCandidate trial = best;
            trial.radius = best.radius;
            scan_fiber(p, best.var, a, scale, trial);
            if (trial.radius < best.radius - 1e-12) {
                best = trial;
                moved = true;
                break;
            }
        }
        if (!moved) step *= 0.5;
    }
}

}  // namespace detail

/// Zero test on the closed bidisk via the classical boundary decomposition:
/// a two-variable polynomial avoids zero on the closed bidisk exactly when it
/// avoids zero on the two faces z2 = 1 and z1 = 1 (as one-variable closed
/// disk problems) and on the torus.
inline BidiskZeroReport zeros_in_closed_bidisk(const MultiPolynomial& p) {
    if (p.dim() != 2) throw DimensionMismatch("bidisk test is defined for two variables");
    if (p.is_zero()) throw Error("zero polynomial vanishes everywhere");
    BidiskZeroReport report;
    if (p.is_constant()) {
        report.status = ZeroStatus::NoZero;
        report.method = "nonzero constant";
        return report;
    }
    const GaussianRational one(1);
    bool uncertain = false;
    for (int var = 0; var < 2; ++var) {
        MultiPolynomial face = p.substitute(var, one);
        if (face.is_zero()) {
            report.status = ZeroStatus::HasZero;
            report.method = var == 0 ? "vanishes on the whole face z1 = 1" : "vanishes on the whole face z2 = 1";
            ExactTorusPoint w{GaussianRational(0), GaussianRational(0)};
            w[static_cast<std::size_t>(var)] = one;
            report.exact_witness = w;
            report.witness = {w[0].to_complex_double(), w[1].to_complex_double()};
            return report;
        }
        if (face.is_constant()) continue;
        int free_var = 1 - var;
        DiskZeroReport dz = zeros_in_closed_disk(face, free_var);
        if (dz.status == ZeroStatus::HasZero) {
            report.status = ZeroStatus::HasZero;
            report.method = std::string("zero on the face z") + (var == 0 ? "1" : "2") + " = 1";
            TorusPoint w{};
            w[static_cast<std::size_t>(var)] = {1.0, 0.0};
            w[static_cast<std::size_t>(free_var)] = dz.witness;
            report.witness = w;
            if (dz.exact_witness) {
                ExactTorusPoint e{GaussianRational(0), GaussianRational(0)};
                e[static_cast<std::size_t>(var)] = one;
                e[static_cast<std::size_t>(free_var)] = *dz.exact_witness;
                report.exact_witness = e;
            }
            return report;
        }
        if (dz.status == ZeroStatus::Uncertain) uncertain = true;
    }
    TorusZeroReport torus = torus_zero_finiteness(p);
    report.torus = torus;
    if (torus.count == TorusCount::Infinite ||
        (torus.count == TorusCount::Finite && !torus.zeros.empty())) {
        report.status = ZeroStatus::HasZero;
        report.method = "zero on the torus";
        if (!torus.zeros.empty()) report.witness = torus.zeros.front();
        if (!torus.exact_zeros.empty()) report.exact_witness = torus.exact_zeros.front();
        return report;
    }
    if (torus.count == TorusCount::Uncertain) uncertain = true;
    if (uncertain) {
        report.status = ZeroStatus::Uncertain;
        report.method = "a boundary face resisted classification";
        return report;
    }
    report.status = ZeroStatus::NoZero;
    report.method = "boundary faces and torus all clear";
    return report;
}

/// Zero test on the open bidisk.  Exact shortcuts first (one-variable
/// structure, polynomials in the product z1*z2, the closed-bidisk test);
/// otherwise an interior fiber scan hunts for a certified interior root and
/// boundary probes check that torus zeros do not leak inward.
inline BidiskZeroReport zeros_in_open_bidisk(const MultiPolynomial& p) {
    if (p.dim() != 2) throw DimensionMismatch("bidisk test is defined for two variables");
    if (p.is_zero()) throw Error("zero polynomial vanishes everywhere");
    BidiskZeroReport report;
    if (p.is_constant()) {
        report.status = ZeroStatus::NoZero;
        report.method = "nonzero constant";
        return report;
    }

    for (int var = 0; var < 2; ++var) {
        if (p.degree_in(1 - var) > 0) continue;
        DiskZeroReport dz = zeros_in_open_disk(p, var);
        report.status = dz.status;
        report.method = "one-variable polynomial: " + dz.method;
        if (dz.status == ZeroStatus::HasZero) {
            TorusPoint w{};
            w[static_cast<std::size_t>(var)] = dz.witness;
            report.witness = w;
            if (dz.exact_witness) {
                ExactTorusPoint e{GaussianRational(0), GaussianRational(0)};
                e[static_cast<std::size_t>(var)] = *dz.exact_witness;
                report.exact_witness = e;
            }
        }
        return report;
    }

    bool diagonal = true;
    for (const auto& [e, c] : p.terms())
        if (e[0] != e[1]) diagonal = false;
    if (diagonal) {
        // p = Q(z1*z2), and z1*z2 sweeps exactly the open unit disk
        MultiPolynomial q(1);
        for (const auto& [e, c] : p.terms()) q.add_term(ExponentVector{e[0]}, c);
        DiskZeroReport dz = zeros_in_open_disk(q, 0);
        report.status = dz.status;
        report.method = "polynomial in z1*z2: " + dz.method;
        if (dz.status == ZeroStatus::HasZero) {
            std::complex<double> s = std::sqrt(dz.witness);
            report.witness = {s, s};
        }
        return report;
    }

    BidiskZeroReport closed = zeros_in_closed_bidisk(p);
    report.torus = closed.torus;
    if (closed.status == ZeroStatus::NoZero) {
        report.status = ZeroStatus::NoZero;
        report.method = "no zeros on the closed bidisk";
        return report;
    }

    double scale = detail::coefficient_scale(p);
    detail::InteriorCandidate best;
    const double radii[] = {0.15, 0.35, 0.55, 0.75, 0.9, 0.97};
    for (int var = 0; var < 2; ++var)
        for (double r : radii)
            for (int k = 0; k < 24; ++k) {
                double ang = 2.0 * 3.14159265358979323846 * k / 24.0;
                detail::scan_fiber(p, var, std::polar(r, ang), scale, best);
            }
    detail::compass_descent(p, scale, best);
    if (best.found && best.radius < 1.0 - 1e-3 &&
        detail::evaluate_abs(p, best.var == 0 ? best.a : best.b, best.var == 0 ? best.b : best.a) <
            1e-9 * scale) {
        report.status = ZeroStatus::HasZero;
        report.method = "certified interior zero from fiber scan";
        report.witness = best.var == 0 ? TorusPoint{best.a, best.b} : TorusPoint{best.b, best.a};
        return report;
    }

    // Interior scan came up empty.  Probe inward from every known boundary
    // zero: zeros that stay outside slightly shrunk fibers give evidence the
    // zero set only grazes the boundary.
    std::vector<TorusPoint> anchors;
    if (closed.torus) {
        for (const auto& z : closed.torus->zeros) anchors.push_back(z);
        if (closed.torus->count == TorusCount::Uncertain) {
            report.status = ZeroStatus::Uncertain;
            report.method = "torus census uncertain";
            return report;
        }
    }
    if (closed.status == ZeroStatus::Uncertain) {
        report.status = ZeroStatus::Uncertain;
        report.method = "closed-bidisk test uncertain";
        return report;
    }
    if (closed.status == ZeroStatus::HasZero && anchors.empty()) {
        // boundary zero away from the torus, e.g. on a face; probe around it
        anchors.push_back(closed.witness);
    }
    bool leak_suspected = false;
    for (const auto& anchor : anchors) {
        for (int var = 0; var < 2; ++var) {
            std::complex<double> u = anchor[static_cast<std::size_t>(var)];
            if (std::abs(u) < 1e-12) continue;
            u /= std::abs(u);
            for (double delta : {1e-2, 1e-3, 1e-4}) {
                auto coeffs = detail::numeric_fiber(p, var, (1.0 - delta) * u);
                double rmin = 2.0;
                for (auto b : detail::roots_of_dense(coeffs)) rmin = std::min(rmin, std::abs(b));
                if (rmin < 1.0 - 3.0 * delta) {
                    detail::InteriorCandidate cand;
                    detail::scan_fiber(p, var, (1.0 - delta) * u, scale, cand);
                    detail::compass_descent(p, scale, cand);
                    if (cand.found && cand.radius < 1.0 - 1e-3 &&
                        detail::evaluate_abs(p, cand.var == 0 ? cand.a : cand.b,
                                             cand.var == 0 ? cand.b : cand.a) < 1e-9 * scale) {
                        report.status = ZeroStatus::HasZero;
                        report.method = "interior zero reached from a boundary probe";
                        report.witness =
                            cand.var == 0 ? TorusPoint{cand.a, cand.b} : TorusPoint{cand.b, cand.a};
                        return report;
                    }
                    leak_suspected = true;
                } else if (rmin < 1.0 - 0.5 * delta) {
                    leak_suspected = true;
                }
            }
        }
    }
    if (leak_suspected) {
        report.status = ZeroStatus::Uncertain;
        report.method = "boundary probes suggest inward zeros but none were certified";
        return report;
    }
    report.status = ZeroStatus::NoZero;
    report.method = "interior scan and boundary probes clean";
    return report;
}

}  // namespace cycdom
