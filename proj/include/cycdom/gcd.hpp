#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/polynomial.hpp"

namespace cycdom {

namespace detail {

/// Dense univariate view: coefficient at index k multiplies z_{var+1}^k.
using DenseUni = std::vector<GaussianRational>;

inline std::int64_t dense_degree(const DenseUni& a) {
    for (std::size_t k = a.size(); k-- > 0;)
        if (!a[k].is_zero()) return static_cast<std::int64_t>(k);
    return -1;
}

inline void dense_trim(DenseUni& a) {
    while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline DenseUni to_dense(const MultiPolynomial& p, int var) {
    DenseUni a(static_cast<std::size_t>(std::max<std::int64_t>(p.degree_in(var), 0)) + 1);
    for (const auto& [e, c] : p.terms()) a[e[var]] = c;
    dense_trim(a);
    return a;
}

inline MultiPolynomial from_dense(const DenseUni& a, int var, int dim) {
    MultiPolynomial p(dim);
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].is_zero()) continue;
        ExponentVector e(dim, 0);
        e[var] = static_cast<std::uint32_t>(k);
        p.add_term(std::move(e), a[k]);
    }
    return p;
}

/// Scales so that all real and imaginary parts become integers (multiplies by
/// the lcm of the denominators).  The gcd is only defined up to units, so the
/// scaling is harmless and keeps pseudo-remainder coefficients integral.
inline void dense_clear_denominators(DenseUni& a) {
    Integer l(1);
    for (const auto& c : a) {
        l = lcm(l, denominator(c.real()));
        l = lcm(l, denominator(c.imag()));
    }
    if (l == 1) return;
    GaussianRational scale{Rational(l)};
    for (auto& c : a) c *= scale;
}

/// Pseudo-remainder prem(a, b) = lc(b)^{deg a - deg b + 1} a mod b, the exact
/// power of lc(b) required by the subresultant recurrence.
inline DenseUni dense_prem(const DenseUni& a, const DenseUni& b) {
    std::int64_t n = dense_degree(a), m = dense_degree(b);
    DenseUni r = a;
    const GaussianRational& lcb = b[static_cast<std::size_t>(m)];
    for (std::int64_t k = n - m; k >= 0; --k) {
        GaussianRational top = r[static_cast<std::size_t>(m + k)];
        for (auto& c : r) c *= lcb;
        if (!top.is_zero()) {
            for (std::int64_t j = 0; j <= m; ++j)
                r[static_cast<std::size_t>(j + k)] -= top * b[static_cast<std::size_t>(j)];
        }
        r[static_cast<std::size_t>(m + k)] = GaussianRational();
    }
    dense_trim(r);
    return r;
}

/// Univariate gcd by the subresultant pseudo-remainder sequence.  Inputs are
/// cleared to Gaussian integers; the g/h bookkeeping keeps the intermediate
/// coefficients from exploding.  The result is not normalized.
inline DenseUni dense_subresultant_gcd(DenseUni a, DenseUni b) {
    if (dense_degree(a) < dense_degree(b)) std::swap(a, b);
    dense_clear_denominators(a);
    dense_clear_denominators(b);
    GaussianRational g(1), h(1);
    while (true) {
        std::int64_t delta = dense_degree(a) - dense_degree(b);
        DenseUni r = dense_prem(a, b);
        if (dense_degree(r) < 0) return b;
        if (dense_degree(r) == 0) return DenseUni{GaussianRational(1)};
        GaussianRational divisor = g;
        for (std::int64_t k = 0; k < delta; ++k) divisor *= h;
        a = std::move(b);
        b = std::move(r);
        for (auto& c : b) c /= divisor;
        g = a[static_cast<std::size_t>(dense_degree(a))];
        if (delta > 0) {
            GaussianRational hn = g;
            for (std::int64_t k = 1; k < delta; ++k) hn *= g;
            for (std::int64_t k = 1; k < delta; ++k) hn /= h;
            h = hn;
        }
    }
}

}  // namespace detail

MultiPolynomial gcd(const MultiPolynomial& p, const MultiPolynomial& q);

namespace detail {

/// Gcd of the coefficients of p viewed as univariate in `var`.  The result
/// does not involve z_{var+1}.  Requires p nonzero; the result is monic.
inline MultiPolynomial content_in(const MultiPolynomial& p, int var) {
    auto coeffs = p.coefficients_in(var);
    MultiPolynomial acc(p.dim());
    bool first = true;
    for (const auto& [deg, c] : coeffs) {
        if (first) {
            acc = monic(c);
            first = false;
        } else {
            acc = gcd(acc, c);
        }
        if (acc.is_constant()) return MultiPolynomial::constant(p.dim(), GaussianRational(1));
    }
    return acc;
}

inline MultiPolynomial primitive_part_in(const MultiPolynomial& p, int var) {
    MultiPolynomial c = content_in(p, var);
    auto q = divide_exact(p, c);
    if (!q) throw Error("internal: content does not divide its polynomial");
    return *q;
}

/// Light pseudo-remainder of multivariate polynomials viewed in `var`:
/// repeatedly cancels the top coefficient with lc(b) scalings.  Only used
/// inside the primitive sequence, where content stripping absorbs the extra
/// factors.
inline MultiPolynomial poly_prem(const MultiPolynomial& a, const MultiPolynomial& b, int var) {
    std::int64_t degb = b.degree_in(var);
    auto bcoeffs = b.coefficients_in(var);
    const MultiPolynomial& lcb = bcoeffs.rbegin()->second;
    MultiPolynomial r = a;
    while (!r.is_zero() && r.degree_in(var) >= degb) {
        std::int64_t degr = r.degree_in(var);
        auto rcoeffs = r.coefficients_in(var);
        const MultiPolynomial& lcr = rcoeffs.rbegin()->second;
        ExponentVector shift(static_cast<std::size_t>(a.dim()), 0);
        shift[var] = static_cast<std::uint32_t>(degr - degb);
        r = r * lcb - (b * lcr).shifted(shift, GaussianRational(1));
    }
    return r;
}

/// Primitive pseudo-remainder sequence in `var` for inputs that are primitive
/// in `var` with positive degree.
inline MultiPolynomial primitive_prs(MultiPolynomial a, MultiPolynomial b, int var) {
    if (a.degree_in(var) < b.degree_in(var)) std::swap(a, b);
    while (true) {
        MultiPolynomial r = poly_prem(a, b, var);
        if (r.is_zero()) return b;
        if (r.degree_in(var) == 0)
            return MultiPolynomial::constant(a.dim(), GaussianRational(1));
        a = std::move(b);
        b = primitive_part_in(r, var);
    }
}

inline MultiPolynomial gcd_impl(const MultiPolynomial& p, const MultiPolynomial& q) {
    if (p.is_constant() || q.is_constant())
        return MultiPolynomial::constant(p.dim(), GaussianRational(1));

    int var = -1;
    for (int j : p.support_vars()) var = std::max(var, j);
    for (int j : q.support_vars()) var = std::max(var, j);

    if (p.is_univariate_in(var) && q.is_univariate_in(var)) {
        DenseUni r = dense_subresultant_gcd(to_dense(p, var), to_dense(q, var));
        return from_dense(r, var, p.dim());
    }

    MultiPolynomial cp = content_in(p, var);
    MultiPolynomial cq = content_in(q, var);
    MultiPolynomial c = gcd_impl(cp, cq);

    auto pp = divide_exact(p, cp);
    auto pq = divide_exact(q, cq);
    if (!pp || !pq) throw Error("internal: content does not divide its polynomial");
    if (pp->degree_in(var) == 0 || pq->degree_in(var) == 0) return c;

    MultiPolynomial h = primitive_prs(*pp, *pq, var);
    return c * h;
}

}  // namespace detail

/// Greatest common divisor in Q(i)[z_1..z_d], normalized monic under the
/// canonical graded-lex order.  At least one argument must be nonzero.
inline MultiPolynomial gcd(const MultiPolynomial& p, const MultiPolynomial& q) {
    if (p.dim() != q.dim()) throw DimensionMismatch("gcd dimensions differ");
    if (p.is_zero() && q.is_zero()) throw Error("gcd of two zero polynomials");
    if (p.is_zero()) return monic(q);
    if (q.is_zero()) return monic(p);
    return monic(detail::gcd_impl(p, q));
}

/// Folds gcd over a family; zero members are skipped.  Throws if the family
/// is empty or all zero.
inline MultiPolynomial gcd_family(const std::vector<MultiPolynomial>& family) {
    const MultiPolynomial* acc_src = nullptr;
    MultiPolynomial acc(1);
    for (const auto& p : family) {
        if (p.is_zero()) continue;
        if (!acc_src) {
            acc = monic(p);
            acc_src = &p;
        } else {
            acc = gcd(acc, p);
        }
        if (acc.is_constant()) break;
    }
    if (!acc_src) throw Error("gcd of an empty or all-zero family");
    return acc;
}

/// Content of p in one variable (monic gcd of its coefficients there) and the
/// corresponding primitive part.  Exposed for the cyclicity decomposition.
inline MultiPolynomial content_in(const MultiPolynomial& p, int var) {
    if (p.is_zero()) throw Error("content of zero polynomial");
    return detail::content_in(p, var);
}

inline MultiPolynomial primitive_part_in(const MultiPolynomial& p, int var) {
    if (p.is_zero()) throw Error("primitive part of zero polynomial");
    return detail::primitive_part_in(p, var);
}

}  // namespace cycdom
