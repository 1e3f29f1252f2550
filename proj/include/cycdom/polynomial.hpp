#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/exponent.hpp"
#include "cycdom/rational.hpp"

namespace cycdom {

/// Customization point for evaluating exact coefficients in a target scalar
/// type.  Specialize for new numeric types as needed.
template <typename T>
struct ScalarFrom;

template <>
struct ScalarFrom<GaussianRational> {
    static GaussianRational convert(const GaussianRational& c) { return c; }
};

template <>
struct ScalarFrom<std::complex<double>> {
    static std::complex<double> convert(const GaussianRational& c) {
        return c.to_complex_double();
    }
};

/// Multivariate polynomial over Q(i) in variables z_1, ..., z_d.  Terms are
/// stored in a map keyed by exponent vector under the canonical graded-lex
/// order; zero coefficients are never stored, so the zero polynomial has an
/// empty term map.
class MultiPolynomial {
public:
    using TermMap = std::map<ExponentVector, GaussianRational, GradedLexLess>;

    explicit MultiPolynomial(int dim) : dim_(dim) {
        if (dim < 1) throw Error("polynomial dimension must be >= 1");
    }

    static MultiPolynomial zero(int dim) { return MultiPolynomial(dim); }

    static MultiPolynomial constant(int dim, GaussianRational c) {
        MultiPolynomial p(dim);
        p.add_term(ExponentVector(dim, 0), std::move(c));
        return p;
    }

    static MultiPolynomial monomial(int dim, ExponentVector e, GaussianRational c) {
        MultiPolynomial p(dim);
        if (static_cast<int>(e.size()) != dim)
            throw DimensionMismatch("monomial exponent length differs from dimension");
        p.add_term(std::move(e), std::move(c));
        return p;
    }

    /// The variable z_{var+1} (0-based index).
    static MultiPolynomial variable(int dim, int var) {
        ExponentVector e(dim, 0);
        e.at(var) = 1;
        return monomial(dim, std::move(e), GaussianRational(1));
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    /// The constant term (zero if absent).
    GaussianRational constant_term() const {
        auto it = terms_.find(ExponentVector(dim_, 0));
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// -1 for the zero polynomial.
    std::int64_t degree() const {
        if (terms_.empty()) return -1;
        return static_cast<std::int64_t>(total_degree(terms_.rbegin()->first));
    }

    /// Degree in a single variable; -1 for the zero polynomial.
    std::int64_t degree_in(int var) const {
        if (terms_.empty()) return -1;
        std::uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
        return d;
    }

    /// True when every term is a power of z_{var+1} alone (constants count).
    bool is_univariate_in(int var) const {
        for (const auto& [e, c] : terms_)
            for (std::size_t j = 0; j < e.size(); ++j)
                if (static_cast<int>(j) != var && e[j] != 0) return false;
        return true;
    }

    /// The set of variables that actually occur.
    std::vector<int> support_vars() const {
        std::vector<bool> used(dim_, false);
        for (const auto& [e, c] : terms_)
            for (int j = 0; j < dim_; ++j)
                if (e[j] > 0) used[j] = true;
        std::vector<int> out;
        for (int j = 0; j < dim_; ++j)
            if (used[j]) out.push_back(j);
        return out;
    }

    /// Adds c * z^e, merging with an existing term and dropping the entry if
    /// the sum cancels.
    void add_term(ExponentVector e, GaussianRational c) {
        if (c.is_zero()) return;
        if (static_cast<int>(e.size()) != dim_)
            throw DimensionMismatch("term exponent length differs from dimension");
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(std::move(e), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// Coefficient of z^e (zero if absent).
    GaussianRational coeff(const ExponentVector& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? GaussianRational() : it->second;
    }

    /// Leading term under the canonical graded-lex order.  Requires a nonzero
    /// polynomial.
    const std::pair<const ExponentVector, GaussianRational>& leading_term() const {
        if (terms_.empty()) throw Error("leading term of zero polynomial");
        return *terms_.rbegin();
    }

    MultiPolynomial& operator+=(const MultiPolynomial& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    MultiPolynomial& operator-=(const MultiPolynomial& o) {
        check_dim(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }

    friend MultiPolynomial operator+(MultiPolynomial a, const MultiPolynomial& b) { return a += b; }
    friend MultiPolynomial operator-(MultiPolynomial a, const MultiPolynomial& b) { return a -= b; }

    friend MultiPolynomial operator*(const MultiPolynomial& a, const MultiPolynomial& b) {
        a.check_dim(b);
        MultiPolynomial r(a.dim_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) r.add_term(exp_add(ea, eb), ca * cb);
        return r;
    }

    MultiPolynomial& operator*=(const MultiPolynomial& o) { return *this = *this * o; }

    MultiPolynomial& operator*=(const GaussianRational& c) {
        if (c.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, v] : terms_) v *= c;
        return *this;
    }
    friend MultiPolynomial operator*(MultiPolynomial p, const GaussianRational& c) { return p *= c; }
    friend MultiPolynomial operator*(const GaussianRational& c, MultiPolynomial p) { return p *= c; }

    MultiPolynomial operator-() const {
        MultiPolynomial r(*this);
        for (auto& [e, v] : r.terms_) v = -v;
        return r;
    }

    friend bool operator==(const MultiPolynomial& a, const MultiPolynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const MultiPolynomial& a, const MultiPolynomial& b) { return !(a == b); }

    MultiPolynomial pow(std::uint32_t k) const {
        MultiPolynomial r = constant(dim_, GaussianRational(1));
        MultiPolynomial base(*this);
        while (k > 0) {
            if (k & 1u) r *= base;
            k >>= 1u;
            if (k > 0) base *= base;
        }
        return r;
    }

    /// Shifts exponents by e and scales by c: c * z^e * this.
    MultiPolynomial shifted(const ExponentVector& e, const GaussianRational& c) const {
        MultiPolynomial r(dim_);
        if (c.is_zero()) return r;
        for (const auto& [a, v] : terms_) r.terms_.emplace(exp_add(a, e), v * c);
        return r;
    }

    /// Order-th partial derivative in one variable.  Exact: falling-factorial
    /// scaling of coefficients, terms of lower degree dropped.
    MultiPolynomial derivative(int var, int order = 1) const {
        if (order < 0) throw Error("derivative order must be >= 0");
        if (var < 0 || var >= dim_) throw DimensionMismatch("derivative variable out of range");
        if (order == 0) return *this;
        MultiPolynomial r(dim_);
        for (const auto& [e, c] : terms_) {
            if (e[var] < static_cast<std::uint32_t>(order)) continue;
            Rational f(1);
            for (int k = 0; k < order; ++k) f *= Rational(e[var] - k);
            ExponentVector e2 = e;
            e2[var] -= order;
            r.add_term(std::move(e2), c * GaussianRational(f));
        }
        return r;
    }

    /// Evaluation by nested Horner recursion over the variables.  Exact when
    /// T is GaussianRational; for floating types the coefficients are
    /// converted once via ScalarFrom<T>.
    template <typename T>
    T evaluate(const std::vector<T>& w) const {
        if (static_cast<int>(w.size()) != dim_)
            throw DimensionMismatch("evaluation point length differs from dimension");
        std::vector<const std::pair<const ExponentVector, GaussianRational>*> all;
        all.reserve(terms_.size());
        for (const auto& t : terms_) all.push_back(&t);
        return eval_rec<T>(all, dim_ - 1, w);
    }

    /// Substitutes one variable by an exact value, producing a polynomial in
    /// the same ring with that variable eliminated from all terms.
    MultiPolynomial substitute(int var, const GaussianRational& value) const {
        MultiPolynomial r(dim_);
        for (const auto& [e, c] : terms_) {
            GaussianRational v = c;
            for (std::uint32_t k = 0; k < e[var]; ++k) v *= value;
            ExponentVector e2 = e;
            e2[var] = 0;
            r.add_term(std::move(e2), std::move(v));
        }
        return r;
    }

    /// Coefficients of this polynomial viewed as univariate in `var`, indexed
    /// by the power of z_{var+1}.  Each coefficient lives in the same ring
    /// with exponent zero in `var`.
    std::map<std::uint32_t, MultiPolynomial> coefficients_in(int var) const {
        std::map<std::uint32_t, MultiPolynomial> out;
        for (const auto& [e, c] : terms_) {
            auto it = out.find(e[var]);
            if (it == out.end()) it = out.emplace(e[var], MultiPolynomial(dim_)).first;
            ExponentVector e2 = e;
            e2[var] = 0;
            it->second.add_term(std::move(e2), c);
        }
        return out;
    }

    std::string to_text() const;

private:
    void check_dim(const MultiPolynomial& o) const {
        if (dim_ != o.dim_) throw DimensionMismatch("polynomial dimensions differ");
    }

    template <typename T>
    static T eval_rec(const std::vector<const std::pair<const ExponentVector, GaussianRational>*>& terms,
                      int var, const std::vector<T>& w) {
        T acc{};
        if (var == 0) {
            // Univariate Horner over the power of z_1.
            std::map<std::uint32_t, GaussianRational> coeffs;
            for (const auto* t : terms) coeffs[t->first[0]] += t->second;
            std::uint32_t expect = coeffs.empty() ? 0 : coeffs.rbegin()->first;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                for (; expect > it->first; --expect) acc = acc * w[0];
                acc = acc + ScalarFrom<T>::convert(it->second);
            }
            for (; expect > 0; --expect) acc = acc * w[0];
            return acc;
        }
        // Group terms by the power of the top variable and recurse.
        std::map<std::uint32_t, std::vector<const std::pair<const ExponentVector, GaussianRational>*>>
            groups;
        for (const auto* t : terms) groups[t->first[var]].push_back(t);
        std::uint32_t expect = groups.empty() ? 0 : groups.rbegin()->first;
        for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
            for (; expect > it->first; --expect) acc = acc * w[var];
            acc = acc + eval_rec<T>(it->second, var - 1, w);
        }
        for (; expect > 0; --expect) acc = acc * w[var];
        return acc;
    }

    int dim_;
    TermMap terms_;
};

/// Exact quotient P / D, or nullopt when D does not divide P.  Leading-term
/// cancellation under the canonical order; the candidate quotient term is
/// forced at every step, so failure of divisibility is detected as soon as a
/// leading term is not a multiple of lt(D).
inline std::optional<MultiPolynomial> divide_exact(const MultiPolynomial& p,
                                                   const MultiPolynomial& d) {
    if (p.dim() != d.dim()) throw DimensionMismatch("divide_exact dimensions differ");
    if (d.is_zero()) throw Error("divide_exact by zero polynomial");
    MultiPolynomial q(p.dim());
    MultiPolynomial r = p;
    const auto& [ed, cd] = d.leading_term();
    while (!r.is_zero()) {
        const auto& [er, cr] = r.leading_term();
        if (!divides(ed, er)) return std::nullopt;
        ExponentVector m = exp_sub(er, ed);
        GaussianRational cq = cr / cd;
        q.add_term(m, cq);
        r -= d.shifted(m, cq);
    }
    return q;
}

/// Divides by the leading coefficient so the canonical leading term has
/// coefficient 1.  Requires a nonzero polynomial.
inline MultiPolynomial monic(const MultiPolynomial& p) {
    const auto& [e, c] = p.leading_term();
    if (c.is_one()) return p;
    return p * c.inverse();
}

inline std::string monomial_text(const ExponentVector& e) {
    std::string s;
    for (std::size_t j = 0; j < e.size(); ++j) {
        if (e[j] == 0) continue;
        if (!s.empty()) s += "*";
        s += "z" + std::to_string(j + 1);
        if (e[j] > 1) s += "^" + std::to_string(e[j]);
    }
    return s;
}

inline std::string MultiPolynomial::to_text() const {
    if (terms_.empty()) return "0";
    std::string s;
    // Leading term first: iterate the canonical order downwards.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string mono = monomial_text(e);
        std::string cs;
        bool negative = false;
        if (mono.empty()) {
            cs = to_string(c);
            if (!cs.empty() && cs[0] == '-') {
                negative = true;
                cs = cs.substr(1);
            }
        } else if (c.is_one()) {
            cs = "";
        } else if (c == GaussianRational(-1)) {
            negative = true;
            cs = "";
        } else {
            cs = to_string(c);
            if (!cs.empty() && cs[0] == '-') {
                negative = true;
                cs = cs.substr(1);
            }
        }
        if (s.empty()) {
            if (negative) s += "-";
        } else {
            s += negative ? " - " : " + ";
        }
        if (!cs.empty()) {
            s += cs;
            if (!mono.empty()) s += "*";
        }
        s += mono;
    }
    return s;
}

}  // namespace cycdom
