#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/gcd.hpp"
#include "cycdom/order.hpp"
#include "cycdom/polynomial.hpp"

namespace cycdom {

/// Leading exponent of p under an arbitrary order (linear scan; the storage
/// order is fixed graded-lex, which only coincides for that order).
inline const ExponentVector& leading_exponent(const MultiPolynomial& p, const TermOrder& order) {
    if (p.is_zero()) throw Error("leading exponent of zero polynomial");
    const ExponentVector* best = nullptr;
    for (const auto& [e, c] : p.terms())
        if (!best || order.less(*best, e)) best = &e;
    return *best;
}

/// A Groebner basis together with the order that produced it.  `gens` is
/// empty exactly for the zero ideal.
struct GroebnerBasis {
    int dim = 1;
    TermOrder order;
    std::vector<MultiPolynomial> gens;

    bool is_zero_ideal() const { return gens.empty(); }
    bool is_unit_ideal() const {
        return gens.size() == 1 && gens.front().is_constant() && !gens.front().is_zero();
    }
};

/// Remainder of p on division by the basis: repeatedly cancels the leading
/// term against the first generator whose leading term divides it, moving
/// irreducible leading terms to the remainder.  For a Groebner basis this is
/// the unique normal form.
inline MultiPolynomial normal_form(const MultiPolynomial& p, const GroebnerBasis& basis) {
    if (p.dim() != basis.dim) throw DimensionMismatch("normal form dimension differs from basis");
    MultiPolynomial r(p.dim());
    MultiPolynomial work = p;
    std::vector<const ExponentVector*> lts;
    lts.reserve(basis.gens.size());
    for (const auto& g : basis.gens) lts.push_back(&leading_exponent(g, basis.order));
    while (!work.is_zero()) {
        const ExponentVector& e = leading_exponent(work, basis.order);
        GaussianRational c = work.coeff(e);
        bool reduced = false;
        for (std::size_t i = 0; i < basis.gens.size(); ++i) {
            if (!divides(*lts[i], e)) continue;
            GaussianRational factor = c / basis.gens[i].coeff(*lts[i]);
            work -= basis.gens[i].shifted(exp_sub(e, *lts[i]), factor);
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(e, c);
            work.add_term(e, -c);
        }
    }
    return r;
}

namespace detail {

struct CriticalPair {
    std::size_t i, j;  // i < j
    ExponentVector lcm;
};

/// Gebauer-Moeller pair update: adds the pairs of the new generator t against
/// the existing ones, pruned by the multiple, duplicate and coprime criteria,
/// and discards old pairs whose lcm is strictly resolved by the newcomer.
inline void update_pairs(std::vector<CriticalPair>& pairs,
                         const std::vector<MultiPolynomial>& gens,
                         const std::vector<ExponentVector>& lts, std::size_t t) {
    std::vector<CriticalPair> fresh;
    fresh.reserve(t);
    for (std::size_t i = 0; i < t; ++i)
        fresh.push_back({i, t, exp_lcm(lts[i], lts[t])});

    std::vector<CriticalPair> kept;
    for (std::size_t a = 0; a < fresh.size(); ++a) {
        bool drop = false;
        for (std::size_t b = 0; b < fresh.size() && !drop; ++b) {
            if (a == b) continue;
            if (fresh[b].lcm == fresh[a].lcm) {
                // Duplicate lcm: keep only the first representative.
                drop = b < a;
            } else if (divides(fresh[b].lcm, fresh[a].lcm)) {
                drop = true;
            }
        }
        if (!drop) kept.push_back(fresh[a]);
    }

    std::vector<CriticalPair> next;
    for (const auto& p : pairs) {
        bool resolved = divides(lts[t], p.lcm) && exp_lcm(lts[p.i], lts[t]) != p.lcm &&
                        exp_lcm(lts[p.j], lts[t]) != p.lcm;
        if (!resolved) next.push_back(p);
    }
    for (auto& p : kept) {
        if (exp_coprime(lts[p.i], lts[p.j])) continue;  // S-polynomial reduces to zero
        next.push_back(std::move(p));
    }
    pairs = std::move(next);
}

inline MultiPolynomial s_polynomial(const MultiPolynomial& f, const MultiPolynomial& g,
                                    const ExponentVector& ef, const ExponentVector& eg,
                                    const ExponentVector& l) {
    GaussianRational cf = f.coeff(ef), cg = g.coeff(eg);
    MultiPolynomial a = f.shifted(exp_sub(l, ef), cf.inverse());
    MultiPolynomial b = g.shifted(exp_sub(l, eg), cg.inverse());
    return a - b;
}

}  // namespace detail

/// Buchberger's algorithm with Gebauer-Moeller pair elimination, followed by
/// inter-reduction to the unique reduced monic basis.  Generators are sorted
/// by leading term, so the result is deterministic.  Verifies on exit that
/// every input reduces to zero.
inline GroebnerBasis buchberger(const std::vector<MultiPolynomial>& family,
                                const TermOrder& order) {
    if (family.empty()) throw Error("groebner basis of an empty family");
    int dim = family.front().dim();
    if (order.dim() != dim) throw DimensionMismatch("order dimension differs from family");

    GroebnerBasis basis;
    basis.dim = dim;
    basis.order = order;
    for (const auto& f : family) {
        if (f.dim() != dim) throw DimensionMismatch("family members have different dimensions");
        if (!f.is_zero()) basis.gens.push_back(f * f.coeff(leading_exponent(f, order)).inverse());
    }
    if (basis.gens.empty()) return basis;  // zero ideal

    std::vector<ExponentVector> lts;
    for (const auto& g : basis.gens) lts.push_back(leading_exponent(g, order));

    std::vector<detail::CriticalPair> pairs;
    for (std::size_t t = 1; t < basis.gens.size(); ++t)
        detail::update_pairs(pairs, basis.gens, lts, t);

    while (!pairs.empty()) {
        // Normal selection: smallest lcm under the order.
        std::size_t best = 0;
        for (std::size_t k = 1; k < pairs.size(); ++k)
            if (order.less(pairs[k].lcm, pairs[best].lcm)) best = k;
        detail::CriticalPair pair = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        MultiPolynomial s = detail::s_polynomial(basis.gens[pair.i], basis.gens[pair.j],
                                                 lts[pair.i], lts[pair.j], pair.lcm);
        MultiPolynomial h = normal_form(s, basis);
        if (h.is_zero()) continue;
        h *= h.coeff(leading_exponent(h, order)).inverse();
        basis.gens.push_back(std::move(h));
        lts.push_back(leading_exponent(basis.gens.back(), order));
        detail::update_pairs(pairs, basis.gens, lts, basis.gens.size() - 1);
    }

    // Minimalize: drop generators whose leading term is a multiple of
    // another surviving one.
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < basis.gens.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < basis.gens.size() && !redundant; ++j) {
            if (i == j) continue;
            if (divides(lts[j], lts[i]) && !(lts[i] == lts[j] && j > i)) redundant = true;
        }
        if (!redundant) keep.push_back(i);
    }

    GroebnerBasis minimal;
    minimal.dim = dim;
    minimal.order = order;
    for (std::size_t i : keep) minimal.gens.push_back(basis.gens[i]);

    // Tail-reduce each survivor against the others until stable.
    for (bool changed = true; changed;) {
        changed = false;
        for (std::size_t i = 0; i < minimal.gens.size(); ++i) {
            GroebnerBasis others;
            others.dim = dim;
            others.order = order;
            for (std::size_t j = 0; j < minimal.gens.size(); ++j)
                if (j != i) others.gens.push_back(minimal.gens[j]);
            MultiPolynomial r = normal_form(minimal.gens[i], others);
            if (r.is_zero()) {
                minimal.gens.erase(minimal.gens.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            r *= r.coeff(leading_exponent(r, order)).inverse();
            if (r != minimal.gens[i]) {
                minimal.gens[i] = std::move(r);
                changed = true;
            }
        }
    }

    std::sort(minimal.gens.begin(), minimal.gens.end(),
              [&](const MultiPolynomial& a, const MultiPolynomial& b) {
                  return order.less(leading_exponent(a, order), leading_exponent(b, order));
              });

    for (const auto& f : family)
        if (!normal_form(f, minimal).is_zero())
            throw Error("internal: basis does not reduce an input generator to zero");
    return minimal;
}

/// Basis of the quotient ring P_d / I as a sorted list of standard monomials
/// (those outside the leading-term ideal).  Empty `finite` means infinite
/// codimension.
struct QuotientBasis {
    bool finite = false;
    std::vector<ExponentVector> monomials;  // canonical graded-lex ascending

    std::size_t codimension() const { return monomials.size(); }
};

/// Codimension of the ideal: finite iff every variable has a pure power among
/// the leading terms.  For the zero ideal in d >= 1 variables the quotient is
/// the full polynomial ring, reported as infinite.
inline QuotientBasis quotient_basis(const GroebnerBasis& basis) {
    QuotientBasis out;
    if (basis.is_zero_ideal()) return out;

    std::vector<ExponentVector> lts;
    for (const auto& g : basis.gens) lts.push_back(leading_exponent(g, basis.order));

    int d = basis.dim;
    std::vector<std::uint32_t> cap(d, 0);
    for (int j = 0; j < d; ++j) {
        bool found = false;
        std::uint32_t best = 0;
        for (const auto& e : lts) {
            bool pure = true;
            for (int k = 0; k < d; ++k)
                if (k != j && e[k] != 0) pure = false;
            if (!pure) continue;
            if (!found || e[j] < best) best = e[j];
            found = true;
        }
        if (!found) return out;  // no pure power of z_{j+1}: infinite
        cap[j] = best;
    }

    // Enumerate the box below the caps and keep monomials not divisible by
    // any leading term.
    ExponentVector e(d, 0);
    while (true) {
        bool standard = true;
        for (const auto& l : lts)
            if (divides(l, e)) {
                standard = false;
                break;
            }
        if (standard) out.monomials.push_back(e);
        int j = d - 1;
        while (j >= 0) {
            if (cap[j] > 0 && e[j] + 1 < cap[j]) {
                ++e[j];
                break;
            }
            e[j] = 0;
            --j;
        }
        if (j < 0) break;
    }
    out.finite = true;
    std::sort(out.monomials.begin(), out.monomials.end(), GradedLexLess{});
    return out;
}

/// Splits a family into its gcd and the coprime cofactors, so the generated
/// ideal factors as (gcd) times the cofactor ideal.
struct FactoredFamily {
    MultiPolynomial common;                  // monic gcd of the family
    std::vector<MultiPolynomial> cofactors;  // same order as the nonzero inputs
};

inline FactoredFamily factor_ideal(const std::vector<MultiPolynomial>& family) {
    FactoredFamily out{gcd_family(family), {}};
    for (const auto& p : family) {
        if (p.is_zero()) continue;
        auto q = divide_exact(p, out.common);
        if (!q) throw Error("internal: family gcd does not divide a member");
        out.cofactors.push_back(*q);
    }
    if (!out.cofactors.empty() && !gcd_family(out.cofactors).is_constant())
        throw Error("internal: cofactors of the family gcd are not coprime");
    return out;
}

}  // namespace cycdom
