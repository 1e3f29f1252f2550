#pragma once

#include <complex>
#include <random>
#include <vector>

#include "cycdom/polynomial.hpp"

namespace cycdom::testing {

/// Small random rational with numerator in [-4, 4] and denominator in [1, 3].
inline Rational random_rational(std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    return Rational(num(rng)) / Rational(den(rng));
}

inline GaussianRational random_coeff(std::mt19937& rng, bool allow_imaginary = true) {
    std::uniform_int_distribution<int> kind(0, allow_imaginary ? 3 : 0);
    Rational re = random_rational(rng);
    if (kind(rng) == 3) return GaussianRational(re, random_rational(rng));
    return GaussianRational(re);
}

/// Random polynomial with up to `max_terms` terms of per-variable degree at
/// most `max_deg`.  May come out zero when coefficients collide.
inline MultiPolynomial random_poly(std::mt19937& rng, int dim, int max_deg, int max_terms,
                                   bool allow_imaginary = true) {
    std::uniform_int_distribution<int> nterms(1, max_terms);
    std::uniform_int_distribution<std::uint32_t> deg(0, static_cast<std::uint32_t>(max_deg));
    MultiPolynomial p(dim);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        ExponentVector e(dim);
        for (int j = 0; j < dim; ++j) e[j] = deg(rng);
        p.add_term(std::move(e), random_coeff(rng, allow_imaginary));
    }
    return p;
}

/// Random polynomial guaranteed nonzero.
inline MultiPolynomial random_nonzero_poly(std::mt19937& rng, int dim, int max_deg,
                                           int max_terms, bool allow_imaginary = true) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        MultiPolynomial p = random_poly(rng, dim, max_deg, max_terms, allow_imaginary);
        if (!p.is_zero()) return p;
    }
    return MultiPolynomial::constant(dim, GaussianRational(1));
}

inline std::vector<GaussianRational> random_point(std::mt19937& rng, int dim) {
    std::vector<GaussianRational> w;
    w.reserve(dim);
    for (int j = 0; j < dim; ++j) w.emplace_back(random_rational(rng), random_rational(rng));
    return w;
}

}  // namespace cycdom::testing
