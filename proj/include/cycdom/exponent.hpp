#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

namespace cycdom {

/// Exponent vector of a monomial z_1^{e_1} ... z_d^{e_d}.  The length is the
/// ring dimension d.
using ExponentVector = std::vector<std::uint32_t>;

inline std::uint64_t total_degree(const ExponentVector& e) {
    return std::accumulate(e.begin(), e.end(), std::uint64_t{0});
}

/// Componentwise divisibility: z^a | z^b.
inline bool divides(const ExponentVector& a, const ExponentVector& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > b[j]) return false;
    return true;
}

inline ExponentVector exp_add(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] + b[j];
    return r;
}

/// Componentwise difference; requires divides(b, a).
inline ExponentVector exp_sub(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = a[j] - b[j];
    return r;
}

inline ExponentVector exp_lcm(const ExponentVector& a, const ExponentVector& b) {
    ExponentVector r(a.size());
    for (std::size_t j = 0; j < a.size(); ++j) r[j] = std::max(a[j], b[j]);
    return r;
}

inline bool exp_coprime(const ExponentVector& a, const ExponentVector& b) {
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] > 0 && b[j] > 0) return false;
    return true;
}

/// Graded lexicographic comparison with z_1 > z_2 > ... > z_d.  This is the
/// canonical order used for term storage and serialization; Groebner
/// computations may use other orders on top of the same storage.
inline int graded_lex_compare(const ExponentVector& a, const ExponentVector& b) {
    std::uint64_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return a[j] < b[j] ? -1 : 1;
    return 0;
}

struct GradedLexLess {
    bool operator()(const ExponentVector& a, const ExponentVector& b) const {
        return graded_lex_compare(a, b) < 0;
    }
};

}  // namespace cycdom
