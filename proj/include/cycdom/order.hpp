#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/exponent.hpp"

namespace cycdom {

/// Monomial order on exponent vectors: lexicographic, graded lexicographic,
/// or graded reverse lexicographic, each over a chosen variable priority.
/// `priority[k]` is the variable index compared in the k-th position, so the
/// default identity priority means z_1 > z_2 > ... > z_d.
struct TermOrder {
    enum class Kind { Lex, GradedLex, GradedRevLex };

    Kind kind = Kind::GradedLex;
    std::vector<int> priority;

    static TermOrder lex(int dim) { return make(Kind::Lex, dim); }
    static TermOrder graded_lex(int dim) { return make(Kind::GradedLex, dim); }
    static TermOrder graded_revlex(int dim) { return make(Kind::GradedRevLex, dim); }

    static TermOrder make(Kind k, int dim) {
        TermOrder o;
        o.kind = k;
        o.priority.resize(dim);
        std::iota(o.priority.begin(), o.priority.end(), 0);
        return o;
    }

    TermOrder with_priority(std::vector<int> p) const {
        TermOrder o = *this;
        if (p.size() != priority.size())
            throw DimensionMismatch("variable priority length differs from dimension");
        o.priority = std::move(p);
        return o;
    }

    int dim() const { return static_cast<int>(priority.size()); }

    /// Returns <0, 0, >0 as a is below, equal to, above b.
    int compare(const ExponentVector& a, const ExponentVector& b) const {
        if (kind != Kind::Lex) {
            std::uint64_t da = total_degree(a), db = total_degree(b);
            if (da != db) return da < db ? -1 : 1;
        }
        if (kind == Kind::GradedRevLex) {
            // Ties break on the least significant variable: the side with the
            // larger exponent there is the smaller monomial.
            for (std::size_t k = priority.size(); k-- > 0;) {
                int j = priority[k];
                if (a[j] != b[j]) return a[j] > b[j] ? -1 : 1;
            }
            return 0;
        }
        for (int j : priority) {
            if (a[j] != b[j]) return a[j] < b[j] ? -1 : 1;
        }
        return 0;
    }

    bool less(const ExponentVector& a, const ExponentVector& b) const { return compare(a, b) < 0; }

    std::string name() const {
        switch (kind) {
            case Kind::Lex: return "lex";
            case Kind::GradedLex: return "grlex";
            case Kind::GradedRevLex: return "grevlex";
        }
        return "?";
    }
};

}  // namespace cycdom
