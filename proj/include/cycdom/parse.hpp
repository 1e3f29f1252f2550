#pragma once

#include <cctype>
#include <cstdint>
#include <string>
#include <string_view>

#include "cycdom/errors.hpp"
#include "cycdom/polynomial.hpp"

namespace cycdom {

/// Recursive-descent parser for the polynomial grammar (docs/grammar.md).
///
///   expr    := term (('+' | '-') term)*
///   term    := signed ('*' signed)*
///   signed  := ('+' | '-')* power
///   power   := atom ('^' natural)?
///   atom    := '(' expr ')' | rational | 'i' | variable
///   rational:= natural ('/' natural)?
///
/// '/' appears only inside rational literals; there is no general division.
/// Variables are z1 ... zd; plain 'z' is accepted as z1 when d = 1.
class PolynomialParser {
public:
    PolynomialParser(std::string_view text, int dim) : text_(text), dim_(dim) {}

    MultiPolynomial parse() {
        MultiPolynomial p = parse_expr();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return p;
    }

private:
    MultiPolynomial parse_expr() {
        MultiPolynomial acc = parse_term();
        while (true) {
            skip_ws();
            if (peek() == '+') {
                ++pos_;
                acc += parse_term();
            } else if (peek() == '-') {
                ++pos_;
                acc -= parse_term();
            } else {
                return acc;
            }
        }
    }

    MultiPolynomial parse_term() {
        MultiPolynomial acc = parse_signed();
        while (true) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                acc *= parse_signed();
            } else {
                return acc;
            }
        }
    }

    MultiPolynomial parse_signed() {
        bool negate = false;
        while (true) {
            skip_ws();
            if (peek() == '-') {
                negate = !negate;
                ++pos_;
            } else if (peek() == '+') {
                ++pos_;
            } else {
                break;
            }
        }
        MultiPolynomial p = parse_power();
        return negate ? -p : p;
    }

    MultiPolynomial parse_power() {
        MultiPolynomial base = parse_atom();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            skip_ws();
            if (!is_digit(peek()))
                throw ParseError("expected nonnegative integer exponent after '^'", pos_);
            std::uint64_t k = parse_natural();
            if (k > 4096) throw ParseError("exponent too large", pos_);
            return base.pow(static_cast<std::uint32_t>(k));
        }
        return base;
    }

    MultiPolynomial parse_atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            std::size_t open = pos_;
            ++pos_;
            MultiPolynomial p = parse_expr();
            skip_ws();
            if (peek() != ')') throw ParseError("unbalanced parenthesis", open);
            ++pos_;
            return p;
        }
        if (c == 'i') {
            ++pos_;
            if (is_word(peek()))
                throw ParseError("unexpected character after 'i'", pos_);
            return MultiPolynomial::constant(dim_, GaussianRational::i());
        }
        if (c == 'z') {
            ++pos_;
            if (!is_digit(peek())) {
                if (dim_ == 1) return MultiPolynomial::variable(1, 0);
                throw ParseError("variable needs an index in dimension > 1", pos_);
            }
            std::uint64_t idx = parse_natural();
            if (idx < 1 || idx > static_cast<std::uint64_t>(dim_))
                throw ParseError("variable index out of range for dimension " +
                                     std::to_string(dim_),
                                 pos_);
            return MultiPolynomial::variable(dim_, static_cast<int>(idx) - 1);
        }
        if (is_digit(c)) {
            Integer num = parse_integer();
            skip_ws();
            if (peek() == '/') {
                std::size_t slash = pos_;
                ++pos_;
                skip_ws();
                if (!is_digit(peek()))
                    throw ParseError("expected denominator after '/'", pos_);
                Integer den = parse_integer();
                if (den == 0) throw ParseError("zero denominator", slash);
                return MultiPolynomial::constant(
                    dim_, GaussianRational(Rational(num) / Rational(den)));
            }
            return MultiPolynomial::constant(dim_, GaussianRational(Rational(num)));
        }
        if (c == '\0') throw ParseError("unexpected end of input", pos_);
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
    }

    static bool is_digit(char c) { return c >= '0' && c <= '9'; }
    static bool is_word(char c) {
        return is_digit(c) || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
    }

    Integer parse_integer() {
        std::string digits;
        while (is_digit(peek())) digits += text_[pos_++];
        return Integer(digits);
    }

    std::uint64_t parse_natural() {
        std::uint64_t v = 0;
        std::size_t start = pos_;
        while (is_digit(peek())) {
            v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
            if (v > (1ull << 32)) throw ParseError("integer too large", start);
            ++pos_;
        }
        return v;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    int dim_;
    std::size_t pos_ = 0;
};

/// Parses `text` as a polynomial in d variables.  Throws ParseError with the
/// byte position of the first offending character.
inline MultiPolynomial parse_polynomial(std::string_view text, int dim) {
    return PolynomialParser(text, dim).parse();
}

/// Canonical serialized term list: one string per term, leading term first
/// under graded-lex, each "re_num/re_den/im_num/im_den:e1,...,ed" with both
/// rational parts reduced and denominators positive.
inline std::vector<std::string> canonical_terms(const MultiPolynomial& p) {
    std::vector<std::string> out;
    const auto& tm = p.terms();
    for (auto it = tm.rbegin(); it != tm.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string s = to_string(numerator(c.real())) + "/" + to_string(denominator(c.real())) +
                        "/" + to_string(numerator(c.imag())) + "/" +
                        to_string(denominator(c.imag())) + ":";
        for (std::size_t j = 0; j < e.size(); ++j) {
            if (j) s += ",";
            s += std::to_string(e[j]);
        }
        out.push_back(std::move(s));
    }
    return out;
}

/// Inverse of canonical_terms for one term string.
inline void add_canonical_term(MultiPolynomial& p, const std::string& term) {
    auto colon = term.find(':');
    if (colon == std::string::npos) throw ParseError("canonical term missing ':'", 0);
    std::string coeff = term.substr(0, colon);
    std::string exps = term.substr(colon + 1);
    Integer parts[4];
    int n = 0;
    std::size_t start = 0;
    for (int k = 0; k < 4; ++k) {
        std::size_t slash = coeff.find('/', start);
        std::string piece = (k == 3) ? coeff.substr(start)
                                     : coeff.substr(start, slash - start);
        if (k < 3 && slash == std::string::npos)
            throw ParseError("canonical coefficient needs four '/'-separated integers", 0);
        parts[n++] = Integer(piece);
        start = slash + 1;
    }
    ExponentVector e;
    start = 0;
    while (start <= exps.size()) {
        std::size_t comma = exps.find(',', start);
        std::string piece =
            (comma == std::string::npos) ? exps.substr(start) : exps.substr(start, comma - start);
        e.push_back(static_cast<std::uint32_t>(std::stoul(piece)));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (static_cast<int>(e.size()) != p.dim())
        throw DimensionMismatch("canonical term exponent count differs from dimension");
    if (parts[1] == 0 || parts[3] == 0) throw ParseError("zero denominator in canonical term", 0);
    p.add_term(std::move(e),
               GaussianRational(Rational(parts[0]) / Rational(parts[1]),
                                Rational(parts[2]) / Rational(parts[3])));
}

inline MultiPolynomial from_canonical_terms(const std::vector<std::string>& terms, int dim) {
    MultiPolynomial p(dim);
    for (const auto& t : terms) add_canonical_term(p, t);
    return p;
}

}  // namespace cycdom
