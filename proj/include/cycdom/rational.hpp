#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <complex>
#include <cstdint>
#include <sstream>
#include <string>

namespace cycdom {

/// Arbitrary-precision rational, kept canonical (reduced, positive
/// denominator) by the underlying GMP representation.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Integer numerator(const Rational& q) {
    return boost::multiprecision::numerator(q);
}

inline Integer denominator(const Rational& q) {
    return boost::multiprecision::denominator(q);
}

/// Renders "n" for integers, "n/d" otherwise.
inline std::string to_string(const Rational& q) {
    std::ostringstream os;
    os << q;
    return os.str();
}

inline std::string to_string(const Integer& n) {
    std::ostringstream os;
    os << n;
    return os.str();
}

/// Element of Q(i): a complex number with rational real and imaginary parts.
/// This is the coefficient field for all symbolic computation; every
/// arithmetic operation is exact.
class GaussianRational {
public:
    GaussianRational() : re_(0), im_(0) {}
    GaussianRational(long n) : re_(n), im_(0) {}  // NOLINT(google-explicit-constructor)
    GaussianRational(Rational re) : re_(std::move(re)), im_(0) {}  // NOLINT
    GaussianRational(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static GaussianRational i() { return GaussianRational(Rational(0), Rational(1)); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }
    bool is_one() const { return re_ == 1 && im_ == 0; }

    GaussianRational conj() const { return GaussianRational(re_, -im_); }

    /// |z|^2 as an exact rational.
    Rational norm_sq() const { return re_ * re_ + im_ * im_; }

    GaussianRational operator-() const { return GaussianRational(-re_, -im_); }

    GaussianRational& operator+=(const GaussianRational& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    GaussianRational& operator-=(const GaussianRational& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    GaussianRational& operator*=(const GaussianRational& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    GaussianRational& operator/=(const GaussianRational& o) {
        Rational n = o.norm_sq();
        if (n == 0) throw std::domain_error("division by zero in Q(i)");
        Rational r = (re_ * o.re_ + im_ * o.im_) / n;
        Rational i = (im_ * o.re_ - re_ * o.im_) / n;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
    friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
    friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
    friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }

    friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const GaussianRational& a, const GaussianRational& b) { return !(a == b); }

    GaussianRational inverse() const {
        GaussianRational one(1);
        return one / *this;
    }

    std::complex<double> to_complex_double() const {
        return {static_cast<double>(re_), static_cast<double>(im_)};
    }

private:
    Rational re_, im_;
};

/// Human-readable form, reparsable by the polynomial grammar when used as a
/// standalone factor: "0", "3/2", "i", "-2*i", "(1/2+3/4*i)".
inline std::string to_string(const GaussianRational& z) {
    if (z.is_zero()) return "0";
    if (z.imag() == 0) return to_string(z.real());
    std::string im_part;
    if (z.imag() == 1) {
        im_part = "i";
    } else if (z.imag() == -1) {
        im_part = "-i";
    } else {
        im_part = to_string(z.imag()) + "*i";
    }
    if (z.real() == 0) return im_part;
    std::string s = "(" + to_string(z.real());
    if (im_part[0] != '-') s += "+";
    return s + im_part + ")";
}

}  // namespace cycdom
