#pragma once

#include <atomic>
#include <cstddef>
#include <functional>
#include <thread>
#include <utility>
#include <vector>

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include "cycdom/errors.hpp"

namespace cycdom {

/// Arbitrary-precision real with runtime-selected precision.  Expression
/// templates are off so values behave like ordinary scalars.
using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

/// Scoped precision setting.  The default precision is thread-local, so
/// every worker thread needs its own guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(unsigned digits)
        : saved_(Real::default_precision()) {
        Real::default_precision(digits);
    }
    ~PrecisionGuard() { Real::default_precision(saved_); }
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

inline Real real_pi() { return boost::math::constants::pi<Real>(); }

/// Complex number over Real.  std::complex is only specified for the
/// built-in floating types, so the few operations needed are spelled out.
struct Cx {
    Real re, im;

    Cx() = default;
    Cx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Cx(Real r) : re(std::move(r)), im(0) {}
    explicit Cx(double r) : re(r), im(0) {}
    Cx(double r, double i) : re(r), im(i) {}

    Cx conj() const { return {re, -im}; }
    Real norm_sq() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm_sq()); }

    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }
    Cx& operator*=(const Real& s) {
        re *= s;
        im *= s;
        return *this;
    }
    Cx& operator/=(const Real& s) {
        re /= s;
        im /= s;
        return *this;
    }

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const Cx& a, const Real& s) { return {a.re * s, a.im * s}; }
    friend Cx operator*(const Real& s, const Cx& a) { return {a.re * s, a.im * s}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        Real d = b.norm_sq();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
};

/// Runs fn(i) for i in [0, count) on up to `threads` workers.  Each index is
/// processed exactly once and must write only its own output slot, which
/// makes results identical for every thread count.  Workers set their own
/// thread-local precision before touching any Real.
inline void parallel_for(std::size_t count, unsigned threads, unsigned digits,
                         const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        PrecisionGuard guard(digits);
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    unsigned workers = static_cast<unsigned>(std::min<std::size_t>(threads, count));
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) {
        pool.emplace_back([&] {
            PrecisionGuard guard(digits);
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace cycdom
