#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/highprec.hpp"
#include "cycdom/space.hpp"

namespace cycdom {

/// Radial weight on the unit disk.  Three built-in shapes:
///   Constant:  v = c
///   ArcSet:    v(z) = exp(-dist(z/|z|, G) / (1 - |z|)) for a closed arc
///              union G on the circle (planar chordal distance)
///   Series:    v = sum_k a_k v_k with each v_k an ArcSet weight
struct WeightSpec {
    enum class Kind { Constant, ArcSet, Series };

    struct Component {
        std::vector<CircleArc> arcs;
        double coefficient = 1.0;
    };

    Kind kind = Kind::Constant;
    double constant = 1.0;
    std::vector<CircleArc> arcs;
    std::vector<Component> components;

    static WeightSpec constant_weight(double c) {
        if (!(c > 0.0)) throw Error("constant weight must be positive");
        WeightSpec w;
        w.kind = Kind::Constant;
        w.constant = c;
        return w;
    }

    static WeightSpec arc_set(std::vector<CircleArc> arcs) {
        if (arcs.empty()) throw Error("arc-set weight needs at least one arc");
        for (const auto& a : arcs)
            if (!(a.half_width > 0.0)) throw Error("arcs must have positive width");
        WeightSpec w;
        w.kind = Kind::ArcSet;
        w.arcs = std::move(arcs);
        return w;
    }

    static WeightSpec series(std::vector<Component> components) {
        if (components.empty()) throw Error("series weight needs at least one component");
        for (const auto& c : components) {
            if (c.arcs.empty()) throw Error("series component needs at least one arc");
            if (!(c.coefficient > 0.0)) throw Error("series coefficients must be positive");
        }
        WeightSpec w;
        w.kind = Kind::Series;
        w.components = std::move(components);
        return w;
    }

    std::string describe() const {
        switch (kind) {
            case Kind::Constant: return "constant " + std::to_string(constant);
            case Kind::ArcSet: return "arc set with " + std::to_string(arcs.size()) + " arc(s)";
            case Kind::Series:
                return "series with " + std::to_string(components.size()) + " component(s)";
        }
        return "?";
    }
};

namespace detail {

/// Shortest angular distance from angle `theta` to the arc, in [0, pi].
/// Zero when the angle lies on the closed arc.
template <typename T>
T angular_gap_to_arc(const T& theta, const CircleArc& arc, const T& pi_val) {
    using std::fmod;
    T d = theta - T(arc.center);
    T two_pi = 2 * pi_val;
    d = fmod(d, two_pi);
    if (d > pi_val) d -= two_pi;
    if (d < -pi_val) d += two_pi;
    if (d < 0) d = -d;
    T h(arc.half_width);
    if (d <= h) return T(0);
    return d - h;
}

/// Chordal distance from the unit point at angle `theta` to the arc union:
/// two points at angular distance g sit 2 sin(g/2) apart in the plane.
template <typename T>
T chord_dist_to_arcs(const T& theta, const std::vector<CircleArc>& arcs, const T& pi_val) {
    using std::sin;
    T best = 2 * pi_val;
    for (const auto& a : arcs) {
        T g = angular_gap_to_arc(theta, a, pi_val);
        if (g < best) best = g;
        if (best == 0) break;
    }
    return 2 * sin(best / 2);
}

}  // namespace detail

/// Weight value at the point r*e^{i theta}, 0 < r < 1.
inline Real weight_eval(const WeightSpec& spec, const Real& r, const Real& theta) {
    switch (spec.kind) {
        case WeightSpec::Kind::Constant:
            return Real(spec.constant);
        case WeightSpec::Kind::ArcSet: {
            Real d = detail::chord_dist_to_arcs(theta, spec.arcs, real_pi());
            return exp(-d / (1 - r));
        }
        case WeightSpec::Kind::Series: {
            Real pi_val = real_pi();
            Real acc(0);
            for (const auto& c : spec.components) {
                Real d = detail::chord_dist_to_arcs(theta, c.arcs, pi_val);
                acc += Real(c.coefficient) * exp(-d / (1 - r));
            }
            return acc;
        }
    }
    return Real(0);
}

/// Double-precision convenience for sampling checks and plotting.
inline double weight_eval(const WeightSpec& spec, std::complex<double> z) {
    double r = std::abs(z);
    double theta = std::arg(z);
    double pi_val = 3.14159265358979323846;
    switch (spec.kind) {
        case WeightSpec::Kind::Constant:
            return spec.constant;
        case WeightSpec::Kind::ArcSet:
            return std::exp(-detail::chord_dist_to_arcs(theta, spec.arcs, pi_val) / (1.0 - r));
        case WeightSpec::Kind::Series: {
            double acc = 0.0;
            for (const auto& c : spec.components)
                acc += c.coefficient *
                       std::exp(-detail::chord_dist_to_arcs(theta, c.arcs, pi_val) / (1.0 - r));
            return acc;
        }
    }
    return 0.0;
}

/// Chordal distance between two closed arc unions (zero when they touch).
inline double arc_set_distance(const std::vector<CircleArc>& a, const std::vector<CircleArc>& b) {
    double pi_val = 3.14159265358979323846;
    double best_gap = 2 * pi_val;
    for (const auto& x : a) {
        for (const auto& y : b) {
            double d = std::fmod(x.center - y.center, 2 * pi_val);
            if (d > pi_val) d -= 2 * pi_val;
            if (d < -pi_val) d += 2 * pi_val;
            double gap = std::abs(d) - x.half_width - y.half_width;
            if (gap < best_gap) best_gap = gap;
        }
    }
    if (best_gap <= 0.0) return 0.0;
    return 2 * std::sin(best_gap / 2);
}

/// Coefficients a_k = 2^{-k} * prod_{j=0}^{k} (d_{k,j}/2)^6 with
/// d_{k,j} the chordal distance between gamma[k] and complement[j].
/// Every distance used must be positive.
inline std::vector<double> auto_coefficients(const std::vector<std::vector<CircleArc>>& gamma,
                                             const std::vector<std::vector<CircleArc>>& complement) {
    if (gamma.empty()) throw Error("auto_coefficients needs at least one arc family");
    if (complement.size() < gamma.size())
        throw Error("auto_coefficients needs a complement family per index");
    std::vector<double> a;
    a.reserve(gamma.size());
    for (std::size_t k = 0; k < gamma.size(); ++k) {
        double prod = std::pow(0.5, static_cast<double>(k));
        for (std::size_t j = 0; j <= k; ++j) {
            double d = arc_set_distance(gamma[k], complement[j]);
            if (d <= 0.0)
                throw NonDisjoint("arc family " + std::to_string(k) +
                                  " touches complement family " + std::to_string(j));
            prod *= std::pow(d / 2.0, 6.0);
        }
        a.push_back(prod);
    }
    return a;
}

/// Upper bound on the weight mass of the omitted tail when a series built by
/// auto_coefficients is truncated to its first `kept` components: each a_k is
/// at most 2^{-k} and each v_k is at most 1.
inline double auto_tail_bound(std::size_t kept) { return std::pow(0.5, static_cast<double>(kept) - 1.0); }

}  // namespace cycdom
