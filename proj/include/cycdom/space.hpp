#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "cycdom/errors.hpp"
#include "cycdom/rational.hpp"

namespace cycdom {

// A closed arc on the unit circle, given by its center angle and half-width
// in radians.  half_width = pi covers the whole circle; half_width = 0 is a
// single point.
struct CircleArc {
    double center = 0.0;
    double half_width = 0.0;

    bool contains_angle(double theta) const {
        double d = std::remainder(theta - center, 2.0 * 3.14159265358979323846);
        return std::abs(d) <= half_width + 1e-15;
    }
};

enum class SpaceFamily { Hardy, DirichletType, WeightedDisk };

// Catalog entry for the spaces the symbolic layer reasons about.  Hardy and
// Dirichlet-type spaces live on the polydisk in `dim` variables; the weighted
// disk spaces are one-dimensional and carry a boundary arc set (their
// analytic data lives in the numeric layer, the catalog only records the
// shape of the answer).
struct SpaceSpec {
    SpaceFamily family = SpaceFamily::Hardy;
    int dim = 1;
    double p = 2.0;                 // Hardy exponent, 0 < p < infinity
    double t = 0.0;                 // Dirichlet-type parameter
    std::vector<CircleArc> arcs;    // WeightedDisk boundary set
    int derivative_order = 2;       // WeightedDisk norm order

    static SpaceSpec hardy(double p, int dim) {
        if (!(p > 0.0)) throw UnsupportedSpace("Hardy exponent must be positive (infinity allowed)");
        if (dim < 1) throw UnsupportedSpace("space dimension must be at least 1");
        SpaceSpec s;
        s.family = SpaceFamily::Hardy;
        s.p = p;
        s.dim = dim;
        return s;
    }

    static SpaceSpec dirichlet_type(double t, int dim) {
        if (!std::isfinite(t)) throw UnsupportedSpace("Dirichlet-type parameter must be finite");
        if (dim < 1) throw UnsupportedSpace("space dimension must be at least 1");
        SpaceSpec s;
        s.family = SpaceFamily::DirichletType;
        s.t = t;
        s.dim = dim;
        return s;
    }

    static SpaceSpec weighted_disk(std::vector<CircleArc> arcs, int derivative_order) {
        if (derivative_order < 0) throw UnsupportedSpace("derivative order must be nonnegative");
        SpaceSpec s;
        s.family = SpaceFamily::WeightedDisk;
        s.dim = 1;
        s.arcs = std::move(arcs);
        s.derivative_order = derivative_order;
        return s;
    }

    std::string name() const {
        std::string domain = dim == 1 ? "(D)" : "(D^" + std::to_string(dim) + ")";
        switch (family) {
            case SpaceFamily::Hardy:
                return "H^" + trim_number(p) + domain;
            case SpaceFamily::DirichletType:
                return "D_" + trim_number(t) + domain;
            case SpaceFamily::WeightedDisk:
                return "H_{v," + std::to_string(derivative_order) + "}(D)";
        }
        return "?";
    }

private:
    static std::string trim_number(double x) {
        if (std::isinf(x)) return "inf";
        std::string s = std::to_string(x);
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    }
};

enum class DomainKind { OpenPolydisk, ClosedPolydisk, DiskUnionArcs };

inline std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::OpenPolydisk: return "OpenPolydisk";
        case DomainKind::ClosedPolydisk: return "ClosedPolydisk";
        case DomainKind::DiskUnionArcs: return "DiskUnionArcs";
    }
    return "?";
}

// Three-valued point location.  Boundary means the point sits inside the
// numeric uncertainty band around |z_j| = 1 and floating-point data cannot
// decide membership; callers either resolve it with exact arithmetic or
// propagate an Uncertain verdict.
enum class PointLocation { Inside, Outside, Boundary };

struct MaximalDomainSpec {
    DomainKind kind = DomainKind::OpenPolydisk;
    int dim = 1;
    std::vector<CircleArc> arcs;    // only for DiskUnionArcs
    double band = 1e-7;

    // The enveloping domain (points avoided by every cyclic polynomial) is
    // reported equal to the maximal domain for every catalog space; for the
    // weighted family this equality is conjectural and consumers are told so.
    bool envelope_equal_conjectural = false;

    PointLocation locate(const std::vector<std::complex<double>>& w) const {
        if (static_cast<int>(w.size()) != dim)
            throw DimensionMismatch("point dimension does not match domain dimension");
        switch (kind) {
            case DomainKind::OpenPolydisk: {
                bool boundary = false;
                for (const auto& c : w) {
                    double m = std::abs(c);
                    if (m >= 1.0 + band) return PointLocation::Outside;
                    if (m > 1.0 - band) boundary = true;
                }
                // any modulus inside the band could be exactly 1, which lies
                // outside the open polydisk
                return boundary ? PointLocation::Boundary : PointLocation::Inside;
            }
            case DomainKind::ClosedPolydisk: {
                bool boundary = false;
                for (const auto& c : w) {
                    double m = std::abs(c);
                    if (m > 1.0 + band) return PointLocation::Outside;
                    if (m > 1.0 - band) boundary = true;
                }
                return boundary ? PointLocation::Boundary : PointLocation::Inside;
            }
            case DomainKind::DiskUnionArcs: {
                double m = std::abs(w[0]);
                if (m > 1.0 + band) return PointLocation::Outside;
                if (m < 1.0 - band) return PointLocation::Inside;
                double theta = std::arg(w[0]);
                for (const auto& a : arcs)
                    if (a.contains_angle(theta)) return PointLocation::Boundary;  // on an arc up to band
                // near the circle but away from every arc: the band still
                // hides whether |w| < 1
                return PointLocation::Boundary;
            }
        }
        return PointLocation::Boundary;
    }

    // Exact membership for Gaussian-rational points.  Decides polydisk
    // membership with no tolerance at all; the arc family falls back to the
    // banded test because arc endpoints are transcendental data.
    std::optional<bool> contains_exact(const std::vector<GaussianRational>& w) const {
        if (static_cast<int>(w.size()) != dim)
            throw DimensionMismatch("point dimension does not match domain dimension");
        const Rational one(1);
        switch (kind) {
            case DomainKind::OpenPolydisk: {
                for (const auto& c : w)
                    if (!(c.norm_sq() < one)) return false;
                return true;
            }
            case DomainKind::ClosedPolydisk: {
                for (const auto& c : w)
                    if (c.norm_sq() > one) return false;
                return true;
            }
            case DomainKind::DiskUnionArcs: {
                if (w[0].norm_sq() < one) return true;
                if (w[0].norm_sq() > one) return false;
                std::vector<std::complex<double>> wd{w[0].to_complex_double()};
                auto loc = locate(wd);
                if (loc == PointLocation::Inside) return true;
                if (loc == PointLocation::Outside) return false;
                // exactly on the circle: arc membership needs angle data we
                // only hold in doubles
                double theta = std::arg(wd[0]);
                for (const auto& a : arcs) {
                    double d = std::remainder(theta - a.center, 2.0 * 3.14159265358979323846);
                    if (std::abs(d) <= a.half_width - 1e-9) return true;   // safely interior to the arc
                    if (std::abs(d) <= a.half_width + 1e-9) return std::nullopt;
                }
                return false;
            }
        }
        return std::nullopt;
    }
};

inline MaximalDomainSpec maximal_domain(const SpaceSpec& space) {
    MaximalDomainSpec d;
    d.dim = space.dim;
    switch (space.family) {
        case SpaceFamily::Hardy:
            d.kind = DomainKind::OpenPolydisk;
            break;
        case SpaceFamily::DirichletType:
            d.kind = space.t > 1.0 ? DomainKind::ClosedPolydisk : DomainKind::OpenPolydisk;
            break;
        case SpaceFamily::WeightedDisk:
            d.kind = DomainKind::DiskUnionArcs;
            d.arcs = space.arcs;
            d.envelope_equal_conjectural = true;
            break;
    }
    return d;
}

// The enveloping domain coincides with the maximal domain on the whole
// catalog; for the weighted-disk family that statement is conjectural and the
// spec is flagged accordingly.
inline MaximalDomainSpec enveloping_domain(const SpaceSpec& space) {
    return maximal_domain(space);
}

}  // namespace cycdom
