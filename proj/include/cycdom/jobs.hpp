#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cycdom/cyclicity.hpp"
#include "cycdom/errors.hpp"
#include "cycdom/gram.hpp"
#include "cycdom/kernel.hpp"
#include "cycdom/parse.hpp"
#include "cycdom/quadrature.hpp"
#include "cycdom/space.hpp"
#include "cycdom/weights.hpp"

namespace cycdom {

using Json = nlohmann::ordered_json;

/// What a finished job hands back to the caller: the process exit code, a
/// one-line report for stdout, and the artifact paths written.
struct JobOutcome {
    int exit_code = 0;
    std::string message;
    std::vector<std::string> artifacts;
};

struct RunOptions {
    std::string out_dir = ".";
    unsigned threads = 1;
    unsigned precision_override = 0;  // 0 keeps the job's own precision
};

namespace detail {

inline const Json& require_field(const Json& j, const char* key) {
    if (!j.contains(key)) throw Error(std::string("job is missing field '") + key + "'");
    return j.at(key);
}

inline std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

/// Fixed-width scientific rendering of a Real; the same bytes on every run
/// and thread count because the underlying values are bit-identical.
inline std::string format_real(const Real& x) {
    return x.str(25, std::ios_base::scientific);
}

inline SpaceSpec space_from_json(const Json& j) {
    std::string family = require_field(j, "family").get<std::string>();
    int dim = j.value("dim", 1);
    if (family == "hardy") {
        double p = 2.0;
        if (j.contains("p")) {
            const Json& pj = j.at("p");
            if (pj.is_string()) {
                std::string text = pj.get<std::string>();
                if (text == "inf" || text == "infinity")
                    p = std::numeric_limits<double>::infinity();
                else
                    throw Error("unrecognized Hardy exponent '" + text + "'");
            } else {
                p = pj.get<double>();
            }
        }
        return SpaceSpec::hardy(p, dim);
    }
    if (family == "dirichlet_type")
        return SpaceSpec::dirichlet_type(require_field(j, "t").get<double>(), dim);
    if (family == "weighted_disk") {
        std::vector<CircleArc> arcs;
        for (const Json& a : require_field(j, "arcs"))
            arcs.push_back(CircleArc{require_field(a, "center").get<double>(),
                                     require_field(a, "half_width").get<double>()});
        return SpaceSpec::weighted_disk(std::move(arcs), j.value("derivative_order", 2));
    }
    throw Error("unknown space family '" + family + "'");
}

inline Json space_to_json(const SpaceSpec& s) {
    Json j;
    j["name"] = s.name();
    switch (s.family) {
        case SpaceFamily::Hardy:
            j["family"] = "hardy";
            if (std::isinf(s.p))
                j["p"] = "inf";
            else
                j["p"] = s.p;
            break;
        case SpaceFamily::DirichletType:
            j["family"] = "dirichlet_type";
            j["t"] = s.t;
            break;
        case SpaceFamily::WeightedDisk: {
            j["family"] = "weighted_disk";
            Json arcs = Json::array();
            for (const auto& a : s.arcs)
                arcs.push_back({{"center", a.center}, {"half_width", a.half_width}});
            j["arcs"] = std::move(arcs);
            j["derivative_order"] = s.derivative_order;
            break;
        }
    }
    j["dim"] = s.dim;
    return j;
}

inline std::vector<CircleArc> arcs_from_json(const Json& list) {
    std::vector<CircleArc> arcs;
    for (const Json& a : list)
        arcs.push_back(CircleArc{require_field(a, "center").get<double>(),
                                 require_field(a, "half_width").get<double>()});
    return arcs;
}

inline WeightSpec weight_from_json(const Json& j) {
    std::string kind = require_field(j, "kind").get<std::string>();
    if (kind == "constant") return WeightSpec::constant_weight(j.value("value", 1.0));
    if (kind == "arcs") return WeightSpec::arc_set(arcs_from_json(require_field(j, "arcs")));
    if (kind == "series") {
        std::vector<WeightSpec::Component> comps;
        for (const Json& c : require_field(j, "components"))
            comps.push_back({arcs_from_json(require_field(c, "arcs")),
                             require_field(c, "coefficient").get<double>()});
        return WeightSpec::series(std::move(comps));
    }
    throw Error("unknown weight kind '" + kind + "'");
}

inline Json weight_to_json(const WeightSpec& w) {
    Json j;
    switch (w.kind) {
        case WeightSpec::Kind::Constant:
            j["kind"] = "constant";
            j["value"] = w.constant;
            break;
        case WeightSpec::Kind::ArcSet: {
            j["kind"] = "arcs";
            Json arcs = Json::array();
            for (const auto& a : w.arcs)
                arcs.push_back({{"center", a.center}, {"half_width", a.half_width}});
            j["arcs"] = std::move(arcs);
            break;
        }
        case WeightSpec::Kind::Series: {
            j["kind"] = "series";
            Json comps = Json::array();
            for (const auto& c : w.components) {
                Json arcs = Json::array();
                for (const auto& a : c.arcs)
                    arcs.push_back({{"center", a.center}, {"half_width", a.half_width}});
                comps.push_back({{"arcs", std::move(arcs)}, {"coefficient", c.coefficient}});
            }
            j["components"] = std::move(comps);
            break;
        }
    }
    return j;
}

inline std::filesystem::path resolve_artifact(const RunOptions& opts, const std::string& name) {
    std::filesystem::path p(name);
    if (p.is_absolute()) return p;
    return std::filesystem::path(opts.out_dir) / p;
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) throw Error("cannot write artifact '" + path.string() + "'");
}

inline QuadratureGrid grid_from_json(const Json& job, unsigned precision) {
    int levels = 44, ppp = 32, angular = 512;
    if (job.contains("grid")) {
        const Json& g = job.at("grid");
        levels = g.value("levels", levels);
        ppp = g.value("points_per_panel", ppp);
        angular = g.value("angular", angular);
    }
    return build_grid(precision, levels, ppp, angular);
}

inline unsigned job_precision(const Json& job, const RunOptions& opts) {
    if (opts.precision_override > 0) return opts.precision_override;
    return job.value("precision", 70u);
}

inline void echo_seed(const Json& job, Json& doc) {
    if (job.contains("seed")) doc["seed"] = job.at("seed");
}

}  // namespace detail

/// check-cyclic: run the symbolic pipeline on a polynomial family and write
/// the verdict certificate.  One polynomial asks for plain cyclicity, two or
/// more for joint cyclicity of the generated ideal.
inline JobOutcome run_check_cyclic(const Json& job, const RunOptions& opts) {
    SpaceSpec space = detail::space_from_json(detail::require_field(job, "space"));
    const Json& texts = detail::require_field(job, "polynomials");
    if (!texts.is_array() || texts.empty())
        throw Error("check-cyclic needs a nonempty 'polynomials' array");
    std::vector<std::string> input;
    std::vector<MultiPolynomial> family;
    for (const Json& t : texts) {
        input.push_back(t.get<std::string>());
        family.push_back(parse_polynomial(input.back(), space.dim));
    }

    CyclicityVerdict verdict = family.size() == 1 ? is_cyclic(space, family.front())
                                                  : is_jointly_cyclic(space, family);

    Json doc;
    doc["command"] = "check-cyclic";
    detail::echo_seed(job, doc);
    doc["space"] = detail::space_to_json(space);
    doc["input"] = input;
    Json canonical = Json::array();
    for (const auto& f : family) canonical.push_back(f.to_text());
    doc["canonical"] = std::move(canonical);
    doc["mode"] = family.size() == 1 ? "single" : "joint";
    doc["status"] = to_string(verdict.status);
    doc["hypothesis_met"] = verdict.hypothesis_met;
    doc["certificate"] = verdict.certificate;
    if (!verdict.witness.empty()) {
        Json w = Json::array();
        for (const auto& c : verdict.witness) w.push_back({c.real(), c.imag()});
        doc["witness"] = std::move(w);
    }
    if (verdict.exact_witness) {
        Json w = Json::array();
        for (const auto& c : *verdict.exact_witness)
            w.push_back({to_string(c.real()), to_string(c.imag())});
        doc["exact_witness"] = std::move(w);
    }

    auto path = detail::resolve_artifact(opts, job.value("output", "verdict.json"));
    detail::write_text(path, doc.dump(2) + "\n");

    JobOutcome out;
    out.exit_code = verdict.status == CyclicityStatus::Uncertain ? 2 : 0;
    out.message = space.name() + ": " + to_string(verdict.status);
    out.artifacts.push_back(path.string());
    return out;
}

/// scan-maxdomain: assemble one Gram matrix, then walk the requested boundary
/// points producing the lambda/delta growth table and per-point
/// classifications.
inline JobOutcome run_scan_maxdomain(const Json& job, const RunOptions& opts) {
    WeightSpec weight = detail::weight_from_json(detail::require_field(job, "weight"));
    int n = detail::require_field(job, "n").get<int>();
    std::vector<int> schedule;
    for (const Json& v : detail::require_field(job, "schedule")) schedule.push_back(v.get<int>());
    if (schedule.size() < 2) throw Error("scan schedule needs at least two degree caps");
    std::sort(schedule.begin(), schedule.end());

    std::vector<std::complex<double>> points;
    if (job.contains("points"))
        for (const Json& p : job.at("points"))
            points.emplace_back(p.at(0).get<double>(), p.at(1).get<double>());
    if (job.contains("boundary_grid")) {
        int count = job.at("boundary_grid").get<int>();
        if (count < 1) throw Error("boundary grid needs a positive point count");
        double step = 2.0 * 3.14159265358979323846 / count;
        for (int i = 0; i < count; ++i) points.push_back(std::polar(1.0, step * i));
    }
    if (points.empty()) throw Error("scan needs boundary points ('points' or 'boundary_grid')");

    GrowthThresholds th;
    if (job.contains("thresholds")) {
        th.slope_lo = job.at("thresholds").value("slope_lo", th.slope_lo);
        th.slope_hi = job.at("thresholds").value("slope_hi", th.slope_hi);
    }

    unsigned precision = detail::job_precision(job, opts);
    QuadratureGrid grid = detail::grid_from_json(job, precision);
    int cap = schedule.back();
    GramMatrix G = gram_matrix(weight, n, cap, grid, opts.threads);
    OrthonormalSystem sys = orthonormalize(G);

    std::string csv = "w_re,w_im,N,lambda,delta,condition\n";
    Json summary;
    summary["command"] = "scan-maxdomain";
    detail::echo_seed(job, summary);
    summary["weight"] = detail::weight_to_json(weight);
    summary["n"] = n;
    summary["schedule"] = schedule;
    summary["precision"] = precision;
    summary["grid"] = {{"levels", grid.levels},
                       {"points_per_panel", grid.points_per_panel},
                       {"angular", grid.angular}};
    summary["thresholds"] = {{"slope_lo", th.slope_lo}, {"slope_hi", th.slope_hi}};
    summary["condition_estimate"] = detail::format_real(G.condition_estimate);
    if (weight.kind == WeightSpec::Kind::Series) {
        // the damped construction keeps a_k <= 2^-k; report the tail bound of
        // the dropped terms whenever the supplied coefficients obey it
        bool damped = true;
        for (std::size_t k = 0; k < weight.components.size(); ++k)
            if (weight.components[k].coefficient > std::pow(0.5, static_cast<double>(k)) + 1e-12)
                damped = false;
        summary["series_components"] = weight.components.size();
        if (damped) summary["series_tail_bound"] = auto_tail_bound(weight.components.size());
    }

    Json rows = Json::array();
    for (const auto& w : points) {
        Cx wc(w.real(), w.imag());
        LambdaProfile lp = lambda_profile(sys, wc, schedule);
        DeltaProfile dp = delta_profile(G, wc, schedule);
        KernelDiagnostic kd = classify_point(sys, w, schedule, th);
        DistanceDiagnostic dd = dist_to_invariant_subspace(G, w, schedule, th);

        std::size_t joint = std::min(lp.samples.size(), dp.samples.size());
        for (std::size_t i = 0; i < joint; ++i) {
            csv += detail::format_double(w.real()) + "," + detail::format_double(w.imag()) + "," +
                   std::to_string(lp.samples[i].first) + "," +
                   detail::format_real(lp.samples[i].second) + "," +
                   detail::format_real(dp.samples[i].second) + "," +
                   detail::format_real(G.condition_estimate) + "\n";
        }

        Json row;
        row["w"] = {w.real(), w.imag()};
        row["classification"] = to_string(kd.classification);
        row["slope"] = kd.slope;
        row["dist_classification"] = to_string(dd.classification);
        row["dist_slope"] = dd.slope;
        row["agree"] = kd.classification == dd.classification;
        row["ill_conditioned"] = kd.ill_conditioned || dd.ill_conditioned;
        row["monotone_ok"] = kd.monotone_ok;
        rows.push_back(std::move(row));
    }
    summary["points"] = std::move(rows);

    auto csv_path = detail::resolve_artifact(opts, job.value("csv", "scan.csv"));
    auto summary_path = detail::resolve_artifact(opts, job.value("summary", "scan_summary.json"));
    detail::write_text(csv_path, csv);
    detail::write_text(summary_path, summary.dump(2) + "\n");

    JobOutcome out;
    out.message = "scanned " + std::to_string(points.size()) + " point(s) up to degree " +
                  std::to_string(cap);
    out.artifacts.push_back(csv_path.string());
    out.artifacts.push_back(summary_path.string());
    return out;
}

/// gram-dump: write the full Gram matrix as CSV plus a small metadata file
/// with the conditioning report.
inline JobOutcome run_gram_dump(const Json& job, const RunOptions& opts) {
    WeightSpec weight = detail::weight_from_json(detail::require_field(job, "weight"));
    int n = detail::require_field(job, "n").get<int>();
    int N = detail::require_field(job, "N").get<int>();
    unsigned precision = detail::job_precision(job, opts);
    QuadratureGrid grid = detail::grid_from_json(job, precision);
    GramMatrix G = gram_matrix(weight, n, N, grid, opts.threads);

    std::string csv = "j,k,re,im\n";
    for (int j = 0; j <= N; ++j)
        for (int k = 0; k <= N; ++k)
            csv += std::to_string(j) + "," + std::to_string(k) + "," +
                   detail::format_real(G.at(j, k).re) + "," + detail::format_real(G.at(j, k).im) +
                   "\n";

    Json meta;
    meta["command"] = "gram-dump";
    detail::echo_seed(job, meta);
    meta["weight"] = detail::weight_to_json(weight);
    meta["n"] = n;
    meta["N"] = N;
    meta["precision"] = precision;
    meta["condition_estimate"] = detail::format_real(G.condition_estimate);

    auto csv_path = detail::resolve_artifact(opts, job.value("output", "gram.csv"));
    auto meta_path = detail::resolve_artifact(opts, job.value("summary", "gram_summary.json"));
    detail::write_text(csv_path, csv);
    detail::write_text(meta_path, meta.dump(2) + "\n");

    JobOutcome out;
    out.message = "Gram matrix of order " + std::to_string(N + 1) + " written";
    out.artifacts.push_back(csv_path.string());
    out.artifacts.push_back(meta_path.string());
    return out;
}

/// catalog-info: report the maximal domain attached to a space.
inline JobOutcome run_catalog_info(const Json& job, const RunOptions& opts) {
    SpaceSpec space = detail::space_from_json(detail::require_field(job, "space"));
    MaximalDomainSpec domain = maximal_domain(space);

    Json doc;
    doc["command"] = "catalog-info";
    detail::echo_seed(job, doc);
    doc["space"] = detail::space_to_json(space);
    Json dj;
    dj["kind"] = to_string(domain.kind);
    dj["band"] = domain.band;
    if (domain.kind == DomainKind::DiskUnionArcs) {
        Json arcs = Json::array();
        for (const auto& a : domain.arcs)
            arcs.push_back({{"center", a.center}, {"half_width", a.half_width}});
        dj["arcs"] = std::move(arcs);
    }
    doc["maximal_domain"] = std::move(dj);
    doc["envelope_equals_maximal_domain"] = true;
    doc["envelope_equality_conjectural"] = domain.envelope_equal_conjectural;

    auto path = detail::resolve_artifact(opts, job.value("output", "catalog.json"));
    detail::write_text(path, doc.dump(2) + "\n");

    JobOutcome out;
    out.message = space.name() + " maximal domain: " + to_string(domain.kind);
    if (domain.envelope_equal_conjectural) out.message += " (envelope equality conjectural)";
    out.artifacts.push_back(path.string());
    return out;
}

inline JobOutcome run_job(const Json& job, const RunOptions& opts) {
    std::string command = detail::require_field(job, "command").get<std::string>();
    if (command == "check-cyclic") return run_check_cyclic(job, opts);
    if (command == "scan-maxdomain") return run_scan_maxdomain(job, opts);
    if (command == "gram-dump") return run_gram_dump(job, opts);
    if (command == "catalog-info") return run_catalog_info(job, opts);
    throw Error("unknown job command '" + command + "'");
}

inline Json load_json_file(const std::string& path, const char* what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(std::string("cannot read ") + what + " '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed ") + what + " '" + path + "': " + e.what(),
                         e.byte);
    }
}

inline JobOutcome run_job_file(const std::string& path, const RunOptions& opts) {
    return run_job(load_json_file(path, "job file"), opts);
}

/// Replays the witness checks stored in a check-cyclic certificate without
/// rerunning the pipeline: a negative verdict must carry a point of the
/// closed polydisk where every family member vanishes, and an exact witness
/// must annihilate the family in exact arithmetic.
inline JobOutcome verify_certificate(const std::string& path) {
    Json doc = load_json_file(path, "certificate");
    if (doc.value("command", "") != "check-cyclic")
        throw Error("certificate does not carry a replayable verdict");

    SpaceSpec space = detail::space_from_json(detail::require_field(doc, "space"));
    std::vector<MultiPolynomial> family;
    for (const Json& t : detail::require_field(doc, "input"))
        family.push_back(parse_polynomial(t.get<std::string>(), space.dim));
    if (family.empty()) throw Error("certificate lists no polynomials");

    std::string status = detail::require_field(doc, "status").get<std::string>();
    bool negative = status == "NotCyclic" || status == "NotJointlyCyclic";
    bool known = negative || status == "Cyclic" || status == "JointlyCyclic" ||
                 status == "Uncertain";
    if (!known) throw Error("certificate status '" + status + "' is unknown");

    int checked = 0;
    if (doc.contains("witness")) {
        if (!negative) throw Error("only negative verdicts carry witnesses");
        std::vector<std::complex<double>> w;
        for (const Json& c : doc.at("witness"))
            w.emplace_back(c.at(0).get<double>(), c.at(1).get<double>());
        if (static_cast<int>(w.size()) != space.dim)
            throw Error("witness dimension does not match the space");
        for (const auto& c : w)
            if (std::abs(c) > 1.0 + 1e-6) throw Error("witness escapes the closed polydisk");
        for (const auto& f : family) {
            double scale = 0.0;
            for (const auto& [e, c] : f.terms())
                scale = std::max(scale, std::abs(c.to_complex_double()));
            if (std::abs(f.evaluate<std::complex<double>>(w)) > 1e-6 * std::max(scale, 1.0))
                throw Error("witness fails to annihilate the family");
        }
        ++checked;
    }
    if (doc.contains("exact_witness")) {
        if (!negative) throw Error("only negative verdicts carry witnesses");
        std::vector<GaussianRational> w;
        for (const Json& c : doc.at("exact_witness"))
            w.emplace_back(Rational(c.at(0).get<std::string>()),
                           Rational(c.at(1).get<std::string>()));
        if (static_cast<int>(w.size()) != space.dim)
            throw Error("exact witness dimension does not match the space");
        const Rational one(1);
        for (const auto& c : w)
            if (c.norm_sq() > one) throw Error("exact witness escapes the closed polydisk");
        for (const auto& f : family)
            if (!f.evaluate<GaussianRational>(w).is_zero())
                throw Error("exact witness is not a zero of the family");
        ++checked;
    }
    if (negative && checked == 0) throw Error("negative verdict carries no witness to replay");

    JobOutcome out;
    out.message = "certificate verified: " + status +
                  (checked ? "" : " (no witness checks to replay)");
    return out;
}

}  // namespace cycdom
