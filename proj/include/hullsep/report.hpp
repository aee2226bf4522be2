#ifndef HULLSEP_REPORT_HPP
#define HULLSEP_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "instance.hpp"
#include "oracles.hpp"
#include "state.hpp"
#include "triangle_ii.hpp"

namespace hullsep {

inline const char* strategy_token(PivotStrategy s) {
    switch (s) {
        case PivotStrategy::MaxViolation: return "max-violation";
        case PivotStrategy::FirstViolation: return "first-violation";
        case PivotStrategy::MinAngle: return "min-angle";
    }
    return "max-violation";
}

inline PivotStrategy parse_strategy(const std::string& s) {
    if (s == "max-violation") return PivotStrategy::MaxViolation;
    if (s == "first-violation") return PivotStrategy::FirstViolation;
    if (s == "min-angle") return PivotStrategy::MinAngle;
    throw ParseError("unknown pivot strategy \"" + s + "\"");
}

inline const char* engine_token(EngineChoice e) {
    switch (e) {
        case EngineChoice::Auto: return "auto";
        case EngineChoice::Naive: return "naive";
        case EngineChoice::Gram: return "gram";
    }
    return "auto";
}

inline EngineChoice parse_engine(const std::string& s) {
    if (s == "auto") return EngineChoice::Auto;
    if (s == "naive") return EngineChoice::Naive;
    if (s == "gram") return EngineChoice::Gram;
    throw ParseError("unknown engine \"" + s + "\"");
}

// Counter block copied out of a RunTrace; plain data so parsed reports carry
// it without reconstructing trace internals.
struct ReportCounters {
    std::size_t iterations = 0;
    std::size_t support_calls = 0;
    std::uint64_t arith_ops = 0;
    std::uint64_t precompute_ops = 0;
    std::size_t cache_refreshes = 0;
    std::size_t weak_steps = 0;
    std::size_t weak_steps_audited = 0;
    std::size_t contraction_violations = 0;
    std::size_t weak_violations = 0;
    bool budget_flagged = false;
    double rho_hat = 0.0;
    double eps_abs_resolved = 0.0;
    std::size_t max_iter_resolved = 0;
    std::string termination = "intersection";
};

struct RunReport {
    std::string command;
    std::string instance_name;
    RunOptions config;
    std::optional<CertificateI> intersect_cert;
    std::optional<DistanceCertificate> distance_cert;
    std::optional<PairState> best_pair;  // limit-exceeded runs only
    ReportCounters counters;
    std::vector<double> gap_history;
    std::size_t gap_stride = 1;
    double wall_ms = 0.0;  // the one field excluded from determinism checks
};

namespace detail {

inline ReportCounters counters_from_trace(const RunTrace& trace) {
    ReportCounters c;
    c.iterations = trace.iterations;
    c.support_calls = trace.support_calls;
    c.arith_ops = trace.arith_ops;
    c.precompute_ops = trace.precompute_ops;
    c.cache_refreshes = trace.cache_refreshes;
    c.weak_steps = trace.weak_steps;
    c.weak_steps_audited = trace.weak_steps_audited;
    c.contraction_violations = trace.contraction_violations;
    c.weak_violations = trace.weak_violations;
    c.budget_flagged = trace.budget_flagged;
    c.rho_hat = trace.rho_hat;
    c.eps_abs_resolved = trace.eps_abs_resolved;
    c.max_iter_resolved = trace.max_iter_resolved;
    c.termination = termination_name(trace.termination);
    return c;
}

inline void fill_common(RunReport& rep, std::string command, std::string instance_name,
                        const RunOptions& opt, const RunTrace& trace, double wall_ms) {
    rep.command = std::move(command);
    rep.instance_name = std::move(instance_name);
    rep.config = opt;
    rep.counters = counters_from_trace(trace);
    rep.gap_history = trace.gap_history.values();
    rep.gap_stride = trace.gap_history.stride();
    rep.wall_ms = wall_ms;
}

}  // namespace detail

inline RunReport make_report(std::string command, std::string instance_name,
                             const RunOptions& opt, const CertificateI& cert,
                             const RunTrace& trace, double wall_ms) {
    RunReport rep;
    detail::fill_common(rep, std::move(command), std::move(instance_name), opt, trace, wall_ms);
    rep.intersect_cert = cert;
    return rep;
}

inline RunReport make_report(std::string command, std::string instance_name,
                             const RunOptions& opt, const DistanceCertificate& cert,
                             const RunTrace& trace, double wall_ms) {
    RunReport rep;
    detail::fill_common(rep, std::move(command), std::move(instance_name), opt, trace, wall_ms);
    rep.distance_cert = cert;
    return rep;
}

inline RunReport make_limit_report(std::string command, std::string instance_name,
                                   const RunOptions& opt, const MaxIterExceeded& e,
                                   double wall_ms) {
    RunReport rep;
    detail::fill_common(rep, std::move(command), std::move(instance_name), opt, e.trace, wall_ms);
    rep.best_pair = e.best;
    return rep;
}

namespace detail {

inline void write_opt_vec(std::string& out, const char* key, const std::optional<Vec>& v,
                          const std::string& indent) {
    if (!v) return;
    out += indent + "\"" + key + "\": ";
    write_vec(out, *v);
    out += ",\n";
}

inline void write_pair_fields(std::string& out, const PairState& pair,
                              const std::string& indent) {
    out += indent + "\"p\": ";
    write_vec(out, pair.p);
    out += ",\n" + indent + "\"p_prime\": ";
    write_vec(out, pair.p_prime);
    out += ",\n" + indent + "\"gap\": ";
    write_number(out, pair.gap);
    out += ",\n";
    write_opt_vec(out, "last_pivot_k", pair.last_pivot_k, indent);
    write_opt_vec(out, "last_pivot_kp", pair.last_pivot_kp, indent);
    write_opt_vec(out, "coeffs_k", pair.coeffs_k, indent);
    write_opt_vec(out, "coeffs_kp", pair.coeffs_kp, indent);
}

inline void write_plane(std::string& out, const Hyperplane& h) {
    out += "{\"normal\": ";
    write_vec(out, h.normal);
    out += ", \"offset\": ";
    write_number(out, h.offset);
    out += "}";
}

inline Vec parse_plane_normal(const nlohmann::json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("normal") || !j.contains("offset"))
        throw ParseError(where + ": expected {normal, offset}");
    return parse_vec(j.at("normal"), where + ".normal");
}

inline Hyperplane parse_plane(const nlohmann::json& j, const std::string& where) {
    Hyperplane h;
    h.normal = parse_plane_normal(j, where);
    h.offset = j.at("offset").get<double>();
    return h;
}

inline PairState parse_pair_fields(const nlohmann::json& j, const std::string& where) {
    PairState pair;
    pair.p = parse_vec(j.at("p"), where + ".p");
    pair.p_prime = parse_vec(j.at("p_prime"), where + ".p_prime");
    pair.gap = j.at("gap").get<double>();
    if (j.contains("last_pivot_k"))
        pair.last_pivot_k = parse_vec(j.at("last_pivot_k"), where + ".last_pivot_k");
    if (j.contains("last_pivot_kp"))
        pair.last_pivot_kp = parse_vec(j.at("last_pivot_kp"), where + ".last_pivot_kp");
    if (j.contains("coeffs_k")) pair.coeffs_k = parse_vec(j.at("coeffs_k"), where + ".coeffs_k");
    if (j.contains("coeffs_kp"))
        pair.coeffs_kp = parse_vec(j.at("coeffs_kp"), where + ".coeffs_kp");
    return pair;
}

}  // namespace detail

inline std::string emit_report(const RunReport& rep) {
    using detail::write_number;
    using detail::write_vec;
    std::string out = "{\n  \"command\": ";
    detail::write_escaped(out, rep.command);
    out += ",\n  \"instance\": ";
    detail::write_escaped(out, rep.instance_name);
    out += ",\n  \"config\": {\n    \"eps\": ";
    write_number(out, rep.config.eps);
    if (rep.config.eps_abs) {
        out += ",\n    \"eps_abs\": ";
        write_number(out, *rep.config.eps_abs);
    }
    if (rep.config.max_iter) out += ",\n    \"max_iter\": " + std::to_string(*rep.config.max_iter);
    out += ",\n    \"strategy\": \"";
    out += strategy_token(rep.config.strategy);
    out += "\",\n    \"engine\": \"";
    out += engine_token(rep.config.engine);
    out += "\",\n    \"seed\": " + std::to_string(rep.config.seed);
    out += ",\n    \"alternate_sides\": ";
    out += rep.config.alternate_sides ? "true" : "false";
    out += ",\n    \"exact_diameter\": ";
    out += rep.config.exact_diameter ? "true" : "false";
    out += "\n  }";

    if (rep.intersect_cert) {
        const CertificateI& c = *rep.intersect_cert;
        out += ",\n  \"certificate\": {\n    \"kind\": \"";
        out += c.kind == CertKind::Intersection ? "intersection" : "witness";
        out += "\",\n";
        detail::write_pair_fields(out, c.pair, "    ");
        if (c.separator) {
            out += "    \"separator\": ";
            detail::write_plane(out, *c.separator);
            out += ",\n";
        }
        out += "    \"relative_gap_basis\": ";
        write_number(out, c.relative_gap_basis);
        if (c.basis_side) {
            out += ",\n    \"basis_side\": \"";
            out += side_name(*c.basis_side);
            out += "\"";
        }
        out += "\n  }";
    } else if (rep.distance_cert) {
        const DistanceCertificate& c = *rep.distance_cert;
        out += ",\n  \"certificate\": {\n    \"kind\": \"distance\",\n";
        detail::write_pair_fields(out, c.pair, "    ");
        out += "    \"delta\": ";
        write_number(out, c.delta);
        out += ",\n    \"lower\": ";
        write_number(out, c.lower);
        out += ",\n    \"lower_best\": ";
        write_number(out, c.lower_best);
        out += ",\n    \"h_v\": ";
        detail::write_plane(out, c.h_v);
        out += ",\n    \"h_vp\": ";
        detail::write_plane(out, c.h_vp);
        out += ",\n    \"v\": ";
        write_vec(out, c.v);
        out += ",\n    \"v_prime\": ";
        write_vec(out, c.v_prime);
        out += ",\n    \"eps_achieved\": ";
        write_number(out, c.eps_achieved);
        out += ",\n    \"rho\": ";
        write_number(out, c.rho);
        out += ",\n    \"rho_prime\": ";
        write_number(out, c.rho_prime);
        out += "\n  }";
    } else if (rep.best_pair) {
        out += ",\n  \"best_pair\": {\n";
        detail::write_pair_fields(out, *rep.best_pair, "    ");
        out.erase(out.size() - 2);  // drop the trailing ",\n" of the last pair field
        out += "\n  }";
    }

    const ReportCounters& k = rep.counters;
    out += ",\n  \"counters\": {\n";
    out += "    \"iterations\": " + std::to_string(k.iterations);
    out += ",\n    \"support_calls\": " + std::to_string(k.support_calls);
    out += ",\n    \"arith_ops\": " + std::to_string(k.arith_ops);
    out += ",\n    \"precompute_ops\": " + std::to_string(k.precompute_ops);
    out += ",\n    \"cache_refreshes\": " + std::to_string(k.cache_refreshes);
    out += ",\n    \"weak_steps\": " + std::to_string(k.weak_steps);
    out += ",\n    \"weak_steps_audited\": " + std::to_string(k.weak_steps_audited);
    out += ",\n    \"contraction_violations\": " + std::to_string(k.contraction_violations);
    out += ",\n    \"weak_violations\": " + std::to_string(k.weak_violations);
    out += ",\n    \"budget_flagged\": ";
    out += k.budget_flagged ? "true" : "false";
    out += ",\n    \"rho_hat\": ";
    write_number(out, k.rho_hat);
    out += ",\n    \"eps_abs_resolved\": ";
    write_number(out, k.eps_abs_resolved);
    out += ",\n    \"max_iter_resolved\": " + std::to_string(k.max_iter_resolved);
    out += ",\n    \"termination\": \"" + k.termination + "\"";
    out += "\n  },\n  \"gap_history\": {\"stride\": " + std::to_string(rep.gap_stride);
    out += ", \"values\": ";
    write_vec(out, rep.gap_history);
    out += "},\n  \"wall_ms\": ";
    write_number(out, rep.wall_ms);
    out += "\n}\n";
    return out;
}

inline RunReport parse_report_json(const nlohmann::json& j, const std::string& origin) {
    if (!j.is_object()) throw ParseError(origin + ": expected a top-level object");
    RunReport rep;
    try {
        rep.command = j.at("command").get<std::string>();
        rep.instance_name = j.at("instance").get<std::string>();
        const auto& cfg = j.at("config");
        rep.config.eps = cfg.at("eps").get<double>();
        if (cfg.contains("eps_abs")) rep.config.eps_abs = cfg.at("eps_abs").get<double>();
        if (cfg.contains("max_iter")) rep.config.max_iter = cfg.at("max_iter").get<std::size_t>();
        rep.config.strategy = parse_strategy(cfg.at("strategy").get<std::string>());
        rep.config.engine = parse_engine(cfg.at("engine").get<std::string>());
        rep.config.seed = cfg.at("seed").get<std::uint64_t>();
        rep.config.alternate_sides = cfg.at("alternate_sides").get<bool>();
        rep.config.exact_diameter = cfg.at("exact_diameter").get<bool>();

        if (j.contains("certificate")) {
            const auto& c = j.at("certificate");
            const std::string kind = c.at("kind").get<std::string>();
            if (kind == "intersection" || kind == "witness") {
                CertificateI cert;
                cert.kind = kind == "witness" ? CertKind::Witness : CertKind::Intersection;
                cert.pair = detail::parse_pair_fields(c, origin + ": certificate");
                if (c.contains("separator"))
                    cert.separator =
                        detail::parse_plane(c.at("separator"), origin + ": separator");
                cert.relative_gap_basis = c.at("relative_gap_basis").get<double>();
                if (c.contains("basis_side")) {
                    const std::string side = c.at("basis_side").get<std::string>();
                    if (side != "K" && side != "K'")
                        throw ParseError(origin + ": basis_side must be K or K'");
                    cert.basis_side = side == "K" ? StepSide::K : StepSide::KPrime;
                }
                rep.intersect_cert = std::move(cert);
            } else if (kind == "distance") {
                DistanceCertificate cert;
                cert.pair = detail::parse_pair_fields(c, origin + ": certificate");
                cert.delta = c.at("delta").get<double>();
                cert.lower = c.at("lower").get<double>();
                cert.lower_best = c.at("lower_best").get<double>();
                cert.h_v = detail::parse_plane(c.at("h_v"), origin + ": h_v");
                cert.h_vp = detail::parse_plane(c.at("h_vp"), origin + ": h_vp");
                cert.v = detail::parse_vec(c.at("v"), origin + ": v");
                cert.v_prime = detail::parse_vec(c.at("v_prime"), origin + ": v_prime");
                cert.eps_achieved = c.at("eps_achieved").get<double>();
                cert.rho = c.at("rho").get<double>();
                cert.rho_prime = c.at("rho_prime").get<double>();
                rep.distance_cert = std::move(cert);
            } else {
                throw ParseError(origin + ": unknown certificate kind \"" + kind + "\"");
            }
        }
        if (j.contains("best_pair"))
            rep.best_pair = detail::parse_pair_fields(j.at("best_pair"), origin + ": best_pair");

        const auto& k = j.at("counters");
        rep.counters.iterations = k.at("iterations").get<std::size_t>();
        rep.counters.support_calls = k.at("support_calls").get<std::size_t>();
        rep.counters.arith_ops = k.at("arith_ops").get<std::uint64_t>();
        rep.counters.precompute_ops = k.at("precompute_ops").get<std::uint64_t>();
        rep.counters.cache_refreshes = k.at("cache_refreshes").get<std::size_t>();
        rep.counters.weak_steps = k.at("weak_steps").get<std::size_t>();
        rep.counters.weak_steps_audited = k.at("weak_steps_audited").get<std::size_t>();
        rep.counters.contraction_violations = k.at("contraction_violations").get<std::size_t>();
        rep.counters.weak_violations = k.at("weak_violations").get<std::size_t>();
        rep.counters.budget_flagged = k.at("budget_flagged").get<bool>();
        rep.counters.rho_hat = k.at("rho_hat").get<double>();
        rep.counters.eps_abs_resolved = k.at("eps_abs_resolved").get<double>();
        rep.counters.max_iter_resolved = k.at("max_iter_resolved").get<std::size_t>();
        rep.counters.termination = k.at("termination").get<std::string>();

        const auto& gh = j.at("gap_history");
        rep.gap_stride = gh.at("stride").get<std::size_t>();
        rep.gap_history = detail::parse_vec(gh.at("values"), origin + ": gap_history.values");
        rep.wall_ms = j.at("wall_ms").get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(origin + ": " + e.what());
    }
    return rep;
}

inline RunReport parse_report(const std::string& path) {
    return parse_report_json(detail::load_json(path), path);
}

// One re-checked certificate claim: its measured residual and verdict.
struct VerifyCheck {
    std::string name;
    bool pass = false;
    double residual = 0.0;
    std::string note;
};

struct VerifyResult {
    std::vector<VerifyCheck> checks;

    bool all_pass() const {
        return std::all_of(checks.begin(), checks.end(),
                           [](const VerifyCheck& c) { return c.pass; });
    }

    std::vector<std::string> failures() const {
        std::vector<std::string> out;
        for (const auto& c : checks)
            if (!c.pass) out.push_back(c.name);
        return out;
    }
};

namespace detail {

inline void add_check(VerifyResult& res, std::string name, bool pass, double residual,
                      std::string note = "") {
    res.checks.push_back({std::move(name), pass, residual, std::move(note)});
}

inline double weights_residual(const std::vector<Vec>& points, const Vec& coeffs,
                               const Vec& target) {
    if (coeffs.size() != points.size()) return std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double min_c = 0.0;
    Vec combo(target.size(), 0.0);
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        sum += coeffs[i];
        min_c = std::min(min_c, coeffs[i]);
        for (std::size_t d = 0; d < combo.size(); ++d) combo[d] += coeffs[i] * points[i][d];
    }
    return std::max({dist(combo, target), std::abs(sum - 1.0), -min_c});
}

inline void check_pair(VerifyResult& res, const Instance& inst, const PairState& pair,
                       const std::string& prefix) {
    const double tol = 1e-9;
    add_check(res, prefix + "p-in-K", inst.k.contains(pair.p, tol), 0.0);
    add_check(res, prefix + "p-prime-in-K-prime", inst.k_prime.contains(pair.p_prime, tol), 0.0);

    const double gap_dev = std::abs(pair.gap - dist(pair.p, pair.p_prime));
    add_check(res, prefix + "gap-matches-pair", gap_dev <= 1e-9 * (1.0 + pair.gap), gap_dev);

    if (pair.coeffs_k && inst.k.as_point_set()) {
        const double r = weights_residual(inst.k.as_point_set()->points(), *pair.coeffs_k, pair.p);
        add_check(res, prefix + "weights-reconstruct-p", r <= 1e-9 * (1.0 + norm(pair.p)), r);
    }
    if (pair.coeffs_kp && inst.k_prime.as_point_set()) {
        const double r = weights_residual(inst.k_prime.as_point_set()->points(),
                                          *pair.coeffs_kp, pair.p_prime);
        add_check(res, prefix + "weights-reconstruct-p-prime",
                  r <= 1e-9 * (1.0 + norm(pair.p_prime)), r);
    }
}

// Oracle resolution coarse enough to keep verification interactive; the grid
// error bound scales with it, so looser grids only loosen the check honestly.
inline double oracle_resolution(std::size_t n, std::size_t np) {
    const std::size_t big = std::max(n, np);
    if (big <= 2) return 1e-3;
    if (big <= 3) return 1e-2;
    return 0.05;
}

struct OracleView {
    double value = 0.0;   // upper bound on the true distance
    double error = 0.0;   // value may overshoot the true distance by at most this
    bool exact_zero_possible = false;
    bool available = false;
};

inline OracleView oracle_distance(const Instance& inst) {
    OracleView out;
    const auto* ps = inst.k.as_point_set();
    const auto* psp = inst.k_prime.as_point_set();
    if (ps && psp && ps->points().size() <= 4 && psp->points().size() <= 4) {
        const double res = oracle_resolution(ps->points().size(), psp->points().size());
        const OracleResult g = grid_distance(ps->points(), psp->points(), res);
        double rho_hat = 0.0;
        for (const auto& a : ps->points())
            for (const auto& b : ps->points()) rho_hat = std::max(rho_hat, dist(a, b));
        for (const auto& a : psp->points())
            for (const auto& b : psp->points()) rho_hat = std::max(rho_hat, dist(a, b));
        out.value = g.value;
        out.error = rho_hat * res;
        out.exact_zero_possible = hulls_intersect_lp(ps->points(), psp->points());
        out.available = true;
        return out;
    }
    const auto* ba = inst.k.as_ball();
    const auto* bb = inst.k_prime.as_ball();
    if (ba && bb) {
        out.value = ball_distance(*ba, *bb).value;
        out.error = 0.0;
        out.exact_zero_possible = out.value <= 0.0;
        out.available = true;
    }
    return out;
}

}  // namespace detail

// Re-checks every claim a report makes against the instance it was computed
// from: membership of the pair, witness separation via fresh support calls,
// stop tests under the embedded config, hyperplane contact and the
// lower-bound sandwich for distance certificates, and agreement with the
// brute-force or analytic oracle when the instance is small enough for one.
inline VerifyResult verify_report(const Instance& inst, const RunReport& rep) {
    VerifyResult res;
    const double eps = rep.config.eps;
    const double eps_abs = rep.counters.eps_abs_resolved;

    if (!rep.intersect_cert && !rep.distance_cert) {
        if (rep.best_pair) {
            detail::check_pair(res, inst, *rep.best_pair, "best-");
        } else {
            detail::add_check(res, "certificate-present", false, 0.0,
                              "report carries neither a certificate nor a best pair");
        }
        return res;
    }

    if (rep.intersect_cert) try {
        const CertificateI& cert = *rep.intersect_cert;
        detail::check_pair(res, inst, cert.pair, "");

        if (cert.kind == CertKind::Witness) {
            if (!cert.separator) {
                detail::add_check(res, "separator-present", false, 0.0);
                return res;
            }
            const Hyperplane want = bisector(cert.pair.p, cert.pair.p_prime);
            const double dev =
                std::max(dist(cert.separator->normal, want.normal),
                         std::abs(cert.separator->offset - want.offset));
            const double scale = 1.0 + norm(want.normal) + std::abs(want.offset);
            detail::add_check(res, "separator-is-pair-bisector", dev <= 1e-9 * scale, dev);

            const Vec& h = cert.separator->normal;
            const double a = cert.separator->offset;
            const double min_k = -inst.k.support(scaled(h, -1.0)).value;
            const double max_kp = inst.k_prime.support(h).value;
            detail::add_check(res, "witness-margin-K", min_k - a > 0.0, min_k - a,
                              "min over K of h^T x minus offset");
            detail::add_check(res, "witness-margin-K-prime", a - max_kp > 0.0, a - max_kp,
                              "offset minus max over K' of h^T x");
        } else {
            const double slack = 1e-9 * (1.0 + cert.pair.gap);
            if (cert.basis_side) {
                const auto& pivot = *cert.basis_side == StepSide::K ? cert.pair.last_pivot_k
                                                                    : cert.pair.last_pivot_kp;
                if (!pivot) {
                    detail::add_check(res, "stop-basis-pivot-present", false, 0.0);
                } else {
                    const Vec& iter = *cert.basis_side == StepSide::K ? cert.pair.p
                                                                      : cert.pair.p_prime;
                    const double basis = dist(iter, *pivot);
                    const double dev = std::abs(basis - cert.relative_gap_basis);
                    detail::add_check(res, "stop-basis-rederives", dev <= 1e-9 * (1.0 + basis),
                                      dev);
                    detail::add_check(res, "intersection-stop",
                                      cert.pair.gap <= eps * basis + slack,
                                      cert.pair.gap - eps * basis);
                }
            } else {
                detail::add_check(res, "intersection-stop-absolute",
                                  cert.pair.gap <= eps_abs + slack, cert.pair.gap - eps_abs);
            }
        }
    } catch (const Error& e) {
        detail::add_check(res, "certificate-internally-consistent", false, 0.0, e.what());
    }

    if (rep.distance_cert) try {
        const DistanceCertificate& cert = *rep.distance_cert;
        detail::check_pair(res, inst, cert.pair, "");

        const double dtol = 1e-9 * (1.0 + cert.delta);
        const double delta_dev = std::abs(cert.delta - dist(cert.pair.p, cert.pair.p_prime));
        detail::add_check(res, "delta-is-pair-distance", delta_dev <= dtol, delta_dev);

        detail::add_check(res, "sandwich-lower", cert.lower <= cert.delta + dtol,
                          cert.lower - cert.delta);
        detail::add_check(res, "sandwich-lower-best", cert.lower_best <= cert.delta + dtol,
                          cert.lower_best - cert.delta);
        detail::add_check(res, "lower-within-best", cert.lower <= cert.lower_best + dtol,
                          cert.lower - cert.lower_best);

        const SupportGap sg = support_gap(inst.k, inst.k_prime, cert.pair);
        const double sg_dev = std::max(
            {std::abs(sg.lower - cert.lower), dist(sg.v, cert.v),
             dist(sg.v_prime, cert.v_prime), std::abs(sg.rho - cert.rho),
             std::abs(sg.rho_prime - cert.rho_prime)});
        detail::add_check(res, "support-gap-rederives",
                          sg_dev <= 1e-9 * (1.0 + cert.delta + cert.rho + cert.rho_prime),
                          sg_dev);

        const Vec want_normal = sub(cert.pair.p, cert.pair.p_prime);
        const double normal_dev = std::max(dist(cert.h_v.normal, want_normal),
                                           dist(cert.h_vp.normal, want_normal));
        const double nscale = 1.0 + norm(want_normal);
        detail::add_check(res, "planes-normal-is-pair-difference",
                          normal_dev <= 1e-9 * nscale, normal_dev);

        const double hn = norm(cert.h_v.normal);
        const double contact_v = std::abs(dot(cert.h_v.normal, cert.v) - cert.h_v.offset);
        const double contact_vp =
            std::abs(dot(cert.h_vp.normal, cert.v_prime) - cert.h_vp.offset);
        const double cscale = 1e-9 * (1.0 + std::abs(cert.h_v.offset) +
                                      std::abs(cert.h_vp.offset));
        detail::add_check(res, "plane-contact-v", contact_v <= cscale, contact_v);
        detail::add_check(res, "plane-contact-v-prime", contact_vp <= cscale, contact_vp);

        if (hn > 0.0) {
            const double min_k = -inst.k.support(scaled(cert.h_v.normal, -1.0)).value;
            const double max_kp = inst.k_prime.support(cert.h_vp.normal).value;
            const double sup_tol = 1e-9 * (1.0 + std::abs(cert.h_v.offset) + hn);
            detail::add_check(res, "plane-supports-K", cert.h_v.offset - min_k <= sup_tol,
                              cert.h_v.offset - min_k, "offset minus min over K of h^T x");
            detail::add_check(res, "plane-supports-K-prime",
                              max_kp - cert.h_vp.offset <= sup_tol, max_kp - cert.h_vp.offset,
                              "max over K' of h^T x minus offset");

            const double plane_dist = (cert.h_v.offset - cert.h_vp.offset) / hn;
            const double pd_dev = std::abs(plane_dist - cert.lower);
            detail::add_check(res, "plane-distance-is-lower",
                              pd_dev <= 1e-12 * (1.0 + std::abs(cert.lower)), pd_dev);
        } else {
            detail::add_check(res, "planes-nondegenerate", false, hn);
        }

        const double big_e = sg.big_e;
        const double basis = std::max(sg.rho, sg.rho_prime);
        const bool stop_ok = big_e <= eps * basis * (1.0 + 1e-9) + 1e-9 ||
                             big_e <= eps_abs * (1.0 + 1e-9) + 1e-15;
        detail::add_check(res, "distance-stop", stop_ok, big_e - eps * basis);
    } catch (const Error& e) {
        detail::add_check(res, "certificate-internally-consistent", false, 0.0, e.what());
    }

    const detail::OracleView oracle = detail::oracle_distance(inst);
    if (oracle.available) {
        if (rep.intersect_cert && rep.intersect_cert->kind == CertKind::Witness) {
            const double gap = rep.intersect_cert->pair.gap;
            detail::add_check(res, "oracle-agrees-disjoint", !oracle.exact_zero_possible, 0.0);
            detail::add_check(res, "oracle-gap-at-least-distance",
                              gap >= oracle.value - oracle.error - 1e-9 * (1.0 + gap),
                              gap - oracle.value);
            detail::add_check(res, "oracle-gap-within-factor-two",
                              gap <= 2.0 * oracle.value + 1e-9 * (1.0 + gap),
                              gap - 2.0 * oracle.value);
        }
        if (rep.intersect_cert && rep.intersect_cert->kind == CertKind::Intersection) {
            const double gap = rep.intersect_cert->pair.gap;
            detail::add_check(res, "oracle-distance-below-gap",
                              oracle.value - oracle.error <= gap + 1e-9 * (1.0 + gap),
                              oracle.value - gap);
        }
        if (rep.distance_cert) {
            const DistanceCertificate& cert = *rep.distance_cert;
            const double dev = std::abs(cert.delta - oracle.value);
            detail::add_check(res, "oracle-distance-agrees",
                              dev <= eps * cert.delta + oracle.error +
                                     1e-9 * (1.0 + cert.delta),
                              dev);
            detail::add_check(res, "oracle-bounds-lower",
                              cert.lower_best <= oracle.value + 1e-9 * (1.0 + oracle.value),
                              cert.lower_best - oracle.value);
        }
    }
    return res;
}

inline void require_verified(const Instance& inst, const RunReport& rep) {
    const VerifyResult res = verify_report(inst, rep);
    if (res.all_pass()) return;
    std::string what = "report verification failed:";
    for (const auto& name : res.failures()) what += " " + name;
    throw VerificationFailed(what);
}

}  // namespace hullsep

#endif
