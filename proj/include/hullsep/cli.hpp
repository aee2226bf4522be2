#ifndef HULLSEP_CLI_HPP
#define HULLSEP_CLI_HPP

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "gram.hpp"
#include "instance.hpp"
#include "report.hpp"

namespace hullsep {
namespace cli {

inline int log_level() {
    static const int lvl = [] {
        const char* v = std::getenv("HULLSEP_LOG");
        if (v == nullptr) return 0;
        const std::string s(v);
        if (s == "debug") return 2;
        if (s == "info") return 1;
        if (s != "off")
            std::cerr << "hullsep: ignoring unknown HULLSEP_LOG value \"" << s << "\"\n";
        return 0;
    }();
    return lvl;
}

inline void log_info(const std::string& msg) {
    if (log_level() >= 1) std::cerr << "hullsep: " << msg << "\n";
}

inline void log_debug(const std::string& msg) {
    if (log_level() >= 2) std::cerr << "hullsep: " << msg << "\n";
}

inline std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open " + path + " for writing");
    out << content;
    out.flush();
    if (!out) throw Error("failed while writing " + path);
}

inline std::string gap_history_csv(const RunReport& rep) {
    std::string out = "iteration,gap\n";
    for (std::size_t i = 0; i < rep.gap_history.size(); ++i) {
        out += std::to_string(i * rep.gap_stride);
        out += ',';
        out += fmt(rep.gap_history[i]);
        out += '\n';
    }
    return out;
}

inline RunTrace merge_traces(const RunTrace& first, RunTrace second) {
    second.iterations += first.iterations;
    second.support_calls += first.support_calls;
    second.arith_ops += first.arith_ops;
    second.precompute_ops += first.precompute_ops;
    second.cache_refreshes += first.cache_refreshes;
    second.weak_steps += first.weak_steps;
    second.weak_steps_audited += first.weak_steps_audited;
    second.contraction_violations += first.contraction_violations;
    second.weak_violations += first.weak_violations;
    second.budget_flagged = second.budget_flagged || first.budget_flagged;
    return second;
}

struct CommandOutcome {
    int exit_code = 0;
    RunReport report;
};

// Runs the requested pipeline: intersect stops after the first phase, while
// distance and support continue into the refinement whenever the first phase
// ends with a witness. Iteration-limit overruns produce a best-so-far report
// and exit code 2 instead of an error.
inline CommandOutcome run_command(const std::string& command, const Instance& inst,
                                  const std::string& label, const RunOptions& opt) {
    namespace chrono = std::chrono;
    const auto t0 = chrono::steady_clock::now();
    const auto wall_ms = [&t0] {
        return chrono::duration<double, std::milli>(chrono::steady_clock::now() - t0).count();
    };

    try {
        RunResultI phase1 = run_intersect(inst.k, inst.k_prime, opt, inst.start);
        log_info("first phase: " +
                 std::string(phase1.certificate.kind == CertKind::Witness ? "witness"
                                                                          : "intersection") +
                 " after " + std::to_string(phase1.trace.iterations) + " iterations");
        if (command == "intersect" || phase1.certificate.kind == CertKind::Intersection)
            return {0, make_report(command, label, opt, phase1.certificate, phase1.trace,
                                   wall_ms())};

        try {
            RunResultII phase2 =
                run_distance(inst.k, inst.k_prime, phase1.certificate.pair, opt);
            log_info("refinement: delta=" + fmt(phase2.certificate.delta) + " lower=" +
                     fmt(phase2.certificate.lower) + " after " +
                     std::to_string(phase2.trace.iterations) + " iterations");
            const RunTrace merged = merge_traces(phase1.trace, std::move(phase2.trace));
            return {0, make_report(command, label, opt, phase2.certificate, merged, wall_ms())};
        } catch (const MaxIterExceeded& e) {
            log_info(std::string("refinement hit the iteration limit: ") + e.what());
            const MaxIterExceeded merged(e.what(), e.best,
                                         merge_traces(phase1.trace, e.trace));
            return {2, make_limit_report(command, label, opt, merged, wall_ms())};
        }
    } catch (const MaxIterExceeded& e) {
        log_info(std::string("first phase hit the iteration limit: ") + e.what());
        return {2, make_limit_report(command, label, opt, e, wall_ms())};
    }
}

inline void print_summary(std::ostream& os, const RunReport& rep) {
    const ReportCounters& k = rep.counters;
    if (rep.intersect_cert) {
        const CertificateI& c = *rep.intersect_cert;
        if (c.kind == CertKind::Intersection) {
            os << "intersection: gap=" << fmt(c.pair.gap)
               << " basis=" << fmt(c.relative_gap_basis);
        } else {
            os << "witness: gap=" << fmt(c.pair.gap);
            if (c.separator) os << " separator_offset=" << fmt(c.separator->offset);
        }
    } else if (rep.distance_cert) {
        const DistanceCertificate& c = *rep.distance_cert;
        if (rep.command == "support") {
            os << "support: margin=" << fmt(c.lower) << " delta=" << fmt(c.delta)
               << " offsets=(" << fmt(c.h_v.offset) << ", " << fmt(c.h_vp.offset) << ")";
        } else {
            os << "distance: delta=" << fmt(c.delta) << " lower=" << fmt(c.lower)
               << " eps_achieved=" << fmt(c.eps_achieved);
        }
    } else if (rep.best_pair) {
        os << "limit-exceeded: best_gap=" << fmt(rep.best_pair->gap);
    }
    os << " iterations=" << k.iterations << " support_calls=" << k.support_calls
       << " termination=" << k.termination << "\n";
}

inline int print_verification(std::ostream& os, const VerifyResult& res) {
    for (const VerifyCheck& c : res.checks) {
        os << (c.pass ? "PASS" : "FAIL") << "  " << c.name
           << "  residual=" << fmt(c.residual);
        if (!c.note.empty()) os << "  (" << c.note << ")";
        os << "\n";
    }
    const std::size_t failed = res.failures().size();
    os << "verification: " << res.checks.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? 0 : 1;
}

inline int run_bench(const Instance& inst, const std::string& label, RunOptions base,
                     std::ostream& os) {
    static constexpr double kEpsSweep[] = {1e-1, 1e-2, 1e-3};
    static constexpr PivotStrategy kStrategies[] = {
        PivotStrategy::MaxViolation, PivotStrategy::FirstViolation, PivotStrategy::MinAngle};
    int exit_code = 0;
    os << "instance,eps,strategy,iterations,support_calls,delta,lower,wall_ms\n";
    for (const double eps : kEpsSweep) {
        for (const PivotStrategy strategy : kStrategies) {
            RunOptions opt = base;
            opt.eps = eps;
            opt.strategy = strategy;
            const CommandOutcome out = run_command("distance", inst, label, opt);
            double delta = 0.0;
            double lower = 0.0;
            if (out.report.distance_cert) {
                delta = out.report.distance_cert->delta;
                lower = out.report.distance_cert->lower;
            } else if (out.report.intersect_cert) {
                delta = out.report.intersect_cert->pair.gap;
            } else if (out.report.best_pair) {
                delta = out.report.best_pair->gap;
                exit_code = 2;
            }
            os << label << ',' << fmt(eps) << ',' << strategy_token(strategy) << ','
               << out.report.counters.iterations << ',' << out.report.counters.support_calls
               << ',' << fmt(delta) << ',' << fmt(lower) << ',' << fmt(out.report.wall_ms)
               << "\n";
        }
    }
    return exit_code;
}

struct Flags {
    std::string instance_path;
    std::string report_path;
    std::string trace_path;
    double eps = 1e-3;
    std::size_t max_iter = 0;
    std::string strategy = "max-violation";
    std::uint64_t seed = 0;
    bool exact_diameter = false;
    bool alternate_sides = false;
};

inline RunOptions to_options(const Flags& f) {
    RunOptions opt;
    opt.eps = f.eps;
    if (f.max_iter > 0) opt.max_iter = f.max_iter;
    opt.strategy = parse_strategy(f.strategy);
    opt.seed = f.seed;
    opt.alternate_sides = f.alternate_sides;
    opt.exact_diameter = f.exact_diameter;
    return opt;
}

inline std::string instance_label(const Instance& inst, const std::string& path) {
    if (!inst.name.empty()) return inst.name;
    return std::filesystem::path(path).filename().string();
}

inline int run_cli(int argc, const char* const* argv) {
    CLI::App app{"Intersection, distance, and separating-margin certificates for convex bodies"};
    app.require_subcommand(1);
    Flags f;

    const auto add_run_flags = [&f](CLI::App* sub) {
        sub->add_option("--instance", f.instance_path, "instance file to solve")->required();
        sub->add_option("--eps", f.eps, "relative accuracy, in (0,1)");
        sub->add_option("--max-iter", f.max_iter, "iteration limit")
            ->check(CLI::PositiveNumber);
        sub->add_option("--pivot-strategy", f.strategy, "pivot selection rule")
            ->check(CLI::IsMember({"max-violation", "first-violation", "min-angle"}));
        sub->add_option("--seed", f.seed, "scan-order seed for first-violation");
        sub->add_option("--trace", f.trace_path, "write the gap history as CSV");
        sub->add_option("--report", f.report_path, "write the full run report");
        sub->add_flag("--exact-diameter", f.exact_diameter,
                      "compute exact point-set diameters instead of the 2x bound");
        sub->add_flag("--alternate-sides", f.alternate_sides,
                      "swap the per-iteration search order between the bodies");
    };

    CLI::App* cmd_intersect = app.add_subcommand(
        "intersect", "decide intersection or produce a separating witness");
    add_run_flags(cmd_intersect);
    CLI::App* cmd_distance =
        app.add_subcommand("distance", "approximate the distance between the bodies");
    add_run_flags(cmd_distance);
    CLI::App* cmd_support = app.add_subcommand(
        "support", "produce parallel supporting hyperplanes approximating the best margin");
    add_run_flags(cmd_support);
    CLI::App* cmd_bench =
        app.add_subcommand("bench", "sweep eps and pivot strategies, emit CSV");
    add_run_flags(cmd_bench);

    CLI::App* cmd_verify = app.add_subcommand("verify", "re-check a run report");
    cmd_verify->add_option("--instance", f.instance_path, "instance the report was run on")
        ->required();
    cmd_verify->add_option("--report", f.report_path, "report file to verify")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        if (app.got_subcommand(cmd_verify)) {
            const Instance inst = parse_instance(f.instance_path);
            const RunReport rep = parse_report(f.report_path);
            return print_verification(std::cout, verify_report(inst, rep));
        }

        if (!(f.eps > 0.0 && f.eps < 1.0)) {
            std::cerr << "hullsep: --eps must lie strictly between 0 and 1\n";
            return 3;
        }
        const Instance inst = parse_instance(f.instance_path);
        const std::string label = instance_label(inst, f.instance_path);
        log_debug("parsed instance \"" + label + "\", dimension " +
                  std::to_string(inst.k.dim()));

        if (app.got_subcommand(cmd_bench)) {
            if (f.report_path.empty()) return run_bench(inst, label, to_options(f), std::cout);
            std::string csv;
            {
                std::ostringstream os;
                const int code = run_bench(inst, label, to_options(f), os);
                csv = os.str();
                write_text_file(f.report_path, csv);
                return code;
            }
        }

        const std::string command = app.got_subcommand(cmd_intersect)
                                        ? "intersect"
                                        : app.got_subcommand(cmd_distance) ? "distance"
                                                                           : "support";
        const CommandOutcome out = run_command(command, inst, label, to_options(f));
        if (!f.report_path.empty()) write_text_file(f.report_path, emit_report(out.report));
        if (!f.trace_path.empty()) write_text_file(f.trace_path, gap_history_csv(out.report));
        print_summary(std::cout, out.report);

        if (out.exit_code == 0) {
            const VerifyResult self = verify_report(inst, out.report);
            if (!self.all_pass()) {
                std::cerr << "hullsep: certificate failed self-verification:";
                for (const auto& name : self.failures()) std::cerr << " " << name;
                std::cerr << "\n";
                return 4;
            }
            log_debug("self-verification passed " + std::to_string(self.checks.size()) +
                      " checks");
        }
        return out.exit_code;
    } catch (const ParseError& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const DimensionMismatch& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const EmptyBody& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const StartNotInBody& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleBody& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const UnboundedBody& e) {
        std::cerr << "hullsep: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "hullsep: internal error: " << e.what() << "\n";
        return 4;
    }
}

}  // namespace cli
}  // namespace hullsep

#endif
