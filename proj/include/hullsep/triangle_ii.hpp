#ifndef HULLSEP_TRIANGLE_II_HPP
#define HULLSEP_TRIANGLE_II_HPP

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "state.hpp"
#include "triangle_i.hpp"

namespace hullsep {

// Evaluates the support points of both bodies against the bisector of the
// current pair and derives the distance lower bound and the per-side
// excesses that drive the refinement.
inline SupportGap support_gap(const ConvexBody& k, const ConvexBody& kp, const PairState& pair) {
    RunOptions opt;
    RunTrace scratch;
    NaivePairDriver drv(k, kp, pair, opt, scratch);
    return drv.support_gap();
}

enum class WeakStepOutcome { Moved, Converged };

// One refinement move on an explicit state: either the pair already meets
// the stopping rule or exactly one side steps toward its support point.
inline std::pair<WeakStepOutcome, PairState> weak_step(PairState pair, const ConvexBody& k,
                                                       const ConvexBody& kp, double eps,
                                                       double eps_abs = 0.0) {
    if (!(eps > 0.0 && eps < 1.0)) throw Error("weak_step: eps must lie in (0,1)");
    RunOptions opt;
    opt.eps = eps;
    RunTrace scratch;
    NaivePairDriver drv(k, kp, std::move(pair), opt, scratch);
    const SupportGap sg = drv.support_gap();
    if (sg.big_e <= eps * sg.rho || sg.big_e <= eps * sg.rho_prime || sg.big_e <= eps_abs)
        return {WeakStepOutcome::Converged, drv.take_state()};
    if (sg.e_v > 0.5 * eps * sg.rho) {
        drv.apply_weak(StepSide::K);
    } else if (sg.e_vp > 0.5 * eps * sg.rho_prime) {
        drv.apply_weak(StepSide::KPrime);
    } else {
        throw InvariantViolation(
            "weak_step: no side exceeds half its excess threshold although the total does: E=" +
            std::to_string(sg.big_e) + " E_v=" + std::to_string(sg.e_v) +
            " E_v'=" + std::to_string(sg.e_vp));
    }
    return {WeakStepOutcome::Moved, drv.take_state()};
}

namespace detail {

// Checks one refinement move against its contraction bound. The bound's
// derivation needs the driving excess at least ε·gap/2, so moves below that
// threshold are recorded but not audited against it; every move is still
// required to not increase the gap.
inline void audit_weak_step(const AppliedStep& s, const SupportGap& sg, double eps, double e_side,
                            double rho_side, RunTrace& trace) {
    ++trace.weak_steps;
    const double delta = s.gap_before;
    const bool applicable = e_side >= 0.5 * eps * delta;
    double bound = delta;
    bool ok = true;
    if (applicable) {
        ++trace.weak_steps_audited;
        double arg;
        if (rho_side >= delta) {
            const double ratio = eps * sg.lower / (2.0 * trace.rho_hat);
            arg = 1.0 - ratio * ratio;
        } else {
            arg = 1.0 - 0.25 * eps * eps;
        }
        bound = delta * std::sqrt(std::max(0.0, arg));
        const double slack = 1e-12 * delta + audit_fp_guard(s);
        ok = s.gap_after <= bound + slack;
    }
    if (s.gap_after > delta + audit_fp_guard(s)) ok = false;
    if (!ok) ++trace.weak_violations;
    if (trace.record_steps) {
        StepRecord rec;
        rec.iter = trace.iterations;
        rec.side = s.side;
        rec.pivot_index = s.pivot_index;
        rec.alpha = s.alpha;
        rec.gap_before = s.gap_before;
        rec.gap_after = s.gap_after;
        rec.weak = true;
        rec.contraction_case = 0;
        rec.bound = bound;
        rec.bound_applicable = applicable;
        rec.bound_ok = ok;
        trace.steps.push_back(std::move(rec));
    }
}

template <class Driver>
double run_loop_distance(Driver& drv, const RunOptions& opt, RunTrace& trace) {
    if (trace.gap_history.total_pushed() == 0) trace.gap_history.push(drv.gap());
    double lower_best = -std::numeric_limits<double>::infinity();
    for (;;) {
        const SupportGap sg = drv.support_gap();
        lower_best = std::max(lower_best, sg.lower);

        if (sg.big_e <= opt.eps * sg.rho || sg.big_e <= opt.eps * sg.rho_prime ||
            sg.big_e <= trace.eps_abs_resolved)
            return lower_best;

        if (trace.iterations >= trace.max_iter_resolved) {
            trace.termination = TerminationReason::MaxIter;
            throw MaxIterExceeded("distance: iteration limit " +
                                      std::to_string(trace.max_iter_resolved) + " reached",
                                  drv.take_state(), trace);
        }

        StepSide side;
        double e_side;
        double rho_side;
        if (sg.e_v > 0.5 * opt.eps * sg.rho) {
            side = StepSide::K;
            e_side = sg.e_v;
            rho_side = sg.rho;
        } else if (sg.e_vp > 0.5 * opt.eps * sg.rho_prime) {
            side = StepSide::KPrime;
            e_side = sg.e_vp;
            rho_side = sg.rho_prime;
        } else {
            throw InvariantViolation(
                "distance: no side exceeds half its excess threshold although the total does: "
                "E=" +
                std::to_string(sg.big_e) + " E_v=" + std::to_string(sg.e_v) +
                " E_v'=" + std::to_string(sg.e_vp));
        }
        const AppliedStep applied = drv.apply_weak(side);
        audit_weak_step(applied, sg, opt.eps, e_side, rho_side, trace);
        ++trace.iterations;
        trace.gap_history.push(applied.gap_after);

        // The move may readmit pivots; regain a separated pair before the
        // next support evaluation. A certified intersection here means the
        // caller's pair never separated the bodies to begin with.
        const LoopEnd inner = run_loop(drv, opt, trace, false);
        if (inner.outcome == LoopOutcome::Intersection)
            throw InvariantViolation(
                "distance: refinement reached an intersection certificate; the input pair does "
                "not separate the bodies");
    }
}

// Builds the certificate from the final pair, re-evaluating the support gap
// directly on its coordinates so every reported quantity is checkable
// against the pair alone.
inline DistanceCertificate assemble_distance_certificate(const ConvexBody& k,
                                                         const ConvexBody& kp, PairState pair,
                                                         double lower_best, RunTrace& trace) {
    const SupportGap sg = support_gap(k, kp, pair);
    trace.support_calls += 2;
    DistanceCertificate cert;
    cert.pair = std::move(pair);
    cert.delta = cert.pair.gap;
    cert.lower = sg.lower;
    cert.lower_best = std::max(lower_best, sg.lower);
    const Hyperplane h = bisector(cert.pair.p, cert.pair.p_prime);
    cert.h_v = Hyperplane{h.normal, dot(h.normal, sg.v)};
    cert.h_vp = Hyperplane{h.normal, dot(h.normal, sg.v_prime)};
    cert.v = sg.v;
    cert.v_prime = sg.v_prime;
    cert.rho = sg.rho;
    cert.rho_prime = sg.rho_prime;
    const double tau = kDegenerateTolAbs * (1.0 + norm(cert.pair.p) + norm(cert.pair.p_prime));
    double basis = std::numeric_limits<double>::infinity();
    if (sg.rho > tau) basis = sg.rho;
    if (sg.rho_prime > tau) basis = std::min(basis, sg.rho_prime);
    cert.eps_achieved = std::isfinite(basis) ? sg.big_e / basis : 0.0;
    trace.termination = TerminationReason::DistanceConverged;
    return cert;
}

template <class Driver>
void require_witness(Driver& drv, const RunTrace& trace) {
    if (drv.gap() <= trace.eps_abs_resolved)
        throw NotAWitness("distance: pair gap is zero within tolerance");
    if (drv.find(StepSide::K))
        throw NotAWitness("distance: the first body still admits a pivot");
    if (drv.find(StepSide::KPrime))
        throw NotAWitness("distance: the second body still admits a pivot");
}

inline void flag_distance_budget(const DistanceCertificate& cert, const RunOptions& opt,
                                 RunTrace& trace) {
    if (cert.lower_best <= 0.0) return;
    const double ratio = trace.rho_hat / cert.lower_best;
    const double budget =
        16.0 * ratio * ratio / (opt.eps * opt.eps) * std::max(1.0, std::log(ratio));
    if (static_cast<double>(trace.iterations) > budget) trace.budget_flagged = true;
}

}  // namespace detail

struct RunResultII {
    DistanceCertificate certificate;
    RunTrace trace;
};

// Refines a separating pair down to an ε-approximation of the distance
// between the bodies, together with the parallel supporting hyperplanes
// through the final support points.
inline RunResultII run_distance_naive(const ConvexBody& k, const ConvexBody& kp,
                                      PairState witness, const RunOptions& opt = {}) {
    if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw Error("distance: eps must lie in (0,1)");
    RunTrace trace;
    detail::resolve_limits(k, kp, opt, trace);
    NaivePairDriver drv(k, kp, std::move(witness), opt, trace);
    detail::require_witness(drv, trace);
    const double lower_best = detail::run_loop_distance(drv, opt, trace);
    DistanceCertificate cert =
        detail::assemble_distance_certificate(k, kp, drv.take_state(), lower_best, trace);
    detail::flag_distance_budget(cert, opt, trace);
    RunResultII out;
    out.certificate = std::move(cert);
    out.trace = std::move(trace);
    return out;
}

}  // namespace hullsep

#endif
