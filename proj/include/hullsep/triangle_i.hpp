#ifndef HULLSEP_TRIANGLE_I_HPP
#define HULLSEP_TRIANGLE_I_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "state.hpp"

namespace hullsep {

inline constexpr std::size_t kMaxIterCap = 10000000;

struct PivotHit {
    Vec point;
    int index = -1;          // vertex index where the body has one
    double dist_mover = 0.0;   // distance from the iterate that will move
    double dist_anchor = 0.0;  // distance from the opposite iterate
};

struct AppliedStep {
    StepSide side = StepSide::K;
    double gap_before = 0.0;
    double gap_after = 0.0;
    double alpha = 0.0;
    double r = 0.0;          // d(stationary iterate, pivot)
    double b = 0.0;          // d(moving iterate, pivot), before the move
    double pivot_tol = 0.0;  // admission tolerance the pivot test used
    int pivot_index = -1;
    bool weak = false;
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

// Roundoff allowance for the audited quantities themselves, on top of the
// documented 1e-12·δ slack. Two effects dominate near the bound's equality
// configuration, which first-violation and min-angle pivots reach often:
// gaps far below the coordinate scale are extracted from products of that
// scale, amplifying absolute roundoff by scale²/gap, and a pivot admitted
// through the acceptance tolerance t can sit up to t·δ/(4r²) past the
// exact-pivot geometry the bound assumes.
inline double audit_fp_guard(const AppliedStep& s) {
    const double machine = 32.0 * std::numeric_limits<double>::epsilon();
    const double scale_sq =
        1.0 + s.r * s.r + s.b * s.b + s.gap_before * s.gap_before;
    double out = machine * (1.0 + s.r + s.b);
    out += machine * scale_sq / (2.0 * std::max(s.gap_after, 1e-300));
    if (s.r > 0.0) out += s.pivot_tol * s.gap_before / (4.0 * s.r * s.r);
    return out;
}

// Checks one pivot step against the applicable contraction bound. The case
// split keys on how the pivot sees the two iterates: with r the distance
// from the stationary iterate to the pivot and θ the angle at the pivot,
// the chord δ̄ = 2r·sin(θ/2) controls the three δ > r regimes.
inline void audit_pivot_step(const AppliedStep& s, RunTrace& trace) {
    const double delta = s.gap_before;
    const double r = s.r;
    int ccase;
    double bound;
    if (delta <= r) {
        ccase = 1;
        bound = delta * std::sqrt(std::max(0.0, 1.0 - delta * delta / (4.0 * r * r)));
    } else if (r <= 0.0 || s.b <= 0.0) {
        ccase = 4;  // pivot coincides with an iterate; the step lands on it
        bound = r;
    } else {
        double cosv = (s.b * s.b + r * r - delta * delta) / (2.0 * s.b * r);
        cosv = std::clamp(cosv, -1.0, 1.0);
        const double theta = std::acos(cosv);
        const double dbar = 2.0 * r * std::sin(0.5 * theta);
        if (theta <= std::numbers::pi / 3.0) {
            ccase = 2;
            bound = dbar * std::sqrt(std::max(0.0, 1.0 - dbar * dbar / (4.0 * r * r)));
        } else if (theta < std::numbers::pi / 2.0) {
            ccase = 3;
            bound = std::sqrt(3.0) / 2.0 * dbar;
        } else {
            ccase = 4;
            bound = r;
        }
    }
    const double slack = 1e-12 * delta + audit_fp_guard(s);
    const bool ok = s.gap_after <= bound + slack;
    if (!ok) ++trace.contraction_violations;
    if (trace.record_steps) {
        StepRecord rec;
        rec.iter = trace.iterations;
        rec.side = s.side;
        rec.pivot_index = s.pivot_index;
        rec.alpha = s.alpha;
        rec.gap_before = s.gap_before;
        rec.gap_after = s.gap_after;
        rec.weak = false;
        rec.contraction_case = ccase;
        rec.bound = bound;
        rec.bound_applicable = true;
        rec.bound_ok = ok;
        trace.steps.push_back(std::move(rec));
    }
}

}  // namespace detail

// Plain-oracle engine: every search and update goes through the body's
// support interface at full dimensional cost.
class NaivePairDriver {
  public:
    NaivePairDriver(const ConvexBody& k, const ConvexBody& kp, PairState st,
                    const RunOptions& opt, RunTrace& trace)
        : k_(k), kp_(kp), st_(std::move(st)), opt_(opt), trace_(trace), rng_(opt.seed) {
        st_.gap = dist(st_.p, st_.p_prime);
    }

    const PairState& state() const { return st_; }
    double gap() const { return st_.gap; }

    PairState take_state() { return std::move(st_); }

    std::optional<double> dist_to_last(StepSide side) const {
        const auto& lp = side == StepSide::K ? st_.last_pivot_k : st_.last_pivot_kp;
        if (!lp) return std::nullopt;
        return dist(side == StepSide::K ? st_.p : st_.p_prime, *lp);
    }

    std::optional<PivotHit> find(StepSide side) {
        const ConvexBody& body = side == StepSide::K ? k_ : kp_;
        const Vec& mover = side == StepSide::K ? st_.p : st_.p_prime;
        const Vec& anchor = side == StepSide::K ? st_.p_prime : st_.p;
        ++trace_.support_calls;

        const auto* ps = body.as_point_set();
        if (opt_.strategy == PivotStrategy::FirstViolation && ps != nullptr)
            return first_violation_scan(*ps, mover, anchor);
        if (opt_.strategy == PivotStrategy::MinAngle && ps != nullptr)
            return min_angle_scan(*ps, mover, anchor);

        trace_.arith_ops += body.support_cost();
        const SupportResult sr = body.support(sub(anchor, mover));
        if (!is_pivot(mover, anchor, sr.point)) return std::nullopt;
        PivotHit hit;
        hit.point = sr.point;
        hit.index = sr.witness_id.value_or(-1);
        hit.dist_mover = dist(mover, hit.point);
        hit.dist_anchor = dist(anchor, hit.point);
        trace_.arith_ops += 4 * body.dim();
        return hit;
    }

    AppliedStep apply(StepSide side, const PivotHit& hit, bool weak) {
        Vec& mover = side == StepSide::K ? st_.p : st_.p_prime;
        const Vec& anchor = side == StepSide::K ? st_.p_prime : st_.p;
        const SegmentStep step = nearest_on_segment(anchor, mover, hit.point);

        AppliedStep out;
        out.side = side;
        out.gap_before = st_.gap;
        out.alpha = step.alpha;
        out.r = hit.dist_anchor;
        out.b = hit.dist_mover;
        out.pivot_tol = kPivotTolRel * (1.0 + norm_sq(st_.p) + norm_sq(st_.p_prime));
        out.pivot_index = hit.index;
        out.weak = weak;

        auto& coeffs = side == StepSide::K ? st_.coeffs_k : st_.coeffs_kp;
        if (coeffs) {
            for (double& w : *coeffs) w *= 1.0 - step.alpha;
            if (hit.index >= 0) (*coeffs)[static_cast<std::size_t>(hit.index)] += step.alpha;
            trace_.arith_ops += coeffs->size();
        }
        mover = step.point;
        st_.gap = dist(st_.p, st_.p_prime);
        if (!weak) {
            auto& last = side == StepSide::K ? st_.last_pivot_k : st_.last_pivot_kp;
            last = hit.point;
        }
        ++st_.revision;
        trace_.arith_ops += 6 * st_.p.size();
        out.gap_after = st_.gap;
        return out;
    }

    SupportGap support_gap() {
        const Hyperplane h = bisector(st_.p, st_.p_prime);
        const double hnorm = st_.gap;
        trace_.support_calls += 2;
        trace_.arith_ops += k_.support_cost() + kp_.support_cost();

        const SupportResult low = k_.support(scaled(h.normal, -1.0));
        const SupportResult high = kp_.support(h.normal);
        SupportGap sg;
        sg.v = low.point;
        sg.v_prime = high.point;
        const double min_k = -low.value;      // min over K of hᵀx
        const double max_kp = high.value;     // max over K′ of hᵀx
        sg.delta_v = (min_k - h.offset) / hnorm;
        sg.delta_vp = (h.offset - max_kp) / hnorm;
        sg.lower = sg.delta_v + sg.delta_vp;
        sg.rho = dist(st_.p, sg.v);
        sg.rho_prime = dist(st_.p_prime, sg.v_prime);
        sg.e_v = 0.5 * st_.gap - sg.delta_v;
        sg.e_vp = 0.5 * st_.gap - sg.delta_vp;
        const double tau = kDegenerateTolAbs * (1.0 + norm(st_.p) + norm(st_.p_prime));
        if (sg.rho <= tau) sg.e_v = 0.0;        // v = p makes the excess exactly zero
        if (sg.rho_prime <= tau) sg.e_vp = 0.0;
        sg.big_e = sg.e_v + sg.e_vp;

        weak_k_ = PivotHit{sg.v, low.witness_id.value_or(-1), sg.rho, dist(st_.p_prime, sg.v)};
        weak_kp_ = PivotHit{sg.v_prime, high.witness_id.value_or(-1), sg.rho_prime,
                            dist(st_.p, sg.v_prime)};
        return sg;
    }

    // Applies the stored support point of the last support_gap() call as a
    // gap-reduction step on the given side.
    AppliedStep apply_weak(StepSide side) {
        return apply(side, side == StepSide::K ? weak_k_ : weak_kp_, true);
    }

    void materialize() {}

  private:
    std::optional<PivotHit> first_violation_scan(const PointSetBody& ps, const Vec& mover,
                                                 const Vec& anchor) {
        const std::size_t n = ps.size();
        scratch_order_.resize(n);
        for (std::size_t i = 0; i < n; ++i) scratch_order_[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = detail::splitmix64(rng_) % i;
            std::swap(scratch_order_[i - 1], scratch_order_[j]);
        }
        for (std::size_t idx : scratch_order_) {
            const Vec& v = ps.points()[idx];
            trace_.arith_ops += 3 * ps.dim();
            if (!is_pivot(mover, anchor, v)) continue;
            PivotHit hit;
            hit.point = v;
            hit.index = static_cast<int>(idx);
            hit.dist_mover = dist(mover, v);
            hit.dist_anchor = dist(anchor, v);
            return hit;
        }
        return std::nullopt;
    }

    std::optional<PivotHit> min_angle_scan(const PointSetBody& ps, const Vec& mover,
                                           const Vec& anchor) {
        // Among true pivots, prefer the one minimizing the angle at the
        // mover between the segment to the anchor and the segment to the
        // pivot: the step reduction is the distance to that pivot line.
        const double a2 = st_.gap * st_.gap;
        std::optional<std::size_t> best;
        double best_sin2 = 0.0;
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const Vec& v = ps.points()[i];
            trace_.arith_ops += 5 * ps.dim();
            if (!is_pivot(mover, anchor, v)) continue;
            const double b2 = dist_sq(mover, v);
            if (b2 <= 0.0) continue;
            const double c2 = dist_sq(anchor, v);
            const double num = a2 + b2 - c2;
            double sin2 = 1.0 - num * num / (4.0 * a2 * b2);
            if (sin2 < 0.0) sin2 = 0.0;
            if (!best || sin2 < best_sin2) {
                best = i;
                best_sin2 = sin2;
            }
        }
        if (!best) return std::nullopt;
        PivotHit hit;
        hit.point = ps.points()[*best];
        hit.index = static_cast<int>(*best);
        hit.dist_mover = dist(mover, hit.point);
        hit.dist_anchor = dist(anchor, hit.point);
        return hit;
    }

    const ConvexBody& k_;
    const ConvexBody& kp_;
    PairState st_;
    const RunOptions& opt_;
    RunTrace& trace_;
    std::uint64_t rng_;
    std::vector<std::size_t> scratch_order_;
    PivotHit weak_k_;
    PivotHit weak_kp_;
};

inline PairState initialize(const ConvexBody& k, const ConvexBody& kp,
                            const std::optional<std::pair<Vec, Vec>>& start = std::nullopt) {
    if (k.dim() != kp.dim()) throw DimensionMismatch("initialize: body dimensions differ");
    PairState st;

    auto weights_for = [](const ConvexBody& body, const Vec& x,
                          const char* which) -> std::optional<Vec> {
        const auto* ps = body.as_point_set();
        if (ps == nullptr) {
            if (!body.contains(x, kLpFeasTolRel))
                throw StartNotInBody(std::string("initialize: ") + which +
                                     " start point lies outside the body");
            return std::nullopt;
        }
        auto w = hull_membership(ps->points(), x);
        if (!w)
            throw StartNotInBody(std::string("initialize: ") + which +
                                 " start point lies outside the hull");
        return w;
    };

    if (start) {
        if (start->first.size() != k.dim() || start->second.size() != kp.dim())
            throw DimensionMismatch("initialize: start point dimensions");
        st.coeffs_k = weights_for(k, start->first, "first");
        st.coeffs_kp = weights_for(kp, start->second, "second");
        st.p = start->first;
        st.p_prime = start->second;
        st.gap = dist(st.p, st.p_prime);
        return st;
    }

    auto nearest_vertex = [](const PointSetBody& ps, const Vec& q) {
        std::size_t best = 0;
        double bd = dist_sq(ps.points()[0], q);
        for (std::size_t i = 1; i < ps.size(); ++i) {
            const double d = dist_sq(ps.points()[i], q);
            if (d < bd) {
                bd = d;
                best = i;
            }
        }
        return best;
    };
    auto basis_weights = [](std::size_t n, std::size_t idx) {
        Vec w(n, 0.0);
        w[idx] = 1.0;
        return w;
    };
    auto uniform_weights = [](std::size_t n) { return Vec(n, 1.0 / static_cast<double>(n)); };

    // Singleton opposite a point set: start at the nearest vertex.
    if (kp.is_singleton() && k.as_point_set() != nullptr) {
        const auto* ps = k.as_point_set();
        st.p_prime = kp.as_point_set()->points()[0];
        st.coeffs_kp = basis_weights(1, 0);
        const std::size_t idx = nearest_vertex(*ps, st.p_prime);
        st.p = ps->points()[idx];
        st.coeffs_k = basis_weights(ps->size(), idx);
        st.gap = dist(st.p, st.p_prime);
        return st;
    }
    if (k.is_singleton() && kp.as_point_set() != nullptr) {
        const auto* ps = kp.as_point_set();
        st.p = k.as_point_set()->points()[0];
        st.coeffs_k = basis_weights(1, 0);
        const std::size_t idx = nearest_vertex(*ps, st.p);
        st.p_prime = ps->points()[idx];
        st.coeffs_kp = basis_weights(ps->size(), idx);
        st.gap = dist(st.p, st.p_prime);
        return st;
    }

    const Vec ref_k = k.reference_point();
    const Vec ref_kp = kp.reference_point();
    const double tau = kDegenerateTolAbs * (1.0 + norm(ref_k) + norm(ref_kp));

    if (dist(ref_k, ref_kp) <= tau) {
        // Coinciding reference points certify intersection outright.
        st.p = ref_k;
        st.p_prime = ref_kp;
        if (const auto* ps = k.as_point_set()) st.coeffs_k = uniform_weights(ps->size());
        if (const auto* ps = kp.as_point_set()) st.coeffs_kp = uniform_weights(ps->size());
        st.gap = dist(st.p, st.p_prime);
        return st;
    }

    const SupportResult sk = k.support(sub(ref_kp, ref_k));
    st.p = sk.point;
    if (const auto* ps = k.as_point_set())
        st.coeffs_k = basis_weights(ps->size(), static_cast<std::size_t>(sk.witness_id.value()));

    const Vec dir_kp = sub(st.p, ref_kp);
    if (norm(dir_kp) <= tau) {
        st.p_prime = ref_kp;
        if (const auto* ps = kp.as_point_set()) st.coeffs_kp = uniform_weights(ps->size());
    } else {
        const SupportResult skp = kp.support(dir_kp);
        st.p_prime = skp.point;
        if (const auto* ps = kp.as_point_set())
            st.coeffs_kp =
                basis_weights(ps->size(), static_cast<std::size_t>(skp.witness_id.value()));
    }
    st.gap = dist(st.p, st.p_prime);
    return st;
}

struct RunResultI {
    CertificateI certificate;
    RunTrace trace;
};

namespace detail {

inline double resolve_rho_hat(const ConvexBody& k, const ConvexBody& kp, const RunOptions& opt) {
    auto one = [&](const ConvexBody& body) {
        if (opt.exact_diameter) {
            if (const auto* ps = body.as_point_set()) return ps->exact_diameter();
        }
        return body.diameter_bound();
    };
    return std::max(one(k), one(kp));
}

inline void resolve_limits(const ConvexBody& k, const ConvexBody& kp, const RunOptions& opt,
                           RunTrace& trace) {
    trace.record_steps = opt.record_steps;
    trace.rho_hat = resolve_rho_hat(k, kp, opt);
    trace.eps_abs_resolved = opt.eps_abs.value_or(1e-12 * trace.rho_hat);
    if (opt.max_iter) {
        trace.max_iter_resolved = *opt.max_iter;
    } else {
        const double ratio = trace.rho_hat / std::max(trace.eps_abs_resolved, 1e-300);
        const double budget = 10.0 * 192.0 * ratio * ratio;
        trace.max_iter_resolved =
            budget < static_cast<double>(kMaxIterCap) ? static_cast<std::size_t>(budget)
                                                      : kMaxIterCap;
    }
}

enum class LoopOutcome { Intersection, Witness };

struct LoopEnd {
    LoopOutcome outcome = LoopOutcome::Intersection;
    double basis = 0.0;  // stop-test distance, or the final gap for a witness
    std::optional<StepSide> basis_side;
};

// The pivot-step loop shared by both run entry points and the distance
// refinement: stop tests, side-ordered pivot search, step application, and
// the per-step contraction audit. `relative_stop` is disabled for runs
// re-entered from the distance refinement, which needs witnesses and treats
// any certified intersection as a diagnostic.
template <class Driver>
LoopEnd run_loop(Driver& drv, const RunOptions& opt, RunTrace& trace,
                 bool relative_stop = true) {
    if (trace.gap_history.total_pushed() == 0) trace.gap_history.push(drv.gap());
    for (;;) {
        trace.arith_ops += 8;
        const double g = drv.gap();
        if (g <= trace.eps_abs_resolved) {
            trace.termination = TerminationReason::Intersection;
            return {LoopOutcome::Intersection, 0.0, std::nullopt};
        }
        if (relative_stop) {
            for (StepSide side : {StepSide::K, StepSide::KPrime}) {
                const auto basis = drv.dist_to_last(side);
                if (basis && g <= opt.eps * *basis) {
                    trace.termination = TerminationReason::Intersection;
                    return {LoopOutcome::Intersection, *basis, side};
                }
            }
        }

        StepSide first = StepSide::K;
        StepSide second = StepSide::KPrime;
        if (opt.alternate_sides && trace.iterations % 2 == 1) std::swap(first, second);

        auto hit = drv.find(first);
        StepSide moved = first;
        if (!hit) {
            hit = drv.find(second);
            moved = second;
        }
        if (!hit) {
            trace.termination = TerminationReason::Witness;
            return {LoopOutcome::Witness, g, std::nullopt};
        }

        // Checked only once a further step is actually required, so runs
        // that certify at the limit (or need no step at all) still finish.
        if (trace.iterations >= trace.max_iter_resolved) {
            trace.termination = TerminationReason::MaxIter;
            throw MaxIterExceeded("run: iteration limit " +
                                      std::to_string(trace.max_iter_resolved) + " reached",
                                  drv.take_state(), trace);
        }

        const AppliedStep applied = drv.apply(moved, *hit, false);
        audit_pivot_step(applied, trace);
        ++trace.iterations;
        trace.gap_history.push(applied.gap_after);
    }
}

template <class Driver>
RunResultI finish_intersect_run(Driver& drv, const LoopEnd& end, const RunOptions& opt,
                                RunTrace& trace) {
    CertificateI cert;
    cert.pair = drv.take_state();
    cert.relative_gap_basis = end.basis;
    cert.basis_side = end.basis_side;
    if (end.outcome == LoopOutcome::Witness) {
        cert.kind = CertKind::Witness;
        cert.separator = bisector(cert.pair.p, cert.pair.p_prime);
    } else {
        cert.kind = CertKind::Intersection;
        const double budget = 48.0 / (opt.eps * opt.eps) + 16.0;
        if (static_cast<double>(trace.iterations) > budget) trace.budget_flagged = true;
    }
    RunResultI out;
    out.certificate = std::move(cert);
    out.trace = std::move(trace);
    return out;
}

}  // namespace detail

// Decides intersection versus separation for the pair of bodies, driving the
// iterate gap with pivot steps until either stop test fires or no pivot
// exists on either side.
inline RunResultI run_intersect_naive(const ConvexBody& k, const ConvexBody& kp,
                                      const RunOptions& opt = {},
                                      const std::optional<std::pair<Vec, Vec>>& start =
                                          std::nullopt) {
    if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw Error("run: eps must lie in (0,1)");
    RunTrace trace;
    detail::resolve_limits(k, kp, opt, trace);
    NaivePairDriver drv(k, kp, initialize(k, kp, start), opt, trace);
    const detail::LoopEnd end = detail::run_loop(drv, opt, trace);
    return detail::finish_intersect_run(drv, end, opt, trace);
}

enum class StepOutcome { Moved, NoPivot };

// Single pivot step on an explicit state, for callers driving the loop
// themselves. Searches K first, then K′, and applies at most one move.
inline std::pair<StepOutcome, PairState> step(PairState state, const ConvexBody& k,
                                              const ConvexBody& kp,
                                              const RunOptions& opt = {}) {
    const double tau = kDegenerateTolAbs * (1.0 + norm(state.p) + norm(state.p_prime));
    if (dist(state.p, state.p_prime) <= tau)
        throw DegeneratePair("step: gap is zero, nothing to improve");
    RunTrace scratch;
    NaivePairDriver drv(k, kp, std::move(state), opt, scratch);
    auto hit = drv.find(StepSide::K);
    StepSide side = StepSide::K;
    if (!hit) {
        hit = drv.find(StepSide::KPrime);
        side = StepSide::KPrime;
    }
    if (!hit) return {StepOutcome::NoPivot, drv.take_state()};
    drv.apply(side, *hit, false);
    return {StepOutcome::Moved, drv.take_state()};
}

}  // namespace hullsep

#endif
