#ifndef HULLSEP_GRAM_HPP
#define HULLSEP_GRAM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "state.hpp"
#include "triangle_i.hpp"
#include "triangle_ii.hpp"

namespace hullsep {

inline constexpr std::size_t kGramCheckInterval = 1000;
inline constexpr double kGramDriftTolRel = 1e-6;
// Below this fraction of the iterate scale the product-form gap is dominated
// by cancellation noise and the gap is re-read from coordinates instead.
inline constexpr double kGramGapFloorRel = 1e-6;

// Precomputed vertex products for a pair of point-set bodies. After the
// one-time setup every pivot search and step update runs on the product
// vectors alone, without touching the coordinate arrays.
class GramCache {
  public:
    GramCache(const PointSetBody& k, const PointSetBody& kp, Vec y, Vec yp,
              std::uint64_t revision)
        : n_(k.size()), np_(kp.size()), y_(std::move(y)), yp_(std::move(yp)),
          revision_(revision) {
        if (k.dim() != kp.dim())
            throw DimensionMismatch("gram: body dimensions differ");
        if (y_.size() != n_ || yp_.size() != np_)
            throw DimensionMismatch("gram: weight lengths do not match the vertex counts");
        const std::size_t m = k.dim();
        q_.resize(n_ * n_);
        qp_.resize(np_ * np_);
        g_.resize(n_ * np_);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = i; j < n_; ++j) {
                const double v = dot(k.points()[i], k.points()[j]);
                q_[i * n_ + j] = v;
                q_[j * n_ + i] = v;
            }
        for (std::size_t i = 0; i < np_; ++i)
            for (std::size_t j = i; j < np_; ++j) {
                const double v = dot(kp.points()[i], kp.points()[j]);
                qp_[i * np_ + j] = v;
                qp_[j * np_ + i] = v;
            }
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < np_; ++j)
                g_[i * np_ + j] = dot(k.points()[i], kp.points()[j]);
        precompute_ops_ = static_cast<std::uint64_t>(m) *
                          (n_ * n_ + np_ * np_ + 2 * n_ * np_) / 2;
        recompute_products();
    }

    std::size_t n() const { return n_; }
    std::size_t n_prime() const { return np_; }
    std::uint64_t revision() const { return revision_; }
    std::uint64_t precompute_ops() const { return precompute_ops_; }
    const Vec& y() const { return y_; }
    const Vec& y_prime() const { return yp_; }

    // Raw vertex products: within K, within K′, and across the pair.
    double q(std::size_t i, std::size_t j) const { return q_[i * n_ + j]; }
    double q_prime(std::size_t i, std::size_t j) const { return qp_[i * np_ + j]; }
    double g(std::size_t i, std::size_t j) const { return g_[i * np_ + j]; }

    double p_dot_p() const { return ppt_; }
    double pp_dot_pp() const { return pppt_; }
    double p_dot_pp() const { return ppp_; }

    double gap_sq() const { return std::max(0.0, ppt_ - 2.0 * ppp_ + pppt_); }
    double gap() const { return std::sqrt(gap_sq()); }

    // vᵢᵀp and vᵢᵀp′ for K's vertices, and the mirrored products for K′.
    double k_dot_p(std::size_t j) const { return qy_[j]; }
    double k_dot_pp(std::size_t j) const { return gyp_[j]; }
    double kp_dot_p(std::size_t j) const { return gty_[j]; }
    double kp_dot_pp(std::size_t j) const { return qpyp_[j]; }

    double dist_sq_mover(StepSide side, std::size_t j) const {
        if (side == StepSide::K) return std::max(0.0, ppt_ - 2.0 * qy_[j] + q_[j * n_ + j]);
        return std::max(0.0, pppt_ - 2.0 * qpyp_[j] + qp_[j * np_ + j]);
    }
    double dist_sq_anchor(StepSide side, std::size_t j) const {
        if (side == StepSide::K) return std::max(0.0, pppt_ - 2.0 * gyp_[j] + q_[j * n_ + j]);
        return std::max(0.0, ppt_ - 2.0 * gty_[j] + qp_[j * np_ + j]);
    }

    // The pivot inequality for vertex j of the given side's body, written on
    // the cached products; matches the coordinate-space test.
    bool is_pivot_index(StepSide side, std::size_t j) const {
        const double tol = kPivotTolRel * (1.0 + ppt_ + pppt_);
        if (side == StepSide::K)
            return 2.0 * (gyp_[j] - qy_[j]) >= (pppt_ - ppt_) - tol;
        return 2.0 * (gty_[j] - qpyp_[j]) >= (ppt_ - pppt_) - tol;
    }

    // Step fraction toward vertex j, the segment-foot parameter clamped to
    // [0,1]; the denominator is the squared mover-to-vertex distance.
    double step_alpha(StepSide side, std::size_t j) const {
        const double den = dist_sq_mover(side, j);
        if (den <= 0.0)
            throw DegenerateSegment("gram: step target coincides with the iterate");
        double num;
        if (side == StepSide::K)
            num = (gyp_[j] - qy_[j]) - (ppp_ - ppt_);
        else
            num = (gty_[j] - qpyp_[j]) - (ppp_ - pppt_);
        return std::clamp(num / den, 0.0, 1.0);
    }

    void check_index(StepSide side, std::size_t j) const {
        const std::size_t n = side == StepSide::K ? n_ : np_;
        if (j >= n)
            throw IndexOutOfRange("gram: vertex index " + std::to_string(j) +
                                  " out of range for size " + std::to_string(n));
    }

    // Moves the side's weights toward vertex j by alpha and refreshes every
    // cached product in O(n + n′).
    void update(StepSide side, std::size_t j, double alpha, RunTrace* trace) {
        check_index(side, j);
        const double keep = 1.0 - alpha;
        if (side == StepSide::K) {
            const double qyj = qy_[j];
            for (std::size_t i = 0; i < n_; ++i) qy_[i] = keep * qy_[i] + alpha * q_[j * n_ + i];
            for (std::size_t i = 0; i < np_; ++i)
                gty_[i] = keep * gty_[i] + alpha * g_[j * np_ + i];
            ppt_ = keep * keep * ppt_ + 2.0 * alpha * keep * qyj + alpha * alpha * q_[j * n_ + j];
            ppp_ = keep * ppp_ + alpha * gyp_[j];
            for (double& w : y_) w *= keep;
            y_[j] += alpha;
        } else {
            const double qpypj = qpyp_[j];
            for (std::size_t i = 0; i < np_; ++i)
                qpyp_[i] = keep * qpyp_[i] + alpha * qp_[j * np_ + i];
            for (std::size_t i = 0; i < n_; ++i) gyp_[i] = keep * gyp_[i] + alpha * g_[i * np_ + j];
            pppt_ = keep * keep * pppt_ + 2.0 * alpha * keep * qpypj +
                    alpha * alpha * qp_[j * np_ + j];
            ppp_ = keep * ppp_ + alpha * gty_[j];
            for (double& w : yp_) w *= keep;
            yp_[j] += alpha;
        }
        ++revision_;
        ++updates_since_check_;
        if (updates_since_check_ >= kGramCheckInterval) control_drift(trace);
    }

    Vec materialize_point(const PointSetBody& body, StepSide side) const {
        const Vec& w = side == StepSide::K ? y_ : yp_;
        Vec out(body.dim(), 0.0);
        for (std::size_t i = 0; i < w.size(); ++i)
            for (std::size_t d = 0; d < out.size(); ++d)
                out[d] += w[i] * body.points()[i][d];
        return out;
    }

  private:
    void recompute_products() {
        qy_.assign(n_, 0.0);
        gyp_.assign(n_, 0.0);
        qpyp_.assign(np_, 0.0);
        gty_.assign(np_, 0.0);
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < n_; ++j) qy_[i] += q_[i * n_ + j] * y_[j];
        for (std::size_t i = 0; i < n_; ++i)
            for (std::size_t j = 0; j < np_; ++j) gyp_[i] += g_[i * np_ + j] * yp_[j];
        for (std::size_t i = 0; i < np_; ++i)
            for (std::size_t j = 0; j < np_; ++j) qpyp_[i] += qp_[i * np_ + j] * yp_[j];
        for (std::size_t i = 0; i < np_; ++i)
            for (std::size_t j = 0; j < n_; ++j) gty_[i] += g_[j * np_ + i] * y_[j];
        ppt_ = dot(y_, qy_);
        pppt_ = dot(yp_, qpyp_);
        ppp_ = dot(y_, gyp_);
    }

    void control_drift(RunTrace* trace) {
        updates_since_check_ = 0;
        const Vec qy_inc = qy_;
        const Vec gyp_inc = gyp_;
        const Vec qpyp_inc = qpyp_;
        const Vec gty_inc = gty_;
        const double ppt_inc = ppt_;
        const double pppt_inc = pppt_;
        const double ppp_inc = ppp_;
        recompute_products();
        const double scale = 1.0 + std::abs(ppt_) + std::abs(pppt_) + std::abs(ppp_);
        bool drifted = std::abs(ppt_inc - ppt_) > kGramDriftTolRel * scale ||
                       std::abs(pppt_inc - pppt_) > kGramDriftTolRel * scale ||
                       std::abs(ppp_inc - ppp_) > kGramDriftTolRel * scale;
        auto vec_drifted = [](const Vec& a, const Vec& b) {
            for (std::size_t i = 0; i < a.size(); ++i)
                if (std::abs(a[i] - b[i]) > kGramDriftTolRel * (1.0 + std::abs(b[i])))
                    return true;
            return false;
        };
        drifted = drifted || vec_drifted(qy_inc, qy_) || vec_drifted(gyp_inc, gyp_) ||
                  vec_drifted(qpyp_inc, qpyp_) || vec_drifted(gty_inc, gty_);
        if (drifted) {
            if (trace != nullptr) ++trace->cache_refreshes;
        } else {
            // within tolerance, keep the incremental values
            qy_ = qy_inc;
            gyp_ = gyp_inc;
            qpyp_ = qpyp_inc;
            gty_ = gty_inc;
            ppt_ = ppt_inc;
            pppt_ = pppt_inc;
            ppp_ = ppp_inc;
        }
    }

    std::size_t n_;
    std::size_t np_;
    std::vector<double> q_;
    std::vector<double> qp_;
    std::vector<double> g_;
    Vec y_;
    Vec yp_;
    Vec qy_;
    Vec gyp_;
    Vec qpyp_;
    Vec gty_;
    double ppt_ = 0.0;
    double pppt_ = 0.0;
    double ppp_ = 0.0;
    std::uint64_t revision_ = 0;
    std::uint64_t precompute_ops_ = 0;
    std::size_t updates_since_check_ = 0;
};

// Per-vertex side lengths of the triangle (iterate, other iterate, vertex),
// refreshed from the cache in one pass for the angle-based pivot rule.
struct AngleTable {
    StepSide side = StepSide::K;
    double a_sq = 0.0;            // gap²
    std::vector<double> b_sq;     // mover to vertex
    std::vector<double> c_sq;     // anchor to vertex
    std::uint64_t revision = 0;
};

inline GramCache precompute(const PointSetBody& k, const PointSetBody& kp,
                            const PairState& state) {
    if (!state.coeffs_k || !state.coeffs_kp)
        throw Error("gram: the pair state carries no barycentric weights");
    return GramCache(k, kp, *state.coeffs_k, *state.coeffs_kp, state.revision);
}

// Max-violation pivot search on the cached products: the best candidate is
// the maximum coordinate of the side's pivot functional; absent when even
// that coordinate fails the pivot inequality.
inline std::optional<std::size_t> fast_pivot(const GramCache& cache, StepSide side,
                                             std::uint64_t expected_revision) {
    if (expected_revision != cache.revision())
        throw StaleCache("gram: pivot search against revision " +
                         std::to_string(expected_revision) + ", cache at " +
                         std::to_string(cache.revision()));
    const std::size_t n = side == StepSide::K ? cache.n() : cache.n_prime();
    std::size_t best = 0;
    double best_val = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
        const double val = side == StepSide::K ? cache.k_dot_pp(j) - cache.k_dot_p(j)
                                               : cache.kp_dot_p(j) - cache.kp_dot_pp(j);
        if (val > best_val) {
            best_val = val;
            best = j;
        }
    }
    if (n == 0 || !cache.is_pivot_index(side, best)) return std::nullopt;
    return best;
}

inline std::optional<std::size_t> fast_pivot(const GramCache& cache, StepSide side) {
    return fast_pivot(cache, side, cache.revision());
}

inline AngleTable refresh_angle_table(const GramCache& cache, StepSide side) {
    AngleTable table;
    table.side = side;
    table.a_sq = cache.gap_sq();
    table.revision = cache.revision();
    const std::size_t n = side == StepSide::K ? cache.n() : cache.n_prime();
    table.b_sq.resize(n);
    table.c_sq.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        table.b_sq[j] = cache.dist_sq_mover(side, j);
        table.c_sq[j] = cache.dist_sq_anchor(side, j);
    }
    return table;
}

// Among true pivots, picks the vertex minimizing the angle at the mover
// between the segment to the other iterate and the segment to the vertex.
inline std::optional<std::size_t> min_angle_pivot(const GramCache& cache,
                                                  const AngleTable& table) {
    if (table.revision != cache.revision())
        throw StaleCache("gram: angle table at revision " + std::to_string(table.revision) +
                         ", cache at " + std::to_string(cache.revision()));
    std::optional<std::size_t> best;
    double best_sin2 = 0.0;
    for (std::size_t j = 0; j < table.b_sq.size(); ++j) {
        if (!cache.is_pivot_index(table.side, j)) continue;
        const double b2 = table.b_sq[j];
        if (b2 <= 0.0) continue;
        const double num = table.a_sq + b2 - table.c_sq[j];
        double sin2 = 1.0 - num * num / (4.0 * table.a_sq * b2);
        if (sin2 < 0.0) sin2 = 0.0;
        if (!best || sin2 < best_sin2) {
            best = j;
            best_sin2 = sin2;
        }
    }
    return best;
}

inline void apply_step(GramCache& cache, StepSide side, std::size_t j, double alpha,
                       RunTrace* trace = nullptr) {
    cache.check_index(side, j);
    if (!(alpha > 0.0 && alpha <= 1.0)) throw Error("gram: alpha must lie in (0,1]");
    cache.update(side, j, alpha, trace);
}

// Gram-product engine: the same stepping contract as NaivePairDriver, with
// every per-iteration quantity read off the cached products. The coordinate
// iterates inside the pair state are stale during a run and are rebuilt by
// materialize().
class GramPairDriver {
  public:
    GramPairDriver(const ConvexBody& k, const ConvexBody& kp, PairState st,
                   const RunOptions& opt, RunTrace& trace)
        : k_(require_points(k, "first")), kp_(require_points(kp, "second")), opt_(opt),
          trace_(trace), rng_(opt.seed),
          cache_(k_, kp_, require_weights(st.coeffs_k, "first"),
                 require_weights(st.coeffs_kp, "second"), st.revision),
          st_(std::move(st)) {
        trace_.precompute_ops += cache_.precompute_ops();
        st_.gap = resolved_gap();
    }

    const PairState& state() const { return st_; }
    double gap() const { return st_.gap; }

    PairState take_state() {
        materialize();
        return std::move(st_);
    }

    std::optional<double> dist_to_last(StepSide side) const {
        const auto& idx = side == StepSide::K ? last_idx_k_ : last_idx_kp_;
        if (!idx) return std::nullopt;
        return std::sqrt(cache_.dist_sq_mover(side, *idx));
    }

    std::optional<PivotHit> find(StepSide side) {
        ++trace_.support_calls;
        const std::size_t n = side == StepSide::K ? cache_.n() : cache_.n_prime();
        std::optional<std::size_t> j;
        switch (opt_.strategy) {
            case PivotStrategy::MaxViolation:
                j = fast_pivot(cache_, side);
                trace_.arith_ops += 2 * n;
                break;
            case PivotStrategy::FirstViolation:
                j = first_violation_index(side, n);
                break;
            case PivotStrategy::MinAngle: {
                const AngleTable table = refresh_angle_table(cache_, side);
                j = min_angle_pivot(cache_, table);
                trace_.arith_ops += 8 * n;
                break;
            }
        }
        if (!j) return std::nullopt;
        return hit_for(side, *j);
    }

    AppliedStep apply(StepSide side, const PivotHit& hit, bool weak) {
        const std::size_t j = static_cast<std::size_t>(hit.index);
        const double alpha = cache_.step_alpha(side, j);
        AppliedStep out;
        out.side = side;
        out.gap_before = st_.gap;
        out.alpha = alpha;
        out.r = hit.dist_anchor;
        out.b = hit.dist_mover;
        out.pivot_tol = kPivotTolRel * (1.0 + cache_.p_dot_p() + cache_.pp_dot_pp());
        out.pivot_index = hit.index;
        out.weak = weak;
        cache_.update(side, j, alpha, &trace_);
        trace_.arith_ops += 2 * (cache_.n() + cache_.n_prime());
        st_.gap = resolved_gap();
        st_.revision = cache_.revision();
        if (!weak) {
            auto& last = side == StepSide::K ? st_.last_pivot_k : st_.last_pivot_kp;
            last = hit.point;
            auto& last_idx = side == StepSide::K ? last_idx_k_ : last_idx_kp_;
            last_idx = j;
        }
        out.gap_after = st_.gap;
        return out;
    }

    SupportGap support_gap() {
        trace_.support_calls += 2;
        trace_.arith_ops += 2 * (cache_.n() + cache_.n_prime());
        const double gap = st_.gap;
        const double a = 0.5 * (cache_.p_dot_p() - cache_.pp_dot_pp());

        std::size_t jv = 0;
        double min_k = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cache_.n(); ++j) {
            const double val = cache_.k_dot_p(j) - cache_.k_dot_pp(j);  // hᵀvⱼ
            if (val < min_k) {
                min_k = val;
                jv = j;
            }
        }
        std::size_t jvp = 0;
        double max_kp = -std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < cache_.n_prime(); ++j) {
            const double val = cache_.kp_dot_p(j) - cache_.kp_dot_pp(j);
            if (val > max_kp) {
                max_kp = val;
                jvp = j;
            }
        }

        SupportGap sg;
        sg.v = k_.points()[jv];
        sg.v_prime = kp_.points()[jvp];
        sg.delta_v = (min_k - a) / gap;
        sg.delta_vp = (a - max_kp) / gap;
        sg.lower = sg.delta_v + sg.delta_vp;
        sg.rho = std::sqrt(cache_.dist_sq_mover(StepSide::K, jv));
        sg.rho_prime = std::sqrt(cache_.dist_sq_mover(StepSide::KPrime, jvp));
        sg.e_v = 0.5 * gap - sg.delta_v;
        sg.e_vp = 0.5 * gap - sg.delta_vp;
        const double tau = kDegenerateTolAbs * (1.0 + std::sqrt(std::max(0.0, cache_.p_dot_p())) +
                                                std::sqrt(std::max(0.0, cache_.pp_dot_pp())));
        if (sg.rho <= tau) sg.e_v = 0.0;
        if (sg.rho_prime <= tau) sg.e_vp = 0.0;
        sg.big_e = sg.e_v + sg.e_vp;

        weak_k_ = hit_for(StepSide::K, jv);
        weak_kp_ = hit_for(StepSide::KPrime, jvp);
        return sg;
    }

    AppliedStep apply_weak(StepSide side) {
        return apply(side, side == StepSide::K ? weak_k_ : weak_kp_, true);
    }

    void materialize() {
        st_.p = cache_.materialize_point(k_, StepSide::K);
        st_.p_prime = cache_.materialize_point(kp_, StepSide::KPrime);
        st_.coeffs_k = cache_.y();
        st_.coeffs_kp = cache_.y_prime();
        st_.gap = dist(st_.p, st_.p_prime);
    }

  private:
    static const PointSetBody& require_points(const ConvexBody& body, const char* which) {
        const auto* ps = body.as_point_set();
        if (ps == nullptr)
            throw Error(std::string("gram: the ") + which + " body is not a point set");
        return *ps;
    }
    static Vec require_weights(const std::optional<Vec>& w, const char* which) {
        if (!w)
            throw Error(std::string("gram: the ") + which +
                        " iterate carries no barycentric weights");
        return *w;
    }

    double resolved_gap() {
        const double g2 = cache_.gap_sq();
        const double scale2 =
            1.0 + std::abs(cache_.p_dot_p()) + std::abs(cache_.pp_dot_pp());
        if (g2 > kGramGapFloorRel * kGramGapFloorRel * scale2) return std::sqrt(g2);
        trace_.arith_ops +=
            static_cast<std::uint64_t>(k_.dim()) * (cache_.n() + cache_.n_prime());
        return dist(cache_.materialize_point(k_, StepSide::K),
                    cache_.materialize_point(kp_, StepSide::KPrime));
    }

    PivotHit hit_for(StepSide side, std::size_t j) {
        const PointSetBody& body = side == StepSide::K ? k_ : kp_;
        PivotHit hit;
        hit.point = body.points()[j];
        hit.index = static_cast<int>(j);
        hit.dist_mover = std::sqrt(cache_.dist_sq_mover(side, j));
        hit.dist_anchor = std::sqrt(cache_.dist_sq_anchor(side, j));
        return hit;
    }

    std::optional<std::size_t> first_violation_index(StepSide side, std::size_t n) {
        scratch_order_.resize(n);
        for (std::size_t i = 0; i < n; ++i) scratch_order_[i] = i;
        for (std::size_t i = n; i > 1; --i) {
            const std::size_t j = detail::splitmix64(rng_) % i;
            std::swap(scratch_order_[i - 1], scratch_order_[j]);
        }
        trace_.arith_ops += 2 * n;
        for (std::size_t idx : scratch_order_)
            if (cache_.is_pivot_index(side, idx)) return idx;
        return std::nullopt;
    }

    const PointSetBody& k_;
    const PointSetBody& kp_;
    const RunOptions& opt_;
    RunTrace& trace_;
    std::uint64_t rng_;
    GramCache cache_;
    PairState st_;
    std::optional<std::size_t> last_idx_k_;
    std::optional<std::size_t> last_idx_kp_;
    PivotHit weak_k_;
    PivotHit weak_kp_;
    std::vector<std::size_t> scratch_order_;
};

inline RunResultI run_intersect_gram(const ConvexBody& k, const ConvexBody& kp,
                                     const RunOptions& opt = {},
                                     const std::optional<std::pair<Vec, Vec>>& start =
                                         std::nullopt) {
    if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw Error("run: eps must lie in (0,1)");
    RunTrace trace;
    detail::resolve_limits(k, kp, opt, trace);
    GramPairDriver drv(k, kp, initialize(k, kp, start), opt, trace);
    const detail::LoopEnd end = detail::run_loop(drv, opt, trace);
    return detail::finish_intersect_run(drv, end, opt, trace);
}

inline RunResultII run_distance_gram(const ConvexBody& k, const ConvexBody& kp,
                                     PairState witness, const RunOptions& opt = {}) {
    if (!(opt.eps > 0.0 && opt.eps < 1.0)) throw Error("distance: eps must lie in (0,1)");
    RunTrace trace;
    detail::resolve_limits(k, kp, opt, trace);
    GramPairDriver drv(k, kp, std::move(witness), opt, trace);
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

inline bool gram_eligible(const ConvexBody& k, const ConvexBody& kp) {
    return k.as_point_set() != nullptr && kp.as_point_set() != nullptr;
}

// Engine dispatch: the Gram path serves point-set pairs, everything else
// runs on the direct oracles.
inline RunResultI run_intersect(const ConvexBody& k, const ConvexBody& kp,
                                const RunOptions& opt = {},
                                const std::optional<std::pair<Vec, Vec>>& start = std::nullopt) {
    switch (opt.engine) {
        case EngineChoice::Naive:
            return run_intersect_naive(k, kp, opt, start);
        case EngineChoice::Gram:
            return run_intersect_gram(k, kp, opt, start);
        case EngineChoice::Auto:
        default:
            return gram_eligible(k, kp) ? run_intersect_gram(k, kp, opt, start)
                                        : run_intersect_naive(k, kp, opt, start);
    }
}

inline RunResultII run_distance(const ConvexBody& k, const ConvexBody& kp, PairState witness,
                                const RunOptions& opt = {}) {
    switch (opt.engine) {
        case EngineChoice::Naive:
            return run_distance_naive(k, kp, std::move(witness), opt);
        case EngineChoice::Gram:
            return run_distance_gram(k, kp, std::move(witness), opt);
        case EngineChoice::Auto:
        default:
            return gram_eligible(k, kp) && witness.coeffs_k && witness.coeffs_kp
                       ? run_distance_gram(k, kp, std::move(witness), opt)
                       : run_distance_naive(k, kp, std::move(witness), opt);
    }
}

}  // namespace hullsep

#endif
