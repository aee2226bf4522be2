#ifndef HULLSEP_BODIES_HPP
#define HULLSEP_BODIES_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"
#include "simplex_lp.hpp"

namespace hullsep {

struct SupportResult {
    Vec point;
    double value = 0.0;
    std::optional<int> witness_id;
};

class PointSetBody {
  public:
    explicit PointSetBody(std::vector<Vec> points) : points_(std::move(points)) {
        if (points_.empty()) throw EmptyBody("point set: no vertices");
        const std::size_t m = points_[0].size();
        if (m == 0) throw EmptyBody("point set: zero-dimensional vertex");
        for (const auto& p : points_) {
            if (p.size() != m) throw DimensionMismatch("point set: mixed vertex dimensions");
        }
    }

    std::size_t dim() const { return points_[0].size(); }
    std::size_t size() const { return points_.size(); }
    const std::vector<Vec>& points() const { return points_; }

    SupportResult support(const Vec& w) const {
        if (w.size() != dim()) throw DimensionMismatch("support: direction dimension");
        if (norm_sq(w) == 0.0) throw ZeroDirection("support: zero direction");
        std::size_t best = 0;
        double best_value = dot(w, points_[0]);
        for (std::size_t i = 1; i < points_.size(); ++i) {
            const double v = dot(w, points_[i]);
            if (v > best_value) {
                best_value = v;
                best = i;
            }
        }
        return SupportResult{points_[best], best_value, static_cast<int>(best)};
    }

    Vec centroid() const {
        Vec c(dim(), 0.0);
        for (const auto& p : points_) c = add(c, p);
        return scaled(c, 1.0 / static_cast<double>(points_.size()));
    }

    double diameter_bound() const {
        const Vec c = centroid();
        double r = 0.0;
        for (const auto& p : points_) r = std::max(r, dist(p, c));
        return 2.0 * r;
    }

    double exact_diameter() const {
        double d = 0.0;
        for (std::size_t i = 0; i < points_.size(); ++i)
            for (std::size_t j = i + 1; j < points_.size(); ++j)
                d = std::max(d, dist(points_[i], points_[j]));
        return d;
    }

  private:
    std::vector<Vec> points_;
};

class BallBody {
  public:
    BallBody(Vec center, double radius) : center_(std::move(center)), radius_(radius) {
        if (center_.empty()) throw EmptyBody("ball: zero-dimensional center");
        if (!(radius_ > 0.0)) throw Error("ball: radius must be positive");
    }

    std::size_t dim() const { return center_.size(); }
    const Vec& center() const { return center_; }
    double radius() const { return radius_; }

    SupportResult support(const Vec& w) const {
        if (w.size() != dim()) throw DimensionMismatch("support: direction dimension");
        const double nw = norm(w);
        if (nw == 0.0) throw ZeroDirection("support: zero direction");
        Vec point = add(center_, scaled(w, radius_ / nw));
        return SupportResult{std::move(point), dot(w, center_) + radius_ * nw, std::nullopt};
    }

    double diameter_bound() const { return 2.0 * radius_; }

  private:
    Vec center_;
    double radius_;
};

class PolytopeBody {
  public:
    PolytopeBody(std::vector<Vec> A, Vec b)
        : A_(std::move(A)), b_(std::move(b)), memo_(std::make_shared<Memo>()) {
        if (A_.empty()) throw EmptyBody("polytope: no constraint rows");
        if (A_.size() != b_.size()) throw DimensionMismatch("polytope: row count of A vs b");
        const std::size_t m = A_[0].size();
        if (m == 0) throw EmptyBody("polytope: zero-dimensional rows");
        for (const auto& row : A_)
            if (row.size() != m) throw DimensionMismatch("polytope: mixed row widths");
    }

    std::size_t dim() const { return A_[0].size(); }
    const std::vector<Vec>& rows() const { return A_; }
    const Vec& rhs() const { return b_; }

    SupportResult support(const Vec& w) const {
        if (w.size() != dim()) throw DimensionMismatch("support: direction dimension");
        if (norm_sq(w) == 0.0) throw ZeroDirection("support: zero direction");
        ensure_bounded();
        const auto out = solve(LpProblem{w, A_, b_});
        if (out.status == LpStatus::Infeasible) throw InfeasibleBody("polytope: empty body");
        if (out.status == LpStatus::Unbounded)
            throw UnboundedBody("polytope: support direction unbounded");
        int id = out.basis.empty() ? 0 : out.basis[0];
        for (int bidx : out.basis) id = std::min(id, bidx);
        return SupportResult{out.x, out.value, id};
    }

    // Largest inscribed ball center; a deterministic interior reference point.
    Vec interior_point() const { return chebyshev_center(A_, b_).first; }

    double diameter_bound() const {
        ensure_bounded();
        double spread = 0.0;
        for (double s : memo_->spread) spread = std::max(spread, s);
        return 2.0 * spread;
    }

    bool contains(const Vec& x, double tol_rel) const {
        if (x.size() != dim()) throw DimensionMismatch("contains: point dimension");
        for (std::size_t r = 0; r < A_.size(); ++r) {
            if (dot(A_[r], x) > b_[r] + tol_rel * (1.0 + std::abs(b_[r]))) return false;
        }
        return true;
    }

  private:
    // Boundedness is verified once by maximizing ±e_i for every coordinate;
    // the support-value spreads double as the diameter bound.
    struct Memo {
        std::once_flag flag;
        Vec spread;
    };

    void ensure_bounded() const {
        std::call_once(memo_->flag, [this] {
            Vec spread(dim(), 0.0);
            for (std::size_t i = 0; i < dim(); ++i) {
                Vec w(dim(), 0.0);
                double hi = 0.0, lo = 0.0;
                for (double sgn : {1.0, -1.0}) {
                    w[i] = sgn;
                    const auto out = solve(LpProblem{w, A_, b_});
                    if (out.status == LpStatus::Infeasible)
                        throw InfeasibleBody("polytope: empty body");
                    if (out.status == LpStatus::Unbounded)
                        throw UnboundedBody("polytope: unbounded along coordinate " +
                                            std::to_string(i));
                    (sgn > 0 ? hi : lo) = out.value;
                }
                spread[i] = hi + lo;  // max x_i − min x_i
            }
            memo_->spread = std::move(spread);
        });
    }

    std::vector<Vec> A_;
    Vec b_;
    std::shared_ptr<Memo> memo_;
};

class ConvexBody {
  public:
    ConvexBody(PointSetBody b) : body_(std::move(b)) {}
    ConvexBody(BallBody b) : body_(std::move(b)) {}
    ConvexBody(PolytopeBody b) : body_(std::move(b)) {}

    std::size_t dim() const {
        return std::visit([](const auto& b) { return b.dim(); }, body_);
    }

    SupportResult support(const Vec& w) const {
        return std::visit([&](const auto& b) { return b.support(w); }, body_);
    }

    double diameter_bound() const {
        return std::visit([](const auto& b) { return b.diameter_bound(); }, body_);
    }

    // Rough per-support-call arithmetic cost, for the operation counters.
    std::uint64_t support_cost() const {
        if (const auto* ps = std::get_if<PointSetBody>(&body_)) return ps->size() * ps->dim();
        if (const auto* po = std::get_if<PolytopeBody>(&body_)) return po->rows().size() * po->dim();
        return dim();
    }

    const PointSetBody* as_point_set() const { return std::get_if<PointSetBody>(&body_); }
    const BallBody* as_ball() const { return std::get_if<BallBody>(&body_); }
    const PolytopeBody* as_polytope() const { return std::get_if<PolytopeBody>(&body_); }

    bool is_singleton() const {
        const auto* ps = as_point_set();
        return ps != nullptr && ps->size() == 1;
    }

    // Deterministic point inside the body, used to seed start pairs.
    Vec reference_point() const {
        if (const auto* ps = as_point_set()) return ps->centroid();
        if (const auto* ba = as_ball()) return ba->center();
        return as_polytope()->interior_point();
    }

    bool contains(const Vec& x, double tol_rel) const {
        if (x.size() != dim()) throw DimensionMismatch("contains: point dimension");
        if (const auto* ps = as_point_set()) return hull_membership(ps->points(), x).has_value();
        if (const auto* ba = as_ball())
            return dist(x, ba->center()) <=
                   ba->radius() + tol_rel * (1.0 + ba->radius() + norm(ba->center()));
        return as_polytope()->contains(x, tol_rel);
    }

  private:
    std::variant<PointSetBody, BallBody, PolytopeBody> body_;
};

// Searches `body` (the set containing `mover`) for a point at least as close
// to `anchor` as to `mover`. The support point in direction anchor−mover
// maximizes the acceptance functional, so absence here certifies absence
// everywhere in the body.
inline std::optional<SupportResult> find_pivot(const ConvexBody& body, const Vec& mover,
                                               const Vec& anchor) {
    SupportResult sr = body.support(sub(anchor, mover));
    if (is_pivot(mover, anchor, sr.point)) return sr;
    return std::nullopt;
}

// Margin slack below which a candidate does not count as strictly closer to
// the hyperplane than the mover.
inline constexpr double kWeakPivotTolRel = 1e-12;

// Searches `body` for a point strictly closer to the hyperplane than `mover`
// (on mover's side the extreme point toward the plane is the support point in
// the inward direction, so absence certifies the mover's margin is minimal).
inline std::optional<SupportResult> find_weak_pivot(const ConvexBody& body, const Vec& mover,
                                                    const Hyperplane& h) {
    const double margin_mover = signed_margin(mover, h);
    const double side = margin_mover >= 0.0 ? 1.0 : -1.0;
    SupportResult sr = body.support(scaled(h.normal, -side));
    const double margin_v = signed_margin(sr.point, h);
    const double tau = kWeakPivotTolRel * (1.0 + std::abs(margin_mover));
    if (side * margin_v < side * margin_mover - tau) return sr;
    return std::nullopt;
}

inline double diameter_bound_pair(const ConvexBody& k, const ConvexBody& k_prime) {
    return std::max(k.diameter_bound(), k_prime.diameter_bound());
}

}  // namespace hullsep

#endif
