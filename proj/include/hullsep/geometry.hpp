#ifndef HULLSEP_GEOMETRY_HPP
#define HULLSEP_GEOMETRY_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "errors.hpp"

namespace hullsep {

using Vec = std::vector<double>;

// Relative slack on the pivot inequality accept side.
inline constexpr double kPivotTolRel = 1e-12;
// Scale factor for the "points coincide" degeneracy threshold.
inline constexpr double kDegenerateTolAbs = 1e-14;

inline void check_same_dim(const Vec& a, const Vec& b, const char* where) {
    if (a.size() != b.size())
        throw DimensionMismatch(std::string(where) + ": dimensions " +
                                std::to_string(a.size()) + " and " + std::to_string(b.size()));
}

inline bool all_finite(const Vec& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

inline double dot(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dot");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(const Vec& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

inline double norm(const Vec& v) { return std::sqrt(norm_sq(v)); }

inline double dist_sq(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "dist_sq");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}

inline double dist(const Vec& a, const Vec& b) { return std::sqrt(dist_sq(a, b)); }

inline Vec add(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "add");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Vec sub(const Vec& a, const Vec& b) {
    check_same_dim(a, b, "sub");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Vec scaled(const Vec& v, double s) {
    Vec r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

// (1−t)·a + t·b
inline Vec lerp(const Vec& a, const Vec& b, double t) {
    check_same_dim(a, b, "lerp");
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = (1.0 - t) * a[i] + t * b[i];
    return r;
}

// {x : normalᵀx = offset}
struct Hyperplane {
    Vec normal;
    double offset = 0.0;
};

struct SegmentStep {
    Vec point;
    double alpha = 0.0;
};

// Nearest point to x on the segment [y, z]. alpha is the projection
// coefficient (x−y)ᵀ(z−y)/d²(y,z) clamped into [0,1]; the clamp keeps the
// function total on non-pivot inputs where the raw value can leave [0,1].
inline SegmentStep nearest_on_segment(const Vec& x, const Vec& y, const Vec& z) {
    check_same_dim(x, y, "nearest_on_segment");
    check_same_dim(y, z, "nearest_on_segment");
    const double d2 = dist_sq(y, z);
    if (d2 == 0.0) throw DegenerateSegment("nearest_on_segment: segment endpoints coincide");
    double num = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) num += (x[i] - y[i]) * (z[i] - y[i]);
    double alpha = num / d2;
    if (alpha < 0.0) alpha = 0.0;
    if (alpha > 1.0) alpha = 1.0;
    return SegmentStep{lerp(y, z, alpha), alpha};
}

// True iff v is at least as close to p′ as to p, i.e. d(p,v) ≥ d(p′,v),
// tested in the cancellation-free form 2vᵀ(p′−p) ≥ ‖p′‖² − ‖p‖² with a
// relative slack on the accepting side.
inline bool is_pivot(const Vec& p, const Vec& p_prime, const Vec& v) {
    check_same_dim(p, p_prime, "is_pivot");
    check_same_dim(p, v, "is_pivot");
    double lhs = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) lhs += 2.0 * v[i] * (p_prime[i] - p[i]);
    const double npp = norm_sq(p_prime);
    const double np = norm_sq(p);
    const double tol = kPivotTolRel * (1.0 + np + npp);
    return lhs >= (npp - np) - tol;
}

// Orthogonal bisector of the segment pp′, oriented so p is on the positive side.
inline Hyperplane bisector(const Vec& p, const Vec& p_prime) {
    check_same_dim(p, p_prime, "bisector");
    const double tau = kDegenerateTolAbs * (1.0 + norm(p) + norm(p_prime));
    if (dist(p, p_prime) <= tau)
        throw DegeneratePair("bisector: points coincide within tolerance");
    return Hyperplane{sub(p, p_prime), 0.5 * (norm_sq(p) - norm_sq(p_prime))};
}

// Signed Euclidean distance from x to H, positive where normalᵀx > offset.
inline double signed_margin(const Vec& x, const Hyperplane& h) {
    const double nn = norm(h.normal);
    if (nn == 0.0) throw ZeroNormal("signed_margin: hyperplane normal is zero");
    return (dot(h.normal, x) - h.offset) / nn;
}

}  // namespace hullsep

#endif
