#ifndef HULLSEP_ORACLES_HPP
#define HULLSEP_ORACLES_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "simplex_lp.hpp"

namespace hullsep {

struct OracleResult {
    double value = 0.0;
    std::optional<std::pair<Vec, Vec>> argmin_pair;
    double resolution = 0.0;  // grid spacing; 0 for analytic/exact results
};

inline OracleResult ball_distance(const BallBody& a, const BallBody& b) {
    const double dc = dist(a.center(), b.center());
    const double value = std::max(0.0, dc - a.radius() - b.radius());
    OracleResult out;
    out.value = value;
    if (dc > 0.0) {
        const Vec dir = scaled(sub(b.center(), a.center()), 1.0 / dc);
        out.argmin_pair = {add(a.center(), scaled(dir, std::min(a.radius(), dc))),
                           add(b.center(), scaled(dir, -std::min(b.radius(), dc)))};
    } else {
        out.argmin_pair = {a.center(), a.center()};
    }
    return out;
}

namespace oracle_detail {

// In-place lower Cholesky factor; false when a pivot falls below tol
// (the subset is affinely dependent and covered by a smaller one).
inline bool cholesky(std::vector<Vec>& M, double tol) {
    const std::size_t k = M.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double s = M[i][j];
            for (std::size_t l = 0; l < j; ++l) s -= M[i][l] * M[j][l];
            if (i == j) {
                if (s <= tol) return false;
                M[i][i] = std::sqrt(s);
            } else {
                M[i][j] = s / M[j][j];
            }
        }
        for (std::size_t j = i + 1; j < k; ++j) M[i][j] = 0.0;
    }
    return true;
}

inline void cholesky_solve(const std::vector<Vec>& L, Vec& x) {
    const std::size_t k = L.size();
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < i; ++j) x[i] -= L[i][j] * x[j];
        x[i] /= L[i][i];
    }
    for (std::size_t i = k; i-- > 0;) {
        for (std::size_t j = i + 1; j < k; ++j) x[i] -= L[j][i] * x[j];
        x[i] /= L[i][i];
    }
}

}  // namespace oracle_detail

// Exact nearest-point queries against a fixed small hull: every affinely
// independent vertex subset spans a candidate face (Carathéodory caps the
// useful subset size at dim+1), and the true projection lies on one of them.
class InnerProjector {
  public:
    explicit InnerProjector(const std::vector<Vec>& pts) : pts_(pts) {
        if (pts_.empty()) throw EmptyBody("InnerProjector: no points");
        const std::size_t m = pts_[0].size();
        const std::size_t max_size = std::min(pts_.size(), m + 1);
        double scale2 = 1.0;
        for (const auto& p : pts_) scale2 = std::max(scale2, norm_sq(p));

        std::size_t combos = 0;
        std::vector<std::size_t> pick;
        auto enumerate = [&](auto&& self, std::size_t next) -> void {
            if (pick.size() >= 2) add_face(pick, scale2);
            if (pick.size() == max_size) return;
            for (std::size_t i = next; i < pts_.size(); ++i) {
                if (++combos > 500000)
                    throw TooManyVertices("InnerProjector: subset enumeration too large");
                pick.push_back(i);
                self(self, i + 1);
                pick.pop_back();
            }
        };
        enumerate(enumerate, 0);
    }

    std::pair<double, Vec> project(const Vec& q) const {
        std::size_t best_vertex = 0;
        double best = dist_sq(q, pts_[0]);
        for (std::size_t i = 1; i < pts_.size(); ++i) {
            const double d2 = dist_sq(q, pts_[i]);
            if (d2 < best) {
                best = d2;
                best_vertex = i;
            }
        }
        Vec best_point = pts_[best_vertex];

        Vec lambda, candidate;
        for (const auto& f : faces_) {
            const std::size_t k = f.edges.size();
            lambda.assign(k, 0.0);
            for (std::size_t e = 0; e < k; ++e) {
                double s = 0.0;
                const Vec& base = pts_[f.base];
                for (std::size_t d = 0; d < base.size(); ++d)
                    s += (q[d] - base[d]) * f.edges[e][d];
                lambda[e] = s;
            }
            oracle_detail::cholesky_solve(f.chol, lambda);
            double sum = 0.0;
            bool ok = true;
            for (double l : lambda) {
                if (l < -1e-12) {
                    ok = false;
                    break;
                }
                sum += l;
            }
            if (!ok || sum > 1.0 + 1e-12) continue;
            candidate = pts_[f.base];
            for (std::size_t e = 0; e < k; ++e)
                for (std::size_t d = 0; d < candidate.size(); ++d)
                    candidate[d] += lambda[e] * f.edges[e][d];
            const double d2 = dist_sq(q, candidate);
            if (d2 < best) {
                best = d2;
                best_point = candidate;
            }
        }
        return {std::sqrt(std::max(0.0, best)), best_point};
    }

  private:
    struct Face {
        std::size_t base = 0;
        std::vector<Vec> edges;       // vertex_i − base for the non-base picks
        std::vector<Vec> chol;        // lower factor of the edge Gram matrix
    };

    void add_face(const std::vector<std::size_t>& pick, double scale2) {
        Face f;
        f.base = pick[0];
        for (std::size_t i = 1; i < pick.size(); ++i)
            f.edges.push_back(sub(pts_[pick[i]], pts_[f.base]));
        const std::size_t k = f.edges.size();
        std::vector<Vec> gram(k, Vec(k, 0.0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= i; ++j)
                gram[i][j] = gram[j][i] = dot(f.edges[i], f.edges[j]);
        if (!oracle_detail::cholesky(gram, 1e-12 * scale2)) return;
        f.chol = std::move(gram);
        faces_.push_back(std::move(f));
    }

    std::vector<Vec> pts_;
    std::vector<Face> faces_;
};

inline double point_to_hull_exact(const std::vector<Vec>& points, const Vec& q) {
    return InnerProjector(points).project(q).first;
}

// Brute-force hull distance for tiny vertex sets: barycentric grid on one
// side (the smaller one), exact projection onto the other. The result is an
// upper bound on the true distance and overshoots by at most ρ̂·resolution,
// inside the documented 2·ρ̂·resolution bracket.
inline OracleResult grid_distance(const std::vector<Vec>& V, const std::vector<Vec>& V_prime,
                                  double resolution) {
    if (V.size() > 4 || V_prime.size() > 4)
        throw TooManyVertices("grid_distance: supports at most 4 vertices per hull");
    if (!(resolution > 0.0) || resolution > 0.1)
        throw Error("grid_distance: resolution must lie in (0, 0.1]");
    if (V.empty() || V_prime.empty()) throw EmptyBody("grid_distance: empty vertex set");

    const bool grid_first = V.size() <= V_prime.size();
    const std::vector<Vec>& outer = grid_first ? V : V_prime;
    const std::vector<Vec>& inner = grid_first ? V_prime : V;
    const InnerProjector projector(inner);

    const std::size_t n = outer.size();
    const std::size_t m = outer[0].size();
    const long steps = std::lround(1.0 / resolution);
    const long N = steps < 1 ? 1 : steps;

    double best = -1.0;
    Vec best_outer, best_inner;
    Vec x(m, 0.0);
    std::vector<long> k(n, 0);

    auto visit = [&]() {
        for (std::size_t d = 0; d < m; ++d) {
            double s = 0.0;
            for (std::size_t i = 0; i < n; ++i) s += static_cast<double>(k[i]) * outer[i][d];
            x[d] = s / static_cast<double>(N);
        }
        auto [d, proj] = projector.project(x);
        if (best < 0.0 || d < best) {
            best = d;
            best_outer = x;
            best_inner = proj;
        }
    };
    auto recurse = [&](auto&& self, std::size_t i, long remaining) -> void {
        if (i + 1 == n) {
            k[i] = remaining;
            visit();
            return;
        }
        for (long v = 0; v <= remaining; ++v) {
            k[i] = v;
            self(self, i + 1, remaining - v);
        }
    };
    recurse(recurse, 0, N);

    OracleResult out;
    out.value = best;
    out.resolution = resolution;
    if (grid_first)
        out.argmin_pair = {best_outer, best_inner};
    else
        out.argmin_pair = {best_inner, best_outer};
    return out;
}

inline bool membership_lp(const std::vector<Vec>& points, const Vec& q) {
    return hull_membership(points, q).has_value();
}

// Feasibility of Σαᵢvᵢ = Σβⱼv′ⱼ with both weight vectors convex.
inline bool hulls_intersect_lp(const std::vector<Vec>& V, const std::vector<Vec>& V_prime) {
    if (V.empty() || V_prime.empty()) throw EmptyBody("hulls_intersect_lp: empty vertex set");
    const std::size_t m = V[0].size();
    const int n = static_cast<int>(V.size());
    const int np = static_cast<int>(V_prime.size());
    lp_detail::StandardForm sf;
    sf.nvars = n + np;
    sf.rows.assign(m + 2, Vec(static_cast<std::size_t>(sf.nvars), 0.0));
    sf.rhs.assign(m + 2, 0.0);
    for (int i = 0; i < n; ++i) {
        if (V[static_cast<std::size_t>(i)].size() != m)
            throw DimensionMismatch("hulls_intersect_lp: vertex dimension");
        for (std::size_t d = 0; d < m; ++d)
            sf.rows[d][static_cast<std::size_t>(i)] = V[static_cast<std::size_t>(i)][d];
        sf.rows[m][static_cast<std::size_t>(i)] = 1.0;
    }
    for (int j = 0; j < np; ++j) {
        if (V_prime[static_cast<std::size_t>(j)].size() != m)
            throw DimensionMismatch("hulls_intersect_lp: vertex dimension");
        for (std::size_t d = 0; d < m; ++d)
            sf.rows[d][static_cast<std::size_t>(n + j)] = -V_prime[static_cast<std::size_t>(j)][d];
        sf.rows[m + 1][static_cast<std::size_t>(n + j)] = 1.0;
    }
    sf.rhs[m] = 1.0;
    sf.rhs[m + 1] = 1.0;
    return lp_detail::simplex_core(sf, Vec{}).status == LpStatus::Optimal;
}

}  // namespace hullsep

#endif
