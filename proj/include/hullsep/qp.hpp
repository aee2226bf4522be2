#ifndef HULLSEP_QP_HPP
#define HULLSEP_QP_HPP

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bodies.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "oracles.hpp"

namespace hullsep {

// Reduction of min{xᵀQx + cᵀx : Ax ≤ b} to the nearest point of a polytope
// from the origin: with Q = LLᵀ and Qx₀ = −½c, substituting y = Lᵀ(x − x₀)
// turns the objective into ‖y‖² − x₀ᵀQx₀ over {y : (AL⁻ᵀ)y ≤ b − Ax₀}.
struct QpReduction {
    PolytopeBody feasible;          // the transformed constraint set in y
    PointSetBody origin;            // the query point, a singleton at 0
    Vec shift;                      // x₀, the unconstrained minimizer
    std::vector<Vec> chol;          // lower factor L of Q
    double objective_offset = 0.0;  // −x₀ᵀQx₀

    Vec back_map(const Vec& y) const {
        if (y.size() != shift.size()) throw DimensionMismatch("qp: back_map point dimension");
        Vec x = y;
        for (std::size_t i = x.size(); i-- > 0;) {
            for (std::size_t j = i + 1; j < x.size(); ++j) x[i] -= chol[j][i] * x[j];
            x[i] /= chol[i][i];
        }
        return add(x, shift);
    }

    double objective_value(const Vec& y) const { return norm_sq(y) + objective_offset; }
};

inline QpReduction reduce_qp(const std::vector<Vec>& q, const Vec& c,
                             const std::vector<Vec>& a, const Vec& b) {
    const std::size_t m = q.size();
    if (m == 0) throw EmptyBody("qp: empty objective matrix");
    if (c.size() != m) throw DimensionMismatch("qp: objective vector length");
    double scale = 0.0;
    for (const auto& row : q) {
        if (row.size() != m) throw DimensionMismatch("qp: objective matrix not square");
        for (double v : row) scale = std::max(scale, std::abs(v));
    }
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (std::abs(q[i][j] - q[j][i]) > 1e-12 * (1.0 + scale))
                throw Error("qp: objective matrix not symmetric");
    if (a.empty()) throw UnboundedFeasibleSet("qp: no constraints");
    if (a.size() != b.size()) throw DimensionMismatch("qp: row count of A vs b");
    for (const auto& row : a)
        if (row.size() != m) throw DimensionMismatch("qp: constraint row width");

    std::vector<Vec> chol = q;
    if (!oracle_detail::cholesky(chol, 0.0))
        throw NotPositiveDefinite("qp: objective matrix has a nonpositive pivot");

    Vec shift = scaled(c, -0.5);
    oracle_detail::cholesky_solve(chol, shift);

    std::vector<Vec> rows;
    rows.reserve(a.size());
    Vec rhs(a.size());
    for (std::size_t r = 0; r < a.size(); ++r) {
        Vec z = a[r];
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < i; ++j) z[i] -= chol[i][j] * z[j];
            z[i] /= chol[i][i];
        }
        rows.push_back(std::move(z));
        rhs[r] = b[r] - dot(a[r], shift);
    }

    PolytopeBody feasible(std::move(rows), std::move(rhs));
    try {
        feasible.diameter_bound();
    } catch (const UnboundedBody& e) {
        throw UnboundedFeasibleSet(std::string("qp: ") + e.what());
    }

    double x0_q_x0 = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) x0_q_x0 += shift[i] * q[i][j] * shift[j];

    return QpReduction{std::move(feasible), PointSetBody({Vec(m, 0.0)}), std::move(shift),
                       std::move(chol), -x0_q_x0};
}

}  // namespace hullsep

#endif
