#ifndef HULLSEP_SIMPLEX_LP_HPP
#define HULLSEP_SIMPLEX_LP_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"

namespace hullsep {

enum class LpStatus { Optimal, Infeasible, Unbounded };

// max objectiveᵀx  subject to  A x ≤ b, x free.
struct LpProblem {
    Vec objective;
    std::vector<Vec> A;
    Vec b;
};

struct LpOutcome {
    LpStatus status = LpStatus::Infeasible;
    Vec x;
    double value = 0.0;
    std::vector<int> basis;
};

inline constexpr double kLpFeasTolRel = 1e-9;
inline constexpr double kLpPivotFloor = 1e-11;
inline constexpr std::size_t kLpMaxPivots = 100000;

namespace lp_detail {

// Dense two-phase tableau over the standard form  max cᵀu, E u = d, u ≥ 0.
// zrow[j] holds z_j − c_j (nonnegative at optimality), zrow[ncol] the current
// objective value; both are pivoted together with the rows.
struct Tableau {
    std::vector<Vec> rows;  // each of length ncol+1, rhs last
    Vec zrow;
    std::vector<int> basis;
    int nstruct = 0;
    int ncol = 0;
};

inline void pivot_at(Tableau& tb, std::size_t r, int s) {
    Vec& pr = tb.rows[r];
    const double pe = pr[static_cast<std::size_t>(s)];
    for (double& x : pr) x /= pe;
    pr[static_cast<std::size_t>(s)] = 1.0;
    for (std::size_t i = 0; i < tb.rows.size(); ++i) {
        if (i == r) continue;
        const double f = tb.rows[i][static_cast<std::size_t>(s)];
        if (f == 0.0) continue;
        for (int j = 0; j <= tb.ncol; ++j)
            tb.rows[i][static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        tb.rows[i][static_cast<std::size_t>(s)] = 0.0;
    }
    const double f = tb.zrow[static_cast<std::size_t>(s)];
    if (f != 0.0) {
        for (int j = 0; j <= tb.ncol; ++j)
            tb.zrow[static_cast<std::size_t>(j)] -= f * pr[static_cast<std::size_t>(j)];
        tb.zrow[static_cast<std::size_t>(s)] = 0.0;
    }
    tb.basis[r] = s;
}

// Bland's rule: lowest-index improving column; lowest ratio, ties to the
// lowest basic id. Columns with only sub-floor positive entries are skipped
// in favor of the next improving column; running out of alternatives is a
// reported breakdown, never a silent stop.
template <class Allowed>
LpStatus bland_loop(Tableau& tb, Allowed allowed, double cost_tol) {
    const std::size_t m = tb.rows.size();
    for (std::size_t iter = 0; iter < kLpMaxPivots; ++iter) {
        bool any_improving = false;
        bool advanced = false;
        for (int j = 0; j < tb.ncol; ++j) {
            if (!allowed(j) || tb.zrow[static_cast<std::size_t>(j)] >= -cost_tol) continue;
            any_improving = true;
            std::size_t leave = m;
            double best_ratio = 0.0;
            bool positive_entry = false;
            for (std::size_t r = 0; r < m; ++r) {
                const double a = tb.rows[r][static_cast<std::size_t>(j)];
                if (a > 0.0) positive_entry = true;
                if (a <= kLpPivotFloor) continue;
                const double ratio = tb.rows[r][static_cast<std::size_t>(tb.ncol)] / a;
                if (leave == m || ratio < best_ratio ||
                    (ratio == best_ratio && tb.basis[r] < tb.basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == m) {
                if (!positive_entry) return LpStatus::Unbounded;
                continue;  // sub-floor pivots only, try the next column
            }
            pivot_at(tb, leave, j);
            advanced = true;
            break;
        }
        if (!any_improving) return LpStatus::Optimal;
        if (!advanced)
            throw NumericalBreakdown("simplex: all improving columns have pivots below " +
                                     std::to_string(kLpPivotFloor));
    }
    throw NumericalBreakdown("simplex: pivot limit reached");
}

// max objectiveᵀu s.t. rows·u = rhs, u ≥ 0; empty objective = feasibility only.
struct StandardForm {
    std::vector<Vec> rows;
    Vec rhs;
    int nvars = 0;
};

struct CoreOutcome {
    LpStatus status = LpStatus::Infeasible;
    Vec u;
    double value = 0.0;
    std::vector<int> basis;
};

inline CoreOutcome simplex_core(const StandardForm& sf, const Vec& objective) {
    const std::size_t m = sf.rows.size();
    const int n = sf.nvars;
    Tableau tb;
    tb.nstruct = n;
    tb.ncol = n + static_cast<int>(m);
    tb.rows.assign(m, Vec(static_cast<std::size_t>(tb.ncol) + 1, 0.0));
    tb.basis.assign(m, 0);
    double rhs_scale = 0.0;
    for (std::size_t r = 0; r < m; ++r) {
        if (static_cast<int>(sf.rows[r].size()) != n)
            throw DimensionMismatch("simplex_core: row width");
        const double sgn = sf.rhs[r] < 0.0 ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j)
            tb.rows[r][static_cast<std::size_t>(j)] = sgn * sf.rows[r][static_cast<std::size_t>(j)];
        tb.rows[r][static_cast<std::size_t>(n) + r] = 1.0;
        tb.rows[r][static_cast<std::size_t>(tb.ncol)] = sgn * sf.rhs[r];
        tb.basis[r] = n + static_cast<int>(r);
        rhs_scale = std::max(rhs_scale, std::abs(sf.rhs[r]));
    }

    // Phase 1: maximize −Σ artificials from the all-artificial basis.
    tb.zrow.assign(static_cast<std::size_t>(tb.ncol) + 1, 0.0);
    for (int j = 0; j < n; ++j) {
        double colsum = 0.0;
        for (std::size_t r = 0; r < m; ++r) colsum += tb.rows[r][static_cast<std::size_t>(j)];
        tb.zrow[static_cast<std::size_t>(j)] = -colsum;
    }
    double rhs_sum = 0.0;
    for (std::size_t r = 0; r < m; ++r) rhs_sum += tb.rows[r][static_cast<std::size_t>(tb.ncol)];
    tb.zrow[static_cast<std::size_t>(tb.ncol)] = -rhs_sum;

    const double feas_tol = kLpFeasTolRel * (1.0 + rhs_scale);
    const LpStatus s1 = bland_loop(tb, [](int) { return true; }, kLpFeasTolRel);
    if (s1 == LpStatus::Unbounded)
        throw NumericalBreakdown("simplex: phase-1 objective reported unbounded");
    if (tb.zrow[static_cast<std::size_t>(tb.ncol)] < -feas_tol) return CoreOutcome{};

    // Phase 1 leaves roundoff-sized residues in the rhs column; clamp the
    // negative ones so later ratio tests never see a negative ratio.
    for (auto& row : tb.rows) {
        double& rhs = row[static_cast<std::size_t>(tb.ncol)];
        if (rhs < 0.0 && rhs >= -feas_tol) rhs = 0.0;
    }

    // Drive leftover artificials out of the basis; rows that cannot pivot on
    // any structural column are redundant and dropped.
    for (std::size_t r = tb.rows.size(); r-- > 0;) {
        if (tb.basis[r] < n) continue;
        int col = -1;
        for (int j = 0; j < n; ++j) {
            if (std::abs(tb.rows[r][static_cast<std::size_t>(j)]) > kLpPivotFloor) {
                col = j;
                break;
            }
        }
        if (col >= 0) {
            pivot_at(tb, r, col);
        } else {
            tb.rows.erase(tb.rows.begin() + static_cast<std::ptrdiff_t>(r));
            tb.basis.erase(tb.basis.begin() + static_cast<std::ptrdiff_t>(r));
        }
    }

    LpStatus status = LpStatus::Optimal;
    if (!objective.empty()) {
        if (static_cast<int>(objective.size()) != n)
            throw DimensionMismatch("simplex_core: objective width");
        double obj_scale = 0.0;
        for (double c : objective) obj_scale = std::max(obj_scale, std::abs(c));
        tb.zrow.assign(static_cast<std::size_t>(tb.ncol) + 1, 0.0);
        for (int j = 0; j <= tb.ncol; ++j) {
            double zj = 0.0;
            for (std::size_t r = 0; r < tb.rows.size(); ++r)
                zj += objective[static_cast<std::size_t>(tb.basis[r])] *
                      tb.rows[r][static_cast<std::size_t>(j)];
            const double cj = (j < n) ? objective[static_cast<std::size_t>(j)]
                                      : (j == tb.ncol ? 0.0 : 0.0);
            tb.zrow[static_cast<std::size_t>(j)] = zj - cj;
        }
        status = bland_loop(tb, [n](int j) { return j < n; }, kLpFeasTolRel * (1.0 + obj_scale));
    }

    CoreOutcome out;
    out.status = status;
    if (status != LpStatus::Optimal) return out;
    out.u.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t r = 0; r < tb.rows.size(); ++r)
        if (tb.basis[r] < n)
            out.u[static_cast<std::size_t>(tb.basis[r])] =
                tb.rows[r][static_cast<std::size_t>(tb.ncol)];
    out.value = objective.empty() ? 0.0 : tb.zrow[static_cast<std::size_t>(tb.ncol)];
    out.basis = tb.basis;
    return out;
}

}  // namespace lp_detail

inline LpOutcome solve(const LpProblem& problem) {
    const std::size_t nrows = problem.A.size();
    const int n = static_cast<int>(problem.objective.size());
    if (problem.b.size() != nrows)
        throw DimensionMismatch("solve: row count of A vs b");
    for (const auto& row : problem.A)
        if (static_cast<int>(row.size()) != n) throw DimensionMismatch("solve: row width of A");

    // Free x split as x⁺ − x⁻, one slack per row.
    lp_detail::StandardForm sf;
    sf.nvars = 2 * n + static_cast<int>(nrows);
    sf.rhs = problem.b;
    sf.rows.assign(nrows, Vec(static_cast<std::size_t>(sf.nvars), 0.0));
    for (std::size_t r = 0; r < nrows; ++r) {
        for (int j = 0; j < n; ++j) {
            sf.rows[r][static_cast<std::size_t>(j)] = problem.A[r][static_cast<std::size_t>(j)];
            sf.rows[r][static_cast<std::size_t>(n + j)] = -problem.A[r][static_cast<std::size_t>(j)];
        }
        sf.rows[r][static_cast<std::size_t>(2 * n) + r] = 1.0;
    }
    Vec obj(static_cast<std::size_t>(sf.nvars), 0.0);
    for (int j = 0; j < n; ++j) {
        obj[static_cast<std::size_t>(j)] = problem.objective[static_cast<std::size_t>(j)];
        obj[static_cast<std::size_t>(n + j)] = -problem.objective[static_cast<std::size_t>(j)];
    }

    const auto co = lp_detail::simplex_core(sf, obj);
    LpOutcome out;
    out.status = co.status;
    if (co.status != LpStatus::Optimal) return out;
    out.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j)
        out.x[static_cast<std::size_t>(j)] =
            co.u[static_cast<std::size_t>(j)] - co.u[static_cast<std::size_t>(n + j)];
    out.value = co.value;
    out.basis = co.basis;

    double bscale = 0.0;
    for (double bi : problem.b) bscale = std::max(bscale, std::abs(bi));
    const double tol = kLpFeasTolRel * (1.0 + bscale);
    for (std::size_t r = 0; r < nrows; ++r) {
        double ax = 0.0;
        for (int j = 0; j < n; ++j)
            ax += problem.A[r][static_cast<std::size_t>(j)] * out.x[static_cast<std::size_t>(j)];
        if (ax > problem.b[r] + tol)
            throw NumericalBreakdown("solve: optimal point violates row " + std::to_string(r));
    }
    return out;
}

// Phase-1 feasibility of the stacked system {x : Ax ≤ b, A′x ≤ b′}.
inline bool joint_feasible(const std::vector<Vec>& A, const Vec& b, const std::vector<Vec>& A2,
                           const Vec& b2) {
    if (A.size() != b.size() || A2.size() != b2.size())
        throw DimensionMismatch("joint_feasible: row counts");
    const int n = A.empty() ? (A2.empty() ? 0 : static_cast<int>(A2[0].size()))
                            : static_cast<int>(A[0].size());
    const std::size_t nrows = A.size() + A2.size();
    lp_detail::StandardForm sf;
    sf.nvars = 2 * n + static_cast<int>(nrows);
    sf.rows.assign(nrows, Vec(static_cast<std::size_t>(sf.nvars), 0.0));
    sf.rhs.assign(nrows, 0.0);
    for (std::size_t r = 0; r < nrows; ++r) {
        const Vec& row = r < A.size() ? A[r] : A2[r - A.size()];
        if (static_cast<int>(row.size()) != n) throw DimensionMismatch("joint_feasible: row width");
        for (int j = 0; j < n; ++j) {
            sf.rows[r][static_cast<std::size_t>(j)] = row[static_cast<std::size_t>(j)];
            sf.rows[r][static_cast<std::size_t>(n + j)] = -row[static_cast<std::size_t>(j)];
        }
        sf.rows[r][static_cast<std::size_t>(2 * n) + r] = 1.0;
        sf.rhs[r] = r < A.size() ? b[r] : b2[r - A.size()];
    }
    return lp_detail::simplex_core(sf, Vec{}).status == LpStatus::Optimal;
}

// Barycentric weights putting q in conv(points), or nullopt if q is outside.
inline std::optional<Vec> hull_membership(const std::vector<Vec>& points, const Vec& q) {
    if (points.empty()) throw EmptyBody("hull_membership: no points");
    const std::size_t m = q.size();
    const int n = static_cast<int>(points.size());
    lp_detail::StandardForm sf;
    sf.nvars = n;
    sf.rows.assign(m + 1, Vec(static_cast<std::size_t>(n), 0.0));
    sf.rhs.assign(m + 1, 0.0);
    for (int i = 0; i < n; ++i) {
        if (points[static_cast<std::size_t>(i)].size() != m)
            throw DimensionMismatch("hull_membership: point dimension");
        for (std::size_t d = 0; d < m; ++d)
            sf.rows[d][static_cast<std::size_t>(i)] = points[static_cast<std::size_t>(i)][d];
        sf.rows[m][static_cast<std::size_t>(i)] = 1.0;
    }
    for (std::size_t d = 0; d < m; ++d) sf.rhs[d] = q[d];
    sf.rhs[m] = 1.0;
    const auto co = lp_detail::simplex_core(sf, Vec{});
    if (co.status != LpStatus::Optimal) return std::nullopt;
    return co.u;
}

// Center and radius of a largest inscribed ball of {x : Ax ≤ b}.
inline std::pair<Vec, double> chebyshev_center(const std::vector<Vec>& A, const Vec& b) {
    if (A.empty()) throw UnboundedBody("chebyshev_center: no constraints");
    const std::size_t m = A[0].size();
    LpProblem lp;
    lp.objective.assign(m + 1, 0.0);
    lp.objective[m] = 1.0;
    lp.b = b;
    for (const auto& row : A) {
        Vec ext = row;
        ext.push_back(norm(row));
        lp.A.push_back(std::move(ext));
    }
    const auto out = solve(lp);
    if (out.status == LpStatus::Infeasible)
        throw InfeasibleBody("chebyshev_center: empty polytope");
    if (out.status == LpStatus::Unbounded)
        throw UnboundedBody("chebyshev_center: inscribed radius unbounded");
    // The radius variable is feasible at negative values, so emptiness of the
    // polytope surfaces as a negative optimum rather than LP infeasibility.
    double bscale = 0.0;
    for (double bi : b) bscale = std::max(bscale, std::abs(bi));
    if (out.x[m] < -kLpFeasTolRel * (1.0 + bscale))
        throw InfeasibleBody("chebyshev_center: empty polytope");
    Vec center(out.x.begin(), out.x.begin() + static_cast<std::ptrdiff_t>(m));
    return {center, std::max(out.x[m], 0.0)};
}

}  // namespace hullsep

#endif
