#ifndef HULLSEP_STATE_HPP
#define HULLSEP_STATE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "geometry.hpp"

namespace hullsep {

enum class StepSide { K, KPrime };

inline const char* side_name(StepSide s) { return s == StepSide::K ? "K" : "K'"; }

struct PairState {
    Vec p;
    Vec p_prime;
    double gap = 0.0;
    std::optional<Vec> last_pivot_k;
    std::optional<Vec> last_pivot_kp;
    std::optional<Vec> coeffs_k;   // barycentric weights, point-set bodies only
    std::optional<Vec> coeffs_kp;
    std::uint64_t revision = 0;    // bumped on every mutation, for cache staleness checks
};

enum class PivotStrategy { MaxViolation, FirstViolation, MinAngle };

enum class EngineChoice { Auto, Naive, Gram };

struct RunOptions {
    double eps = 1e-3;
    std::optional<double> eps_abs;        // default 1e-12·ρ̂, resolved at run start
    std::optional<std::size_t> max_iter;  // default from the budget formula, capped at 1e7
    PivotStrategy strategy = PivotStrategy::MaxViolation;
    EngineChoice engine = EngineChoice::Auto;
    std::uint64_t seed = 0;               // scan order for first-violation
    bool alternate_sides = false;
    bool exact_diameter = false;
    bool record_steps = false;
};

enum class TerminationReason { Intersection, Witness, DistanceConverged, MaxIter };

inline const char* termination_name(TerminationReason r) {
    switch (r) {
        case TerminationReason::Intersection: return "intersection";
        case TerminationReason::Witness: return "witness";
        case TerminationReason::DistanceConverged: return "distance-converged";
        case TerminationReason::MaxIter: return "max-iter";
    }
    return "unknown";
}

// Per-step audit record, kept only when RunOptions::record_steps is set.
struct StepRecord {
    std::size_t iter = 0;
    StepSide side = StepSide::K;
    int pivot_index = -1;           // -1 for bodies without vertex indices
    double alpha = 0.0;
    double gap_before = 0.0;
    double gap_after = 0.0;
    bool weak = false;              // true for gap-reduction steps past a witness
    int contraction_case = 0;       // 1..4 for pivot steps, 0 for weak steps
    double bound = 0.0;             // contraction bound the step was audited against
    bool bound_applicable = true;   // audited hypothesis held for this step
    bool bound_ok = true;
};

// Gap-per-iteration history with deterministic stride doubling so traces of
// very long runs stay bounded in memory.
class GapHistory {
  public:
    void push(double gap) {
        if (counter_ % stride_ == 0) {
            if (values_.size() == kCap) {
                std::vector<double> kept;
                kept.reserve(kCap / 2);
                for (std::size_t i = 0; i < values_.size(); i += 2) kept.push_back(values_[i]);
                values_ = std::move(kept);
                stride_ *= 2;
            }
            if (counter_ % stride_ == 0) values_.push_back(gap);
        }
        ++counter_;
    }

    const std::vector<double>& values() const { return values_; }
    std::size_t stride() const { return stride_; }
    std::size_t total_pushed() const { return counter_; }

  private:
    static constexpr std::size_t kCap = 65536;
    std::vector<double> values_;
    std::size_t stride_ = 1;
    std::size_t counter_ = 0;
};

struct RunTrace {
    std::size_t iterations = 0;
    std::size_t support_calls = 0;
    std::uint64_t arith_ops = 0;       // in-loop work, excluding preprocessing
    std::uint64_t precompute_ops = 0;  // one-time Gram products, when used
    TerminationReason termination = TerminationReason::Intersection;
    GapHistory gap_history;
    std::vector<StepRecord> steps;  // populated only when record_steps
    bool record_steps = false;

    // Audit tallies, always maintained (the checks are O(1) per step).
    std::size_t contraction_violations = 0;
    std::size_t weak_violations = 0;
    std::size_t weak_steps = 0;
    std::size_t weak_steps_audited = 0;
    bool budget_flagged = false;

    // Resolved run parameters, echoed into reports.
    double rho_hat = 0.0;
    double eps_abs_resolved = 0.0;
    std::size_t max_iter_resolved = 0;
    std::size_t cache_refreshes = 0;  // gram drift-control refreshes
};

enum class CertKind { Intersection, Witness };

struct CertificateI {
    CertKind kind = CertKind::Intersection;
    PairState pair;
    std::optional<Hyperplane> separator;     // witness certificates only
    double relative_gap_basis = 0.0;         // d to the last pivot used by the stop test
    std::optional<StepSide> basis_side;      // absent when the absolute floor fired
};

struct SupportGap {
    Vec v;
    Vec v_prime;
    double lower = 0.0;    // (hᵀv − hᵀv′)/‖h‖
    double delta_v = 0.0;
    double delta_vp = 0.0;
    double big_e = 0.0;    // E = E_v + E_v′ = gap − lower
    double e_v = 0.0;
    double e_vp = 0.0;
    double rho = 0.0;      // d(p, v)
    double rho_prime = 0.0;
};

struct DistanceCertificate {
    PairState pair;
    double delta = 0.0;        // d(p,p′), upper bound on the true distance
    double lower = 0.0;        // final iteration's lower bound
    double lower_best = 0.0;   // max of all lower bounds seen
    Hyperplane h_v;            // supporting hyperplane touching K
    Hyperplane h_vp;           // supporting hyperplane touching K′
    Vec v;                     // support point of K on h_v
    Vec v_prime;               // support point of K′ on h_vp
    double eps_achieved = 0.0;
    double rho = 0.0;
    double rho_prime = 0.0;
};

struct MaxIterExceeded : Error {
    MaxIterExceeded(const std::string& w, PairState best_state, RunTrace partial_trace)
        : Error(w), best(std::move(best_state)), trace(std::move(partial_trace)) {}
    PairState best;
    RunTrace trace;
};

}  // namespace hullsep

#endif
