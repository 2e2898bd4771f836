#ifndef MULTIDIR_WITNESS_HPP
#define MULTIDIR_WITNESS_HPP

#include "multidir/bishop_phelps.hpp"
#include "multidir/derivative.hpp"
#include "multidir/geometry.hpp"
#include "multidir/oracles.hpp"

namespace multidir {

struct WitnessReport {
    Vec witness;
    double f_at_witness = 0.0;
    double bound_checked = 0.0;  // f(a) for Rolle, max{f(a), r} for Lagrange
    DerivativeEstimate derivative_estimate;  // for f^-(witness; A - a)
    double target = 0.0;                     // 0 or r - f(a)
    double slack = 0.0;                      // estimate - target
    int grid = 0;
    double tol = 0.0;
    bool value_ok = false;
    bool slack_ok = false;
    bool membership_ok = false;
    bool verified = false;
    bool degenerate_branch = false;  // apex returned via the general-case reduction
};

// the (t x body-sample) discretisation of [a, A]
std::vector<Vec> interval_grid(const Vec& a, const ConvexBody& A, int grid);

// Rolle-type witness: f(a) <= inf f(A) yields x in [a,A] with f(x) <= f(a)
// and nonnegative multidirectional derivative towards A - a.
WitnessReport rolle_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A, int grid,
                            double tol);

// Lagrange-type witness via the lifting (x,t) -> f(x) - (r - f(a)) t.
WitnessReport lagrange_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A,
                               double r, int grid, double tol);

// independent re-check of both conclusions at a candidate point
bool verify_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A, double r,
                    const Vec& candidate, double tol);

}  // namespace multidir

#endif  // MULTIDIR_WITNESS_HPP
