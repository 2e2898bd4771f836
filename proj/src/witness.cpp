#include "multidir/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multidir/errors.hpp"

namespace multidir {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

int estimator_refinement(int grid) { return std::max(grid, 16); }

void finish_report(WitnessReport& rep, const ScalarFunction& f, const Vec& a, const ConvexBody& A,
                   int grid, double tol) {
    ConvexBody directions = translate(A, scaled(a, -1.0));
    rep.derivative_estimate =
        multidir_derivative(f, rep.witness, directions, TSchedule{}, estimator_refinement(grid));
    rep.f_at_witness = f.evaluate(rep.witness);
    rep.slack = rep.derivative_estimate.estimate - rep.target;
    rep.grid = grid;
    rep.tol = tol;
    // half the tolerance budget to value comparisons, half to derivative slack
    rep.value_ok = rep.f_at_witness <= rep.bound_checked + 0.5 * tol;
    rep.slack_ok = rep.slack >= -0.5 * tol;
    rep.membership_ok = interval_membership(MultiInterval{a, A}, rep.witness, std::max(tol, 1e-7));
    rep.verified = rep.value_ok && rep.slack_ok && rep.membership_ok;
}

}  // namespace

std::vector<Vec> interval_grid(const Vec& a, const ConvexBody& A, int grid) {
    auto samples = sample_body(A, grid);
    std::vector<Vec> pts;
    pts.reserve(static_cast<std::size_t>(grid + 1) * samples.size());
    for (int i = 0; i <= grid; ++i) {
        double t = static_cast<double>(i) / grid;
        if (i == 0) {
            pts.push_back(a);
            continue;
        }
        for (const auto& y : samples) pts.push_back(axpy(a, t, sub(y, a)));
    }
    return pts;
}

WitnessReport rolle_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A, int grid,
                            double tol) {
    if (grid < 1) throw Error("rolle_witness: grid must be positive");
    double fa = f.evaluate(a);
    if (fa == kInf) throw PreconditionFailedError("rolle_witness: f(a) = +infinity");
    double inf_s = inf_over_body(f, A, grid);
    if (fa > inf_s + tol)
        throw PreconditionFailedError("rolle_witness: f(a) > sampled inf f(A) + tol");

    WitnessReport rep;
    Vec apex = a;
    for (int depth = 0;; ++depth) {
        double f_apex = f.evaluate(apex);
        bool strict = f_apex < inf_s - tol && !body_membership(A, apex, tol);
        if (strict) {
            auto grid_pts = interval_grid(apex, A, grid);
            std::vector<Vec> sublevel;
            for (auto& x : grid_pts)
                if (f.evaluate(x) <= f_apex + tol) sublevel.push_back(std::move(x));
            PointCloud M = PointCloud::from_points(std::move(sublevel), A.context());
            rep.witness = bp_lemma(M, apex, A, tol).point;
            break;
        }
        // general-case reduction: look for a strictly better apex inside [apex, A]
        Vec best;
        double best_val = inf_s - tol;
        for (auto& x : interval_grid(apex, A, grid)) {
            double v = f.evaluate(x);
            if (v < best_val && A.context().dist(x, apex) > 1e-12) {
                best_val = v;
                best = std::move(x);
            }
        }
        if (best.empty() || depth >= 8) {
            rep.witness = apex;
            rep.degenerate_branch = true;
            break;
        }
        apex = std::move(best);
    }

    rep.bound_checked = fa;
    rep.target = 0.0;
    finish_report(rep, f, a, A, grid, tol);
    return rep;
}

WitnessReport lagrange_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A,
                               double r, int grid, double tol) {
    double fa = f.evaluate(a);
    if (fa == kInf) throw PreconditionFailedError("lagrange_witness: f(a) = +infinity");
    double inf_s = inf_over_body(f, A, grid);
    if (r > inf_s + tol)
        throw PreconditionFailedError("lagrange_witness: r > sampled inf f(A) + tol");

    double kappa = r - fa;
    if (std::fabs(kappa) <= 1e-15) {
        // zero-slope lift is the identity in t
        WitnessReport rep = rolle_witness(f, a, A, grid, tol);
        rep.bound_checked = std::max(fa, r);
        rep.target = r - fa;
        rep.slack = rep.derivative_estimate.estimate - rep.target;
        return rep;
    }

    // normalise to f - f(a) and lift with slope kappa = r - f(a)
    ScalarFunction h;
    h.label = f.label + "-f(a)";
    h.convex = f.convex;
    auto base_eval = f.evaluate;
    h.evaluate = [base_eval, fa](const Vec& x) {
        double v = base_eval(x);
        return v == kInf ? kInf : v - fa;
    };
    h.oracle = f.oracle;

    LiftedProblem lp = lift(h, kappa);
    Vec a_lift = lp.lift_point(a, 0.0);
    ConvexBody A_lift = lp.lift_body(A);
    WitnessReport lifted = rolle_witness(lp.lifted, a_lift, A_lift, grid, tol);

    WitnessReport rep;
    rep.witness = LiftedProblem::project_point(lifted.witness);
    rep.degenerate_branch = lifted.degenerate_branch;
    rep.bound_checked = std::max(fa, r);
    rep.target = r - fa;
    finish_report(rep, f, a, A, grid, tol);
    return rep;
}

bool verify_witness(const ScalarFunction& f, const Vec& a, const ConvexBody& A, double r,
                    const Vec& candidate, double tol) {
    if (!interval_membership(MultiInterval{a, A}, candidate, std::max(tol, 1e-7))) return false;
    double fa = f.evaluate(a);
    double fc = f.evaluate(candidate);
    if (fc > std::max(fa, r) + 0.5 * tol) return false;
    ConvexBody directions = translate(A, scaled(a, -1.0));
    auto est = multidir_derivative(f, candidate, directions, TSchedule{}, estimator_refinement(24));
    return est.estimate >= (r - fa) - 0.5 * tol;
}

}  // namespace multidir
