#ifndef MULTIDIR_ORACLES_HPP
#define MULTIDIR_ORACLES_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "multidir/geometry.hpp"
#include "multidir/vec.hpp"

namespace multidir {

enum class OracleKind { None, Gradient, ConvexMaxAffine };

// Set-valued subgradient access.  `query` returns generators whose convex
// hull is the subdifferential at x (a singleton for smooth functions, the
// active-piece gradients for max-affine functions).
struct SubgradientOracle {
    OracleKind kind = OracleKind::None;
    std::function<std::vector<Vec>(const Vec&)> query;

    // argmin over q in conv(query(x)) of ||target + q||; exact via hull projection
    Vec select(const Vec& x, const Vec& target) const;
};

// An lsc extended-real-valued function; evaluate may return +infinity but
// never -infinity.
struct ScalarFunction {
    std::function<double(const Vec&)> evaluate;
    std::string label;
    SubgradientOracle oracle;
    std::optional<Vec> known_minimizer;  // for (P4) checks on catalog entries
    std::optional<ConvexBody> domain_hint;
    bool convex = false;

    double operator()(const Vec& x) const { return evaluate(x); }
};

// f restricted to a closed ball: equals the base inside, +infinity outside.
struct RestrictedFunction {
    ScalarFunction base;
    Vec center;
    double radius = 0.0;
    VectorSpaceContext context;

    ScalarFunction as_function() const;
};

// f lifted to X x R as (x, t) -> f(x) - kappa * t.
struct LiftedProblem {
    ScalarFunction base;
    double kappa = 0.0;
    VectorSpaceContext base_context;
    VectorSpaceContext lifted_context;
    ScalarFunction lifted;

    Vec lift_point(const Vec& x, double t = 0.0) const;
    static Vec project_point(const Vec& xt);          // drop the last coordinate
    ConvexBody lift_body(const ConvexBody& A) const;  // A x {1}
};

LiftedProblem lift(const ScalarFunction& f, double kappa);

struct InfOverBody {
    double value = 0.0;
    Vec argmin;
};

// Minimum of f over the deterministic sample of A: an upper bound on the
// true infimum that tightens as the refinement grows.
InfOverBody inf_over_body_argmin(const ScalarFunction& f, const ConvexBody& A, int refinement);
double inf_over_body(const ScalarFunction& f, const ConvexBody& A, int refinement);

struct P3P4Report {
    bool p3_checked = false;
    bool p4_checked = false;
    int probes = 0;
    double worst_p3_slack = 0.0;   // min over samples of f(y) - f(x) - p.(y-x)
    double p4_distance = 0.0;      // dist(0, subdifferential hull) at the minimizer
};

P3P4Report check_p3_p4(const SubgradientOracle& oracle, const ScalarFunction& f,
                       const std::vector<Vec>& probes, double tol = 1e-7);

// catalog
ScalarFunction make_linear(Vec p);
ScalarFunction make_affine(Vec p, double b);
ScalarFunction make_quadratic(int dim);                // ||x||^2
ScalarFunction make_shifted_quadratic(Vec z);          // ||x - z||^2
ScalarFunction make_negative_norm(int dim);            // -||x||  (nonconvex)
ScalarFunction make_max_affine(std::vector<std::pair<Vec, double>> pieces);
ScalarFunction make_quadratic_plus_max_affine(int dim);  // ||x||^2/2 + |x_1|
ScalarFunction make_restricted(ScalarFunction base, Vec center, double radius);

std::vector<ScalarFunction> standard_catalog(int dim);
ScalarFunction catalog_by_label(const std::string& label, int dim);

}  // namespace multidir

#endif  // MULTIDIR_ORACLES_HPP
