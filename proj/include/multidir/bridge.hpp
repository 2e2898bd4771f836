#ifndef MULTIDIR_BRIDGE_HPP
#define MULTIDIR_BRIDGE_HPP

#include <cstdint>
#include <vector>

#include "multidir/derivative.hpp"
#include "multidir/geometry.hpp"
#include "multidir/oracles.hpp"
#include "multidir/witness.hpp"

namespace multidir {

// psi_n(x) = n * dist(x, apex + C(0; A)); convex, nonnegative, zero on the cone
struct PenaltyFunction {
    int n = 1;
    Cone cone;

    double evaluate(const Vec& x) const;
    // a validated subgradient of psi_n at x approximately minimising
    // ||target + q|| in the dual norm; built from supporting halfspaces of
    // sampled difference quotients
    Vec select_subgradient(const Vec& x, const Vec& target) const;
    Vec snap_to_cone(const Vec& x) const;
};

// uniform access to the convex side of the fuzzy minimisation
struct ConvexOracle {
    std::function<double(const Vec&)> evaluate;
    std::function<Vec(const Vec&, const Vec&)> select;  // (x, target) -> q
    std::function<Vec(const Vec&)> snap;                // optional improvement candidate
};

ConvexOracle oracle_from(const ScalarFunction& g);
ConvexOracle oracle_from(const PenaltyFunction& psi);

struct FuzzyMinResult {
    Vec x;
    Vec p;
    Vec y;  // equals x: the minimiser is shared between both oracles
    Vec q;
    double value = 0.0;       // f(x) + g(y)
    double grid_min = 0.0;    // best sampled value before local descent
    double pq_norm = 0.0;     // ||p + q|| in the dual norm
};

// Operational fuzzy minimisation: multi-start grid + pattern descent over the
// ball, then subgradient selection with ||p + q|| <= eps.
FuzzyMinResult fuzzy_min_pair(const ScalarFunction& f, const ConvexOracle& g, double eps,
                              const Vec& ball_center, double ball_radius,
                              const VectorSpaceContext& ctx, int refinement, std::uint64_t seed);

struct BridgeTraceRow {
    int n = 0;
    Vec x;
    Vec q;  // the selected penalty subgradient
    double f_value = 0.0;
    double psi_value = 0.0;
    double pq_norm = 0.0;
    double inf_p = 0.0;  // inf p(A)
    bool interior = false;
    bool accepted = false;
};

struct BridgeResult {
    Vec x;
    Vec p;
    double gamma = 0.0;
    GrowthReport growth;
    DerivativeEstimate estimate;  // for f^-(xbar; A_delta)
    std::vector<BridgeTraceRow> trace;
    int accepted_n = 0;
};

// Prop.-style bridge: from a positive multidirectional derivative over the
// enlarged body to a subgradient p with inf p(A) > -eps near xbar.
BridgeResult bridge_subgradient(const ScalarFunction& f, const Vec& xbar, const ConvexBody& A,
                                double delta, double eps, int refinement, std::uint64_t seed);

struct DualCliParams {
    double eps = 0.0;
    double delta1 = 0.0;
    double r1 = 0.0;
    double delta = 0.0;
    double Delta = 0.0;
    double r_prime = 0.0;
    double f_a = 0.0;
    double r = 0.0;
    double inf_enlarged_delta1 = 0.0;  // sampled inf f(A_{delta1})
    double inf_lifted_delta = 0.0;     // sampled inf of the lifted function over A_delta x [1-d,1+d]

    void validate() const;  // re-evaluates every construction inequality
};

struct DualWitnessReport {
    Vec xi;
    Vec p;
    double f_at_xi = 0.0;
    double membership_dist = 0.0;
    bool membership_ok = false;
    double value_lhs = 0.0;
    double value_rhs = 0.0;
    bool value_ok = false;
    double pairing = 0.0;      // inf p(A) - p(a)
    double pairing_rhs = 0.0;  // r - f(a)
    bool pairing_ok = false;
    bool verified = false;
    DualCliParams params;
    double lifted_pairing = 0.0;  // inf (p, f(a)-r1)(A~ - a~)
    int accepted_n = 0;
    WitnessReport lifted_witness;
    std::vector<BridgeTraceRow> trace;
};

// full dual mean value inequality: witness xi in [a,A]_eps with subgradient p
// satisfying inf p(A) - p(a) > r - f(a)
DualWitnessReport clarke_ledyaev_dual(const ScalarFunction& f, const Vec& a, const ConvexBody& A,
                                      double r, double eps, int grid, std::uint64_t seed);

}  // namespace multidir

#endif  // MULTIDIR_BRIDGE_HPP
