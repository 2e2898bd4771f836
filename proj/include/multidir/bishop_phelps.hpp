#ifndef MULTIDIR_BISHOP_PHELPS_HPP
#define MULTIDIR_BISHOP_PHELPS_HPP

#include <vector>

#include "multidir/geometry.hpp"

namespace multidir {

// finite stand-in for a closed set, deduplicated at construction
struct PointCloud {
    std::vector<Vec> points;
    VectorSpaceContext context;

    static PointCloud from_points(std::vector<Vec> pts, VectorSpaceContext ctx,
                                  double dedup_tol = 1e-12);
    bool contains(const Vec& x, double tol = 1e-12) const;
    int size() const { return static_cast<int>(points.size()); }
};

struct OrbitStep {
    Vec point;        // x_{n+1}
    double nu = 0.0;  // sup of candidate step norms (attained by the greedy rule)
    double step_norm = 0.0;
    int candidates = 0;  // cone successors available at x_n
};

struct OrbitTrace {
    std::vector<Vec> visited;  // x_0 .. x_N
    std::vector<OrbitStep> steps;
    Vec extremal;
    double total_step_length = 0.0;
};

// Cone-order orbit iteration on a finite cloud: follows successors inside
// x + C(0; B), greedily taking the longest step, until no successor remains.
// The returned point has an empty successor set (verified exhaustively).
std::pair<Vec, OrbitTrace> extremal_point(const PointCloud& V, const ConvexBody& B,
                                          const Vec& start, double tol = kDefaultTol);

struct BpResult {
    Vec point;
    OrbitTrace trace;
    double scaling = 1.0;  // the power-of-two factor t applied to A - a
    int cone_filtered = 0;  // size of V = (M - a) intersected with C(0; A - a)
};

// Translation/scaling wrapper: finds x in M with M cap (x + C(0; A-a)) = {x}.
BpResult bp_lemma(const PointCloud& M, const Vec& a, const ConvexBody& A,
                  double tol = kDefaultTol);

}  // namespace multidir

#endif  // MULTIDIR_BISHOP_PHELPS_HPP
