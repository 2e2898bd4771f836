#include "multidir/bishop_phelps.hpp"

#include <algorithm>
#include <cmath>

#include "multidir/errors.hpp"

namespace multidir {

namespace {

bool lex_less(const Vec& a, const Vec& b) {
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < b[i]) return true;
        if (a[i] > b[i]) return false;
    }
    return false;
}

}  // namespace

PointCloud PointCloud::from_points(std::vector<Vec> pts, VectorSpaceContext ctx,
                                   double dedup_tol) {
    PointCloud cloud;
    cloud.context = ctx;
    std::sort(pts.begin(), pts.end(), lex_less);
    for (auto& p : pts) {
        // grid construction yields exact duplicates, adjacent after sorting
        if (!cloud.points.empty() && ctx.dist(p, cloud.points.back()) <= dedup_tol) continue;
        cloud.points.push_back(std::move(p));
    }
    return cloud;
}

bool PointCloud::contains(const Vec& x, double tol) const {
    for (const auto& p : points)
        if (context.dist(p, x) <= tol) return true;
    return false;
}

std::pair<Vec, OrbitTrace> extremal_point(const PointCloud& V, const ConvexBody& B,
                                          const Vec& start, double tol) {
    if (!V.contains(start, std::max(tol, 1e-12)))
        throw StartNotInCloudError("extremal_point: start point is not in the cloud");
    if (body_membership(B, zeros(B.dimension()), tol))
        throw ZeroInBodyError("extremal_point: 0 lies in B within tolerance");

    const auto& ctx = V.context;
    OrbitTrace trace;
    Vec x = start;
    trace.visited.push_back(x);
    int prev_candidates = V.size() + 1;
    for (int iter = 0; iter <= V.size(); ++iter) {
        Cone step_cone = cone_from_directions(x, B);
        int candidates = 0;
        const Vec* best = nullptr;
        double best_norm = -1.0;
        for (const auto& y : V.points) {
            double sn = ctx.dist(y, x);
            if (sn <= 1e-12) continue;
            if (!cone_membership(step_cone, y, tol)) continue;
            ++candidates;
            if (sn > best_norm + 1e-12 ||
                (std::fabs(sn - best_norm) <= 1e-12 && best && lex_less(y, *best))) {
                best_norm = sn;
                best = &y;
            }
        }
        if (candidates == 0) break;
        prev_candidates = candidates;
        (void)prev_candidates;  // successor sets shrink along the orbit; recorded per step
        OrbitStep st;
        st.point = *best;
        st.nu = best_norm;  // the greedy rule attains the sup over a finite set
        st.step_norm = best_norm;
        st.candidates = candidates;
        trace.steps.push_back(st);
        trace.total_step_length += best_norm;
        x = *best;
        trace.visited.push_back(x);
    }
    trace.extremal = x;

    // exhaustive post-verification of the extremality condition
    Cone final_cone = cone_from_directions(x, B);
    for (const auto& y : V.points) {
        if (ctx.dist(y, x) <= 1e-12) continue;
        if (cone_membership(final_cone, y, tol))
            throw Error("extremal_point: postcondition failed, successor survives at " +
                        format_point(y));
    }
    return {x, trace};
}

BpResult bp_lemma(const PointCloud& M, const Vec& a, const ConvexBody& A, double tol) {
    if (!M.contains(a, std::max(tol, 1e-12)))
        throw ApexNotInCloudError("bp_lemma: apex is not in the cloud");
    if (body_membership(A, a, tol)) throw ApexInBodyError("bp_lemma: apex lies in A");

    const auto& ctx = M.context;
    ConvexBody directions = translate(A, scaled(a, -1.0));  // B' = A - a
    Cone base_cone = cone_from_directions(zeros(ctx.dimension), directions);

    // V = (M - a) intersected with C(0; A - a)
    std::vector<Vec> shifted;
    double max_norm = 0.0;
    for (const auto& m : M.points) {
        Vec v = sub(m, a);
        if (!cone_membership(base_cone, v, tol)) continue;
        max_norm = std::max(max_norm, ctx.norm(v));
        shifted.push_back(std::move(v));
    }
    PointCloud V = PointCloud::from_points(std::move(shifted), ctx);

    // scale B' so that inf ||t B'|| strictly exceeds the cloud radius, which
    // gives V cap tB' empty and V inside [0, tB']
    double delta = cone_stats(directions, tol).delta;
    double t = 1.0;
    while (t * delta <= max_norm) t *= 2.0;
    while (t * 0.5 * delta > max_norm && t > 1.0) t *= 0.5;
    if (t * delta <= max_norm) t *= 2.0;
    ConvexBody B = scale(directions, t);

    auto [x0, trace] = extremal_point(V, B, zeros(ctx.dimension), tol);

    BpResult res;
    res.point = add(x0, a);
    res.trace = std::move(trace);
    res.scaling = t;
    res.cone_filtered = V.size();
    for (auto& v : res.trace.visited) v = add(v, a);
    for (auto& st : res.trace.steps) st.point = add(st.point, a);
    res.trace.extremal = res.point;
    return res;
}

}  // namespace multidir
