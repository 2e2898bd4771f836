#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "multidir/bishop_phelps.hpp"
#include "multidir/errors.hpp"

using namespace multidir;
using namespace multidir::testing;

namespace {

PointCloud cloud2(std::vector<Vec> pts) {
    return PointCloud::from_points(std::move(pts), VectorSpaceContext::euclidean(2));
}

// independent extremality scan with the exact conic solver (d generators in
// dimension d)
bool extremal_by_scan(const PointCloud& V, const std::vector<Vec>& gens, const Vec& cand,
                      double tol = 1e-9) {
    for (const auto& y : V.points) {
        if (V.context.dist(y, cand) <= 1e-12) continue;
        if (conic_member_exact(sub(y, cand), gens, tol)) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("two point cloud") {
    PointCloud V = cloud2({{0.0, 0.0}, {1.0, 0.0}});
    ConvexBody B = ConvexBody::polytope({{1.0, 0.0}});
    auto [x, trace] = extremal_point(V, B, {0.0, 0.0}, 1e-9);
    CHECK(x == Vec{1.0, 0.0});
    CHECK(trace.steps.size() == 1);
    // exhaustive scan over both points picks the same extremal
    for (const auto& p : V.points) {
        bool extremal = true;
        for (const auto& q : V.points)
            if (q != p && q[0] > p[0] && q[1] == p[1]) extremal = false;
        CHECK(extremal == (p == x));
    }
}

TEST_CASE("singleton cloud") {
    PointCloud V = cloud2({{0.25, -0.5}});
    ConvexBody B = ConvexBody::polytope({{1.0, 1.0}});
    auto [x, trace] = extremal_point(V, B, {0.25, -0.5}, 1e-9);
    CHECK(x == Vec{0.25, -0.5});
    CHECK(trace.steps.empty());
}

TEST_CASE("grid cloud walks to the far corner") {
    std::vector<Vec> pts;
    for (int i = 0; i <= 10; ++i)
        for (int j = 0; j <= 10; ++j) pts.push_back({i / 10.0, j / 10.0});
    PointCloud V = cloud2(std::move(pts));
    ConvexBody B = scale(ConvexBody::polytope({{1.0, 0.0}, {0.0, 1.0}}), 0.1);
    auto [x, trace] = extremal_point(V, B, {0.0, 0.0}, 1e-9);
    CHECK(x == Vec{1.0, 1.0});
    // brute-force scan: (1,1) is the unique point with no successor in the
    // nonnegative-quadrant cone
    std::vector<Vec> gens = {{0.1, 0.0}, {0.0, 0.1}};
    int extremal_count = 0;
    for (const auto& p : V.points)
        if (extremal_by_scan(V, gens, p)) ++extremal_count;
    CHECK(extremal_count == 1);
    CHECK(extremal_by_scan(V, gens, x));
}

TEST_CASE("errors") {
    PointCloud V = cloud2({{0.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(extremal_point(V, ConvexBody::polytope({{1.0, 0.0}}), {5.0, 5.0}, 1e-9),
                    StartNotInCloudError);
    CHECK_THROWS_AS(extremal_point(V, ConvexBody::polytope({{0.0, 0.0}, {1.0, 0.0}}),
                                   {0.0, 0.0}, 1e-9),
                    ZeroInBodyError);
    ConvexBody A = ConvexBody::polytope({{2.0, -1.0}, {2.0, 1.0}});
    CHECK_THROWS_AS(bp_lemma(V, {5.0, 5.0}, A, 1e-9), ApexNotInCloudError);
    PointCloud W = cloud2({{2.0, 0.0}, {1.0, 0.0}});
    CHECK_THROWS_AS(bp_lemma(W, {2.0, 0.0}, A, 1e-9), ApexInBodyError);
}

TEST_CASE("bp_lemma examples") {
    ConvexBody A = ConvexBody::polytope({{2.0, -1.0}, {2.0, 1.0}});

    // singleton M returns the apex
    PointCloud M1 = cloud2({{0.0, 0.0}});
    CHECK(bp_lemma(M1, {0.0, 0.0}, A, 1e-9).point == Vec{0.0, 0.0});

    // collinear cloud: all three points lie in the cone; the farthest wins
    PointCloud M2 = cloud2({{0.0, 0.0}, {0.5, 0.0}, {1.0, 0.0}});
    auto res = bp_lemma(M2, {0.0, 0.0}, A, 1e-9);
    CHECK(res.point == Vec{1.0, 0.0});
    CHECK(res.cone_filtered == 3);
    // exhaustive scan agrees
    std::vector<Vec> gens = {{2.0, -1.0}, {2.0, 1.0}};
    CHECK(extremal_by_scan(M2, gens, res.point));
    CHECK_FALSE(extremal_by_scan(M2, gens, {0.5, 0.0}));

    // sublevel grid of f(x) = (x1 - 1)^2 at level f(a) = 1 on [a, A]:
    // the whole interval qualifies and the extremal point reaches x1 = 2
    std::vector<Vec> pts;
    for (int i = 0; i <= 20; ++i)
        for (int j = 0; j <= 20; ++j) {
            double t = i / 20.0;
            double w = -1.0 + 2.0 * j / 20.0;
            Vec y = {2.0 * t, w * t};
            double f = (y[0] - 1.0) * (y[0] - 1.0);
            if (f <= 1.0 + 1e-9) pts.push_back(y);
        }
    PointCloud M3 = cloud2(std::move(pts));
    auto res3 = bp_lemma(M3, {0.0, 0.0}, A, 1e-9);
    CHECK(res3.point[0] == doctest::Approx(2.0));
    CHECK(extremal_by_scan(M3, gens, res3.point));
}

TEST_CASE("orbit properties on random clouds") {
    std::mt19937_64 rng(53);
    for (int trial = 0; trial < 25; ++trial) {
        int dim = trial % 2 == 0 ? 2 : 3;
        int npts = 30 + trial * 7;
        std::vector<Vec> pts;
        for (int i = 0; i < npts; ++i) pts.push_back(random_point(rng, dim, -1.0, 1.0));
        PointCloud V = PointCloud::from_points(std::move(pts), VectorSpaceContext::euclidean(dim));
        // generators with positive first coordinate keep 0 outside the hull
        std::vector<Vec> gens;
        for (int g = 0; g < dim; ++g) {
            Vec v = random_point(rng, dim, -0.4, 0.4);
            v[0] = 0.5 + 0.5 * std::fabs(v[0]);
            gens.push_back(v);
        }
        ConvexBody B = ConvexBody::polytope(gens);
        auto st = cone_stats(B);
        const Vec start = V.points[static_cast<std::size_t>(trial) % V.points.size()];
        auto [x, trace] = extremal_point(V, B, start, 1e-9);

        // exhaustive no-successor scan with the independent conic solver
        CHECK(extremal_by_scan(V, gens, x));

        // orbit length bound: sum ||steps|| <= ||x_N - x_0|| / c
        CHECK(trace.total_step_length <= V.context.dist(x, start) / st.c + 1e-9);

        // candidate counts strictly decrease
        for (std::size_t i = 1; i < trace.steps.size(); ++i)
            CHECK(trace.steps[i].candidates < trace.steps[i - 1].candidates);

        // every step satisfies the half-sup rule (greedy attains the sup)
        for (const auto& stp : trace.steps) CHECK(stp.step_norm > 0.5 * stp.nu - 1e-12);

        // determinism
        auto [x2, trace2] = extremal_point(V, B, start, 1e-9);
        CHECK(x2 == x);
        REQUIRE(trace2.visited.size() == trace.visited.size());
        for (std::size_t i = 0; i < trace.visited.size(); ++i)
            CHECK(trace2.visited[i] == trace.visited[i]);
    }
}

TEST_CASE("bp_lemma postcondition holds on every call (random)") {
    std::mt19937_64 rng(59);
    for (int trial = 0; trial < 15; ++trial) {
        const int dim = 2;
        std::vector<Vec> pts{zeros(dim)};
        for (int i = 0; i < 60; ++i) pts.push_back(random_point(rng, dim, -0.2, 1.2));
        PointCloud M = PointCloud::from_points(std::move(pts), VectorSpaceContext::euclidean(dim));
        std::vector<Vec> gens;
        for (int g = 0; g < dim; ++g) {
            Vec v = random_point(rng, dim, -0.5, 0.5);
            v[0] = 1.0 + std::fabs(v[0]);
            gens.push_back(v);
        }
        ConvexBody A = ConvexBody::polytope(gens);
        // bp_lemma runs its own exhaustive post-verification and throws on failure
        auto res = bp_lemma(M, zeros(dim), A, 1e-9);
        CHECK(extremal_by_scan(M, gens, res.point));
        CHECK(M.contains(res.point, 1e-9));
    }
}
