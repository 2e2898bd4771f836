#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "multidir/bridge.hpp"
#include "multidir/errors.hpp"

using namespace multidir;
using namespace multidir::testing;

namespace {

ScalarFunction zero_function() {
    ScalarFunction f;
    f.evaluate = [](const Vec&) { return 0.0; };
    f.label = "zero";
    f.convex = true;
    f.oracle.kind = OracleKind::Gradient;
    f.oracle.query = [](const Vec& x) { return std::vector<Vec>{zeros(static_cast<int>(x.size()))}; };
    return f;
}

}  // namespace

TEST_CASE("fuzzy_min_pair: cancelling quadratics") {
    ScalarFunction f = make_quadratic(2);
    ScalarFunction g = make_shifted_quadratic({1.0, 0.0});
    auto ctx = VectorSpaceContext::euclidean(2);
    auto res = fuzzy_min_pair(f, oracle_from(g), 1e-6, {0.5, 0.0}, 1.0, ctx, 24, 1);
    CHECK(l2_norm(sub(res.x, {0.5, 0.0})) <= 1e-5);
    CHECK(l2_norm(sub(res.p, {1.0, 0.0})) <= 1e-4);
    CHECK(l2_norm(sub(res.q, {-1.0, 0.0})) <= 1e-4);
    CHECK(res.pq_norm <= 1e-6);
    CHECK(res.value <= res.grid_min + 1e-6);
}

TEST_CASE("fuzzy_min_pair: smooth minimum against the zero function") {
    ScalarFunction f = make_shifted_quadratic({0.5, 0.0});
    ScalarFunction g = zero_function();
    auto ctx = VectorSpaceContext::euclidean(2);
    auto res = fuzzy_min_pair(f, oracle_from(g), 1e-2, {0.4, 0.1}, 1.0, ctx, 24, 2);
    CHECK(l2_norm(sub(res.x, {0.5, 0.0})) <= 1e-4);
    CHECK(l2_norm(res.p) <= 1e-2);
    CHECK(l2_norm(res.q) == 0.0);
}

TEST_CASE("fuzzy_min_pair: max-affine kink against a smooth tilt") {
    // f = |x1|, g = x1 + ||x||^2/10: the sum is minimised at the kink, where
    // the subdifferential interval [-1,1] x {0} contains -grad g
    ScalarFunction f = make_max_affine({{{1.0, 0.0}, 0.0}, {{-1.0, 0.0}, 0.0}});
    ScalarFunction g;
    g.label = "tilt";
    g.convex = true;
    g.evaluate = [](const Vec& x) { return x[0] + dot(x, x) / 10.0; };
    g.oracle.kind = OracleKind::Gradient;
    g.oracle.query = [](const Vec& x) {
        return std::vector<Vec>{{1.0 + x[0] / 5.0, x[1] / 5.0}};
    };
    auto ctx = VectorSpaceContext::euclidean(2);
    auto res = fuzzy_min_pair(f, oracle_from(g), 1e-3, {0.0, 0.0}, 0.5, ctx, 24, 3);
    CHECK(l2_norm(res.x) <= 1e-4);
    CHECK(res.p[0] >= -1.0 - 1e-9);
    CHECK(res.p[0] <= 1.0 + 1e-9);
    CHECK(res.pq_norm <= 1e-3);
}

TEST_CASE("penalty subgradients respect the cone sign condition") {
    // for q in d(psi_n)(x): inf q(-A) >= 0 up to the sampling slack
    std::mt19937_64 rng(61);
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    Cone cone = cone_from_directions({0.3, 0.2}, A);
    auto samples = sample_body(A, 12);
    for (int n : {8, 32}) {
        PenaltyFunction psi{n, cone};
        for (const Vec& x : {Vec{0.3, 0.2}, Vec{1.3, 0.4}, Vec{0.0, 1.0}, Vec{-0.5, -0.5}}) {
            Vec target = random_point(rng, 2, -2.0, 2.0);
            Vec q = psi.select_subgradient(x, target);
            for (const auto& a : samples) CHECK(dot(q, scaled(a, -1.0)) >= -1e-6 * n);
        }
    }
}

TEST_CASE("psi_n convexity and cone invariance") {
    std::mt19937_64 rng(67);
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    ConvexBody A_enl = enlarge(A, 0.25);
    ConvexBody A_prod = ConvexBody::product(A, 1.0, 1.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const ConvexBody& G = trial % 3 == 0 ? A : (trial % 3 == 1 ? A_enl : A_prod);
        int dim = G.dimension();
        Vec apex = trial % 2 == 0 ? zeros(dim) : random_point(rng, dim, -0.5, 0.5);
        PenaltyFunction psi{1 + trial % 16, cone_from_directions(apex, G)};
        Vec x = random_point(rng, dim, -2.0, 2.0);
        Vec y = random_point(rng, dim, -2.0, 2.0);
        double lam = u01(rng);
        Vec mid = add(scaled(x, lam), scaled(y, 1.0 - lam));
        CHECK(psi.evaluate(mid) <= lam * psi.evaluate(x) + (1.0 - lam) * psi.evaluate(y) + 1e-7);
        // psi(x + a) <= psi(x) for generator directions
        auto dirs = sample_body(G, 4);
        const Vec& a = dirs[static_cast<std::size_t>(trial) % dirs.size()];
        CHECK(psi.evaluate(add(x, a)) <= psi.evaluate(x) + 1e-7);
    }
}

TEST_CASE("bridge_subgradient: linear function returns its gradient") {
    ScalarFunction f = make_linear({1.0, 0.0});
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    for (const Vec& xbar : {Vec{0.0, 0.0}, Vec{0.7, -0.4}}) {
        auto res = bridge_subgradient(f, xbar, A, 0.1, 0.05, 16, 5);
        CHECK(res.p == Vec{1.0, 0.0});
        CHECK(inf_linear(A, res.p) == doctest::Approx(1.0));
        CHECK(res.accepted_n >= 8);
        CHECK(A.context().dist(res.x, xbar) < res.gamma);
    }
}

TEST_CASE("bridge_subgradient: smooth case matches the direct gradient") {
    ScalarFunction f = make_quadratic(2);
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    Vec xbar = {2.0, 1.0};  // grad f = (4, 2) pairs positively with A
    auto res = bridge_subgradient(f, xbar, A, 0.1, 0.1, 16, 6);
    Vec grad = f.oracle.query(xbar)[0];
    CHECK(l2_norm(sub(res.p, grad)) <= 0.5);  // p = grad f(x) for x near xbar
    CHECK(inf_linear(A, res.p) > -0.1);
    // accepted pair satisfies the trace inequality inf p(A) >= inf q(-A) - s/n
    const auto& row = res.trace.back();
    REQUIRE(row.accepted);
    double s = sup_norm_over_body(A);
    double inf_q = std::numeric_limits<double>::infinity();
    for (const auto& a : sample_body(A, 12)) inf_q = std::min(inf_q, dot(row.q, scaled(a, -1.0)));
    CHECK(row.inf_p >= inf_q - s / row.n - 1e-6);
}

TEST_CASE("bridge_subgradient: precondition failure") {
    ScalarFunction f = make_linear({-1.0, 0.0});  // derivative over A_delta is negative
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(bridge_subgradient(f, {0.0, 0.0}, A, 0.1, 0.1, 8, 7),
                    PreconditionFailedError);
}

TEST_CASE("clarke_ledyaev_dual: linear end to end") {
    ScalarFunction f = make_linear({1.0, 0.0});
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    auto rep = clarke_ledyaev_dual(f, {0.0, 0.0}, A, 0.5, 0.2, 10, 11);
    CHECK(rep.verified);
    CHECK(l2_norm(sub(rep.p, {1.0, 0.0})) <= 1e-9);
    CHECK(rep.pairing == doctest::Approx(1.0));
    CHECK(rep.pairing > 0.5);
    CHECK(rep.f_at_xi < std::max(0.0, 0.5) + 0.2);
    CHECK(rep.membership_dist <= 0.2);
    rep.params.validate();  // construction inequalities hold verbatim

    // idempotent re-verification from the report fields alone
    CHECK((inf_linear(A, rep.p) - dot(rep.p, Vec{0.0, 0.0})) ==
          doctest::Approx(rep.pairing));
    CHECK(dist_to_interval(MultiInterval{{0.0, 0.0}, A}, rep.xi) ==
          doctest::Approx(rep.membership_dist));
}

TEST_CASE("clarke_ledyaev_dual: large slack when r is far below inf f(A)") {
    ScalarFunction f = make_linear({1.0, 0.0});
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    auto rep = clarke_ledyaev_dual(f, {0.0, 0.0}, A, 1.0 - 10.0, 0.2, 10, 13);
    CHECK(rep.verified);
    CHECK(rep.pairing - rep.pairing_rhs >= 10.0 - 0.2);
}

TEST_CASE("clarke_ledyaev_dual: zero function") {
    ScalarFunction f = zero_function();
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    auto rep = clarke_ledyaev_dual(f, {0.0, 0.0}, A, -1.0, 0.2, 10, 17);
    CHECK(rep.verified);
    CHECK(l2_norm(rep.p) <= 1e-9);
    CHECK(rep.pairing == doctest::Approx(0.0));
    CHECK(rep.pairing > -1.0);
}

TEST_CASE("clarke_ledyaev_dual: condition (4) failure") {
    // r above every probed inf f(A_delta)
    ScalarFunction f = make_linear({1.0, 0.0});
    ConvexBody A = ConvexBody::polytope({{1.0, -1.0}, {1.0, 1.0}});
    CHECK_THROWS_AS(clarke_ledyaev_dual(f, {0.0, 0.0}, A, 2.0, 0.2, 8, 19),
                    ConditionFailedError);
}

TEST_CASE("dual parameter invariants fail loudly") {
    DualCliParams p;
    p.eps = 0.2;
    p.delta1 = 0.1;  // violates 4 delta1 < eps
    p.r1 = 0.1;
    p.r = 0.0;
    CHECK_THROWS_AS(p.validate(), ConditionFailedError);
}
