#include "multidir/bridge.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "multidir/errors.hpp"

namespace multidir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Halfspace {
    Vec d;        // q . d <= c
    double c = 0.0;
};

// Dykstra's alternating projections onto an intersection of halfspaces;
// returns the projection of q0.
Vec project_onto_halfspaces(const Vec& q0, const std::vector<Halfspace>& hs, int cycles = 160) {
    Vec q = q0;
    std::vector<Vec> incr(hs.size(), zeros(static_cast<int>(q0.size())));
    for (int cyc = 0; cyc < cycles; ++cyc) {
        double moved = 0.0;
        for (std::size_t j = 0; j < hs.size(); ++j) {
            Vec y = add(q, incr[j]);
            double dd = dot(hs[j].d, hs[j].d);
            if (dd < 1e-24) continue;
            double viol = (dot(hs[j].d, y) - hs[j].c) / dd;
            Vec proj = viol > 0.0 ? axpy(y, -viol, hs[j].d) : y;
            incr[j] = sub(y, proj);
            if (viol > 0.0) moved += viol * viol * dd;
            q = proj;
        }
        if (moved < 1e-26) break;
    }
    return q;
}

std::vector<Vec> probe_directions(const VectorSpaceContext& ctx, const Vec& from_apex) {
    const int d = ctx.dimension;
    std::vector<Vec> dirs;
    for (int i = 0; i < d; ++i) {
        Vec e = zeros(d);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (double sj : {1.0, -1.0}) {
                Vec v = zeros(d);
                v[i] = 1.0 / std::sqrt(2.0);
                v[j] = sj / std::sqrt(2.0);
                dirs.push_back(v);
                dirs.push_back(scaled(v, -1.0));
            }
    double n = ctx.norm(from_apex);
    if (n > 1e-12) {
        dirs.push_back(scaled(from_apex, 1.0 / n));
        dirs.push_back(scaled(from_apex, -1.0 / n));
    }
    return dirs;
}

}  // namespace

double PenaltyFunction::evaluate(const Vec& x) const { return n * dist_to_cone(x, cone); }

Vec PenaltyFunction::snap_to_cone(const Vec& x) const { return project_to_cone(x, cone); }

Vec PenaltyFunction::select_subgradient(const Vec& x, const Vec& target) const {
    const auto& ctx = cone.generator.context();
    const double psi_x = evaluate(x);
    const double scale_x = 1.0 + ctx.norm(sub(x, cone.apex));

    // supporting halfspaces q.(z - x) <= psi(z) - psi(x) from sampled z
    std::vector<Halfspace> hs;
    auto add_constraint = [&](const Vec& step) {
        double val = evaluate(add(x, step));
        hs.push_back({step, val - psi_x});
    };
    auto dirs = probe_directions(ctx, sub(x, cone.apex));
    for (const auto& u : dirs)
        for (double sigma : {1e-4, 1e-2, 1e-1}) add_constraint(scaled(u, sigma * scale_x));
    // full steps along the generator make inf q(-A) >= 0 hold by construction
    ConvexBody directions = translate(cone.generator, scaled(cone.apex, -1.0));
    for (const auto& a : sample_body(directions, 6)) {
        add_constraint(a);
        add_constraint(scaled(a, 0.25));
    }

    auto feasible = [&](const Vec& q, double slack) {
        for (const auto& h : hs)
            if (dot(q, h.d) > h.c + slack) return false;
        return true;
    };

    // exact cancellation is the canonical choice when admissible
    Vec q_exact = scaled(target, -1.0);
    double feas_tol = 1e-10 * n * scale_x;
    if (feasible(q_exact, feas_tol)) return q_exact;
    if (psi_x <= 1e-12 * n) {
        // on the cone 0 is always a subgradient; project the cancellation target
        Vec q = project_onto_halfspaces(q_exact, hs);
        if (feasible(q, 1e2 * feas_tol)) return q;
    }
    // off the cone: unit outward direction from the nearest cone point
    Vec proj = snap_to_cone(x);
    Vec diff = sub(x, proj);
    double dn = ctx.norm(diff);
    if (dn > 1e-12 && ctx.lifted_coords == 0) {
        Vec q_smooth = scaled(diff, n / dn);
        if (feasible(q_smooth, 1e3 * feas_tol)) return q_smooth;
    }
    return project_onto_halfspaces(q_exact, hs);
}

ConvexOracle oracle_from(const ScalarFunction& g) {
    ConvexOracle o;
    o.evaluate = g.evaluate;
    auto oracle = g.oracle;
    o.select = [oracle](const Vec& x, const Vec& target) { return oracle.select(x, target); };
    return o;
}

ConvexOracle oracle_from(const PenaltyFunction& psi) {
    ConvexOracle o;
    PenaltyFunction copy = psi;
    o.evaluate = [copy](const Vec& x) { return copy.evaluate(x); };
    o.select = [copy](const Vec& x, const Vec& target) {
        return copy.select_subgradient(x, target);
    };
    o.snap = [copy](const Vec& x) { return copy.snap_to_cone(x); };
    return o;
}

FuzzyMinResult fuzzy_min_pair(const ScalarFunction& f, const ConvexOracle& g, double eps,
                              const Vec& ball_center, double ball_radius,
                              const VectorSpaceContext& ctx, int refinement, std::uint64_t seed) {
    if (eps <= 0.0) throw Error("fuzzy_min_pair: eps must be positive");
    auto F = [&](const Vec& x) {
        double fv = f.evaluate(x);
        if (fv == kInf) return kInf;
        return fv + g.evaluate(x);
    };

    ConvexBody ball = ConvexBody::ball(ball_center, ball_radius, ctx);
    auto starts = sample_body(ball, std::max(4, refinement));
    starts.insert(starts.begin(), ball_center);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int k = 0; k < 64; ++k) {
        Vec x(ctx.dimension);
        for (auto& v : x) v = unif(rng) * ball_radius;
        x = add(ball_center, x);
        if (ctx.dist(x, ball_center) <= ball_radius) starts.push_back(std::move(x));
    }

    std::vector<std::pair<double, Vec>> ranked;
    double grid_min = kInf;
    for (auto& x : starts) {
        double v = F(x);
        if (v == kInf) continue;
        grid_min = std::min(grid_min, v);
        ranked.emplace_back(v, std::move(x));
    }
    if (ranked.empty()) throw ToleranceNotMetError("fuzzy_min_pair: no finite start value");
    std::sort(ranked.begin(), ranked.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    ranked.resize(std::min<std::size_t>(ranked.size(), 8));

    // coordinate pattern descent, kept inside dom f by rejection
    auto descend = [&](Vec x, double fx) {
        double step = ball_radius / 4.0;
        int sweeps = 0;
        while (step > 1e-11 * ball_radius && sweeps < 800) {
            ++sweeps;
            bool improved = false;
            for (int i = 0; i < ctx.dimension; ++i)
                for (double s : {step, -step}) {
                    Vec y = x;
                    y[i] += s;
                    double fy = F(y);
                    if (fy < fx - 1e-18) {
                        x = std::move(y);
                        fx = fy;
                        improved = true;
                    }
                }
            if (!improved) step *= 0.5;
        }
        return std::make_pair(x, fx);
    };

    Vec best_x = ranked[0].second;
    double best_v = ranked[0].first;
    for (auto& [v0, x0] : ranked) {
        auto [x, v] = descend(x0, v0);
        if (v < best_v) {
            best_v = v;
            best_x = x;
        }
    }
    if (g.snap) {
        Vec snapped = g.snap(best_x);
        double v = F(snapped);
        if (v <= best_v + 1e-14 * (1.0 + std::fabs(best_v))) {
            best_v = std::min(v, best_v);
            best_x = snapped;
        }
    }

    FuzzyMinResult res;
    res.x = best_x;
    res.y = best_x;
    res.value = best_v;
    res.grid_min = grid_min;

    // joint selection of p in df(x), q in dg(x) minimising ||p + q||
    if (f.oracle.kind == OracleKind::None) throw Error("fuzzy_min_pair: f needs an oracle");
    auto gens = f.oracle.query(res.x);
    if (gens.empty())
        throw ToleranceNotMetError("fuzzy_min_pair: empty subdifferential at the minimiser");
    Vec p = gens[0];
    Vec q = g.select(res.x, p);
    double best_pq = ctx.dual_norm(add(p, q));
    for (int round = 0; round < 4 && gens.size() > 1; ++round) {
        Vec p_new = f.oracle.select(res.x, q);
        Vec q_new = g.select(res.x, p_new);
        double pq = ctx.dual_norm(add(p_new, q_new));
        if (pq < best_pq - 1e-15) {
            best_pq = pq;
            p = p_new;
            q = q_new;
        } else {
            break;
        }
    }
    res.p = p;
    res.q = q;
    res.pq_norm = best_pq;
    if (res.value > grid_min + eps)
        throw ToleranceNotMetError("fuzzy_min_pair: minimisation failed the value contract");
    if (res.pq_norm > eps)
        throw ToleranceNotMetError("fuzzy_min_pair: no oracle selection achieves ||p+q|| <= eps");
    return res;
}

BridgeResult bridge_subgradient(const ScalarFunction& f, const Vec& xbar, const ConvexBody& A,
                                double delta, double eps, int refinement, std::uint64_t seed) {
    if (delta <= 0.0 || eps <= 0.0) throw Error("bridge_subgradient: delta, eps must be positive");
    const auto& ctx = A.context();
    ConvexBody A_delta = enlarge(A, delta);

    BridgeResult res;
    res.estimate = multidir_derivative(f, xbar, A_delta, TSchedule{}, refinement);
    if (res.estimate.estimate <= 0.0)
        throw PreconditionFailedError("bridge_subgradient: derivative over the enlarged body "
                                      "is not positive");
    double lambda = 0.5 * res.estimate.estimate;
    res.growth = check_growth(f, xbar, A_delta, lambda, refinement);

    double f_xbar = f.evaluate(xbar);
    double gamma = 0.999 * std::min(eps, res.growth.eps_bar);
    bool lsc_ok = false;
    for (int halvings = 0; halvings < 60; ++halvings) {
        ConvexBody ball = ConvexBody::ball(xbar, gamma, ctx);
        double worst = kInf;
        for (const auto& z : sample_body(ball, std::max(8, refinement)))
            worst = std::min(worst, f.evaluate(z));
        if (worst > f_xbar - eps) {
            lsc_ok = true;
            break;
        }
        gamma *= 0.5;
    }
    if (!lsc_ok)
        throw PreconditionFailedError("bridge_subgradient: lsc bound f(B(xbar;gamma)) > "
                                      "f(xbar) - eps not achieved by sampling");
    res.gamma = gamma;

    RestrictedFunction restricted{f, xbar, gamma, ctx};
    ScalarFunction f_hat = restricted.as_function();
    Cone cone = cone_from_directions(xbar, A);

    bool only_tolerance_failures = true;
    std::string last_tolerance_error;
    for (int n = 8; n <= (1 << 20); n *= 2) {
        PenaltyFunction psi{n, cone};
        BridgeTraceRow row;
        row.n = n;
        try {
            FuzzyMinResult fm =
                fuzzy_min_pair(f_hat, oracle_from(psi), 1.0 / n, xbar, gamma, ctx, refinement,
                               seed + static_cast<std::uint64_t>(n));
            row.x = fm.x;
            row.q = fm.q;
            row.f_value = f.evaluate(fm.x);
            row.psi_value = psi.evaluate(fm.x);
            row.pq_norm = fm.pq_norm;
            row.inf_p = inf_linear(A, fm.p);
            row.interior = ctx.dist(fm.x, xbar) < gamma * (1.0 - 1e-6);
            bool value_close = std::fabs(row.f_value - f_xbar) < eps;
            row.accepted = row.interior && value_close && row.inf_p > -eps;
            res.trace.push_back(row);
            only_tolerance_failures = false;
            if (row.accepted) {
                res.x = fm.x;
                res.p = fm.p;
                res.accepted_n = n;
                return res;
            }
        } catch (const ToleranceNotMetError& e) {
            // the subdifferential n (N cap B*) grows with n; retry larger n
            res.trace.push_back(row);
            last_tolerance_error = e.what();
        }
    }
    if (only_tolerance_failures && !last_tolerance_error.empty())
        throw ToleranceNotMetError(last_tolerance_error);
    throw ClaimFailedError("bridge_subgradient: no n up to 2^20 produced an interior minimiser "
                           "with inf p(A) > -eps (boundary sticking)");
}

void DualCliParams::validate() const {
    auto fail = [](const std::string& what) {
        throw ConditionFailedError("dual parameter construction: " + what);
    };
    if (!(eps > 0.0)) fail("eps > 0");
    if (!(delta1 > 0.0 && 4.0 * delta1 < eps)) fail("4 delta1 < eps");
    if (!(r + 2.0 * delta1 < inf_enlarged_delta1)) fail("r + 2 delta1 < inf f(A_delta1)");
    if (std::fabs(r1 - (r + delta1)) > 1e-12 * (1.0 + std::fabs(r1))) fail("r1 = r + delta1");
    if (!(delta > 0.0 && delta < delta1)) fail("delta in (0, delta1)");
    double kappa = r1 - f_a;
    double want = std::max(kappa * (1.0 - delta), kappa * (1.0 + delta));
    if (std::fabs(want - Delta) > 1e-12 * (1.0 + std::fabs(want))) fail("Delta formula");
    if (!(Delta < r1 - f_a + delta1)) fail("Delta < r1 - f(a) + delta1");
    if (!(2.0 * delta * std::fabs(kappa) < eps / 4.0)) fail("2 delta |r1 - f(a)| < eps/4");
    if (!(r_prime > f_a && r_prime < inf_lifted_delta)) fail("r' in (f(a), inf f~(A~_delta))");
    if (!(r_prime < f_a + delta)) fail("r' < f(a) + delta");
}

DualWitnessReport clarke_ledyaev_dual(const ScalarFunction& f, const Vec& a, const ConvexBody& A,
                                      double r, double eps, int grid, std::uint64_t seed) {
    if (eps <= 0.0) throw Error("clarke_ledyaev_dual: eps must be positive");
    double fa = f.evaluate(a);
    if (fa == kInf) throw PreconditionFailedError("clarke_ledyaev_dual: f(a) = +infinity");

    // probe delta over the halving schedule for the condition
    // r + 2 delta1 < inf f(A_delta1), with 4 delta1 < eps
    double delta1 = 0.0, inf_d1 = 0.0, sup_probe = -kInf;
    for (double d = 1.0; d >= std::ldexp(1.0, -20); d *= 0.5) {
        double infd = inf_over_body(f, enlarge(A, d), grid);
        sup_probe = std::max(sup_probe, infd);
        if (4.0 * d < eps && r + 2.0 * d < infd) {
            delta1 = d;
            inf_d1 = infd;
            break;
        }
    }
    if (delta1 == 0.0) {
        if (sup_probe <= r)
            throw ConditionFailedError("clarke_ledyaev_dual: r < sup_delta inf f(A_delta) fails "
                                       "on the probe schedule");
        throw ConditionFailedError("clarke_ledyaev_dual: no delta1 with r + 2 delta1 < "
                                   "inf f(A_delta1) and 4 delta1 < eps");
    }

    double r1 = r + delta1;
    double kappa = r1 - fa;
    LiftedProblem lp = lift(f, kappa);
    Vec a_lift = lp.lift_point(a, 0.0);

    double delta = 0.5 * delta1, inf_lift = 0.0;
    ConvexBody A_tilde_delta = ConvexBody::product(enlarge(A, delta), 1.0 - delta, 1.0 + delta);
    for (;;) {
        if (delta < std::ldexp(1.0, -20))
            throw ConditionFailedError("clarke_ledyaev_dual: no admissible delta below delta1");
        A_tilde_delta = ConvexBody::product(enlarge(A, delta), 1.0 - delta, 1.0 + delta);
        inf_lift = inf_over_body(lp.lifted, A_tilde_delta, grid);
        bool ok = delta * std::fabs(kappa) < delta1 && 2.0 * delta * std::fabs(kappa) < eps / 4.0 &&
                  inf_lift > fa + 1e-12;
        if (ok) break;
        delta *= 0.5;
    }

    DualWitnessReport rep;
    rep.params.eps = eps;
    rep.params.delta1 = delta1;
    rep.params.r1 = r1;
    rep.params.delta = delta;
    rep.params.Delta = std::max(kappa * (1.0 - delta), kappa * (1.0 + delta));
    rep.params.f_a = fa;
    rep.params.r = r;
    rep.params.inf_enlarged_delta1 = inf_d1;
    rep.params.inf_lifted_delta = inf_lift;
    rep.params.r_prime = fa + 0.5 * (std::min(fa + delta, inf_lift) - fa);
    rep.params.validate();

    // Lagrange stage on the lifted problem
    rep.lifted_witness = lagrange_witness(lp.lifted, a_lift, A_tilde_delta, rep.params.r_prime,
                                          grid, 1e-9);
    const Vec& xt_bar = rep.lifted_witness.witness;

    // bridge stage with the unenlarged lifted generator A~ - a~
    ConvexBody G = ConvexBody::product(translate(A, scaled(a, -1.0)), 1.0, 1.0);
    BridgeResult br = bridge_subgradient(lp.lifted, xt_bar, G, delta, delta, grid, seed);
    rep.trace = br.trace;
    rep.accepted_n = br.accepted_n;
    rep.lifted_pairing = inf_linear(G, br.p);

    // unpack the lifted subgradient (p, f(a) - r1)
    Vec p_lift = br.p;
    if (std::fabs(p_lift.back() + kappa) > 1e-9 * (1.0 + std::fabs(kappa)))
        throw Error("clarke_ledyaev_dual: lifted subgradient slope mismatch");
    rep.p = Vec(p_lift.begin(), p_lift.end() - 1);
    rep.xi = Vec(br.x.begin(), br.x.end() - 1);

    // independent verification of the three conclusions
    rep.f_at_xi = f.evaluate(rep.xi);
    rep.membership_dist = dist_to_interval(MultiInterval{a, A}, rep.xi);
    rep.membership_ok = rep.membership_dist <= eps + 1e-9;
    rep.value_lhs = rep.f_at_xi;
    rep.value_rhs = std::max(fa, r) + eps;
    rep.value_ok = rep.value_lhs < rep.value_rhs;
    rep.pairing = inf_linear(A, rep.p) - dot(rep.p, a);
    rep.pairing_rhs = r - fa;
    rep.pairing_ok = rep.pairing > rep.pairing_rhs;
    rep.verified = rep.membership_ok && rep.value_ok && rep.pairing_ok;
    return rep;
}

}  // namespace multidir
