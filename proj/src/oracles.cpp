#include "multidir/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multidir/errors.hpp"

namespace multidir {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kActiveTol = 1e-9;
}  // namespace

Vec SubgradientOracle::select(const Vec& x, const Vec& target) const {
    if (kind == OracleKind::None || !query) throw Error("subgradient oracle unavailable");
    auto gens = query(x);
    if (gens.empty()) throw Error("subgradient oracle empty at the queried point");
    if (gens.size() == 1) return gens[0];
    // argmin_{q in conv(gens)} ||target + q|| = projection of -target onto the hull
    return project_convex_hull(gens, scaled(target, -1.0));
}

ScalarFunction RestrictedFunction::as_function() const {
    RestrictedFunction self = *this;
    ScalarFunction f;
    f.label = base.label + "|ball";
    f.convex = base.convex;
    f.evaluate = [self](const Vec& x) {
        if (self.context.dist(x, self.center) > self.radius) return kInf;
        return self.base.evaluate(x);
    };
    if (base.oracle.kind != OracleKind::None) {
        f.oracle.kind = base.oracle.kind;
        auto base_oracle = base.oracle;
        f.oracle.query = [self, base_oracle](const Vec& x) -> std::vector<Vec> {
            // interior only: on the boundary the restriction adds normal directions
            if (self.context.dist(x, self.center) >= self.radius - 1e-12) return {};
            return base_oracle.query(x);
        };
    }
    f.domain_hint = ConvexBody::ball(center, radius, context);
    return f;
}

Vec LiftedProblem::lift_point(const Vec& x, double t) const {
    Vec v = x;
    v.push_back(t);
    return v;
}

Vec LiftedProblem::project_point(const Vec& xt) { return Vec(xt.begin(), xt.end() - 1); }

ConvexBody LiftedProblem::lift_body(const ConvexBody& A) const {
    return ConvexBody::product(A, 1.0, 1.0);
}

LiftedProblem lift(const ScalarFunction& f, double kappa) {
    LiftedProblem lp;
    lp.base = f;
    lp.kappa = kappa;
    // catalog functions are dimension-generic; the base context is implied by use
    lp.lifted.label = f.label + "~";
    lp.lifted.convex = f.convex;
    auto base_eval = f.evaluate;
    lp.lifted.evaluate = [base_eval, kappa](const Vec& xt) {
        Vec x(xt.begin(), xt.end() - 1);
        double v = base_eval(x);
        if (v == kInf) return kInf;
        return v - kappa * xt.back();
    };
    if (f.oracle.kind != OracleKind::None) {
        lp.lifted.oracle.kind = f.oracle.kind;
        auto base_oracle = f.oracle;
        lp.lifted.oracle.query = [base_oracle, kappa](const Vec& xt) {
            Vec x(xt.begin(), xt.end() - 1);
            auto gens = base_oracle.query(x);
            for (auto& g : gens) g.push_back(-kappa);
            return gens;
        };
    }
    return lp;
}

InfOverBody inf_over_body_argmin(const ScalarFunction& f, const ConvexBody& A, int refinement) {
    auto samples = sample_body(A, refinement);
    InfOverBody best;
    best.value = kInf;
    for (auto& s : samples) {
        double v = f.evaluate(s);
        if (v < best.value) {
            best.value = v;
            best.argmin = s;
        }
    }
    if (best.value == kInf)
        throw AllInfiniteError("inf_over_body: every sample evaluates to +infinity");
    return best;
}

double inf_over_body(const ScalarFunction& f, const ConvexBody& A, int refinement) {
    return inf_over_body_argmin(f, A, refinement).value;
}

P3P4Report check_p3_p4(const SubgradientOracle& oracle, const ScalarFunction& f,
                       const std::vector<Vec>& probes, double tol) {
    if (oracle.kind == OracleKind::None) throw Error("check_p3_p4: oracle required");
    P3P4Report rep;
    rep.worst_p3_slack = kInf;
    if (f.convex) {
        rep.p3_checked = true;
        for (const auto& x : probes) {
            double fx = f.evaluate(x);
            if (fx == kInf) continue;
            ++rep.probes;
            auto gens = oracle.query(x);
            const int d = static_cast<int>(x.size());
            // deterministic displaced sample around the probe
            std::vector<Vec> ys;
            for (int i = 0; i < d; ++i)
                for (double h : {-1.0, -0.1, 0.1, 1.0}) {
                    Vec y = x;
                    y[i] += h;
                    ys.push_back(std::move(y));
                }
            Vec diag(d, 0.35);
            ys.push_back(add(x, diag));
            ys.push_back(sub(x, diag));
            for (const auto& y : ys) {
                double fy = f.evaluate(y);
                if (fy == kInf) continue;
                for (const auto& p : gens) {
                    double slack = fy - fx - dot(p, sub(y, x));
                    rep.worst_p3_slack = std::min(rep.worst_p3_slack, slack);
                    if (slack < -tol)
                        throw AxiomViolationError(
                            "subgradient inequality violated for " + f.label + " at " +
                                format_point(x),
                            x);
                }
            }
        }
    }
    if (f.known_minimizer) {
        rep.p4_checked = true;
        const Vec& m = *f.known_minimizer;
        auto gens = oracle.query(m);
        if (gens.empty())
            throw AxiomViolationError("empty subdifferential at a minimizer of " + f.label, m);
        Vec nearest = project_convex_hull(gens, zeros(static_cast<int>(m.size())));
        rep.p4_distance = l2_norm(nearest);
        if (rep.p4_distance > tol)
            throw AxiomViolationError("0 not in the subdifferential at a minimizer of " + f.label,
                                      m);
    }
    return rep;
}

ScalarFunction make_linear(Vec p) {
    ScalarFunction f;
    f.label = "linear";
    f.convex = true;
    Vec coeff = p;
    f.evaluate = [coeff](const Vec& x) { return dot(coeff, x); };
    f.oracle.kind = OracleKind::Gradient;
    f.oracle.query = [coeff](const Vec&) { return std::vector<Vec>{coeff}; };
    return f;
}

ScalarFunction make_affine(Vec p, double b) {
    ScalarFunction f = make_linear(std::move(p));
    f.label = "affine";
    auto lin = f.evaluate;
    f.evaluate = [lin, b](const Vec& x) { return lin(x) + b; };
    return f;
}

ScalarFunction make_quadratic(int dim) {
    ScalarFunction f;
    f.label = "quadratic";
    f.convex = true;
    f.evaluate = [](const Vec& x) { return dot(x, x); };
    f.oracle.kind = OracleKind::Gradient;
    f.oracle.query = [](const Vec& x) { return std::vector<Vec>{scaled(x, 2.0)}; };
    f.known_minimizer = zeros(dim);
    return f;
}

ScalarFunction make_shifted_quadratic(Vec z) {
    ScalarFunction f;
    f.label = "shifted_quadratic";
    f.convex = true;
    Vec shift = z;
    f.evaluate = [shift](const Vec& x) {
        Vec d = sub(x, shift);
        return dot(d, d);
    };
    f.oracle.kind = OracleKind::Gradient;
    f.oracle.query = [shift](const Vec& x) { return std::vector<Vec>{scaled(sub(x, shift), 2.0)}; };
    f.known_minimizer = shift;
    return f;
}

ScalarFunction make_negative_norm(int dim) {
    ScalarFunction f;
    f.label = "negnorm";
    f.convex = false;
    f.evaluate = [](const Vec& x) { return -l2_norm(x); };
    f.oracle.kind = OracleKind::Gradient;
    f.oracle.query = [dim](const Vec& x) -> std::vector<Vec> {
        double n = l2_norm(x);
        if (n < 1e-12) return {};  // nonsmooth at the origin
        (void)dim;
        return {scaled(x, -1.0 / n)};
    };
    return f;
}

ScalarFunction make_max_affine(std::vector<std::pair<Vec, double>> pieces) {
    if (pieces.empty()) throw Error("max_affine needs at least one piece");
    ScalarFunction f;
    f.label = "max_affine";
    f.convex = true;
    auto ps = pieces;
    f.evaluate = [ps](const Vec& x) {
        double m = -kInf;
        for (const auto& [p, b] : ps) m = std::max(m, dot(p, x) + b);
        return m;
    };
    f.oracle.kind = OracleKind::ConvexMaxAffine;
    f.oracle.query = [ps](const Vec& x) {
        double m = -kInf;
        for (const auto& [p, b] : ps) m = std::max(m, dot(p, x) + b);
        std::vector<Vec> gens;
        for (const auto& [p, b] : ps)
            if (dot(p, x) + b >= m - kActiveTol * (1.0 + std::fabs(m))) gens.push_back(p);
        return gens;
    };
    return f;
}

ScalarFunction make_quadratic_plus_max_affine(int dim) {
    ScalarFunction f;
    f.label = "quad_plus_max_affine";
    f.convex = true;
    f.evaluate = [](const Vec& x) { return 0.5 * dot(x, x) + std::fabs(x[0]); };
    f.oracle.kind = OracleKind::ConvexMaxAffine;
    f.oracle.query = [](const Vec& x) {
        std::vector<Vec> gens;
        double m = std::fabs(x[0]);
        if (x[0] >= m - kActiveTol * (1.0 + m)) {
            Vec g = x;
            g[0] += 1.0;
            gens.push_back(std::move(g));
        }
        if (-x[0] >= m - kActiveTol * (1.0 + m)) {
            Vec g = x;
            g[0] -= 1.0;
            gens.push_back(std::move(g));
        }
        return gens;
    };
    f.known_minimizer = zeros(dim);
    return f;
}

ScalarFunction make_restricted(ScalarFunction base, Vec center, double radius) {
    RestrictedFunction r;
    int dim = static_cast<int>(center.size());
    r.base = std::move(base);
    r.center = std::move(center);
    r.radius = radius;
    r.context = VectorSpaceContext::euclidean(dim);
    return r.as_function();
}

std::vector<ScalarFunction> standard_catalog(int dim) {
    if (dim < 2) throw Error("standard_catalog: dimension must be at least 2");
    Vec p(dim);
    for (int i = 0; i < dim; ++i) p[i] = 1.0 + 0.5 * i;
    Vec z = zeros(dim);
    z[0] = 0.5;
    Vec e1 = zeros(dim), e2 = zeros(dim);
    e1[0] = 1.0;
    e2[1] = 1.0;
    std::vector<std::pair<Vec, double>> pieces{{e1, -1.0}, {scaled(e1, -1.0), -1.0}, {e2, 0.0}};
    auto max_aff = make_max_affine(pieces);
    Vec ma_min = zeros(dim);
    ma_min[1] = -2.0;
    max_aff.known_minimizer = ma_min;

    std::vector<ScalarFunction> cat;
    cat.push_back(make_linear(p));
    cat.push_back(make_affine(p, -0.5));
    cat.push_back(make_quadratic(dim));
    cat.push_back(make_shifted_quadratic(z));
    cat.push_back(make_negative_norm(dim));
    cat.push_back(std::move(max_aff));
    cat.push_back(make_quadratic_plus_max_affine(dim));
    auto restricted = make_restricted(make_quadratic(dim), zeros(dim), 5.0);
    restricted.label = "restricted_quadratic";
    restricted.known_minimizer = zeros(dim);
    cat.push_back(std::move(restricted));
    return cat;
}

ScalarFunction catalog_by_label(const std::string& label, int dim) {
    for (auto& f : standard_catalog(dim))
        if (f.label == label) return f;
    throw ParseError("unknown catalog function label: " + label);
}

}  // namespace multidir
