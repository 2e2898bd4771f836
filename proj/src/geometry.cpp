#include "multidir/geometry.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <limits>

#include "multidir/errors.hpp"

namespace multidir {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

constexpr int kMaxSolve = 16;  // desk scale: dimension + 1 never exceeds this

// Solves A x = b on fixed-size stack buffers by Gaussian elimination with
// partial pivoting.  Returns false when the matrix is numerically singular.
bool solve_stack(int n, double A[][kMaxSolve], double* b, double* x) {
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-13) return false;
        if (piv != col) {
            for (int c = 0; c < n; ++c) std::swap(A[piv][c], A[col][c]);
            std::swap(b[piv], b[col]);
        }
        for (int r = col + 1; r < n; ++r) {
            double m = A[r][col] / A[col][col];
            if (m == 0.0) continue;
            for (int c = col; c < n; ++c) A[r][c] -= m * A[col][c];
            b[r] -= m * b[col];
        }
    }
    for (int r = n - 1; r >= 0; --r) {
        double s = b[r];
        for (int c = r + 1; c < n; ++c) s -= A[r][c] * x[c];
        x[r] = s / A[r][r];
    }
    return true;
}

// number of compositions of g into m nonnegative parts, saturating
long long composition_count(int g, int m) {
    long long count = 1;
    for (int i = 1; i < m; ++i) {
        count = count * (g + i) / i;
        if (count > (1LL << 40)) return count;
    }
    return count;
}

void barycentric_grid(const std::vector<Vec>& verts, int g, std::vector<Vec>& out) {
    const int m = static_cast<int>(verts.size());
    const int d = static_cast<int>(verts[0].size());
    std::vector<int> parts(m, 0);
    std::function<void(int, int)> rec = [&](int idx, int remaining) {
        if (idx == m - 1) {
            parts[idx] = remaining;
            Vec p(d, 0.0);
            for (int i = 0; i < m; ++i) {
                double w = static_cast<double>(parts[i]) / g;
                for (int k = 0; k < d; ++k) p[k] += w * verts[i][k];
            }
            out.push_back(std::move(p));
            return;
        }
        for (int take = 0; take <= remaining; ++take) {
            parts[idx] = take;
            rec(idx + 1, remaining - take);
        }
    };
    rec(0, g);
}

// deterministic unit directions for ball sampling
std::vector<Vec> unit_directions(int d, int refinement) {
    std::vector<Vec> dirs;
    if (d == 1) {
        dirs.push_back({1.0});
        dirs.push_back({-1.0});
        return dirs;
    }
    if (d == 2) {
        int K = std::max(8, std::min(256, 4 * refinement));
        dirs.reserve(K);
        for (int k = 0; k < K; ++k) {
            double th = 2.0 * M_PI * k / K;
            dirs.push_back({std::cos(th), std::sin(th)});
        }
        return dirs;
    }
    if (d == 3) {
        int K = std::max(26, std::min(512, 8 * refinement));
        dirs.reserve(K);
        const double ga = M_PI * (3.0 - std::sqrt(5.0));  // Fibonacci sphere
        for (int k = 0; k < K; ++k) {
            double z = 1.0 - 2.0 * (k + 0.5) / K;
            double r = std::sqrt(std::max(0.0, 1.0 - z * z));
            double th = ga * k;
            dirs.push_back({r * std::cos(th), r * std::sin(th), z});
        }
        return dirs;
    }
    // higher dimensions: axes, sign diagonals, pairwise diagonals
    for (int i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = 1.0;
        dirs.push_back(e);
        e[i] = -1.0;
        dirs.push_back(e);
    }
    if (d <= 10) {
        int combos = 1 << d;
        double inv = 1.0 / std::sqrt(static_cast<double>(d));
        for (int mask = 0; mask < combos; ++mask) {
            Vec v(d);
            for (int i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? inv : -inv;
            dirs.push_back(std::move(v));
        }
    }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            for (int si = -1; si <= 1; si += 2)
                for (int sj = -1; sj <= 1; sj += 2) {
                    Vec v(d, 0.0);
                    v[i] = si / std::sqrt(2.0);
                    v[j] = sj / std::sqrt(2.0);
                    dirs.push_back(std::move(v));
                }
    return dirs;
}

int interval_grid_points(double lo, double hi, int refinement) {
    if (hi <= lo) return 1;
    return std::max(2, std::min(refinement + 1, 3));
}

// lean deterministic offsets covering the eps-ball: axes and sign diagonals
std::vector<Vec> enlargement_offsets(const VectorSpaceContext& ctx, double eps) {
    const int d = ctx.dimension;
    std::vector<Vec> offs;
    offs.push_back(Vec(d, 0.0));
    if (eps <= 0.0) return offs;
    const int h = ctx.head();
    for (int i = 0; i < d; ++i) {
        Vec e(d, 0.0);
        e[i] = eps;
        offs.push_back(e);
        e[i] = -eps;
        offs.push_back(e);
    }
    if (d <= 6) {
        // the unit ball of the lifted norm is a product: the head block scales
        // by 1/sqrt(head), trailing coordinates reach +-1 independently
        double head_scale = h > 0 ? 1.0 / std::sqrt(static_cast<double>(h)) : 0.0;
        for (int mask = 0; mask < (1 << d); ++mask) {
            Vec v(d);
            for (int i = 0; i < d; ++i) {
                double mag = i < h ? head_scale : 1.0;
                v[i] = (mask >> i & 1) ? eps * mag : -eps * mag;
            }
            offs.push_back(std::move(v));
        }
    }
    return offs;
}

}  // namespace

ConvexBody::ConvexBody(Rep rep, VectorSpaceContext ctx) : rep_(std::move(rep)), ctx_(ctx) {
    if (const auto* p = std::get_if<PolytopeRep>(&rep_)) {
        if (p->vertices.empty()) throw Error("polytope needs at least one vertex");
        for (const auto& v : p->vertices)
            if (static_cast<int>(v.size()) != ctx_.dimension)
                throw Error("polytope vertex dimension mismatch");
    } else if (const auto* b = std::get_if<BallRep>(&rep_)) {
        if (b->radius < 0.0) throw Error("ball radius must be nonnegative");
        if (static_cast<int>(b->center.size()) != ctx_.dimension)
            throw Error("ball center dimension mismatch");
    } else if (const auto* e = std::get_if<EnlargementRep>(&rep_)) {
        if (e->eps < 0.0) throw Error("enlargement eps must be nonnegative");
        if (e->base->context() != ctx_) throw Error("enlargement base context mismatch");
    } else if (const auto* pr = std::get_if<ProductRep>(&rep_)) {
        if (pr->hi < pr->lo) throw Error("product interval is empty");
        if (pr->base->context().dimension != ctx_.dimension - 1)
            throw Error("product base dimension mismatch");
    }
}

ConvexBody ConvexBody::polytope(std::vector<Vec> vertices) {
    int d = vertices.empty() ? 0 : static_cast<int>(vertices[0].size());
    return polytope(std::move(vertices), VectorSpaceContext::euclidean(d));
}
ConvexBody ConvexBody::polytope(std::vector<Vec> vertices, VectorSpaceContext ctx) {
    return ConvexBody(PolytopeRep{std::move(vertices)}, ctx);
}
ConvexBody ConvexBody::ball(Vec center, double radius) {
    int d = static_cast<int>(center.size());
    return ball(std::move(center), radius, VectorSpaceContext::euclidean(d));
}
ConvexBody ConvexBody::ball(Vec center, double radius, VectorSpaceContext ctx) {
    return ConvexBody(BallRep{std::move(center), radius}, ctx);
}
ConvexBody ConvexBody::enlargement(ConvexBody base, double eps) {
    auto ctx = base.context();
    return ConvexBody(EnlargementRep{std::make_shared<ConvexBody>(std::move(base)), eps}, ctx);
}
ConvexBody ConvexBody::product(ConvexBody base, double lo, double hi) {
    auto ctx = base.context().lifted();
    return ConvexBody(ProductRep{std::make_shared<ConvexBody>(std::move(base)), lo, hi}, ctx);
}

Cone cone_from_directions(Vec apex, const ConvexBody& directions) {
    ConvexBody gen = translate(directions, apex);
    return Cone{std::move(apex), std::move(gen)};
}

ConvexBody translate(const ConvexBody& body, const Vec& shift) {
    const auto& ctx = body.context();
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        std::vector<Vec> verts;
        verts.reserve(p->vertices.size());
        for (const auto& v : p->vertices) verts.push_back(add(v, shift));
        return ConvexBody(PolytopeRep{std::move(verts)}, ctx);
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep()))
        return ConvexBody(BallRep{add(b->center, shift), b->radius}, ctx);
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return ConvexBody(
            EnlargementRep{std::make_shared<ConvexBody>(translate(*e->base, shift)), e->eps}, ctx);
    const auto& pr = std::get<ProductRep>(body.rep());
    Vec head(shift.begin(), shift.end() - 1);
    double t = shift.back();
    return ConvexBody(
        ProductRep{std::make_shared<ConvexBody>(translate(*pr.base, head)), pr.lo + t, pr.hi + t},
        ctx);
}

ConvexBody scale(const ConvexBody& body, double factor) {
    const auto& ctx = body.context();
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        std::vector<Vec> verts;
        verts.reserve(p->vertices.size());
        for (const auto& v : p->vertices) verts.push_back(scaled(v, factor));
        return ConvexBody(PolytopeRep{std::move(verts)}, ctx);
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep()))
        return ConvexBody(BallRep{scaled(b->center, factor), std::fabs(factor) * b->radius}, ctx);
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return ConvexBody(EnlargementRep{std::make_shared<ConvexBody>(scale(*e->base, factor)),
                                         std::fabs(factor) * e->eps},
                          ctx);
    const auto& pr = std::get<ProductRep>(body.rep());
    double lo = factor * pr.lo, hi = factor * pr.hi;
    if (lo > hi) std::swap(lo, hi);
    return ConvexBody(ProductRep{std::make_shared<ConvexBody>(scale(*pr.base, factor)), lo, hi},
                      ctx);
}

ConvexBody enlarge(const ConvexBody& body, double eps) {
    if (eps <= 0.0) throw Error("enlarge: eps must be positive");
    return ConvexBody::enlargement(body, eps);
}

constexpr int kMaxExactVerts = 12;

struct HullSolution {
    double d2 = 0.0;
    int k = 0;
    int idx[kMaxSolve];
    double coef[kMaxSolve];
};

// Exact Euclidean projection of x onto t * conv(vertices) via active-subset
// enumeration on the Gram data.  The optimal face is spanned by an affinely
// independent subset (at most d + 1 vertices), and every candidate lies in
// the hull, so the feasible minimum is the projection.
HullSolution hull_project_exact(const std::vector<Vec>& verts, const Vec& x, double t) {
    const int m = static_cast<int>(verts.size());
    const int d = static_cast<int>(x.size());
    double G[kMaxExactVerts][kMaxExactVerts];
    double vx[kMaxExactVerts];
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = t * t * dot(verts[i], verts[j]);
            G[i][j] = s;
            G[j][i] = s;
        }
        vx[i] = t * dot(verts[i], x);
    }
    const double x2 = dot(x, x);
    HullSolution best;
    best.k = 1;
    best.idx[0] = 0;
    best.coef[0] = 1.0;
    best.d2 = kInf;
    for (int i = 0; i < m; ++i) {
        double d2 = x2 - 2.0 * vx[i] + G[i][i];
        if (d2 < best.d2) {
            best.d2 = d2;
            best.idx[0] = i;
        }
    }
    const int max_size = std::min(m, d + 1);
    const unsigned top = m == 1 ? 0 : 1u << m;
    for (unsigned mask = 1; mask < top; ++mask) {
        const int k = std::popcount(mask);
        if (k < 2 || k > max_size) continue;
        int S[kMaxSolve];
        int kk = 0;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) S[kk++] = i;
        // minimise ||x - t V lambda||^2 subject to sum lambda = 1
        double A[kMaxSolve][kMaxSolve];
        double b[kMaxSolve];
        double sol[kMaxSolve];
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) A[i][j] = G[S[i]][S[j]];
            A[i][k] = 1.0;
            A[k][i] = 1.0;
            b[i] = vx[S[i]];
        }
        A[k][k] = 0.0;
        b[k] = 1.0;
        if (!solve_stack(k + 1, A, b, sol)) continue;
        bool feasible = true;
        for (int i = 0; i < k; ++i)
            if (sol[i] < -1e-10) {
                feasible = false;
                break;
            }
        if (!feasible) continue;
        double d2 = x2;
        for (int i = 0; i < k; ++i) {
            d2 -= 2.0 * sol[i] * vx[S[i]];
            for (int j = 0; j < k; ++j) d2 += sol[i] * sol[j] * G[S[i]][S[j]];
        }
        if (d2 < best.d2) {
            best.d2 = d2;
            best.k = k;
            for (int i = 0; i < k; ++i) {
                best.idx[i] = S[i];
                best.coef[i] = sol[i];
            }
        }
    }
    // the Gram form of d2 cancels badly near the hull; recompute the winner
    // from the residual
    {
        double d2 = 0.0;
        for (int c = 0; c < d; ++c) {
            double pc = 0.0;
            for (int i = 0; i < best.k; ++i) pc += best.coef[i] * t * verts[best.idx[i]][c];
            d2 += (x[c] - pc) * (x[c] - pc);
        }
        best.d2 = d2;
    }
    return best;
}

// Frank-Wolfe with away steps for polytopes with many vertices: linear rate
// on the simplex, run to a tight duality gap.
Vec hull_project_frank_wolfe(const std::vector<Vec>& verts, const Vec& x, double t) {
    const int m = static_cast<int>(verts.size());
    const int d = static_cast<int>(x.size());
    std::vector<double> lambda(m, 1.0 / m);
    Vec p(d, 0.0);
    for (int i = 0; i < m; ++i)
        for (int c = 0; c < d; ++c) p[c] += lambda[i] * t * verts[i][c];
    for (int iter = 0; iter < 50000; ++iter) {
        Vec grad = sub(p, x);  // gradient of 0.5 ||p - x||^2
        int fw = 0, away = -1;
        double fw_val = kInf, away_val = -kInf;
        for (int i = 0; i < m; ++i) {
            double v = t * dot(grad, verts[i]);
            if (v < fw_val) {
                fw_val = v;
                fw = i;
            }
            if (lambda[i] > 1e-16 && v > away_val) {
                away_val = v;
                away = i;
            }
        }
        double gap = dot(grad, p) - fw_val;
        if (gap <= 1e-18 * (1.0 + dot(x, x))) break;
        bool do_away = away >= 0 && (away_val - dot(grad, p)) > gap;
        Vec dir(d);
        double step_max;
        if (do_away) {
            for (int c = 0; c < d; ++c) dir[c] = p[c] - t * verts[away][c];
            step_max = lambda[away] / (1.0 - lambda[away] + 1e-30);
        } else {
            for (int c = 0; c < d; ++c) dir[c] = t * verts[fw][c] - p[c];
            step_max = 1.0;
        }
        double denom = dot(dir, dir);
        if (denom < 1e-30) break;
        double step = std::clamp(-dot(grad, dir) / denom, 0.0, step_max);
        if (step <= 0.0) break;
        if (do_away) {
            double scale_up = 1.0 + step;
            for (auto& l : lambda) l *= scale_up;
            lambda[away] -= step;
        } else {
            for (auto& l : lambda) l *= (1.0 - step);
            lambda[fw] += step;
        }
        for (int c = 0; c < d; ++c) p[c] += step * dir[c];
    }
    return p;
}

double dist2_to_scaled_hull(const std::vector<Vec>& verts, const Vec& x, double t) {
    if (static_cast<int>(verts.size()) <= kMaxExactVerts)
        return hull_project_exact(verts, x, t).d2;
    Vec p = hull_project_frank_wolfe(verts, x, t);
    Vec diff = sub(x, p);
    return dot(diff, diff);
}

Vec project_convex_hull(const std::vector<Vec>& vertices, const Vec& x) {
    if (static_cast<int>(vertices.size()) > kMaxExactVerts)
        return hull_project_frank_wolfe(vertices, x, 1.0);
    HullSolution sol = hull_project_exact(vertices, x, 1.0);
    const int d = static_cast<int>(x.size());
    Vec out(d, 0.0);
    for (int i = 0; i < sol.k; ++i)
        for (int c = 0; c < d; ++c) out[c] += sol.coef[i] * vertices[sol.idx[i]][c];
    return out;
}

Vec project_conic_hull(const std::vector<Vec>& generators, const Vec& x) {
    const int m = static_cast<int>(generators.size());
    const int d = static_cast<int>(x.size());
    if (m > kMaxExactVerts) {
        // conic case reduced to a far-scaled hull; desk-scale bodies stay small
        throw Error("project_conic_hull: too many generators for the exact path");
    }
    double G[kMaxExactVerts][kMaxExactVerts];
    double vx[kMaxExactVerts];
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = dot(generators[i], generators[j]);
            G[i][j] = s;
            G[j][i] = s;
        }
        vx[i] = dot(generators[i], x);
    }
    int best_idx[kMaxSolve];
    double best_coef[kMaxSolve];
    int best_k = 0;  // the apex is always a candidate
    const double x2 = dot(x, x);
    double best_d2 = x2;
    const int max_size = std::min(m, d);
    const unsigned top = 1u << m;
    for (unsigned mask = 1; mask < top; ++mask) {
        const int k = std::popcount(mask);
        if (k > max_size) continue;
        int S[kMaxSolve];
        int kk = 0;
        for (int i = 0; i < m; ++i)
            if (mask >> i & 1) S[kk++] = i;
        double A[kMaxSolve][kMaxSolve];
        double b[kMaxSolve];
        double mu[kMaxSolve];
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) A[i][j] = G[S[i]][S[j]];
            b[i] = vx[S[i]];
        }
        if (!solve_stack(k, A, b, mu)) continue;
        bool feasible = true;
        for (int i = 0; i < k; ++i)
            if (mu[i] < -1e-10) {
                feasible = false;
                break;
            }
        if (!feasible) continue;
        double d2 = x2;
        for (int i = 0; i < k; ++i) {
            d2 -= 2.0 * mu[i] * vx[S[i]];
            for (int j = 0; j < k; ++j) d2 += mu[i] * mu[j] * G[S[i]][S[j]];
        }
        if (d2 < best_d2) {
            best_d2 = d2;
            best_k = k;
            for (int i = 0; i < k; ++i) {
                best_idx[i] = S[i];
                best_coef[i] = mu[i];
            }
        }
    }
    Vec out(d, 0.0);
    for (int i = 0; i < best_k; ++i)
        for (int c = 0; c < d; ++c) out[c] += best_coef[i] * generators[best_idx[i]][c];
    return out;
}

namespace {

// dist(x, t * body) in the context norm without materialising the scaled body
double dist_to_scaled_body(const Vec& x, const ConvexBody& body, double t) {
    const auto& ctx = body.context();
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        if (t == 0.0) return ctx.norm(x);
        // polytopes appear in Euclidean coordinates (lifted bodies are
        // products), so the l2 projection distance is the context distance
        return std::sqrt(dist2_to_scaled_hull(p->vertices, x, t));
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep()))
        return std::max(0.0, ctx.norm(axpy(x, -t, b->center)) - std::fabs(t) * b->radius);
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return std::max(0.0, dist_to_scaled_body(x, *e->base, t) - std::fabs(t) * e->eps);
    const auto& pr = std::get<ProductRep>(body.rep());
    Vec head(x.begin(), x.end() - 1);
    double dh = dist_to_scaled_body(head, *pr.base, t);
    double lo = t * pr.lo, hi = t * pr.hi;
    if (lo > hi) std::swap(lo, hi);
    double v = x.back();
    double dt = v < lo ? lo - v : (v > hi ? v - hi : 0.0);
    return std::max(dh, dt);
}

}  // namespace

Vec project_to_body(const Vec& x, const ConvexBody& body) {
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) return project_convex_hull(p->vertices, x);
    if (const auto* b = std::get_if<BallRep>(&body.rep())) {
        Vec diff = sub(x, b->center);
        double n = body.context().norm(diff);
        if (n <= b->radius || n == 0.0) return x;
        return axpy(b->center, b->radius / n, diff);
    }
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep())) {
        Vec base_proj = project_to_body(x, *e->base);
        Vec diff = sub(x, base_proj);
        double n = body.context().norm(diff);
        if (n <= e->eps || n == 0.0) return x;
        return axpy(base_proj, e->eps / n, diff);
    }
    const auto& pr = std::get<ProductRep>(body.rep());
    Vec head(x.begin(), x.end() - 1);
    Vec proj = project_to_body(head, *pr.base);
    proj.push_back(std::clamp(x.back(), pr.lo, pr.hi));
    return proj;
}

double dist_to_body(const Vec& x, const ConvexBody& body) {
    const auto& ctx = body.context();
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep()))
        return ctx.norm(sub(x, project_convex_hull(p->vertices, x)));
    if (const auto* b = std::get_if<BallRep>(&body.rep()))
        return std::max(0.0, ctx.norm(sub(x, b->center)) - b->radius);
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return std::max(0.0, dist_to_body(x, *e->base) - e->eps);
    const auto& pr = std::get<ProductRep>(body.rep());
    Vec head(x.begin(), x.end() - 1);
    double dh = dist_to_body(head, *pr.base);
    double t = x.back();
    double dt = t < pr.lo ? pr.lo - t : (t > pr.hi ? t - pr.hi : 0.0);
    return std::max(dh, dt);
}

bool body_membership(const ConvexBody& body, const Vec& x, double tol) {
    if (tol < 0.0) throw Error("body_membership: tol must be nonnegative");
    return dist_to_body(x, body) <= tol + 1e-12;
}

double dist_to_interval(const MultiInterval& iv, const Vec& x) {
    // distance from x to the t-slice a + t (A - a) = (1-t) a + t A, convex in t
    auto slice_dist = [&](double t) {
        Vec shifted = axpy(x, -(1.0 - t), iv.apex);
        return dist_to_scaled_body(shifted, iv.body, t);
    };
    double t_star = golden_section_min(slice_dist, 0.0, 1.0, 1e-12);
    double best = slice_dist(t_star);
    best = std::min(best, slice_dist(0.0));
    best = std::min(best, slice_dist(1.0));
    return best;
}

bool interval_membership(const MultiInterval& iv, const Vec& x, double tol) {
    if (tol < 0.0) throw Error("interval_membership: tol must be nonnegative");
    return dist_to_interval(iv, x) <= tol + 1e-12;
}

double dist_to_cone(const Vec& x, const Cone& cone) {
    const auto& ctx = cone.generator.context();
    Vec z = sub(x, cone.apex);
    ConvexBody G = translate(cone.generator, scaled(cone.apex, -1.0));
    // fast exact path: Euclidean context with a polytope generator
    if (ctx.lifted_coords == 0) {
        if (const auto* p = std::get_if<PolytopeRep>(&G.rep()))
            return l2_norm(sub(z, project_conic_hull(p->vertices, z)));
    }
    double zn = ctx.norm(z);
    if (zn == 0.0) return 0.0;
    double t_max;
    double delta = dist_to_body(zeros(ctx.dimension), G);
    if (delta > 1e-12) {
        t_max = zn / delta + 1.0;
    } else {
        // 0 in the generator: the t-search cannot be bracketed through delta;
        // fall back to a large fixed horizon
        t_max = 1e6 * (zn + 1.0);
    }
    double t_lo = 0.0;
    auto g = [&](double t) { return dist_to_scaled_body(z, G, t); };
    if (const auto* pr = std::get_if<ProductRep>(&G.rep()); pr && pr->lo > 0.0) {
        // the last coordinate of the generator pins t near v / [lo, hi]:
        // at the optimum the interval part is at most the pinned value
        double v = z.back();
        double d_pin = v <= 0.0 ? g(0.0) : g(v / pr->hi);
        if (v > 0.0 && pr->hi > pr->lo) d_pin = std::min(d_pin, g(v / pr->lo));
        if (d_pin == 0.0) return 0.0;
        t_lo = std::max(0.0, (v - d_pin) / pr->hi);
        t_max = std::min(t_max, std::max(t_lo, (v + d_pin) / pr->lo));
    }
    double t_star =
        golden_section_min(g, t_lo, t_max, std::max(1e-13, 1e-13 * (t_max - t_lo)), 260);
    return std::min({g(t_star), g(t_lo), g(t_max)});
}

bool cone_membership(const Cone& cone, const Vec& x, double tol) {
    if (tol < 0.0) throw Error("cone_membership: tol must be nonnegative");
    const double threshold = tol + 1e-12;
    const auto& ctx = cone.generator.context();
    Vec z = sub(x, cone.apex);
    ConvexBody G = translate(cone.generator, scaled(cone.apex, -1.0));
    if (ctx.lifted_coords == 0) {
        if (const auto* p = std::get_if<PolytopeRep>(&G.rep()))
            return l2_norm(sub(z, project_conic_hull(p->vertices, z))) <= threshold;
    }
    double zn = ctx.norm(z);
    if (zn == 0.0) return true;
    double delta = dist_to_body(zeros(ctx.dimension), G);
    double t_max = delta > 1e-12 ? zn / delta + 1.0 : 1e6 * (zn + 1.0);
    double t_lo = 0.0;
    auto g = [&](double t) { return dist_to_scaled_body(z, G, t); };
    if (const auto* pr = std::get_if<ProductRep>(&G.rep()); pr && pr->lo > 0.0) {
        double v = z.back();
        double d_pin = v <= 0.0 ? g(0.0) : g(v / pr->hi);
        if (v > 0.0 && pr->hi > pr->lo) d_pin = std::min(d_pin, g(v / pr->lo));
        if (d_pin <= threshold) return true;
        t_lo = std::max(0.0, (v - d_pin) / pr->hi);
        t_max = std::min(t_max, std::max(t_lo, (v + d_pin) / pr->lo));
    }
    // golden search with early exit: a value within the threshold certifies
    // membership; the Lipschitz lower bound over the bracket certifies a miss
    const double lip = sup_norm_over_body(G);
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = t_lo, b = t_max;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    double best = std::min({g(a), g(b), f1, f2});
    for (int it = 0; it < 260 && (b - a) > 1e-13 * (1.0 + t_max); ++it) {
        if (best <= threshold) return true;
        if (best - lip * (b - a) > threshold) return false;
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        }
        best = std::min({best, f1, f2});
    }
    return best <= threshold;
}

Vec project_to_cone(const Vec& x, const Cone& cone) {
    const auto& ctx = cone.generator.context();
    Vec z = sub(x, cone.apex);
    ConvexBody G = translate(cone.generator, scaled(cone.apex, -1.0));
    if (ctx.lifted_coords == 0) {
        if (const auto* p = std::get_if<PolytopeRep>(&G.rep()))
            return add(cone.apex, project_conic_hull(p->vertices, z));
    }
    double zn = ctx.norm(z);
    if (zn == 0.0) return cone.apex;
    double delta = dist_to_body(zeros(ctx.dimension), G);
    double t_max = delta > 1e-12 ? zn / delta + 1.0 : 1e6 * (zn + 1.0);
    auto g = [&](double t) { return dist_to_scaled_body(z, G, t); };
    double t_star = golden_section_min(g, 0.0, t_max, std::max(1e-13, 1e-13 * t_max), 260);
    if (g(0.0) <= g(t_star)) t_star = 0.0;
    return add(cone.apex, project_to_body(z, scale(G, t_star)));
}

double sup_norm_over_body(const ConvexBody& body) {
    const auto& ctx = body.context();
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        double m = 0.0;
        for (const auto& v : p->vertices) m = std::max(m, ctx.norm(v));
        return m;
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep())) return ctx.norm(b->center) + b->radius;
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return sup_norm_over_body(*e->base) + e->eps;
    const auto& pr = std::get<ProductRep>(body.rep());
    return std::max(sup_norm_over_body(*pr.base), std::max(std::fabs(pr.lo), std::fabs(pr.hi)));
}

ConeGeometryStats cone_stats(const ConvexBody& body, double tol) {
    Vec origin = zeros(body.dimension());
    if (body_membership(body, origin, tol))
        throw ZeroInBodyError("cone_stats: 0 lies in the body within tolerance");
    ConeGeometryStats st;
    st.delta = dist_to_body(origin, body);
    st.L = sup_norm_over_body(body);
    st.c = st.delta / st.L;
    st.s = st.L;
    st.mu = 0.5 * st.delta;
    return st;
}

double inf_linear(const ConvexBody& body, const Vec& p) {
    const auto& ctx = body.context();
    if (const auto* poly = std::get_if<PolytopeRep>(&body.rep())) {
        double m = kInf;
        for (const auto& v : poly->vertices) m = std::min(m, dot(p, v));
        return m;
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep()))
        return dot(p, b->center) - b->radius * ctx.dual_norm(p);
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep()))
        return inf_linear(*e->base, p) - e->eps * ctx.dual_norm(p);
    const auto& pr = std::get<ProductRep>(body.rep());
    Vec head(p.begin(), p.end() - 1);
    double q = p.back();
    return inf_linear(*pr.base, head) + std::min(q * pr.lo, q * pr.hi);
}

std::vector<Vec> sample_body(const ConvexBody& body, int refinement) {
    if (refinement < 1) throw Error("sample_body: refinement must be positive");
    const auto& ctx = body.context();
    std::vector<Vec> out;
    if (const auto* p = std::get_if<PolytopeRep>(&body.rep())) {
        const int m = static_cast<int>(p->vertices.size());
        if (m == 1) return {p->vertices[0]};
        int g = refinement;
        while (g > 1 && composition_count(g, m) > 20000) --g;
        barycentric_grid(p->vertices, g, out);
        return out;
    }
    if (const auto* b = std::get_if<BallRep>(&body.rep())) {
        if (ctx.lifted_coords == 0) {
            out.push_back(b->center);
            if (b->radius > 0.0) {
                int shells = std::max(1, std::min(refinement, 10));
                auto dirs = unit_directions(ctx.dimension, refinement);
                for (int j = 1; j <= shells; ++j) {
                    double r = b->radius * j / shells;
                    for (const auto& u : dirs) out.push_back(axpy(b->center, r, u));
                }
            }
            return out;
        }
        // lifted ball = head ball x interval in the trailing coordinate
        Vec head_center(b->center.begin(), b->center.end() - 1);
        auto base_ctx = ctx;
        base_ctx.dimension -= 1;
        base_ctx.lifted_coords -= 1;
        if (base_ctx.lifted_coords == 0) base_ctx.norm_kind = NormKind::Euclidean;
        ConvexBody head_ball = ConvexBody::ball(head_center, b->radius, base_ctx);
        auto head_samples = sample_body(head_ball, refinement);
        double lo = b->center.back() - b->radius, hi = b->center.back() + b->radius;
        int k = interval_grid_points(lo, hi, std::min(refinement, 4));
        for (const auto& h : head_samples)
            for (int j = 0; j < k; ++j) {
                Vec v = h;
                v.push_back(k == 1 ? lo : lo + (hi - lo) * j / (k - 1));
                out.push_back(std::move(v));
            }
        return out;
    }
    if (const auto* e = std::get_if<EnlargementRep>(&body.rep())) {
        auto base_samples = sample_body(*e->base, refinement);
        auto offsets = enlargement_offsets(ctx, e->eps);
        out.reserve(base_samples.size() * offsets.size());
        for (const auto& s : base_samples)
            for (const auto& o : offsets) out.push_back(add(s, o));
        return out;
    }
    const auto& pr = std::get<ProductRep>(body.rep());
    auto base_samples = sample_body(*pr.base, refinement);
    int k = interval_grid_points(pr.lo, pr.hi, refinement);
    out.reserve(base_samples.size() * k);
    for (const auto& s : base_samples)
        for (int j = 0; j < k; ++j) {
            Vec v = s;
            v.push_back(k == 1 ? pr.lo : pr.lo + (pr.hi - pr.lo) * j / (k - 1));
            out.push_back(std::move(v));
        }
    return out;
}

}  // namespace multidir
