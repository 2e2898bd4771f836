#ifndef MULTIDIR_GEOMETRY_HPP
#define MULTIDIR_GEOMETRY_HPP

#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "multidir/vec.hpp"

namespace multidir {

inline constexpr double kDefaultTol = 1e-9;

class ConvexBody;
using BodyPtr = std::shared_ptr<const ConvexBody>;

struct PolytopeRep {
    std::vector<Vec> vertices;  // nonempty; the body is their convex hull
};
struct BallRep {
    Vec center;
    double radius = 0.0;  // ball in the context norm
};
struct EnlargementRep {
    BodyPtr base;
    double eps = 0.0;  // base + eps * unit ball of the context norm
};
// base x [lo, hi] in the lifted product space; base lives one lift level down
struct ProductRep {
    BodyPtr base;
    double lo = 0.0;
    double hi = 0.0;
};

// A nonempty closed bounded convex set: polytope (V-representation), ball,
// eps-enlargement, or a product with an interval (for lifted spaces).
class ConvexBody {
public:
    using Rep = std::variant<PolytopeRep, BallRep, EnlargementRep, ProductRep>;

    ConvexBody(Rep rep, VectorSpaceContext ctx);

    static ConvexBody polytope(std::vector<Vec> vertices);
    static ConvexBody polytope(std::vector<Vec> vertices, VectorSpaceContext ctx);
    static ConvexBody ball(Vec center, double radius);
    static ConvexBody ball(Vec center, double radius, VectorSpaceContext ctx);
    static ConvexBody enlargement(ConvexBody base, double eps);
    static ConvexBody product(ConvexBody base, double lo, double hi);

    const Rep& rep() const { return rep_; }
    const VectorSpaceContext& context() const { return ctx_; }
    int dimension() const { return ctx_.dimension; }

private:
    Rep rep_;
    VectorSpaceContext ctx_;
};

struct MultiInterval {
    Vec apex;
    ConvexBody body;  // [a, A] = { a + t (x - a) : t in [0,1], x in A }
};

struct Cone {
    Vec apex;
    ConvexBody generator;  // C(a; A) = { a + t (x - a) : t >= 0, x in A }
};

// apex a with direction body B, i.e. C(a; a + B)
Cone cone_from_directions(Vec apex, const ConvexBody& directions);

struct ConeGeometryStats {
    double delta = 0.0;  // inf of norms over the generator
    double L = 0.0;      // sup of norms over the generator
    double c = 0.0;      // delta / L
    double s = 0.0;      // alias of L
    double mu = 0.0;     // fixed at delta / 2
};

// body algebra
ConvexBody translate(const ConvexBody& body, const Vec& shift);
ConvexBody scale(const ConvexBody& body, double factor);
ConvexBody enlarge(const ConvexBody& body, double eps);

// metric queries (context norm)
double dist_to_body(const Vec& x, const ConvexBody& body);
// Euclidean nearest point for polytope/ball/enlargement; componentwise for
// products (attains the sup-norm distance there as well).
Vec project_to_body(const Vec& x, const ConvexBody& body);
bool body_membership(const ConvexBody& body, const Vec& x, double tol = kDefaultTol);

double dist_to_interval(const MultiInterval& iv, const Vec& x);
bool interval_membership(const MultiInterval& iv, const Vec& x, double tol = kDefaultTol);

double dist_to_cone(const Vec& x, const Cone& cone);
bool cone_membership(const Cone& cone, const Vec& x, double tol = kDefaultTol);
// nearest cone point; exact for Euclidean polytope generators, otherwise via
// the same t-search as dist_to_cone
Vec project_to_cone(const Vec& x, const Cone& cone);

ConeGeometryStats cone_stats(const ConvexBody& body, double tol = kDefaultTol);

// exact: vertex minimum for polytopes, support formula for balls/enlargements
double inf_linear(const ConvexBody& body, const Vec& p);

// Deterministic sample of the body: vertices plus a barycentric grid for
// polytopes, concentric shells for balls, base x offsets for enlargements,
// base x interval grid for products.
std::vector<Vec> sample_body(const ConvexBody& body, int refinement);

// structural norm bounds used by cone_stats (valid without the 0-not-in-body check)
double sup_norm_over_body(const ConvexBody& body);

// exact Euclidean projections used by the polytope paths; exposed for reuse
Vec project_convex_hull(const std::vector<Vec>& vertices, const Vec& x);
Vec project_conic_hull(const std::vector<Vec>& generators, const Vec& x);

}  // namespace multidir

#endif  // MULTIDIR_GEOMETRY_HPP
