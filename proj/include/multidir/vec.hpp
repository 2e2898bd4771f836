#ifndef MULTIDIR_VEC_HPP
#define MULTIDIR_VEC_HPP

#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

namespace multidir {

using Vec = std::vector<double>;

Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
double dot(const Vec& a, const Vec& b);
double l2_norm(const Vec& a);
Vec zeros(int n);

// a + s*b
Vec axpy(const Vec& a, double s, const Vec& b);

enum class NormKind { Euclidean, Sup };

// The ambient space (X, ||.||).  Euclidean contexts carry the plain l2 norm.
// A lifted product space X x R x ... x R uses ||(x,t)|| = max{||x||, |t|, ...}:
// `lifted_coords` counts the trailing coordinates combined by max with the
// l2 norm of the leading block.  Lifting an already lifted space nests the
// same rule.
struct VectorSpaceContext {
    int dimension = 0;
    NormKind norm_kind = NormKind::Euclidean;
    int lifted_coords = 0;

    static VectorSpaceContext euclidean(int n) { return {n, NormKind::Euclidean, 0}; }

    VectorSpaceContext lifted() const {
        return {dimension + 1, NormKind::Sup, lifted_coords + 1};
    }

    int head() const { return dimension - lifted_coords; }

    double norm(const Vec& v) const;
    // Dual norm: l2 on the leading block plus the sum of |.| on the trailing
    // lifted coordinates.
    double dual_norm(const Vec& p) const;
    double dist(const Vec& a, const Vec& b) const;

    bool operator==(const VectorSpaceContext&) const = default;
};

// Golden-section minimisation of a convex scalar function on [lo, hi].
// Returns the argmin; the value can be re-evaluated by the caller.
double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int max_iter = 200);

std::string format_point(const Vec& v);

}  // namespace multidir

#endif  // MULTIDIR_VEC_HPP
