#ifndef MULTIDIR_TESTS_HELPERS_HPP
#define MULTIDIR_TESTS_HELPERS_HPP

// Brute-force oracles used to derive expected values independently of the
// library code paths they check.

#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "multidir/vec.hpp"

namespace multidir::testing {

// dense parameter sweep over the segment [v0, v1]
inline double sweep_dist_to_segment(const Vec& x, const Vec& v0, const Vec& v1, int steps = 20000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        Vec p = add(scaled(v0, 1.0 - t), scaled(v1, t));
        best = std::min(best, l2_norm(sub(x, p)));
    }
    return best;
}

// dense sweep over convex combinations of up to three vertices
inline double sweep_dist_to_hull(const Vec& x, const std::vector<Vec>& verts, int steps = 400) {
    double best = std::numeric_limits<double>::infinity();
    if (verts.size() == 1) return l2_norm(sub(x, verts[0]));
    if (verts.size() == 2) return sweep_dist_to_segment(x, verts[0], verts[1]);
    for (int i = 0; i <= steps; ++i)
        for (int j = 0; j <= steps - i; ++j) {
            double w0 = static_cast<double>(i) / steps;
            double w1 = static_cast<double>(j) / steps;
            double w2 = 1.0 - w0 - w1;
            Vec p = add(add(scaled(verts[0], w0), scaled(verts[1], w1)), scaled(verts[2], w2));
            best = std::min(best, l2_norm(sub(x, p)));
        }
    return best;
}

// sweep over (t, convex weight) for membership of x in [a, conv{v0,v1}]
inline double sweep_dist_to_interval2(const Vec& x, const Vec& a, const Vec& v0, const Vec& v1,
                                      int steps = 2000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        double t = static_cast<double>(i) / steps;
        for (int j = 0; j <= steps / 10; ++j) {
            double w = static_cast<double>(j) / (steps / 10);
            Vec y = add(scaled(v0, 1.0 - w), scaled(v1, w));
            Vec p = add(a, scaled(sub(y, a), t));
            best = std::min(best, l2_norm(sub(x, p)));
        }
    }
    return best;
}

// sweep over (t, weight) for the distance to C(apex; conv{v0, v1})
inline double sweep_dist_to_cone2(const Vec& x, const Vec& apex, const Vec& v0, const Vec& v1,
                                  double t_max, int steps = 4000) {
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= steps; ++i) {
        double t = t_max * i / steps;
        for (int j = 0; j <= 100; ++j) {
            double w = j / 100.0;
            Vec y = add(scaled(v0, 1.0 - w), scaled(v1, w));
            Vec p = add(apex, scaled(sub(y, apex), t));
            best = std::min(best, l2_norm(sub(x, p)));
        }
    }
    return best;
}

// exact conic feasibility in dimension d with exactly d generators: solves
// the linear system and checks nonnegativity (independent of the library's
// projection machinery)
inline bool conic_member_exact(const Vec& z, const std::vector<Vec>& gens, double tol = 1e-9) {
    const int d = static_cast<int>(z.size());
    if (static_cast<int>(gens.size()) != d) return false;
    // Gaussian elimination on [G | z]
    std::vector<std::vector<double>> A(d, std::vector<double>(d + 1));
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) A[r][c] = gens[c][r];
        A[r][d] = z[r];
    }
    for (int col = 0; col < d; ++col) {
        int piv = col;
        for (int r = col + 1; r < d; ++r)
            if (std::fabs(A[r][col]) > std::fabs(A[piv][col])) piv = r;
        if (std::fabs(A[piv][col]) < 1e-12) return false;
        std::swap(A[piv], A[col]);
        for (int r = col + 1; r < d; ++r) {
            double m = A[r][col] / A[col][col];
            for (int c = col; c <= d; ++c) A[r][c] -= m * A[col][c];
        }
    }
    std::vector<double> mu(d);
    for (int r = d - 1; r >= 0; --r) {
        double s = A[r][d];
        for (int c = r + 1; c < d; ++c) s -= A[r][c] * mu[c];
        mu[r] = s / A[r][r];
    }
    for (double m : mu)
        if (m < -tol) return false;
    return true;
}

inline Vec central_diff_gradient(const std::function<double(const Vec&)>& f, const Vec& x,
                                 double h = 1e-6) {
    Vec g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        Vec xp = x, xm = x;
        xp[i] += h;
        xm[i] -= h;
        g[i] = (f(xp) - f(xm)) / (2.0 * h);
    }
    return g;
}

inline Vec random_point(std::mt19937_64& rng, int dim, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vec v(dim);
    for (auto& x : v) x = u(rng);
    return v;
}

}  // namespace multidir::testing

#endif  // MULTIDIR_TESTS_HELPERS_HPP
