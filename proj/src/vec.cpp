#include "multidir/vec.hpp"

#include <cassert>
#include <cstdio>

namespace multidir {

Vec add(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vec sub(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vec scaled(const Vec& a, double s) {
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

Vec axpy(const Vec& a, double s, const Vec& b) {
    assert(a.size() == b.size());
    Vec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + s * b[i];
    return r;
}

double dot(const Vec& a, const Vec& b) {
    assert(a.size() == b.size());
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double l2_norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec zeros(int n) { return Vec(static_cast<std::size_t>(n), 0.0); }

double VectorSpaceContext::norm(const Vec& v) const {
    assert(static_cast<int>(v.size()) == dimension);
    if (lifted_coords == 0) return l2_norm(v);
    const int h = head();
    double s = 0.0;
    for (int i = 0; i < h; ++i) s += v[i] * v[i];
    double n = std::sqrt(s);
    for (int i = h; i < dimension; ++i) n = std::max(n, std::fabs(v[i]));
    return n;
}

double VectorSpaceContext::dual_norm(const Vec& p) const {
    assert(static_cast<int>(p.size()) == dimension);
    if (lifted_coords == 0) return l2_norm(p);
    const int h = head();
    double s = 0.0;
    for (int i = 0; i < h; ++i) s += p[i] * p[i];
    double n = std::sqrt(s);
    for (int i = h; i < dimension; ++i) n += std::fabs(p[i]);
    return n;
}

double VectorSpaceContext::dist(const Vec& a, const Vec& b) const { return norm(sub(a, b)); }

double golden_section_min(const std::function<double(double)>& f, double lo, double hi,
                          double tol, int max_iter) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int it = 0; it < max_iter && (b - a) > tol; ++it) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    double xm = 0.5 * (a + b);
    // keep endpoints in play: convexity can place the min on the boundary
    double fm = f(xm);
    double fl = f(lo), fh = f(hi);
    if (fl <= fm && fl <= fh) return lo;
    if (fh <= fm && fh <= fl) return hi;
    return xm;
}

std::string format_point(const Vec& v) {
    std::string s = "(";
    char buf[40];
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.12g", v[i]);
        if (i) s += ", ";
        s += buf;
    }
    s += ")";
    return s;
}

}  // namespace multidir
