#include "multidir/derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multidir/errors.hpp"

namespace multidir {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

std::vector<double> TSchedule::levels() const {
    std::vector<double> ts(steps);
    double t = t0;
    for (int k = 0; k < steps; ++k) {
        ts[k] = t;
        t *= rho;
    }
    return ts;
}

void TSchedule::validate() const {
    if (t0 <= 0.0 || rho <= 0.0 || rho >= 1.0 || steps < 1 || tail_window < 1 ||
        tail_window > steps)
        throw Error("invalid t-schedule");
}

DerivativeEstimate multidir_derivative(const ScalarFunction& f, const Vec& x, const ConvexBody& A,
                                       const TSchedule& schedule, int refinement) {
    schedule.validate();
    double fx = f.evaluate(x);
    if (fx == kInf) throw InfiniteBaseError("multidir_derivative: f(x) = +infinity");

    DerivativeEstimate est;
    est.schedule = schedule;
    est.refinement = refinement;
    est.ts = schedule.levels();
    // sample A once; the level-k set x + t_k A reuses the same sample scaled
    auto samples = sample_body(A, refinement);
    est.inf_values.reserve(est.ts.size());
    est.quotients.reserve(est.ts.size());
    for (std::size_t k = 0; k < est.ts.size(); ++k) {
        double t = est.ts[k];
        double inf_v = kInf;
        for (const auto& a : samples) {
            double v = f.evaluate(axpy(x, t, a));
            inf_v = std::min(inf_v, v);
        }
        if (inf_v == kInf)
            throw AllInfiniteError("multidir_derivative: level " + std::to_string(k) +
                                       " has no finite sample",
                                   static_cast<int>(k));
        est.inf_values.push_back(inf_v);
        est.quotients.push_back((inf_v - fx) / t);
    }
    double m = kInf;
    for (int k = schedule.steps - schedule.tail_window; k < schedule.steps; ++k)
        m = std::min(m, est.quotients[k]);
    est.estimate = m;
    return est;
}

GrowthReport check_growth(const ScalarFunction& f, const Vec& x, const ConvexBody& A,
                          double lambda, int refinement, const TSchedule& schedule) {
    auto est = multidir_derivative(f, x, A, schedule, refinement);
    if (lambda >= est.estimate)
        throw PreconditionFailedError("check_growth: lambda must be below the derivative estimate");
    auto stats = cone_stats(A);

    // largest trace level such that every quotient at or below it clears lambda
    int k0 = -1;
    for (int k = static_cast<int>(est.quotients.size()) - 1; k >= 0; --k) {
        if (est.quotients[k] > lambda)
            k0 = k;
        else
            break;
    }
    if (k0 < 0)
        throw ThresholdNotFoundError("check_growth: no trace prefix clears lambda");

    GrowthReport rep;
    rep.lambda = lambda;
    rep.s = stats.s;
    rep.mu = stats.mu;
    rep.delta_t = est.ts[k0];
    rep.k = lambda / stats.s;
    rep.eps_bar = stats.mu * rep.delta_t;
    rep.worst_margin = kInf;

    double fx = f.evaluate(x);
    auto dirs = sample_body(A, std::min(refinement, 16));
    const auto& ctx = A.context();
    for (const auto& a : dirs) {
        double an = ctx.norm(a);
        if (an < 1e-14) continue;
        double t_cap = rep.eps_bar / an;
        for (int j = 0; j <= 12; ++j) {
            double t = t_cap * j / 12.0;
            Vec y = axpy(x, t, a);
            double fy = f.evaluate(y);
            double margin = fy - fx - rep.k * ctx.dist(y, x);
            ++rep.samples_checked;
            rep.worst_margin = std::min(rep.worst_margin, margin);
            if (margin < -1e-9 * (1.0 + std::fabs(fx)))
                throw GrowthViolationError("growth inequality violated at " + format_point(y), y);
        }
    }
    return rep;
}

}  // namespace multidir
