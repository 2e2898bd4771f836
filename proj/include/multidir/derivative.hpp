#ifndef MULTIDIR_DERIVATIVE_HPP
#define MULTIDIR_DERIVATIVE_HPP

#include <vector>

#include "multidir/geometry.hpp"
#include "multidir/oracles.hpp"

namespace multidir {

// geometric schedule t_k = t0 * rho^k realising the t -> 0 limit
struct TSchedule {
    double t0 = 0.1;
    double rho = 0.7;
    int steps = 40;
    int tail_window = 10;

    std::vector<double> levels() const;
    void validate() const;
    bool operator==(const TSchedule&) const = default;
};

struct DerivativeEstimate {
    std::vector<double> ts;
    std::vector<double> inf_values;
    std::vector<double> quotients;  // (inf f(x + t_k A) - f(x)) / t_k
    double estimate = 0.0;          // min over the tail window
    TSchedule schedule;
    int refinement = 0;
};

// the A-directional lower derivative of f at x, traced over the schedule
DerivativeEstimate multidir_derivative(const ScalarFunction& f, const Vec& x, const ConvexBody& A,
                                       const TSchedule& schedule = {}, int refinement = 48);

struct GrowthReport {
    double lambda = 0.0;
    double k = 0.0;        // lambda / s
    double eps_bar = 0.0;  // mu * delta_t
    double delta_t = 0.0;  // largest trace t below which every quotient clears lambda
    double s = 0.0;
    double mu = 0.0;
    int samples_checked = 0;
    double worst_margin = 0.0;  // min of f(y) - f(x) - k ||y - x||
};

// verifies the linear growth f(y) - f(x) >= k ||y-x|| on the truncated cone
GrowthReport check_growth(const ScalarFunction& f, const Vec& x, const ConvexBody& A,
                          double lambda, int refinement = 48, const TSchedule& schedule = {});

}  // namespace multidir

#endif  // MULTIDIR_DERIVATIVE_HPP
