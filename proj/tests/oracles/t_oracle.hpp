#pragma once

// Reference statistics taken from Boost.Math, independent of the
// library's own incomplete-beta implementation.

#include <cmath>
#include <numeric>
#include <span>

#include <boost/math/distributions/students_t.hpp>

namespace oracle {

inline double t_quantile(double p, double dof) {
    return boost::math::quantile(boost::math::students_t_distribution<double>(dof), p);
}

inline double t_cdf(double t, double dof) {
    return boost::math::cdf(boost::math::students_t_distribution<double>(dof), t);
}

// h = t_{n-1, 1-alpha/2} * s / sqrt(n), computed in long double.
inline double half_width(std::span<const double> xs, double level = 0.95) {
    const auto n = static_cast<long double>(xs.size());
    long double sum = 0;
    for (double x : xs) sum += x;
    const long double m = sum / n;
    long double ss = 0;
    for (double x : xs) ss += (x - m) * (x - m);
    const long double s = std::sqrt(ss / (n - 1));
    const double t = t_quantile(1.0 - (1.0 - level) / 2.0, static_cast<double>(xs.size() - 1));
    return static_cast<double>(t * s / std::sqrt(n));
}

}  // namespace oracle
