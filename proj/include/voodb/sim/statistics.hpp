#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace voodb::sim {

// One sample per completed replication for a named metric.
struct StatSeries {
    std::string metric;
    std::vector<double> samples;

    void add(double x) { samples.push_back(x); }
    std::size_t size() const noexcept { return samples.size(); }
};

struct ConfidenceInterval {
    double mean = 0.0;
    double half_width = 0.0;
    double level = 0.95;
    std::size_t n = 0;

    double lower() const noexcept { return mean - half_width; }
    double upper() const noexcept { return mean + half_width; }
    bool contains(double x) const noexcept { return lower() <= x && x <= upper(); }
    bool overlaps(const ConfidenceInterval& o) const noexcept {
        return lower() <= o.upper() && o.lower() <= upper();
    }
};

double mean(std::span<const double> xs);

// Sample standard deviation with the n-1 denominator. Requires n >= 2.
double sample_stddev(std::span<const double> xs);

// Regularized incomplete beta function I_x(a, b) for a, b > 0, x in [0, 1].
double regularized_incomplete_beta(double a, double b, double x);

// Student t distribution with `dof` degrees of freedom.
double student_t_cdf(double t, double dof);

// Inverse of student_t_cdf for p in (0, 1); solved to ~1e-13 relative.
double student_t_quantile(double p, double dof);

// Mean and half-width h = t_{n-1, 1-alpha/2} * s / sqrt(n), alpha = 1 - level.
// Throws voodb::Error when n < 2 or level is outside (0, 1).
ConfidenceInterval confidence_half_width(std::span<const double> samples, double level = 0.95);
inline ConfidenceInterval confidence_half_width(const StatSeries& series, double level = 0.95) {
    return confidence_half_width(std::span<const double>(series.samples), level);
}

// Replications needed to bring a pilot half-width h (from n runs) down to
// h_star: ceil(n * (h / h_star)^2). Throws voodb::Error when h_star <= 0.
std::int64_t required_replications(std::int64_t n, double h, double h_star);

}  // namespace voodb::sim
