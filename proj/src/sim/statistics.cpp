#include "voodb/sim/statistics.hpp"

#include <cmath>
#include <limits>

#include "voodb/errors.hpp"

namespace voodb::sim {

namespace {

// Continued fraction for I_x(a, b), modified Lentz. Converges fast for
// x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
    constexpr int kMaxIter = 1000;
    constexpr double kEps = 1e-16;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

// P(T > t) for t >= 0.
double student_t_upper_tail(double t, double dof) {
    const double x = dof / (dof + t * t);
    return 0.5 * regularized_incomplete_beta(0.5 * dof, 0.5, x);
}

}  // namespace

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double sum = 0.0;
    for (double x : xs) sum += x;
    return sum / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
    if (xs.size() < 2) throw Error("sample standard deviation needs at least 2 samples");
    const double m = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double regularized_incomplete_beta(double a, double b, double x) {
    if (!(a > 0.0) || !(b > 0.0)) throw Error("incomplete beta needs a, b > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                             a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(log_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_continued_fraction(a, b, x) / a;
    return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double dof) {
    if (!(dof > 0.0)) throw Error("student t needs dof > 0");
    if (std::isinf(t)) return t > 0 ? 1.0 : 0.0;
    const double tail = student_t_upper_tail(std::fabs(t), dof);
    return t >= 0.0 ? 1.0 - tail : tail;
}

double student_t_quantile(double p, double dof) {
    if (!(p > 0.0 && p < 1.0)) throw Error("student t quantile needs p in (0, 1)");
    if (!(dof > 0.0)) throw Error("student t needs dof > 0");
    if (p == 0.5) return 0.0;
    if (p < 0.5) return -student_t_quantile(1.0 - p, dof);

    // Solve P(T > t) = 1 - p on the tail, where the target keeps full
    // relative precision.
    const double target = 1.0 - p;
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_upper_tail(hi, dof) > target) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) return std::numeric_limits<double>::infinity();
    }
    for (int i = 0; i < 200 && hi - lo > 1e-15 * hi; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_upper_tail(mid, dof) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

ConfidenceInterval confidence_half_width(std::span<const double> samples, double level) {
    if (samples.size() < 2) {
        throw Error("confidence interval needs at least 2 samples (got " +
                    std::to_string(samples.size()) + ")");
    }
    if (!(level > 0.0 && level < 1.0)) throw Error("confidence level must be in (0, 1)");

    ConfidenceInterval ci;
    ci.level = level;
    ci.n = samples.size();
    ci.mean = mean(samples);
    const double s = sample_stddev(samples);
    if (s == 0.0) return ci;
    const double alpha = 1.0 - level;
    const double n = static_cast<double>(samples.size());
    ci.half_width = student_t_quantile(1.0 - alpha / 2.0, n - 1.0) * s / std::sqrt(n);
    return ci;
}

std::int64_t required_replications(std::int64_t n, double h, double h_star) {
    if (!(h_star > 0.0)) throw Error("desired half-width must be positive");
    if (n < 1) throw Error("pilot replication count must be >= 1");
    if (h < 0.0) throw Error("half-width must be nonnegative");
    const double ratio = h / h_star;
    const double exact = static_cast<double>(n) * ratio * ratio;
    // Absorb rounding noise so an exact integer is not bumped up by one.
    return static_cast<std::int64_t>(std::ceil(exact * (1.0 - 1e-12)));
}

}  // namespace voodb::sim
