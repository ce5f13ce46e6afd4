#ifndef SACSHA1_STATS_HPP
#define SACSHA1_STATS_HPP

// Numerical statistics: inverse error function, sampling-theory sample size,
// means, five-figure summaries, histograms, normal/log-normal/Weibull fits,
// quantile functions and Q-Q data.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sac::stats {

// Rational initial approximation refined by Newton steps against std::erf.
inline double erf_inverse(double y) {
    if (!(y > -1.0 && y < 1.0)) {
        throw std::domain_error("erf_inverse: argument must lie in (-1, 1)");
    }
    if (y == 0.0) return 0.0;

    // Initial guess via the inverse-normal relation: erf^-1(y) = probit((y+1)/2)/sqrt(2),
    // with Peter Acklam's rational approximation for the probit.
    const double p = 0.5 * (y + 1.0);
    static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                                   -2.759285104469687e+02, 1.383577518672690e+02,
                                   -3.066479806614716e+01, 2.506628277459239e+00};
    static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                                   -1.556989798598866e+02, 6.680131188771972e+01,
                                   -1.328068155288572e+01};
    static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                                   -2.400758277161838e+00, -2.549732539343734e+00,
                                   4.374664141464968e+00,  2.938163982698783e+00};
    static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                                   2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }
    x /= std::numbers::sqrt2;

    // Newton on erf(x) - y; derivative 2/sqrt(pi) * exp(-x^2).
    for (int iter = 0; iter < 4; ++iter) {
        const double err = std::erf(x) - y;
        const double deriv = 2.0 * std::numbers::inv_sqrtpi * std::exp(-x * x);
        x -= err / deriv;
    }
    return x;
}

struct SampleSizeParams {
    double confidence = 0.99;
    double margin_of_error = 0.01;
};

// n = (erf^-1(confidence) / (moe * sqrt(2)))^2, rounded to the nearest
// integer (16587.24 -> 16587 at the 1%/99% defaults).
inline std::uint64_t sample_size(const SampleSizeParams& params) {
    if (!(params.confidence > 0.0 && params.confidence < 1.0) ||
        !(params.margin_of_error > 0.0 && params.margin_of_error < 1.0)) {
        throw std::domain_error("sample_size: confidence and margin must lie in (0, 1)");
    }
    const double z = erf_inverse(params.confidence) /
                     (params.margin_of_error * std::numbers::sqrt2);
    return static_cast<std::uint64_t>(std::llround(z * z));
}

inline double geometric_mean(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("geometric_mean: empty input");
    double log_sum = 0.0;
    for (double x : xs) {
        if (x < 0.0) throw std::domain_error("geometric_mean: negative value");
        if (x == 0.0) return 0.0;
        log_sum += std::log(x);
    }
    return std::exp(log_sum / static_cast<double>(xs.size()));
}

struct FiveFigureSummary {
    double min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

namespace detail {

// Type-7 quantile: linear interpolation at position 1 + (n-1)p (1-based).
inline double sorted_quantile(std::span<const double> sorted, double p) {
    const std::size_t n = sorted.size();
    if (n == 1) return sorted[0];
    const double pos = static_cast<double>(n - 1) * p;
    const std::size_t lo = static_cast<std::size_t>(pos);
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace detail

inline FiveFigureSummary five_figure(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("five_figure: empty input");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    return {sorted.front(), detail::sorted_quantile(sorted, 0.25),
            detail::sorted_quantile(sorted, 0.5), detail::sorted_quantile(sorted, 0.75),
            sorted.back()};
}

struct HistogramBucket {
    double center = 0.0;
    std::uint64_t count = 0;
};

// Equal-width buckets on [lo, hi]; values at hi land in the last bucket;
// zero-count buckets are omitted.
inline std::vector<HistogramBucket> histogram(std::span<const double> xs,
                                              std::size_t bucket_count, double lo,
                                              double hi) {
    if (bucket_count < 1) throw std::invalid_argument("histogram: bucket_count must be >= 1");
    if (!(lo < hi)) throw std::invalid_argument("histogram: range must satisfy lo < hi");
    std::vector<std::uint64_t> counts(bucket_count, 0);
    const double width = (hi - lo) / static_cast<double>(bucket_count);
    for (double x : xs) {
        if (x < lo || x > hi) continue;
        auto idx = static_cast<std::size_t>((x - lo) / width);
        if (idx >= bucket_count) idx = bucket_count - 1;
        ++counts[idx];
    }
    std::vector<HistogramBucket> out;
    for (std::size_t i = 0; i < bucket_count; ++i) {
        if (counts[i] == 0) continue;
        out.push_back({lo + (static_cast<double>(i) + 0.5) * width, counts[i]});
    }
    return out;
}

enum class Family { kNormal, kLognormal, kWeibull };

inline std::string family_name(Family f) {
    switch (f) {
        case Family::kNormal: return "normal";
        case Family::kLognormal: return "lognormal";
        case Family::kWeibull: return "weibull";
    }
    return "?";
}

struct DistributionParams {
    Family family = Family::kNormal;
    double p1 = 0.0;  // mu (normal), log-space mu (lognormal), shape k (weibull)
    double p2 = 1.0;  // sigma, log-space sigma, scale lambda
};

// Sample mean and population (n-denominator) standard deviation.
inline DistributionParams fit_normal(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("fit_normal: empty input");
    double mean = 0.0;
    for (double x : xs) mean += x;
    mean /= static_cast<double>(xs.size());
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    var /= static_cast<double>(xs.size());
    return {Family::kNormal, mean, std::sqrt(var)};
}

inline DistributionParams fit_lognormal(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("fit_lognormal: empty input");
    std::vector<double> logs;
    logs.reserve(xs.size());
    for (double x : xs) {
        if (!(x > 0.0)) throw std::domain_error("fit_lognormal: nonpositive value");
        logs.push_back(std::log(x));
    }
    const DistributionParams n = fit_normal(logs);
    return {Family::kLognormal, n.p1, n.p2};
}

namespace detail {

// Weighted Weibull MLE. Newton on the shape equation
//   g(k) = sum(w x^k ln x)/sum(w x^k) - 1/k - mean(w ln x) = 0,
// then scale in closed form: lambda = (sum(w x^k)/W)^(1/k).
inline DistributionParams fit_weibull_weighted(std::span<const double> values,
                                               std::span<const double> weights) {
    double total_weight = 0.0;
    double mean_log = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!(values[i] > 0.0)) throw std::domain_error("fit_weibull: nonpositive value");
        total_weight += weights[i];
        mean_log += weights[i] * std::log(values[i]);
    }
    if (total_weight <= 0.0) throw std::invalid_argument("fit_weibull: empty input");
    mean_log /= total_weight;

    double k = 1.0;
    constexpr int kMaxIterations = 200;
    constexpr double kRelTol = 1e-10;
    for (int iter = 0; iter < kMaxIterations; ++iter) {
        double s0 = 0.0, s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double lx = std::log(values[i]);
            const double xk = weights[i] * std::pow(values[i], k);
            s0 += xk;
            s1 += xk * lx;
            s2 += xk * lx * lx;
        }
        const double g = s1 / s0 - 1.0 / k - mean_log;
        const double dg = (s2 * s0 - s1 * s1) / (s0 * s0) + 1.0 / (k * k);
        const double step = g / dg;
        double next = k - step;
        if (next <= 0.0) next = k / 2.0;
        const double rel = std::abs(next - k) / next;
        k = next;
        if (rel < kRelTol) {
            double sk = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                sk += weights[i] * std::pow(values[i], k);
            }
            return {Family::kWeibull, k, std::pow(sk / total_weight, 1.0 / k)};
        }
    }
    throw std::runtime_error("fit_weibull: Newton iteration did not converge in 200 steps");
}

}  // namespace detail

inline DistributionParams fit_weibull(std::span<const double> xs) {
    if (xs.empty()) throw std::invalid_argument("fit_weibull: empty input");
    std::vector<double> weights(xs.size(), 1.0);
    return detail::fit_weibull_weighted(xs, weights);
}

inline double quantile(const DistributionParams& d, double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("quantile: p must lie in (0, 1)");
    switch (d.family) {
        case Family::kNormal:
            return d.p1 + d.p2 * std::numbers::sqrt2 * erf_inverse(2.0 * p - 1.0);
        case Family::kLognormal:
            return std::exp(d.p1 + d.p2 * std::numbers::sqrt2 * erf_inverse(2.0 * p - 1.0));
        case Family::kWeibull:
            return d.p2 * std::pow(-std::log1p(-p), 1.0 / d.p1);
    }
    throw std::logic_error("quantile: unknown family");
}

struct QqPoint {
    double theoretical = 0.0;
    double empirical = 0.0;
};

// Plotting positions (i - 0.5)/n for 1-based rank i.
inline std::vector<QqPoint> qq_data(std::span<const double> xs,
                                    const DistributionParams& d) {
    if (xs.empty()) throw std::invalid_argument("qq_data: empty input");
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<QqPoint> out;
    out.reserve(sorted.size());
    const double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        out.push_back({quantile(d, (static_cast<double>(i) + 0.5) / n), sorted[i]});
    }
    return out;
}

}  // namespace sac::stats

#endif  // SACSHA1_STATS_HPP
