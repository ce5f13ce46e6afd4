#ifndef SACSHA1_REPORTS_HPP
#define SACSHA1_REPORTS_HPP

// Report generation over a persisted ResultBundle: divergence heatmap,
// five-figure summary of signed deviations, SAC-value histograms, Q-Q data
// against fitted normal/log-normal/Weibull distributions, and the toy
// demonstration table for the two definitional SAC criteria.
//
// Rounds in report options and CSV output are 1-based (1..80), matching the
// flat-bit flattening bit(r, i) = (r-1)*32 + (i-1).

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "sacsha1/avalanche.hpp"
#include "sacsha1/bundle.hpp"
#include "sacsha1/sac_toolkit.hpp"
#include "sacsha1/stats.hpp"

namespace sac::reports {

struct RoundRange {
    std::size_t lo = 1;  // inclusive, 1-based
    std::size_t hi = 80;

    void validate() const {
        if (lo < 1 || hi > kRounds || lo > hi) {
            throw std::invalid_argument("round range must satisfy 1 <= lo <= hi <= 80");
        }
    }
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Grouped counts over the SAC-value numerators 0..672.
using GroupedCounts = std::array<std::uint64_t, kInputBits + 1>;

inline GroupedCounts cell_counts(const SacValueCounts& vc, std::size_t r, std::size_t j) {
    GroupedCounts out{};
    for (std::size_t m = 0; m <= kInputBits; ++m) out[m] = vc.at(r, j, m);
    return out;
}

inline GroupedCounts range_counts(const SacValueCounts& vc, const RoundRange& range) {
    GroupedCounts out{};
    for (std::size_t r = range.lo - 1; r < range.hi; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            for (std::size_t m = 0; m <= kInputBits; ++m) out[m] += vc.at(r, j, m);
        }
    }
    return out;
}

inline std::uint64_t total(const GroupedCounts& counts) {
    std::uint64_t n = 0;
    for (auto c : counts) n += c;
    return n;
}

// Value at 0-based sorted index within the grouped multiset.
inline double value_at_index(const GroupedCounts& counts, std::uint64_t index) {
    std::uint64_t cum = 0;
    for (std::size_t m = 0; m <= kInputBits; ++m) {
        cum += counts[m];
        if (index < cum) return static_cast<double>(m) / kInputBits;
    }
    return static_cast<double>(kInputBits) / kInputBits;
}

// Type-7 quantile over the grouped multiset of values m/672.
inline double grouped_quantile(const GroupedCounts& counts, std::uint64_t n, double p) {
    const double pos = static_cast<double>(n - 1) * p;
    const auto lo = static_cast<std::uint64_t>(pos);
    const double a = value_at_index(counts, lo);
    if (lo + 1 >= n) return a;
    const double b = value_at_index(counts, lo + 1);
    return a + (pos - static_cast<double>(lo)) * (b - a);
}

inline double grouped_geometric_mean(const GroupedCounts& counts, std::uint64_t n) {
    if (counts[0] != 0) return 0.0;
    double log_sum = 0.0;
    for (std::size_t m = 1; m <= kInputBits; ++m) {
        if (counts[m] != 0) {
            log_sum += static_cast<double>(counts[m]) *
                       std::log(static_cast<double>(m) / kInputBits);
        }
    }
    return std::exp(log_sum / static_cast<double>(n));
}

inline stats::DistributionParams grouped_fit(const GroupedCounts& counts,
                                             stats::Family family) {
    std::vector<double> values;
    std::vector<double> weights;
    const bool positive_only = (family != stats::Family::kNormal);
    for (std::size_t m = positive_only ? 1 : 0; m <= kInputBits; ++m) {
        if (counts[m] != 0) {
            values.push_back(static_cast<double>(m) / kInputBits);
            weights.push_back(static_cast<double>(counts[m]));
        }
    }
    if (values.empty()) throw std::invalid_argument("fit: no data in range");

    double w_total = 0.0;
    for (double w : weights) w_total += w;
    switch (family) {
        case stats::Family::kNormal: {
            double mean = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) mean += weights[i] * values[i];
            mean /= w_total;
            double var = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                var += weights[i] * (values[i] - mean) * (values[i] - mean);
            }
            return {stats::Family::kNormal, mean, std::sqrt(var / w_total)};
        }
        case stats::Family::kLognormal: {
            double mean = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                mean += weights[i] * std::log(values[i]);
            }
            mean /= w_total;
            double var = 0.0;
            for (std::size_t i = 0; i < values.size(); ++i) {
                const double d = std::log(values[i]) - mean;
                var += weights[i] * d * d;
            }
            return {stats::Family::kLognormal, mean, std::sqrt(var / w_total)};
        }
        case stats::Family::kWeibull:
            return stats::detail::fit_weibull_weighted(values, weights);
    }
    throw std::logic_error("grouped_fit: unknown family");
}

}  // namespace detail

// round,bit,p_arith,p_geom,divergence_arith,divergence_geom (1-based indices)
inline void write_heatmap_csv(const ResultBundle& bundle, const RoundRange& range,
                              std::ostream& out) {
    range.validate();
    if (bundle.matrix.trials == 0) throw std::invalid_argument("heatmap: bundle has no samples");
    const auto estimates = estimate(bundle.matrix);
    out << "round,bit,p_arith,p_geom,divergence_arith,divergence_geom\n";
    for (std::size_t r = range.lo; r <= range.hi; ++r) {
        for (std::size_t j = 1; j <= kBitsPerWord; ++j) {
            const auto counts = detail::cell_counts(bundle.value_counts, r - 1, j - 1);
            const double p_geom =
                detail::grouped_geometric_mean(counts, bundle.value_counts.samples);
            const auto& est = estimates[r - 1][j - 1];
            out << r << ',' << j << ',' << detail::fmt(est.probability) << ','
                << detail::fmt(p_geom) << ',' << detail::fmt(est.divergence) << ','
                << detail::fmt(std::abs(p_geom - 0.5)) << '\n';
        }
    }
}

// flat_bit_index,min,q1,median,q3,max of signed deviations (value - 0.5)
inline void write_summary_csv(const ResultBundle& bundle, const RoundRange& range,
                              std::ostream& out) {
    range.validate();
    const std::uint64_t n = bundle.value_counts.samples;
    if (n == 0) throw std::invalid_argument("summary: bundle has no samples");
    out << "flat_bit_index,min,q1,median,q3,max\n";
    for (std::size_t r = range.lo; r <= range.hi; ++r) {
        for (std::size_t j = 1; j <= kBitsPerWord; ++j) {
            const auto counts = detail::cell_counts(bundle.value_counts, r - 1, j - 1);
            std::size_t min_m = 0, max_m = kInputBits;
            while (counts[min_m] == 0) ++min_m;
            while (counts[max_m] == 0) --max_m;
            out << flatten_bit_index(r, j) << ','
                << detail::fmt(static_cast<double>(min_m) / kInputBits - 0.5) << ','
                << detail::fmt(detail::grouped_quantile(counts, n, 0.25) - 0.5) << ','
                << detail::fmt(detail::grouped_quantile(counts, n, 0.5) - 0.5) << ','
                << detail::fmt(detail::grouped_quantile(counts, n, 0.75) - 0.5) << ','
                << detail::fmt(static_cast<double>(max_m) / kInputBits - 0.5) << '\n';
        }
    }
}

// bucket_center,count over [0,1]; zero buckets omitted. With round set to a
// value, restricts to that round only (the per-round variant).
inline void write_histogram_csv(const ResultBundle& bundle, const RoundRange& range,
                                std::size_t bucket_count, std::ostream& out) {
    range.validate();
    if (bucket_count < 1) throw std::invalid_argument("histogram: bucket_count must be >= 1");
    if (bundle.value_counts.samples == 0) {
        throw std::invalid_argument("histogram: bundle has no samples");
    }
    const auto counts = detail::range_counts(bundle.value_counts, range);
    std::vector<std::uint64_t> buckets(bucket_count, 0);
    const double width = 1.0 / static_cast<double>(bucket_count);
    for (std::size_t m = 0; m <= kInputBits; ++m) {
        if (counts[m] == 0) continue;
        auto idx = static_cast<std::size_t>(static_cast<double>(m) / kInputBits / width);
        if (idx >= bucket_count) idx = bucket_count - 1;
        buckets[idx] += counts[m];
    }
    out << "bucket_center,count\n";
    for (std::size_t b = 0; b < bucket_count; ++b) {
        if (buckets[b] == 0) continue;
        out << detail::fmt((static_cast<double>(b) + 0.5) * width) << ',' << buckets[b]
            << '\n';
    }
}

// theoretical,empirical at up to max_points evenly spaced plotting positions
// (i - 0.5)/K; the fit is estimated from the SAC values in the round range.
inline void write_qq_csv(const ResultBundle& bundle, stats::Family family,
                         const RoundRange& range, std::ostream& out,
                         std::size_t max_points = 1024) {
    range.validate();
    if (bundle.value_counts.samples == 0) {
        throw std::invalid_argument("qq: bundle has no samples");
    }
    const auto counts = detail::range_counts(bundle.value_counts, range);
    const std::uint64_t n = detail::total(counts);
    const auto fit = detail::grouped_fit(counts, family);
    const std::uint64_t points = std::min<std::uint64_t>(n, max_points);
    out << "theoretical,empirical\n";
    for (std::uint64_t i = 0; i < points; ++i) {
        const double p = (static_cast<double>(i) + 0.5) / static_cast<double>(points);
        out << detail::fmt(stats::quantile(fit, p)) << ','
            << detail::fmt(detail::grouped_quantile(counts, n, p)) << '\n';
    }
}

// The two-variable AND demonstration separating the summed criterion from
// the rowwise one. The printed probability column follows the layout of the
// source table it reproduces: the fraction of flips whose avalanche bit
// equals f(x).
inline std::string toy_table() {
    const auto f = toolkit::babbage_function(2);
    const auto report = toolkit::sac_report(f);

    std::ostringstream out;
    out << "x   f  g  h  P(f(x) = f(x_i))\n";
    for (std::uint32_t x = 0; x < 4; ++x) {
        const std::uint8_t fx = f(x);
        const std::uint8_t g = fx ^ f(x ^ 0b01u);
        const std::uint8_t h = fx ^ f(x ^ 0b10u);
        const int matches = (g == fx ? 1 : 0) + (h == fx ? 1 : 0);
        char p[8];
        std::snprintf(p, sizeof(p), "%.1f", matches / 2.0);
        out << ((x >> 1) & 1) << (x & 1) << "  " << int{fx} << "  " << int{g} << "  "
            << int{h} << "  " << p << '\n';
    }
    out << "Sum:   " << report.per_flip_sums[0] << "  " << report.per_flip_sums[1] << '\n';
    out << "summed criterion:  "
        << (report.satisfies_summed ? "satisfied" : "not satisfied")
        << " (every column sum equals 2^(n-1) = 2)\n";
    out << "rowwise criterion: "
        << (report.satisfies_rowwise ? "satisfied" : "not satisfied")
        << " (change probability per baseline:";
    for (double p : report.per_input_change_probabilities) {
        char buf[8];
        std::snprintf(buf, sizeof(buf), " %.1f", p);
        out << buf;
    }
    out << ")\n";
    return out.str();
}

// Convenience for threshold checks over a persisted run.
inline double max_arith_divergence(const ResultBundle& bundle, const RoundRange& range) {
    range.validate();
    const auto estimates = estimate(bundle.matrix);
    double max_div = 0.0;
    for (std::size_t r = range.lo; r <= range.hi; ++r) {
        for (std::size_t j = 0; j < kBitsPerWord; ++j) {
            max_div = std::max(max_div, estimates[r - 1][j].divergence);
        }
    }
    return max_div;
}

}  // namespace sac::reports

#endif  // SACSHA1_REPORTS_HPP
