#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "sacsha1/stats.hpp"

using namespace sac::stats;

TEST_CASE("erf_inverse basics") {
    CHECK(erf_inverse(0.0) == 0.0);
    for (double y : {0.9999, 0.99, 0.5, 0.1}) {
        CHECK(erf_inverse(-y) == Catch::Approx(-erf_inverse(y)).margin(1e-15));
    }
    CHECK(erf_inverse(0.99) == Catch::Approx(1.82138637).margin(1e-6));
    CHECK_THROWS_AS(erf_inverse(1.0), std::domain_error);
    CHECK_THROWS_AS(erf_inverse(-1.5), std::domain_error);
}

TEST_CASE("erf round-trips erf_inverse to 1e-12") {
    for (double y : {-0.9999, -0.99, -0.5, 0.0, 0.5, 0.99, 0.9999}) {
        CHECK(std::erf(erf_inverse(y)) == Catch::Approx(y).margin(1e-12));
    }
}

TEST_CASE("sample_size reproduces the 1%-at-99% requirement") {
    CHECK(sample_size({0.99, 0.01}) == 16587);
    CHECK(sample_size({0.99, 0.02}) == 4147);
    CHECK_THROWS_AS(sample_size({1.0, 0.01}), std::domain_error);
    CHECK_THROWS_AS(sample_size({0.99, 0.0}), std::domain_error);
}

TEST_CASE("sample_size is monotone in both parameters") {
    std::uint64_t prev = 0;
    for (double conf : {0.5, 0.9, 0.95, 0.99, 0.999}) {
        const auto n = sample_size({conf, 0.01});
        CHECK(n >= prev);
        prev = n;
    }
    prev = std::numeric_limits<std::uint64_t>::max();
    for (double moe : {0.001, 0.005, 0.01, 0.05, 0.1}) {
        const auto n = sample_size({0.99, moe});
        CHECK(n <= prev);
        prev = n;
    }
}

TEST_CASE("sample_size scales as the inverse square of the margin") {
    // before rounding: (erfinv/ (moe sqrt2))^2; halving moe quadruples n
    const double raw = std::pow(erf_inverse(0.99) / (0.01 * std::numbers::sqrt2), 2.0);
    const double raw_half = std::pow(erf_inverse(0.99) / (0.005 * std::numbers::sqrt2), 2.0);
    CHECK(raw_half == Catch::Approx(4.0 * raw).epsilon(1e-12));
}

TEST_CASE("geometric_mean") {
    const std::vector<double> constant{3.5, 3.5, 3.5};
    CHECK(geometric_mean(constant) == Catch::Approx(3.5));
    const std::vector<double> pair{1.0, 4.0};
    CHECK(geometric_mean(pair) == Catch::Approx(2.0));
    const std::vector<double> with_zero{0.0, 2.0, 9.0};
    CHECK(geometric_mean(with_zero) == 0.0);
    CHECK_THROWS_AS(geometric_mean(std::vector<double>{}), std::invalid_argument);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> dist(0.01, 10.0);
    std::vector<double> xs;
    for (int i = 0; i < 100; ++i) xs.push_back(dist(rng));
    double arith = 0.0;
    for (double x : xs) arith += x;
    arith /= static_cast<double>(xs.size());
    CHECK(geometric_mean(xs) <= arith);
}

TEST_CASE("five_figure summaries") {
    const std::vector<double> symmetric{0, 1, 2, 3, 4};
    auto s = five_figure(symmetric);
    CHECK(s.min == 0);
    CHECK(s.q1 == 1);
    CHECK(s.median == 2);
    CHECK(s.q3 == 3);
    CHECK(s.max == 4);

    const std::vector<double> constant{7, 7, 7};
    s = five_figure(constant);
    CHECK((s.min == 7 && s.q1 == 7 && s.median == 7 && s.q3 == 7 && s.max == 7));

    const std::vector<double> four{1, 2, 3, 4};
    s = five_figure(four);
    CHECK(s.q1 == Catch::Approx(1.75));
    CHECK(s.median == Catch::Approx(2.5));
    CHECK(s.q3 == Catch::Approx(3.25));

    CHECK_THROWS_AS(five_figure(std::vector<double>{}), std::invalid_argument);
}

TEST_CASE("five_figure ordering holds on random inputs with duplicates") {
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<int> dist(0, 9);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> xs;
        const int n = 1 + static_cast<int>(rng() % 40);
        for (int i = 0; i < n; ++i) xs.push_back(dist(rng));
        const auto s = five_figure(xs);
        CHECK(s.min <= s.q1);
        CHECK(s.q1 <= s.median);
        CHECK(s.median <= s.q3);
        CHECK(s.q3 <= s.max);
    }
}

TEST_CASE("histogram semantics") {
    const std::vector<double> one{0.5};
    auto h = histogram(one, 10, 0.0, 1.0);
    REQUIRE(h.size() == 1);
    CHECK(h[0].count == 1);
    CHECK(h[0].center == Catch::Approx(0.55));

    const std::vector<double> edge{1.0};  // value at hi lands in the last bucket
    h = histogram(edge, 10, 0.0, 1.0);
    REQUIRE(h.size() == 1);
    CHECK(h[0].center == Catch::Approx(0.95));

    CHECK_THROWS_AS(histogram(one, 0, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(histogram(one, 10, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("histogram conserves in-range counts and is near-uniform on uniform draws") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    std::vector<double> xs;
    const std::size_t n = 100000;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(dist(rng));
    const auto h = histogram(xs, 10, 0.0, 1.0);
    std::uint64_t total = 0;
    for (const auto& b : h) {
        total += b.count;
        // binomial 5-sigma bound around n/10
        const double sigma = std::sqrt(n * 0.1 * 0.9);
        CHECK(std::abs(static_cast<double>(b.count) - n * 0.1) < 5.0 * sigma);
    }
    CHECK(total == n);
}

TEST_CASE("fit_normal recovers synthetic parameters") {
    std::mt19937_64 rng(4);
    std::normal_distribution<double> dist(0.5, 0.02);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) xs.push_back(dist(rng));
    const auto fit = fit_normal(xs);
    CHECK(fit.p1 == Catch::Approx(0.5).margin(0.001));
    CHECK(fit.p2 == Catch::Approx(0.02).epsilon(0.02));
}

TEST_CASE("fit_lognormal equals fit_normal in log space") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> dist(-0.7, 0.06);
    std::vector<double> logs, exps;
    for (int i = 0; i < 20000; ++i) {
        const double x = dist(rng);
        logs.push_back(x);
        exps.push_back(std::exp(x));
    }
    const auto n = fit_normal(logs);
    const auto ln = fit_lognormal(exps);
    CHECK(ln.p1 == Catch::Approx(n.p1).margin(1e-12));
    CHECK(ln.p2 == Catch::Approx(n.p2).margin(1e-12));
    CHECK_THROWS_AS(fit_lognormal(std::vector<double>{1.0, 0.0}), std::domain_error);
}

TEST_CASE("fit_weibull recovers synthetic parameters by MLE") {
    const double k = 9.6116811, lambda = 0.52480750;
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) {
        xs.push_back(lambda * std::pow(-std::log1p(-u(rng)), 1.0 / k));
    }
    const auto fit = fit_weibull(xs);
    CHECK(fit.p1 == Catch::Approx(k).epsilon(0.02));
    CHECK(fit.p2 == Catch::Approx(lambda).epsilon(0.02));
    CHECK_THROWS_AS(fit_weibull(std::vector<double>{-1.0}), std::domain_error);
}

TEST_CASE("quantile functions") {
    const DistributionParams normal{Family::kNormal, 0.5, 0.019285397};
    CHECK(quantile(normal, 0.5) == Catch::Approx(0.5).margin(1e-15));
    CHECK(quantile(normal, 0.99) ==
          Catch::Approx(0.5 + 0.019285397 * 2.326348).margin(1e-6));

    const DistributionParams weibull{Family::kWeibull, 1.0, 1.0};
    CHECK(quantile(weibull, 1.0 - 1.0 / std::numbers::e) == Catch::Approx(1.0).margin(1e-12));

    CHECK_THROWS_AS(quantile(normal, 0.0), std::domain_error);
    CHECK_THROWS_AS(quantile(normal, 1.0), std::domain_error);
}

TEST_CASE("all quantile functions are strictly increasing in p") {
    const DistributionParams params[] = {{Family::kNormal, 0.5, 0.02},
                                         {Family::kLognormal, -0.7, 0.06},
                                         {Family::kWeibull, 9.6, 0.52}};
    for (const auto& d : params) {
        double prev = -1e300;
        for (double p = 0.01; p < 1.0; p += 0.01) {
            const double q = quantile(d, p);
            CHECK(q > prev);
            prev = q;
        }
    }
}

TEST_CASE("fit-then-quantile median round trip") {
    const double k = 9.6116811, lambda = 0.52480750;
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) {
        xs.push_back(lambda * std::pow(-std::log1p(-u(rng)), 1.0 / k));
    }
    const double generating_median = lambda * std::pow(std::numbers::ln2, 1.0 / k);
    CHECK(quantile(fit_weibull(xs), 0.5) ==
          Catch::Approx(generating_median).epsilon(0.01));
}

TEST_CASE("qq_data is a fixed point on exact quantile draws") {
    const DistributionParams d{Family::kNormal, 0.5, 0.02};
    std::vector<double> xs;
    const std::size_t n = 100;
    for (std::size_t i = 0; i < n; ++i) {
        xs.push_back(quantile(d, (static_cast<double>(i) + 0.5) / n));
    }
    const auto points = qq_data(xs, d);
    REQUIRE(points.size() == n);
    for (const auto& p : points) {
        CHECK(p.empirical == Catch::Approx(p.theoretical).margin(1e-12));
    }
}

TEST_CASE("qq_data converges for a synthetic Weibull sample against its own fit") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> xs;
    for (int i = 0; i < 100000; ++i) {
        xs.push_back(0.52480750 * std::pow(-std::log1p(-u(rng)), 1.0 / 9.6116811));
    }
    const auto points = qq_data(xs, fit_weibull(xs));
    double max_gap = 0.0;
    for (const auto& p : points) {
        max_gap = std::max(max_gap, std::abs(p.theoretical - p.empirical));
    }
    CHECK(max_gap < 0.01);
}
