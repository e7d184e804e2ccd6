#include <doctest.h>

#include <cmath>

#include "lpplab/parallel.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/stats.hpp"

using namespace lpp;

TEST_CASE("ks two-sample basics") {
    std::vector<double> a{1, 2, 3, 4, 5};
    CHECK(ks_two_sample(a, a).d == doctest::Approx(0.0));
    CHECK(ks_two_sample(a, a).p == doctest::Approx(1.0));

    std::vector<double> lo{1, 2, 3}, hi{10, 11, 12};
    CHECK(ks_two_sample(lo, hi).d == doctest::Approx(1.0));

    CHECK_THROWS_AS(ks_two_sample({}, a), std::invalid_argument);
}

TEST_CASE("ks two-sample calibration: uniform vs uniform across 100 seeds") {
    int pass = 0;
    for (std::uint64_t s = 0; s < 100; ++s) {
        const std::uint64_t base_a = rng::stream_base(31337 + s, 0);
        const std::uint64_t base_b = rng::stream_base(31337 + s, 1);
        std::vector<double> a(10000), b(10000);
        for (std::size_t k = 0; k < a.size(); ++k) {
            a[k] = rng::u01_from_bits(rng::site_bits(base_a, k));
            b[k] = rng::u01_from_bits(rng::site_bits(base_b, k));
        }
        if (ks_two_sample(a, b).p >= 0.01) ++pass;
    }
    CHECK(pass >= 98);
}

TEST_CASE("ks one-sample against the true cdf") {
    const std::uint64_t base = rng::stream_base(99, 0);
    std::vector<double> sample(20000);
    for (std::size_t k = 0; k < sample.size(); ++k)
        sample[k] = rng::exponential_from_bits(rng::site_bits(base, k));
    const KsResult ok =
        ks_one_sample(sample, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x); });
    CHECK(ok.p >= 0.01);
    // wrong rate is rejected decisively
    const KsResult bad =
        ks_one_sample(sample, [](double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-2 * x); });
    CHECK(bad.p < 1e-6);
}

TEST_CASE("kolmogorov survival function") {
    CHECK(kolmogorov_q(0.0) == 1.0);
    CHECK(kolmogorov_q(1e-4) == doctest::Approx(1.0));
    CHECK(kolmogorov_q(1.36) == doctest::Approx(0.05).epsilon(0.02));   // classic 5% point
    CHECK(kolmogorov_q(1.63) == doctest::Approx(0.01).epsilon(0.03));   // classic 1% point
    CHECK(kolmogorov_q(1.18) == doctest::Approx(kolmogorov_q(1.1800001)).epsilon(1e-5));
}

TEST_CASE("wilson interval contains the point estimate and respects censoring edges") {
    const Interval iv = wilson_interval(10, 100, 3.0);
    CHECK(iv.lo <= 0.1);
    CHECK(iv.hi >= 0.1);
    CHECK(iv.lo >= 0.0);
    const Interval zero = wilson_interval(0, 100, 3.0);
    CHECK(zero.lo == 0.0);
    CHECK(zero.hi > 0.0);
    const Interval all = wilson_interval(100, 100, 3.0);
    CHECK(all.hi <= 1.0);
    CHECK(all.hi > 0.99);
    CHECK(all.lo < 1.0);
}

TEST_CASE("tail fit recovers exact cubic decay") {
    std::vector<TailFitPoint> pts;
    for (double s = 0.4; s <= 1.2001; s += 0.1)
        pts.push_back({s, std::exp(-2.0 * s * s * s), 1e-5});
    const LineFit fit = tail_fit(pts, 1e-9);
    CHECK(fit.present);
    CHECK(fit.slope == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(0.0).epsilon(1e-8));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail fit recovers a noisy slope within 10%") {
    const std::uint64_t base = rng::stream_base(4242, 0);
    std::vector<TailFitPoint> pts;
    std::uint64_t ctr = 0;
    for (double s = 0.5; s <= 1.4001; s += 0.1) {
        const double p = std::exp(-1.7 * s * s * s);
        const double se = 0.01 * p;
        const double u1 = rng::u01_from_bits(rng::site_bits(base, ctr++));
        const double u2 = rng::u01_from_bits(rng::site_bits(base, ctr++));
        const double gauss = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
        pts.push_back({s, p * (1.0 + 0.01 * gauss), se});
    }
    const LineFit fit = tail_fit(pts, 1e-9);
    CHECK(fit.present);
    CHECK(std::fabs(fit.slope - 1.7) <= 0.17);
}

TEST_CASE("tail fit censors out-of-window points") {
    std::vector<TailFitPoint> pts{{1.0, 0.9, 0.01}, {2.0, 0.7, 0.01}, {3.0, 0.6, 0.01}};
    CHECK(!tail_fit(pts, 1e-4).present);  // all p >= 0.5
    std::vector<TailFitPoint> zeros{{1.0, 0.0, 0.0}, {2.0, 0.0, 0.0}, {3.0, 0.0, 0.0}};
    CHECK(!tail_fit(zeros, 1e-4).present);
}

TEST_CASE("isotonic decreasing projection") {
    const std::vector<double> y{0.9, 0.7, 0.75, 0.5, 0.2, 0.25};
    const std::vector<double> iso = isotonic_decreasing(y);
    REQUIRE(iso.size() == y.size());
    for (std::size_t k = 1; k < iso.size(); ++k) CHECK(iso[k] <= iso[k - 1] + 1e-15);
    // projection leaves already-decreasing data alone
    const std::vector<double> mono{0.9, 0.7, 0.5, 0.2};
    CHECK(isotonic_decreasing(mono) == mono);
}

TEST_CASE("block-structured reduction is bit-identical for any worker count") {
    struct Partial {
        MeanAcc acc;
        void merge(const Partial& o) { acc.merge(o.acc); }
    };
    auto body = [](std::uint64_t begin, std::uint64_t end, Partial& p) {
        const std::uint64_t base = rng::stream_base(5, 5);
        for (std::uint64_t k = begin; k < end; ++k)
            p.acc.add(rng::exponential_from_bits(rng::site_bits(base, k)));
    };
    const Partial one = run_replica_blocks<Partial>(10000, 1, body, 128);
    const Partial two = run_replica_blocks<Partial>(10000, 2, body, 128);
    const Partial many = run_replica_blocks<Partial>(10000, 7, body, 128);
    CHECK(one.acc.n == two.acc.n);
    CHECK(one.acc.sum == two.acc.sum);
    CHECK(one.acc.sumsq == two.acc.sumsq);
    CHECK(one.acc.sum == many.acc.sum);
    CHECK(one.acc.sumsq == many.acc.sumsq);
}

TEST_CASE("pearson correlation from sums") {
    // y = 2x exactly
    double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
    for (int k = 1; k <= 50; ++k) {
        const double x = k, y = 2.0 * k;
        sx += x; sy += y; sxx += x * x; syy += y * y; sxy += x * y;
    }
    CHECK(pearson_from_sums(50, sx, sy, sxx, syy, sxy) == doctest::Approx(1.0).epsilon(1e-12));
}
