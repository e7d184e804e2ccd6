#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace lpp {

// Mergeable moment accumulator (count / sum / sum of squares). Partial
// reports from workers over disjoint replica ranges reduce associatively.
struct MeanAcc {
    std::uint64_t n = 0;
    double sum = 0.0;
    double sumsq = 0.0;

    void add(double x) {
        ++n;
        sum += x;
        sumsq += x * x;
    }
    void merge(const MeanAcc& o) {
        n += o.n;
        sum += o.sum;
        sumsq += o.sumsq;
    }
    double mean() const { return n ? sum / static_cast<double>(n) : 0.0; }
    // unbiased sample variance
    double variance() const;
    double stderr_of_mean() const;
};

// Cross-moment accumulator for K jointly tracked statistics; feeds the
// delta-method error propagation used by the variance-identity check.
template <int K>
struct CrossAcc {
    std::uint64_t n = 0;
    double sum[K] = {};
    double prod[K][K] = {};

    void add(const double (&x)[K]) {
        ++n;
        for (int a = 0; a < K; ++a) {
            sum[a] += x[a];
            for (int b = a; b < K; ++b) prod[a][b] += x[a] * x[b];
        }
    }
    void merge(const CrossAcc& o) {
        n += o.n;
        for (int a = 0; a < K; ++a) {
            sum[a] += o.sum[a];
            for (int b = a; b < K; ++b) prod[a][b] += o.prod[a][b];
        }
    }
    double mean(int a) const { return n ? sum[a] / static_cast<double>(n) : 0.0; }
    // covariance of the sample means
    double cov_of_means(int a, int b) const {
        if (n < 2) return 0.0;
        const int lo = a < b ? a : b, hi = a < b ? b : a;
        const double nn = static_cast<double>(n);
        const double c = (prod[lo][hi] - sum[a] * sum[b] / nn) / (nn - 1.0);
        return c / nn;
    }
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for a binomial proportion at z_crit standard units.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z_crit = 3.0);

// Survival function of the asymptotic Kolmogorov distribution,
// Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_q(double lambda);

struct KsResult {
    double d = 0.0;  // sup CDF gap
    double p = 1.0;  // asymptotic p-value
};

// One-sample KS against a continuous CDF.
KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf);

// Two-sample KS; p-value uses the asymptotic distribution with effective
// sample size nm/(n+m). Ties are stepped through jointly, so the statistic
// is also valid for discrete samples (critical value then conservative).
KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct LineFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    bool present = false;
};

// Weighted least squares of y on x with weights w (inverse variances).
LineFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                               std::span<const double> w);

// Decreasing isotonic regression (pool adjacent violators).
std::vector<double> isotonic_decreasing(std::span<const double> y);

// Pearson correlation from joint sums over n samples.
double pearson_from_sums(std::uint64_t n, double sx, double sy, double sxx, double syy,
                         double sxy);

struct TailFitPoint {
    double s = 0.0;
    double p_hat = 0.0;
    double stderr_ = 0.0;
};

// Fit of -ln p on s^3 over points with p in (p_min, 0.5), weights
// (p/stderr)^2 from propagating the binomial error through the log.
LineFit tail_fit(std::span<const TailFitPoint> points, double p_min);

}  // namespace lpp
