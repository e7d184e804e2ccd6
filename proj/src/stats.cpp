#include "lpplab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lpp {

double MeanAcc::variance() const {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double v = (sumsq - sum * sum / nn) / (nn - 1.0);
    return v > 0.0 ? v : 0.0;
}

double MeanAcc::stderr_of_mean() const {
    return n ? std::sqrt(variance() / static_cast<double>(n)) : 0.0;
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double z_crit) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z_crit * z_crit;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z_crit * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

double kolmogorov_q(double lambda) {
    if (lambda <= 0.0) return 1.0;
    if (lambda < 1.18) {
        // theta-dual series, accurate for small lambda
        const double v = 9.869604401089358 / (8.0 * lambda * lambda);  // pi^2 / (8 lambda^2)
        const double w = 2.5066282746310002 / lambda;                  // sqrt(2 pi) / lambda
        double sum = 0.0;
        for (int k = 1; k <= 19; k += 2) {
            const double term = std::exp(-static_cast<double>(k) * k * v);
            sum += term;
            if (term < 1e-18) break;
        }
        return std::clamp(1.0 - w * sum, 0.0, 1.0);
    }
    double sum = 0.0;
    double sign = 1.0;
    for (int k = 1; k <= 100; ++k) {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += sign * term;
        sign = -sign;
        if (term < 1e-16) break;
    }
    return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_one_sample(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.empty()) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double d = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        const double f = cdf(samples[k]);
        d = std::max(d, std::max((k + 1) / n - f, f - k / n));
    }
    return {d, kolmogorov_q(std::sqrt(n) * d)};
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    double d = 0.0;
    std::size_t ia = 0, ib = 0;
    while (ia < a.size() && ib < b.size()) {
        const double x = std::min(a[ia], b[ib]);
        while (ia < a.size() && a[ia] <= x) ++ia;
        while (ib < b.size() && b[ib] <= x) ++ib;
        d = std::max(d, std::fabs(ia / na - ib / nb));
    }
    const double eff = na * nb / (na + nb);
    return {d, kolmogorov_q(std::sqrt(eff) * d)};
}

LineFit weighted_least_squares(std::span<const double> x, std::span<const double> y,
                               std::span<const double> w) {
    LineFit fit;
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n || w.size() != n) return fit;
    double sw = 0, swx = 0, swy = 0, swxx = 0, swxy = 0;
    for (std::size_t k = 0; k < n; ++k) {
        sw += w[k];
        swx += w[k] * x[k];
        swy += w[k] * y[k];
        swxx += w[k] * x[k] * x[k];
        swxy += w[k] * x[k] * y[k];
    }
    const double det = sw * swxx - swx * swx;
    if (!(det > 0.0) || !(sw > 0.0)) return fit;
    fit.slope = (sw * swxy - swx * swy) / det;
    fit.intercept = (swy - fit.slope * swx) / sw;
    double ss_res = 0, ss_tot = 0;
    const double ybar = swy / sw;
    for (std::size_t k = 0; k < n; ++k) {
        const double e = y[k] - (fit.intercept + fit.slope * x[k]);
        ss_res += w[k] * e * e;
        ss_tot += w[k] * (y[k] - ybar) * (y[k] - ybar);
    }
    fit.r2 = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
    fit.present = true;
    return fit;
}

std::vector<double> isotonic_decreasing(std::span<const double> y) {
    // PAVA on the negated sequence
    std::vector<double> level;
    std::vector<double> count;
    for (double v : y) {
        level.push_back(-v);
        count.push_back(1.0);
        while (level.size() > 1 && level[level.size() - 2] > level.back()) {
            const double c = count.back() + count[count.size() - 2];
            const double m =
                (level.back() * count.back() + level[level.size() - 2] * count[count.size() - 2]) /
                c;
            level.pop_back();
            count.pop_back();
            level.back() = m;
            count.back() = c;
        }
    }
    std::vector<double> out;
    out.reserve(y.size());
    for (std::size_t k = 0; k < level.size(); ++k)
        for (std::size_t r = 0; r < static_cast<std::size_t>(count[k]); ++r)
            out.push_back(-level[k]);
    return out;
}

double pearson_from_sums(std::uint64_t n, double sx, double sy, double sxx, double syy,
                         double sxy) {
    if (n < 2) return 0.0;
    const double nn = static_cast<double>(n);
    const double cov = sxy - sx * sy / nn;
    const double vx = sxx - sx * sx / nn;
    const double vy = syy - sy * sy / nn;
    if (!(vx > 0.0) || !(vy > 0.0)) return 0.0;
    return cov / std::sqrt(vx * vy);
}

LineFit tail_fit(std::span<const TailFitPoint> points, double p_min) {
    std::vector<double> x, y, w;
    for (const TailFitPoint& pt : points) {
        if (!(pt.p_hat > p_min) || !(pt.p_hat < 0.5)) continue;
        x.push_back(pt.s * pt.s * pt.s);
        y.push_back(-std::log(pt.p_hat));
        const double ratio = pt.p_hat / pt.stderr_;
        w.push_back(ratio * ratio);
    }
    if (x.size() < 3) return LineFit{};
    return weighted_least_squares(x, y, w);
}

}  // namespace lpp
