#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <stdexcept>

namespace lpp {

// Closed forms for the exponential corner growth model. Everything here is
// a pure function of its arguments.

namespace detail {
inline void check(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}
}  // namespace detail

// Marginal mean of the stationary process: M^z(x,y) = x/z + y/(1-z).
inline double mean_fn(double z, double x, double y) {
    detail::check(z > 0.0 && z < 1.0, "mean_fn: z must lie in (0,1)");
    detail::check(x >= 0.0 && y >= 0.0, "mean_fn: x,y must be nonnegative");
    return x / z + y / (1.0 - z);
}

// Shape value gamma(x,y) = (sqrt x + sqrt y)^2, the law-of-large-numbers
// limit of bulk last-passage times.
inline double shape_gamma(double x, double y) {
    detail::check(x >= 0.0 && y >= 0.0, "shape_gamma: x,y must be nonnegative");
    const double s = std::sqrt(x) + std::sqrt(y);
    return s * s;
}

// Characteristic parameter zeta(x,y) = sqrt x / (sqrt x + sqrt y): the z for
// which the stationary model has vanishing macroscopic exit in direction
// (x,y), and the minimizer of z -> M^z(x,y).
inline double characteristic_zeta(double x, double y) {
    detail::check(x >= 0.0 && y >= 0.0 && (x > 0.0 || y > 0.0),
                  "characteristic_zeta: need x,y >= 0, not both zero");
    const double sx = std::sqrt(x);
    return sx / (sx + std::sqrt(y));
}

// Scale factor sigma(x,y) = (gamma / (zeta(1-zeta)))^{1/3}; sigma^3 is half
// the curvature of z -> M^z at the minimum. NaN outside x,y > 0.
inline double scale_sigma(double x, double y) {
    if (!(x > 0.0 && y > 0.0)) return std::numeric_limits<double>::quiet_NaN();
    const double g = shape_gamma(x, y);
    const double zeta = characteristic_zeta(x, y);
    return std::cbrt(g / (zeta * (1.0 - zeta)));
}

struct ShapeQuantities {
    double gamma;
    double zeta;
    double sigma;
};

inline ShapeQuantities shape_quantities(double x, double y) {
    return {shape_gamma(x, y), characteristic_zeta(x, y), scale_sigma(x, y)};
}

// L^{w,z}(x,y) = x log(w/z) + y log((1-z)/(1-w)); equals the l.m.g.f.
// log E[exp{(w-z) Ghat^{w,z}(x,y)}] and the integral of M^t from z to w.
inline double lmgf(double w, double z, double x, double y) {
    detail::check(w > 0.0 && w < 1.0 && z > 0.0 && z < 1.0, "lmgf: w,z must lie in (0,1)");
    detail::check(x >= 0.0 && y >= 0.0, "lmgf: x,y must be nonnegative");
    return x * std::log(w / z) + y * std::log((1.0 - z) / (1.0 - w));
}

struct TaylorResiduals {
    double mean_residual;  // |M^z - gamma - sigma^3 (z-zeta)^2|
    double lmgf_residual;  // |L^{w,z} - (w-z) gamma - (sigma^3/3)((w-zeta)^3 - (z-zeta)^3)|
};

inline TaylorResiduals taylor_residuals(double w, double z, double x, double y) {
    detail::check(x > 0.0 && y > 0.0, "taylor_residuals: x,y must be positive");
    const ShapeQuantities q = shape_quantities(x, y);
    const double s3 = q.sigma * q.sigma * q.sigma;
    const double dm = mean_fn(z, x, y) - q.gamma - s3 * (z - q.zeta) * (z - q.zeta);
    const double wz = w - q.zeta;
    const double zz = z - q.zeta;
    const double dl = lmgf(w, z, x, y) - (w - z) * q.gamma -
                      (s3 / 3.0) * (wz * wz * wz - zz * zz * zz);
    return {std::fabs(dm), std::fabs(dl)};
}

enum class IncrementKind { Hor, Ver };

// Joint distribution of stationary increments along a down-right path,
// evaluated at s in R^p (right edges) and t in R^q (down edges):
//   hor: prod_i exp(-s_i^- z) * prod_j (1 - exp(-t_j^+ (1-z)))
//   ver: prod_i (1 - exp(-s_i^+ z)) * prod_j exp(-t_j^- (1-z))
// These are also the limit laws of the pre-limit Busemann CDFs.
inline double busemann_cdf(IncrementKind kind, double z, std::span<const double> s,
                           std::span<const double> t) {
    detail::check(z > 0.0 && z < 1.0, "busemann_cdf: z must lie in (0,1)");
    double prod = 1.0;
    if (kind == IncrementKind::Hor) {
        for (double si : s) prod *= std::exp(-std::max(-si, 0.0) * z);
        for (double tj : t) prod *= 1.0 - std::exp(-std::max(tj, 0.0) * (1.0 - z));
    } else {
        for (double si : s) prod *= 1.0 - std::exp(-std::max(si, 0.0) * z);
        for (double tj : t) prod *= std::exp(-std::max(-tj, 0.0) * (1.0 - z));
    }
    return prod;
}

// Limit law of the competition interface direction in the boundary model
// with rates (w, z), at the point x in [0,1]. Random limit for w > z,
// deterministic (indicator) for w <= z; the discontinuity in the latter
// case sits at zeta(x,1-x) = zeta(wz, (1-w)(1-z)).
inline double cif_limit_cdf(double w, double z, double x) {
    detail::check(x >= 0.0 && x <= 1.0, "cif_limit_cdf: x must lie in [0,1]");
    detail::check(w > 0.0 && w <= 1.0, "cif_limit_cdf: w must lie in (0,1]");
    detail::check(z >= 0.0 && z < 1.0, "cif_limit_cdf: z must lie in [0,1)");
    const double zeta = characteristic_zeta(x, 1.0 - x);
    if (w > z) return (std::min(w, zeta) - std::min(z, zeta)) / (w - z);
    const double rho = characteristic_zeta(w * z, (1.0 - w) * (1.0 - z));
    return zeta > rho ? 1.0 : 0.0;
}

enum class Axis { Hor, Ver };

// Exact increment of zeta under a shift of one coordinate:
//   hor: zeta(x+d, y) - zeta(x, y) =  d (1-zeta(x,y)) / ((sqrt(x+d)+sqrt y)(sqrt(x+d)+sqrt x))
//   ver: zeta(x, y+d) - zeta(x, y) = -d zeta(x,y)     / ((sqrt x+sqrt(y+d))(sqrt y+sqrt(y+d)))
inline double zeta_shift(double x, double y, double delta, Axis axis) {
    detail::check(x > 0.0 && y > 0.0, "zeta_shift: x,y must be positive");
    detail::check(delta >= 0.0, "zeta_shift: delta must be nonnegative");
    const double zeta = characteristic_zeta(x, y);
    const double sx = std::sqrt(x);
    const double sy = std::sqrt(y);
    if (axis == Axis::Hor) {
        const double sxd = std::sqrt(x + delta);
        return delta * (1.0 - zeta) / ((sxd + sy) * (sxd + sx));
    }
    const double syd = std::sqrt(y + delta);
    return -delta * zeta / ((sx + syd) * (sy + syd));
}

}  // namespace lpp
