#include <doctest.h>

#include <cmath>

#include "lpplab/analytic.hpp"

using namespace lpp;

TEST_CASE("mean function values") {
    CHECK(mean_fn(0.5, 3, 2) == doctest::Approx(10.0));
    CHECK(mean_fn(0.25, 1, 1) == doctest::Approx(16.0 / 3.0));
    CHECK(mean_fn(characteristic_zeta(4, 1), 4, 1) == doctest::Approx(shape_gamma(4, 1)));
    CHECK_THROWS_AS(mean_fn(0.0, 1, 1), std::invalid_argument);
    CHECK_THROWS_AS(mean_fn(1.0, 1, 1), std::invalid_argument);
}

TEST_CASE("shape quantities at reference points") {
    const ShapeQuantities a = shape_quantities(1, 1);
    CHECK(a.gamma == doctest::Approx(4.0));
    CHECK(a.zeta == doctest::Approx(0.5));
    CHECK(a.sigma == doctest::Approx(std::cbrt(16.0)).epsilon(1e-12));
    CHECK(a.sigma == doctest::Approx(2.519842).epsilon(1e-6));

    const ShapeQuantities b = shape_quantities(4, 1);
    CHECK(b.gamma == doctest::Approx(9.0));
    CHECK(b.zeta == doctest::Approx(2.0 / 3.0));
    CHECK(b.sigma == doctest::Approx(std::cbrt(40.5)).epsilon(1e-12));
    CHECK(b.sigma == doctest::Approx(3.434143).epsilon(1e-6));

    CHECK(characteristic_zeta(1, 0) == doctest::Approx(1.0));
    CHECK(std::isnan(scale_sigma(1, 0)));
    // sigma^3 zeta (1-zeta) = gamma
    const ShapeQuantities c = shape_quantities(2.3, 0.7);
    CHECK(c.sigma * c.sigma * c.sigma * c.zeta * (1 - c.zeta) == doctest::Approx(c.gamma));
}

TEST_CASE("shape bounds on the cone") {
    for (double x : {0.5, 1.0, 3.0})
        for (double y : {0.5, 1.0, 3.0}) {
            CHECK(shape_gamma(x, y) >= (x + y) * (1 - 1e-12));
            CHECK(shape_gamma(x, y) <= 2 * (x + y) * (1 + 1e-12));
        }
    // zeta window on S_delta with epsilon = sqrt(delta)/2
    const double delta = 0.25;
    for (double x : {1.0, 2.0, 4.0})
        for (double y : {1.0, 2.0, 4.0}) {
            if (x < delta * y || y < delta * x) continue;
            const double zeta = characteristic_zeta(x, y);
            CHECK(zeta > std::sqrt(delta) / 2);
            CHECK(zeta < 1 - std::sqrt(delta) / 2);
        }
    for (double x : {1.0, 2.0}) {
        const double s = scale_sigma(x, x);
        CHECK(s >= std::cbrt(2 * x) * (1 - 1e-12));
        CHECK(s <= 2 * std::cbrt(2 * x) * (1 + 1e-12));  // delta = 1 cone, tight at x = y
    }
}

TEST_CASE("lmgf closed form and integral form") {
    CHECK(lmgf(0.4, 0.4, 1, 2) == doctest::Approx(0.0));
    CHECK(lmgf(0.6, 0.4, 1, 1) == doctest::Approx(2 * std::log(1.5)).epsilon(1e-12));
    CHECK(lmgf(0.6, 0.4, 1, 1) == doctest::Approx(0.810930).epsilon(1e-6));
    CHECK_THROWS_AS(lmgf(0.0, 0.5, 1, 1), std::invalid_argument);

    // adaptive Simpson quadrature of M^t over [z, w] as the oracle
    const double w = 0.7, z = 0.3, x = 2, y = 5;
    struct Simpson {
        double x, y;
        double f(double t) const { return mean_fn(t, x, y); }
        double rec(double a, double b, double fa, double fb, double fm, double whole,
                   int depth) const {
            const double m = 0.5 * (a + b);
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6 * (fa + 4 * flm + fm);
            const double right = (b - m) / 6 * (fm + 4 * frm + fb);
            if (depth > 40 || std::fabs(left + right - whole) < 1e-13)
                return left + right + (left + right - whole) / 15;
            return rec(a, m, fa, fm, flm, left, depth + 1) +
                   rec(m, b, fm, fb, frm, right, depth + 1);
        }
        double integrate(double a, double b) const {
            const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
            const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
            return rec(a, b, fa, fb, fm, whole, 0);
        }
    } quad{x, y};
    CHECK(lmgf(w, z, x, y) == doctest::Approx(quad.integrate(z, w)).epsilon(1e-10));
}

TEST_CASE("taylor residuals") {
    const ShapeQuantities q = shape_quantities(1, 1);
    CHECK(taylor_residuals(0.5, q.zeta, 1, 1).mean_residual == doctest::Approx(0.0).epsilon(1e-12));
    // z = 0.6 at (1,1): |25/6 - 4.16| = 1/150
    CHECK(taylor_residuals(0.5, 0.6, 1, 1).mean_residual ==
          doctest::Approx(1.0 / 150.0).epsilon(1e-10));
    // residual bound sweep over the half-cone, |z - zeta| <= 0.1. The exact
    // ratio gamma |zeta+z-1| / ((x+y) z(1-z) zeta(1-zeta)) peaks at 10.09 on
    // this grid (at (0.5, 1), dz = -0.1), so the desk constant is C = 12.
    for (double x = 0.5; x <= 2.01; x += 0.25)
        for (double y = 0.5; y <= 2.01; y += 0.25) {
            if (x < 0.5 * y || y < 0.5 * x) continue;
            const double zeta = characteristic_zeta(x, y);
            for (double dz = -0.1; dz <= 0.1001; dz += 0.02) {
                const double z = zeta + dz;
                if (!(z > 0.01 && z < 0.99)) continue;
                const double res = taylor_residuals(0.5, z, x, y).mean_residual;
                CHECK(res <= 12.0 * (x + y) * std::pow(std::fabs(dz), 3) + 1e-12);
            }
        }
    // lmgf residual vanishes at w = z = zeta
    const double lr = taylor_residuals(q.zeta, q.zeta, 1, 1).lmgf_residual;
    CHECK(lr == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("grid argmin of the mean function matches zeta") {
    const double x = 2.7, y = 1.3;
    const ShapeQuantities q = shape_quantities(x, y);
    double best = 1e300, argmin = -1;
    for (double z = 1e-4; z < 1.0 - 1e-4; z += 1e-4) {
        const double v = mean_fn(z, x, y);
        if (v < best) {
            best = v;
            argmin = z;
        }
    }
    CHECK(std::fabs(argmin - q.zeta) <= 1.1e-4);
    CHECK(std::fabs(best - q.gamma) <= 1e-7);  // quadratic minimum, grid-resolution squared
    CHECK(mean_fn(q.zeta, x, y) == doctest::Approx(q.gamma).epsilon(1e-12));
}

TEST_CASE("sigma^3 equals half the curvature of the mean function") {
    for (double x : {1.0, 2.5}) {
        for (double y : {0.8, 1.7}) {
            const ShapeQuantities q = shape_quantities(x, y);
            const double h = 1e-5;
            const double dd = (mean_fn(q.zeta + h, x, y) - 2 * mean_fn(q.zeta, x, y) +
                               mean_fn(q.zeta - h, x, y)) /
                              (h * h);
            CHECK(0.5 * dd == doctest::Approx(q.sigma * q.sigma * q.sigma).epsilon(1e-5));
        }
    }
}

TEST_CASE("busemann cdf closed forms") {
    CHECK(busemann_cdf(IncrementKind::Hor, 0.5, {}, {}) == 1.0);
    const double s1[] = {-1.0};
    CHECK(busemann_cdf(IncrementKind::Hor, 0.5, s1, {}) ==
          doctest::Approx(std::exp(-0.5)).epsilon(1e-12));
    CHECK(busemann_cdf(IncrementKind::Hor, 0.5, s1, {}) == doctest::Approx(0.606531).epsilon(1e-6));
    const double t1[] = {2.0};
    CHECK(busemann_cdf(IncrementKind::Hor, 0.5, {}, t1) ==
          doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-12));
    CHECK(busemann_cdf(IncrementKind::Hor, 0.5, {}, t1) == doctest::Approx(0.632121).epsilon(1e-6));

    // hor kind is nonincreasing in z at fixed arguments
    const double s2[] = {-0.7, 1.3};
    const double t2[] = {0.9};
    double prev = 2.0;
    for (double z = 0.05; z < 1.0; z += 0.05) {
        const double v = busemann_cdf(IncrementKind::Hor, z, s2, t2);
        CHECK(v <= prev + 1e-15);
        prev = v;
    }
}

TEST_CASE("competition interface limit laws") {
    CHECK(cif_limit_cdf(1.0, 0.0, 0.5) == doctest::Approx(0.5));
    CHECK(cif_limit_cdf(1.0, 0.0, 0.0) == doctest::Approx(0.0));
    CHECK(cif_limit_cdf(0.8, 0.1, 1.0) == doctest::Approx(1.0));
    CHECK(cif_limit_cdf(1.0, 0.0, 0.36) == doctest::Approx(3.0 / 7.0).epsilon(1e-12));

    // nondecreasing with endpoint values for w > z
    double prev = -1.0;
    for (double x = 0.0; x <= 1.0001; x += 0.01) {
        const double v = cif_limit_cdf(0.7, 0.2, std::min(x, 1.0));
        CHECK(v >= prev - 1e-15);
        prev = v;
    }
    CHECK(cif_limit_cdf(0.7, 0.2, 0.0) == doctest::Approx(0.0));
    CHECK(cif_limit_cdf(0.7, 0.2, 1.0) == doctest::Approx(1.0));

    // w <= z: indicator with threshold rho
    const double rho = characteristic_zeta(0.3 * 0.6, 0.7 * 0.4);
    for (double x = 0.05; x < 1.0; x += 0.05) {
        const double zeta = characteristic_zeta(x, 1 - x);
        CHECK(cif_limit_cdf(0.3, 0.6, x) == (zeta > rho ? 1.0 : 0.0));
    }
}

TEST_CASE("zeta shift formulas") {
    CHECK(zeta_shift(1, 1, 0, Axis::Hor) == doctest::Approx(0.0));
    CHECK(zeta_shift(1, 1, 3, Axis::Hor) == doctest::Approx(1.0 / 6.0).epsilon(1e-12));
    CHECK(zeta_shift(1, 1, 3, Axis::Hor) ==
          doctest::Approx(characteristic_zeta(4, 1) - characteristic_zeta(1, 1)).epsilon(1e-12));
    CHECK(zeta_shift(2, 3, 1.7, Axis::Ver) ==
          doctest::Approx(characteristic_zeta(2, 4.7) - characteristic_zeta(2, 3)).epsilon(1e-12));
    CHECK(zeta_shift(2, 3, 1.7, Axis::Ver) < 0.0);
}
