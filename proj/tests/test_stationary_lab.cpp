#include <doctest.h>

#include <cmath>

#include "lpplab/analytic.hpp"
#include "lpplab/stationary_lab.hpp"

using namespace lpp;

namespace {
const LabConfig kSmoke{20000, 4242, 0};
}

TEST_CASE("burke: single right edge from the origin is exactly Exp(z)") {
    const McReport rep = verify_burke(parse_path("0,0:R"), 0.5, kSmoke);
    CHECK(rep.verdict() == Verdict::Pass);
    REQUIRE(rep.find("mean.R1") != nullptr);
    // increment is Ghat(1,0) ~ Exp(0.5), mean 2
    CHECK(std::fabs(rep.find("mean.R1")->value - 2.0) <= 3.0 * rep.find("mean.R1")->stderr_);
}

TEST_CASE("burke: staircase passes KS and correlation checks") {
    const McReport rep = verify_burke(parse_path("0,3:DRRDRD"), 0.5, kSmoke);
    CHECK(rep.verdict() == Verdict::Pass);
    // 6 edges -> 6 KS checks + 15 correlation pairs
    CHECK(rep.checks.size() == 21);
    CHECK_THROWS_AS(verify_burke(parse_path("0,3:DR"), 1.5, kSmoke), std::invalid_argument);
    CHECK_THROWS_AS(verify_burke(parse_path("0,3:DR"), 0.5, LabConfig{10, 1, 0}),
                    std::invalid_argument);
}

TEST_CASE("rains identity on forced geometries") {
    // (m,n) = (1,0): moment is exactly w/z
    const McReport rep = verify_rains(0.6, 0.4, 1, 0, kSmoke);
    CHECK(rep.find("target")->value == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(rep.verdict() == Verdict::Pass);
}

TEST_CASE("rains identity at (1,1) against the order-statistics oracle") {
    const double w = 0.6, z = 0.5, t = w - z;
    // Ghat(1,1) = max(X, Y) + W with X ~ Exp(w), Y ~ Exp(1-z), W ~ Exp(1)
    const double a = w, b = 1.0 - z;
    const double oracle =
        (a / (a - t) + b / (b - t) - (a + b) / (a + b - t)) * (1.0 / (1.0 - t));
    CHECK(oracle == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(std::exp(lmgf(w, z, 1, 1)) == doctest::Approx(oracle).epsilon(1e-12));
    const McReport rep = verify_rains(w, z, 1, 1, kSmoke);
    CHECK(rep.verdict() == Verdict::Pass);
    CHECK(std::fabs(rep.find("exp_moment")->value - oracle) <=
          3.0 * rep.find("exp_moment")->stderr_);
}

TEST_CASE("rains: w = z is a zero-variance estimator") {
    const McReport rep = verify_rains(0.5, 0.5, 10, 10, kSmoke);
    CHECK(rep.find("exp_moment")->value == 1.0);
    CHECK(rep.find("exp_moment")->stderr_ == 0.0);
    CHECK(rep.verdict() == Verdict::Pass);
}

TEST_CASE("rains: variance guard refuses runaway parameters") {
    CHECK_THROWS_WITH_AS(verify_rains(0.9, 0.1, 50, 50, kSmoke),
                         doctest::Contains("variance uncontrolled"), std::invalid_argument);
}

TEST_CASE("variance identity: degenerate column (0,1)") {
    const double z = 0.3;
    const McReport rep = verify_variance(z, 0, 1, kSmoke);
    CHECK(rep.find("rhs_weight_sum")->value ==
          doctest::Approx(1.0 / ((1 - z) * (1 - z))).epsilon(1e-12));
    CHECK(rep.find("mean_boundary_sum")->value == 0.0);
    CHECK(rep.verdict() == Verdict::Pass);
}

TEST_CASE("variance identity desk check at (1,1): weight-sum 6, count form 2") {
    const LabConfig cfg{100000, 99, 0};
    const McReport rep = verify_variance(0.5, 1, 1, cfg);
    CHECK(rep.verdict() == Verdict::Pass);
    CHECK(std::fabs(rep.find("var_hat")->value - 6.0) < 0.25);
    CHECK(std::fabs(rep.find("rhs_weight_sum")->value - 6.0) < 0.25);
    // E[sum of boundary weights to the exit] = 1/z - z = 1.5
    CHECK(std::fabs(rep.find("mean_boundary_sum")->value - 1.5) < 0.1);
    // the literal count form lands near 2, far from the variance
    CHECK(std::fabs(rep.find("rhs_count_form")->value - 2.0) < 0.2);
}

TEST_CASE("variance identity at (20,30)") {
    const McReport rep = verify_variance(0.5, 20, 30, LabConfig{30000, 7, 0});
    CHECK(rep.verdict() == Verdict::Pass);
}

TEST_CASE("exit tail: s = 0 point equals the first-step probability") {
    const std::int64_t m = 20, n = 20;
    const LabConfig cfg{20000, 31, 0};
    const TailCurve curve = exit_tail(axes_exit_tail(0.5, 0.5, m, n, {0.0, 0.5, 99.0}), cfg);
    const McReport fs = first_step_prob(0.5, m, n, cfg);
    CHECK(curve.points[0].p_hat == fs.find("p_hor")->value);  // same stream, same counts
    CHECK(curve.points[2].p_hat == 0.0);                      // s past the path length
    CHECK(curve.points[2].k >= 40);
    // minus side mirrors by symmetry within noise
    TailCurve minus = exit_tail(
        [&] {
            ExitTailOptions o = axes_exit_tail(0.5, 0.5, m, n, {0.0});
            o.minus_side = true;
            return o;
        }(),
        cfg);
    CHECK(std::fabs(minus.points[0].p_hat - curve.points[0].p_hat) < 0.02);
}

TEST_CASE("exit tail: strict regime validates the parameter window") {
    ExitTailOptions opt = axes_exit_tail(0.4, 0.4, 20, 20, {1.0});
    opt.strict_regime = true;  // zeta = 0.5 > w = z = 0.4 on the plus side
    CHECK_THROWS_AS(exit_tail(opt, kSmoke), std::invalid_argument);
    ExitTailOptions ok = axes_exit_tail(0.6, 0.6, 20, 20, {1.0});
    ok.strict_regime = true;
    CHECK_NOTHROW(exit_tail(ok, kSmoke));
}

TEST_CASE("exit tail on a general staircase with the path-induced recipe") {
    const DownRightPath nu = parse_path("0,6:RDRDRDRRDDRR@5");
    // base (2,4); the frame caps targets at (7,6), so (base + (4,2)) fits
    ExitTailOptions opt(PathInducedRecipe{nu, 0.5}, nu, 4, 2, {0.0, 0.5, 1.0});
    const TailCurve curve = exit_tail(opt, LabConfig{4000, 5, 0});
    for (std::size_t k = 1; k < curve.points.size(); ++k)
        CHECK(curve.points[k].p_hat <= curve.points[k - 1].p_hat + 1e-12);
    // the curve is within noise of its decreasing isotonic projection
    std::vector<double> raw;
    for (const TailPoint& pt : curve.points) raw.push_back(pt.p_hat);
    const std::vector<double> iso = isotonic_decreasing(raw);
    for (std::size_t k = 0; k < raw.size(); ++k)
        CHECK(std::fabs(raw[k] - iso[k]) <= 5.0 * curve.points[k].stderr_ + 1e-12);
}

TEST_CASE("first-step probabilities at (1,1)") {
    const LabConfig cfg{50000, 11, 0};
    SUBCASE("z = 1/2 by symmetry") {
        const McReport rep = first_step_prob(0.5, 1, 1, cfg);
        CHECK(std::fabs(rep.find("p_hor")->value - 0.5) <= 3 * rep.find("p_hor")->stderr_);
    }
    SUBCASE("z = 0.7 races two exponentials") {
        // P{Zhor > 0} = P(X > Y) with X ~ Exp(0.7), Y ~ Exp(0.3): equals 0.3
        const McReport rep = first_step_prob(0.7, 1, 1, cfg);
        CHECK(std::fabs(rep.find("p_hor")->value - 0.3) <= 3 * rep.find("p_hor")->stderr_);
        REQUIRE(rep.find("neg_log_p_hor") != nullptr);
        REQUIRE(rep.find("predicted_s3_over_6") != nullptr);
    }
}

TEST_CASE("first-step multi shares noise across z values") {
    const double zs[2] = {0.55, 0.55};
    const auto reps = first_step_prob_multi(zs, 8, 8, LabConfig{2000, 3, 0});
    CHECK(reps[0].find("p_hor")->value == reps[1].find("p_hor")->value);
}

TEST_CASE("exit identity: p = q = 0 compares the same law") {
    const McReport rep = verify_exit_identity(0.5, 0, 0, 12, 12, LabConfig{20000, 17, 0});
    CHECK(rep.verdict() == Verdict::Pass);
}

TEST_CASE("exit identity smoke at (p,q) = (2,1)") {
    const McReport rep = verify_exit_identity(0.45, 2, 1, 10, 10, LabConfig{20000, 19, 0});
    CHECK(rep.verdict() == Verdict::Pass);
    CHECK(rep.find_check("support")->pass);
}

TEST_CASE("deterministic lemma suite on 150 instances") {
    const McReport rep = check_deterministic_lemmas(150, 2024);
    for (const Check& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.pass);
    }
}

TEST_CASE("increment stationarity across shifts") {
    const std::pair<std::int64_t, std::int64_t> shifts[] = {{0, 0}, {2, 1}};
    const McReport rep = verify_stationarity(0.4, 15, 10, shifts, LabConfig{20000, 23, 0});
    CHECK(rep.verdict() == Verdict::Pass);
    CHECK(rep.checks.size() == 2);
}
