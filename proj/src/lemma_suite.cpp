// Deterministic lemma suite: properties of exit points and last-passage
// increments that hold realization by realization, checked on random small
// instances with exact or near-exact comparisons.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <sstream>

#include "lpplab/path_to_point.hpp"
#include "lpplab/stationary_lab.hpp"

namespace lpp {

namespace {

using Clock = std::chrono::steady_clock;

constexpr double kFpSlack = 1e-9;  // guards the rearranged-sum comparisons

struct Draw {
    std::uint64_t base;
    std::uint64_t ctr = 0;
    explicit Draw(std::uint64_t b) : base(b) {}
    double u01() { return rng::u01_from_bits(rng::site_bits(base, ctr++)); }
    double expo() { return rng::exponential_from_u01(u01()); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(u01() * static_cast<double>(hi - lo + 1));
    }
};

// Random down-right path from (r0, my) to (mx, r1); the frame corner
// (mx, my) then lies in V_nu.
DownRightPath random_staircase(Draw& draw, std::int64_t mx, std::int64_t my) {
    const std::int64_t r0 = draw.uniform_int(0, mx - 1);
    const std::int64_t r1 = draw.uniform_int(0, my);
    std::vector<Step> steps;
    for (std::int64_t k = 0; k < mx - r0; ++k) steps.push_back(Step::Right);
    for (std::int64_t k = 0; k < my - r1; ++k) steps.push_back(Step::Down);
    for (std::size_t k = steps.size(); k > 1; --k)
        std::swap(steps[k - 1], steps[static_cast<std::size_t>(draw.uniform_int(0, static_cast<std::int64_t>(k) - 1))]);
    const std::int64_t len = static_cast<std::int64_t>(steps.size()) + 1;
    return DownRightPath({r0, my}, std::move(steps), draw.uniform_int(1, len));
}

struct ExitExtremes {
    std::int64_t zmax = 0;  // largest last-contact index over all geodesics
    std::int64_t zmin = 0;  // smallest
    bool valid = false;
    std::uint64_t paths = 0;
};

// Enumerates every geodesic from table.origin to target by walking the
// argmax-predecessor relation backwards; the exit index is the first
// nu-vertex met on the backward walk. Ties (equal predecessor values) fork.
void enumerate_exits(const LppTable& table, const DownRightPath& nu, Vertex v,
                     std::optional<std::int64_t> contact, ExitExtremes& out) {
    if (out.paths > 2000000) throw std::runtime_error("enumerate_exits: tie explosion");
    if (!contact) contact = nu.index_of(v);
    if (v == table.origin) {
        if (!contact) throw std::logic_error("enumerate_exits: geodesic avoided nu");
        ++out.paths;
        if (!out.valid) {
            out.zmax = out.zmin = *contact;
            out.valid = true;
        } else {
            out.zmax = std::max(out.zmax, *contact);
            out.zmin = std::min(out.zmin, *contact);
        }
        return;
    }
    const bool has_left = v.i > table.origin.i;
    const bool has_down = v.j > table.origin.j;
    const double left = has_left ? table(v.i - 1, v.j) : kNegInf;
    const double down = has_down ? table(v.i, v.j - 1) : kNegInf;
    const double best = std::max(left, down);
    if (has_left && left == best) enumerate_exits(table, nu, v.offset(-1, 0), contact, out);
    if (has_down && down == best) enumerate_exits(table, nu, v.offset(0, -1), contact, out);
}

struct MaxExits {
    std::int64_t zplus = 0;
    std::int64_t zminus = 0;
};

MaxExits maximal_exits(const Grid<double>& weights, const DownRightPath& nu, Vertex target) {
    const LppTable table = last_passage_table(weights, weights.rect().lo, weights.rect());
    ExitExtremes ex;
    enumerate_exits(table, nu, target, std::nullopt, ex);
    const std::int64_t b = nu.base_index();
    return {std::max<std::int64_t>(ex.zmax - b, 0), std::max<std::int64_t>(b - ex.zmin, 0)};
}

std::string describe(std::int64_t trial, const DownRightPath& nu, const std::string& what) {
    std::ostringstream os;
    os << "trial " << trial << " path " << format_path(nu) << ": " << what;
    return os.str();
}

}  // namespace

McReport check_deterministic_lemmas(std::uint64_t trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("check_deterministic_lemmas: need trials >= 1");
    const auto t0 = Clock::now();

    std::uint64_t monotonicity_violations = 0, crossing_violations = 0, induced_violations = 0,
                  line_violations = 0;
    std::string first_failure;
    auto record = [&](std::uint64_t& counter, const std::string& detail) {
        if (counter == 0 && first_failure.empty()) first_failure = detail;
        ++counter;
    };

    for (std::uint64_t trial = 0; trial < trials; ++trial) {
        Draw draw(rng::stream_base(derived_seed(seed, 7000), trial));
        const std::int64_t mx = draw.uniform_int(3, 8);
        const std::int64_t my = draw.uniform_int(3, 8);
        const Rect rect({0, 0}, {mx, my});
        const bool integer_weights = (trial % 3 == 2);  // tie-rich instances

        Grid<double> w(rect);
        for (std::int64_t j = 0; j <= my; ++j)
            for (std::int64_t i = 0; i <= mx; ++i)
                w(i, j) = integer_weights ? static_cast<double>(draw.uniform_int(0, 3))
                                          : draw.expo() - (trial % 2 ? 0.5 : 0.0);

        const DownRightPath nu = random_staircase(draw, mx, my);
        const Vertex target{mx, my};

        // (a) exit-point monotonicity under a single boundary-weight increase
        {
            const MaxExits before = maximal_exits(w, nu, target);
            const double delta = (trial % 5 == 0) ? 0.0 : 0.3 + draw.u01();

            Grid<double> wh = w;
            wh(draw.uniform_int(0, mx), 0) += delta;
            const MaxExits hor = maximal_exits(wh, nu, target);
            if (delta == 0.0) {
                if (hor.zplus != before.zplus || hor.zminus != before.zminus)
                    record(monotonicity_violations,
                           describe(trial, nu, "zero perturbation changed exits"));
            } else if (hor.zplus < before.zplus || hor.zminus > before.zminus) {
                record(monotonicity_violations,
                       describe(trial, nu, "horizontal-axis increase moved exits the wrong way"));
            }

            Grid<double> wv = w;
            wv(0, draw.uniform_int(0, my)) += delta;
            const MaxExits ver = maximal_exits(wv, nu, target);
            if (delta > 0.0 && (ver.zplus > before.zplus || ver.zminus < before.zminus))
                record(monotonicity_violations,
                       describe(trial, nu, "vertical-axis increase moved exits the wrong way"));
        }

        // (b) crossing inequalities for increments, all admissible (i,j)
        {
            const Rect big({0, 0}, {mx + 1, my + 1});
            Grid<double> wb(big);
            for (std::int64_t j = 0; j <= my + 1; ++j)
                for (std::int64_t i = 0; i <= mx + 1; ++i)
                    wb(i, j) = rect.contains({i, j}) ? w(i, j) : draw.expo();
            const LppTable rev_mn = reverse_last_passage_table(wb, Rect({0, 0}, {mx, my}));
            const LppTable rev_m1n = reverse_last_passage_table(wb, Rect({0, 0}, {mx + 1, my}));
            const LppTable rev_mn1 = reverse_last_passage_table(wb, Rect({0, 0}, {mx, my + 1}));
            for (std::int64_t j = 0; j <= my && crossing_violations == 0; ++j) {
                for (std::int64_t i = 0; i <= mx && crossing_violations == 0; ++i) {
                    if (i + 1 <= mx) {
                        const double mid = rev_mn(i, j) - rev_mn(i + 1, j);
                        const double lo = rev_m1n(i, j) - rev_m1n(i + 1, j);
                        const double hi = rev_mn1(i, j) - rev_mn1(i + 1, j);
                        if (lo > mid + kFpSlack || mid > hi + kFpSlack)
                            record(crossing_violations,
                                   describe(trial, nu, "horizontal crossing chain failed at " +
                                                           Vertex{i, j}.str()));
                    }
                    if (j + 1 <= my) {
                        const double mid = rev_mn(i, j) - rev_mn(i, j + 1);
                        const double lo = rev_mn1(i, j) - rev_mn1(i, j + 1);
                        const double hi = rev_m1n(i, j) - rev_m1n(i, j + 1);
                        if (lo > mid + kFpSlack || mid > hi + kFpSlack)
                            record(crossing_violations,
                                   describe(trial, nu, "vertical crossing chain failed at " +
                                                           Vertex{i, j}.str()));
                    }
                }
            }
        }

        // (c) induced path-to-point identity and exit agreement
        // (continuous weights keep the maximizers unique)
        {
            const double z = 0.2 + 0.6 * draw.u01();
            const NoiseField noise(derived_seed(seed, 7100), trial, rect);
            const WeightField field = build_weights(noise, TwoParamRecipe{z, z});
            const LppTable table = last_passage_table(field, {0, 0}, rect);
            const Grid<double> induced = induce_weights_along_path(field.values, table, nu);
            const PathToPointResult ptp = path_to_point(induced, nu, target);
            const double expected = table(target) - table(nu.base_vertex());
            if (std::fabs(ptp.value - expected) > kFpSlack * std::max(1.0, std::fabs(expected)))
                record(induced_violations, describe(trial, nu, "induced value mismatch"));
            const MaxExits geo = maximal_exits(field.values, nu, target);
            if (ptp.exit.zplus != geo.zplus || ptp.exit.zminus != geo.zminus)
                record(induced_violations, describe(trial, nu, "induced exit mismatch"));
        }

        // (d) line-to-point reduction on the antidiagonal path
        {
            const std::int64_t n = draw.uniform_int(2, 6);
            const double z = 0.2 + 0.6 * draw.u01();
            std::vector<Step> steps;
            for (std::int64_t k = 0; k < n; ++k) {
                steps.push_back(Step::Down);
                steps.push_back(Step::Right);
            }
            const std::int64_t i0 = draw.uniform_int(0, n);
            const DownRightPath anti({0, n}, std::move(steps), 2 * i0 + 1);
            const Rect arect({0, 0}, {n, n});
            const NoiseField noise(derived_seed(seed, 7200), trial, arect);
            const WeightField field = build_weights(noise, PathInducedRecipe{anti, z});
            const PathToPointResult ptp = path_to_point(field, {n, n});

            Grid<double> wprime = field.values;
            for (const Vertex& v : anti.vertices()) wprime(v) = 0.0;
            const LppTable rev = reverse_last_passage_table(wprime, arect);
            double direct = kNegInf;
            for (std::int64_t i = 0; i <= n; ++i) {
                double s_i = 0.0;
                if (i > i0)
                    for (std::int64_t s = i0 + 1; s <= i; ++s)
                        s_i += field.values(anti.at(2 * s)) + field.values(anti.at(2 * s + 1));
                if (i < i0)
                    for (std::int64_t s = i + 1; s <= i0; ++s)
                        s_i += field.values(anti.at(2 * s)) + field.values(anti.at(2 * s - 1));
                direct = std::max(direct, s_i + rev(i, n - i));
            }
            if (std::fabs(ptp.value - direct) > kFpSlack * std::max(1.0, std::fabs(direct)))
                record(line_violations, describe(trial, anti, "antidiagonal reduction mismatch"));
        }
    }

    McReport rep;
    rep.experiment = "verify-lemmas";
    rep.reps = trials;
    rep.seed = seed;
    rep.params = {{"trials", std::to_string(trials)}};
    auto check = [&](const char* name, std::uint64_t violations) {
        rep.checks.push_back({name, violations == 0,
                              violations == 0 ? "ok" : std::to_string(violations) + " violations"});
    };
    check("exit_monotonicity", monotonicity_violations);
    check("crossing_inequalities", crossing_violations);
    check("induced_path_to_point", induced_violations);
    check("line_to_point_reduction", line_violations);
    if (!first_failure.empty())
        rep.checks.push_back({"first_counterexample", false, first_failure});
    rep.wall_seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    return rep;
}

}  // namespace lpp
