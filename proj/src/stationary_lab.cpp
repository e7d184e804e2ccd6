#include "lpplab/stationary_lab.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <sstream>

#include "lpplab/analytic.hpp"
#include "lpplab/kernels.hpp"
#include "lpplab/parallel.hpp"

namespace lpp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Nothing {
    void merge(const Nothing&) {}
};

std::string fmt(double v) { return format_double(v); }

// binomial point estimate with exact-count bookkeeping
Estimate proportion_estimate(std::string name, std::uint64_t hits, std::uint64_t reps) {
    const double p = reps ? static_cast<double>(hits) / static_cast<double>(reps) : 0.0;
    const double se = reps ? std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(reps)) : 0.0;
    return Estimate{std::move(name), p, se, p - 3.0 * se, p + 3.0 * se};
}

// Draw helper for instance generation in the lemma suite; a counter-based
// stream detached from the replica noise.
struct StreamDraw {
    std::uint64_t base;
    std::uint64_t ctr = 0;

    explicit StreamDraw(std::uint64_t b) : base(b) {}
    double u01() { return rng::u01_from_bits(rng::site_bits(base, ctr++)); }
    double expo() { return rng::exponential_from_u01(u01()); }
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(u01() * static_cast<double>(hi - lo + 1));
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Burke property

McReport verify_burke(const DownRightPath& nu, double z, const LabConfig& cfg, double alpha) {
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("verify_burke: z must lie in (0,1)");
    if (cfg.reps < 1000) throw std::invalid_argument("verify_burke: need reps >= 1000");
    const auto t0 = Clock::now();

    struct Edge {
        std::int64_t from, to;  // nu indices; increment = Ghat(to) - Ghat(from)
        double rate;
        std::string name;
    };
    std::vector<Edge> edges;
    const StepSets sets = path_steps(nu);
    for (std::int64_t i : sets.right)
        edges.push_back({i, i + 1, z, "R" + std::to_string(i)});
    for (std::int64_t j : sets.down)
        edges.push_back({j, j - 1, 1.0 - z, "D" + std::to_string(j)});
    if (edges.empty()) throw std::invalid_argument("verify_burke: path has no edges");

    std::int64_t umax = 0, vmax = 0;
    for (const Vertex& v : nu.vertices()) {
        umax = std::max(umax, v.i);
        vmax = std::max(vmax, v.j);
    }
    const Rect rect({0, 0}, {umax, vmax});
    const std::size_t ne = edges.size();
    std::vector<std::vector<double>> samples(ne,
                                             std::vector<double>(static_cast<std::size_t>(cfg.reps)));

    run_replica_blocks<Nothing>(cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end,
                                                           Nothing&) {
        for (std::uint64_t r = begin; r < end; ++r) {
            const NoiseField noise(cfg.seed, r, rect);
            const WeightField field = build_weights(noise, TwoParamRecipe{z, z});
            const LppTable table = last_passage_table(field, {0, 0}, rect);
            for (std::size_t e = 0; e < ne; ++e)
                samples[e][static_cast<std::size_t>(r)] =
                    table(nu.at(edges[e].to)) - table(nu.at(edges[e].from));
        }
    });

    McReport rep;
    rep.experiment = "verify-burke";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.params = {{"z", fmt(z)}, {"path", format_path(nu)}, {"alpha", fmt(alpha)}};

    for (std::size_t e = 0; e < ne; ++e) {
        const double rate = edges[e].rate;
        const KsResult ks =
            ks_one_sample(samples[e], [rate](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-rate * x); });
        rep.checks.push_back({"ks." + edges[e].name, ks.p >= alpha,
                              "D=" + fmt(ks.d) + " p=" + fmt(ks.p) + " rate=" + fmt(rate)});
        MeanAcc acc;
        for (double v : samples[e]) acc.add(v);
        rep.estimates.push_back(Estimate::from_acc("mean." + edges[e].name, acc));
    }

    const double corr_bound = 5.0 / std::sqrt(static_cast<double>(cfg.reps));
    for (std::size_t a = 0; a < ne; ++a) {
        for (std::size_t b = a + 1; b < ne; ++b) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (std::uint64_t r = 0; r < cfg.reps; ++r) {
                const double x = samples[a][static_cast<std::size_t>(r)];
                const double y = samples[b][static_cast<std::size_t>(r)];
                sx += x;
                sy += y;
                sxx += x * x;
                syy += y * y;
                sxy += x * y;
            }
            const double rho = pearson_from_sums(cfg.reps, sx, sy, sxx, syy, sxy);
            rep.checks.push_back({"corr." + edges[a].name + "-" + edges[b].name,
                                  std::fabs(rho) <= corr_bound, "rho=" + fmt(rho)});
        }
    }

    rep.wall_seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Rains exponential moment identity

McReport verify_rains(double w, double z, std::int64_t m, std::int64_t n, const LabConfig& cfg) {
    if (!(w > 0.0 && w < 1.0 && z > 0.0 && z < 1.0))
        throw std::invalid_argument("verify_rains: w,z must lie in (0,1)");
    if (m < 0 || n < 0) throw std::invalid_argument("verify_rains: need m,n >= 0");
    const double guard = std::fabs(w - z) * (static_cast<double>(m) / std::min(w, z) +
                                             static_cast<double>(n) / (1.0 - std::max(w, z)));
    if (guard > 8.0)
        throw std::invalid_argument(
            "verify_rains: refusing, exponential-moment estimator variance uncontrolled: "
            "|w-z| (m/min(w,z) + n/(1-max(w,z))) = " +
            fmt(guard) + " > 8");
    const auto t0 = Clock::now();

    struct Partial {
        MeanAcc acc;
        void merge(const Partial& o) { acc.merge(o.acc); }
    };
    const double t = w - z;
    const Partial total = run_replica_blocks<Partial>(
        cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
            kernels::StationaryValueKernel kernel(m, n);
            for (std::uint64_t r = begin; r < end; ++r)
                out.acc.add(std::exp(t * kernel.value(cfg.seed, r, w, z)));
        });

    const double target = std::exp(lmgf(w, z, static_cast<double>(m), static_cast<double>(n)));
    McReport rep;
    rep.experiment = "verify-rains";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.params = {{"w", fmt(w)}, {"z", fmt(z)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};
    Estimate est = Estimate::from_acc("exp_moment", total.acc);
    rep.estimates.push_back(est);
    rep.estimates.push_back({"target", target, 0.0, target, target});
    const double gap = std::fabs(est.value - target);
    rep.checks.push_back({"within_3_stderr", gap <= 3.0 * est.stderr_,
                          "gap=" + fmt(gap) + " 3se=" + fmt(3.0 * est.stderr_)});
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Variance identity

McReport verify_variance(double z, std::int64_t m, std::int64_t n, const LabConfig& cfg) {
    if (!(z > 0.0 && z < 1.0)) throw std::invalid_argument("verify_variance: z must lie in (0,1)");
    if (m < 0 || n < 0 || (m == 0 && n == 0))
        throw std::invalid_argument("verify_variance: need m,n >= 0, not both zero");
    const auto t0 = Clock::now();

    struct Partial {
        CrossAcc<4> acc;  // (G, G^2, B, Zhor)
        void merge(const Partial& o) { acc.merge(o.acc); }
    };

    const Partial total = run_replica_blocks<Partial>(
        cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
            if (m >= 1 && n >= 1) {
                kernels::StationaryAxisExitKernel kernel(m, n);
                for (std::uint64_t r = begin; r < end; ++r) {
                    kernel.prepare(cfg.seed, r);
                    const kernels::ExitSample s = kernel.exits(z, z);
                    const double x[4] = {s.ghat, s.ghat * s.ghat, s.boundary_weight_sum,
                                         static_cast<double>(s.zhor)};
                    out.acc.add(x);
                }
            } else {
                // degenerate rectangle: the geodesic is the axis itself
                kernels::StationaryValueKernel kernel(m, n);
                for (std::uint64_t r = begin; r < end; ++r) {
                    const double g = kernel.value(cfg.seed, r, z, z);
                    const double b = (n == 0) ? g : 0.0;
                    const double zh = (n == 0) ? static_cast<double>(m) : 0.0;
                    const double x[4] = {g, g * g, b, zh};
                    out.acc.add(x);
                }
            }
        });

    const CrossAcc<4>& acc = total.acc;
    const double nn = static_cast<double>(acc.n);
    const double mean_g = acc.mean(0);
    const double var_hat = (acc.sum[1] - acc.sum[0] * acc.sum[0] / nn) / (nn - 1.0);
    const double mean_b = acc.mean(2);
    const double mean_zhor = acc.mean(3);
    const double base = -static_cast<double>(m) / (z * z) +
                        static_cast<double>(n) / ((1.0 - z) * (1.0 - z));
    const double rhs_weight_sum = base + (2.0 / z) * mean_b;
    const double rhs_count = base + (2.0 / z) * mean_zhor;

    // delta method for D = (mu2 - mu1^2) - (2/z) muB
    const double g0 = -2.0 * mean_g, g1 = 1.0, g2 = -2.0 / z;
    double var_d = 0.0;
    const double grad[3] = {g0, g1, g2};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) var_d += grad[a] * grad[b] * acc.cov_of_means(a, b);
    const double sd_d = std::sqrt(std::max(var_d, 0.0));
    const double diff = var_hat - rhs_weight_sum;

    McReport rep;
    rep.experiment = "verify-variance";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.params = {{"z", fmt(z)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};
    rep.estimates.push_back({"var_hat", var_hat, sd_d, var_hat - 3 * sd_d, var_hat + 3 * sd_d});
    rep.estimates.push_back({"rhs_weight_sum", rhs_weight_sum, 0.0, rhs_weight_sum, rhs_weight_sum});
    rep.estimates.push_back({"rhs_count_form", rhs_count, 0.0, rhs_count, rhs_count});
    rep.estimates.push_back({"mean_boundary_sum", mean_b, 0.0, mean_b, mean_b});
    rep.estimates.push_back({"mean_zhor", mean_zhor, 0.0, mean_zhor, mean_zhor});
    rep.checks.push_back({"weight_sum_form_within_3sd", std::fabs(diff) <= 3.0 * sd_d,
                          "diff=" + fmt(diff) + " 3sd=" + fmt(3.0 * sd_d)});
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Exit tails

ExitTailOptions axes_exit_tail(double w, double z, std::int64_t m, std::int64_t n,
                               std::vector<double> s_grid) {
    ExitTailOptions opt(TwoParamRecipe{w, z}, l_shaped(0, 0, m, n), m, n, std::move(s_grid));
    return opt;
}

TailCurve exit_tail(const ExitTailOptions& options, const LabConfig& cfg) {
    const auto t0 = Clock::now();
    const DownRightPath& nu = options.nu;
    const Vertex base = nu.base_vertex();
    const Vertex target{base.i + options.m, base.j + options.n};
    if (!reachable_contains(nu, target))
        throw std::invalid_argument("exit_tail: target (m+i0, n+j0) must lie in V_nu");
    if (options.s_grid.empty()) throw std::invalid_argument("exit_tail: empty s grid");

    const double scale =
        std::pow(static_cast<double>(options.m + options.n), 2.0 / 3.0);
    std::vector<std::int64_t> kvals;
    for (double s : options.s_grid)
        kvals.push_back(static_cast<std::int64_t>(std::floor(s * scale)));

    const auto* two = std::get_if<TwoParamRecipe>(&options.recipe);
    if (options.strict_regime) {
        if (!two) throw std::invalid_argument("exit_tail: strict regime applies to two-param only");
        const double zeta = characteristic_zeta(static_cast<double>(options.m),
                                                static_cast<double>(options.n));
        if (!options.minus_side && std::min(two->w, two->z) < zeta)
            throw std::invalid_argument(
                "exit_tail: plus-side theorem hypothesis min(w,z) >= zeta(m,n) violated");
        if (options.minus_side && std::max(two->w, two->z) > zeta)
            throw std::invalid_argument(
                "exit_tail: minus-side theorem hypothesis max(w,z) <= zeta(m,n) violated");
    }

    struct Partial {
        std::vector<std::uint64_t> counts;
        void merge(const Partial& o) {
            if (counts.empty()) counts = o.counts;
            else
                for (std::size_t k = 0; k < counts.size(); ++k) counts[k] += o.counts[k];
        }
    };

    const bool fast_axes = two != nullptr && nu == l_shaped(0, 0, options.m, options.n);
    const std::size_t ns = options.s_grid.size();

    const Partial total = run_replica_blocks<Partial>(
        cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
            out.counts.assign(ns, 0);
            auto tally = [&](std::int64_t zside) {
                for (std::size_t k = 0; k < ns; ++k)
                    if (zside > kvals[k]) ++out.counts[k];
            };
            if (fast_axes) {
                constexpr int kLanes = kernels::StationaryAxisExitKernelBatch::kLanes;
                kernels::StationaryAxisExitKernelBatch kernel(options.m, options.n);
                for (std::uint64_t r = begin; r < end; r += kLanes) {
                    kernel.prepare(cfg.seed, r);
                    const int lanes = static_cast<int>(std::min<std::uint64_t>(kLanes, end - r));
                    for (int lane = 0; lane < lanes; ++lane) {
                        const kernels::ExitSample s = kernel.exits(lane, two->w, two->z);
                        tally(options.minus_side ? s.zver : s.zhor);
                    }
                }
            } else {
                std::int64_t umax = target.i, vmax = target.j;
                for (const Vertex& v : nu.vertices()) {
                    umax = std::max(umax, v.i);
                    vmax = std::max(vmax, v.j);
                }
                const Rect rect({0, 0}, {umax, vmax});
                for (std::uint64_t r = begin; r < end; ++r) {
                    const NoiseField noise(cfg.seed, r, rect);
                    const WeightField field = build_weights(noise, options.recipe);
                    ExitRecord exit;
                    if (two) {
                        const LppTable table = last_passage_table(field, {0, 0}, rect);
                        exit = exit_record(geodesic(table, target), nu);
                    } else {
                        exit = path_to_point(field, target).exit;
                    }
                    tally(options.minus_side ? exit.zminus : exit.zplus);
                }
            }
        });

    TailCurve curve;
    curve.experiment = "exit-tail";
    curve.reps = cfg.reps;
    curve.seed = cfg.seed;
    curve.params = {{"recipe", recipe_name(options.recipe)},
                    {"path", format_path(nu)},
                    {"m", std::to_string(options.m)},
                    {"n", std::to_string(options.n)},
                    {"side", options.minus_side ? "minus" : "plus"}};
    if (two) {
        curve.params["w"] = fmt(two->w);
        curve.params["z"] = fmt(two->z);
    }
    std::vector<TailFitPoint> fit_points;
    for (std::size_t k = 0; k < ns; ++k) {
        TailPoint pt;
        pt.s = options.s_grid[k];
        pt.k = kvals[k];
        const std::uint64_t hits = total.counts[k];
        pt.p_hat = static_cast<double>(hits) / static_cast<double>(cfg.reps);
        pt.stderr_ = std::sqrt(std::max(pt.p_hat * (1.0 - pt.p_hat), 0.0) /
                               static_cast<double>(cfg.reps));
        const Interval w = wilson_interval(hits, cfg.reps, options.wilson_z);
        pt.lo = w.lo;
        pt.hi = w.hi;
        curve.points.push_back(pt);
        fit_points.push_back({pt.s, pt.p_hat, pt.stderr_});
    }
    curve.fit = tail_fit(fit_points, 10.0 / static_cast<double>(cfg.reps));
    curve.wall_seconds = seconds_since(t0);
    return curve;
}

// ---------------------------------------------------------------------------
// First-step probabilities

std::vector<McReport> first_step_prob_multi(std::span<const double> zs, std::int64_t m,
                                            std::int64_t n, const LabConfig& cfg) {
    for (double z : zs)
        if (!(z > 0.0 && z < 1.0))
            throw std::invalid_argument("first_step_prob: z must lie in (0,1)");
    if (m < 1 || n < 1) throw std::invalid_argument("first_step_prob: need m,n >= 1");
    const auto t0 = Clock::now();

    struct Partial {
        std::vector<std::uint64_t> hor, ver;
        void merge(const Partial& o) {
            if (hor.empty()) {
                hor = o.hor;
                ver = o.ver;
                return;
            }
            for (std::size_t k = 0; k < hor.size(); ++k) {
                hor[k] += o.hor[k];
                ver[k] += o.ver[k];
            }
        }
    };

    const std::size_t nz = zs.size();
    constexpr int kLanes = kernels::StationaryAxisExitKernelBatch::kLanes;
    const Partial total = run_replica_blocks<Partial>(
        cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
            out.hor.assign(nz, 0);
            out.ver.assign(nz, 0);
            kernels::StationaryAxisExitKernelBatch kernel(m, n);
            for (std::uint64_t r = begin; r < end; r += kLanes) {
                kernel.prepare(cfg.seed, r);
                const int lanes = static_cast<int>(std::min<std::uint64_t>(kLanes, end - r));
                for (int lane = 0; lane < lanes; ++lane) {
                    for (std::size_t k = 0; k < nz; ++k) {
                        const kernels::ExitSample s = kernel.exits(lane, zs[k], zs[k]);
                        if (s.zhor > 0) ++out.hor[k];
                        if (s.zver > 0) ++out.ver[k];
                    }
                }
            }
        });

    const ShapeQuantities q = shape_quantities(static_cast<double>(m), static_cast<double>(n));
    std::vector<McReport> reports;
    for (std::size_t k = 0; k < nz; ++k) {
        const double z = zs[k];
        McReport rep;
        rep.experiment = "first-step";
        rep.reps = cfg.reps;
        rep.seed = cfg.seed;
        rep.report_only = true;
        rep.params = {{"z", fmt(z)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};
        rep.estimates.push_back(proportion_estimate("p_hor", total.hor[k], cfg.reps));
        rep.estimates.push_back(proportion_estimate("p_ver", total.ver[k], cfg.reps));
        const double s = (z - q.zeta) * q.sigma;  // refined scale; positive when z > zeta
        if (z > q.zeta) {
            const double p = rep.estimates[0].value;
            const double neg_log = p > 0.0 ? -std::log(p) : kPosInf;
            rep.estimates.push_back({"neg_log_p_hor", neg_log, 0.0, neg_log, neg_log});
            rep.estimates.push_back({"predicted_s3_over_6", s * s * s / 6.0, 0.0, 0.0, 0.0});
            rep.estimates.push_back({"s", s, 0.0, s, s});
        } else if (z < q.zeta) {
            const double p = rep.estimates[1].value;
            const double neg_log = p > 0.0 ? -std::log(p) : kPosInf;
            const double sv = (q.zeta - z) * q.sigma;
            rep.estimates.push_back({"neg_log_p_ver", neg_log, 0.0, neg_log, neg_log});
            rep.estimates.push_back({"predicted_s3_over_6", sv * sv * sv / 6.0, 0.0, 0.0, 0.0});
            rep.estimates.push_back({"s", sv, 0.0, sv, sv});
        }
        rep.wall_seconds = seconds_since(t0);
        reports.push_back(std::move(rep));
    }
    return reports;
}

McReport first_step_prob(double z, std::int64_t m, std::int64_t n, const LabConfig& cfg) {
    const double zs[1] = {z};
    return first_step_prob_multi(zs, m, n, cfg).front();
}

// ---------------------------------------------------------------------------
// Exit distributional identity (path-to-point vs axis exits)

McReport verify_exit_identity(double z, std::int64_t p, std::int64_t q, std::int64_t m,
                              std::int64_t n, const LabConfig& cfg, double alpha) {
    if (!(z > 0.0 && z < 1.0))
        throw std::invalid_argument("verify_exit_identity: z must lie in (0,1)");
    if (p < 0 || q < 0 || m < 1 || n < 1)
        throw std::invalid_argument("verify_exit_identity: need p,q >= 0 and m,n >= 1");
    const auto t0 = Clock::now();

    const DownRightPath L = l_shaped(p, q, m + p, n + q);
    const Vertex target{m + p, n + q};
    const Rect rect_a({p, q}, {m + p, n + q});
    const std::uint64_t seed_a = derived_seed(cfg.seed, 101);
    const std::uint64_t seed_b = derived_seed(cfg.seed, 202);

    std::vector<double> plus_a(cfg.reps), minus_a(cfg.reps), hor_b(cfg.reps), ver_b(cfg.reps);
    std::atomic<bool> support_ok{true};

    run_replica_blocks<Nothing>(cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end,
                                                           Nothing&) {
        kernels::StationaryAxisExitKernel kernel(m, n);
        for (std::uint64_t r = begin; r < end; ++r) {
            const NoiseField noise(seed_a, r, rect_a);
            const WeightField field = build_weights(noise, PathInducedRecipe{L, z});
            const ExitRecord exit = path_to_point(field, target).exit;
            plus_a[static_cast<std::size_t>(r)] = static_cast<double>(exit.zplus);
            minus_a[static_cast<std::size_t>(r)] = static_cast<double>(exit.zminus);
            if (exit.zplus > m || exit.zminus > n) support_ok = false;

            kernel.prepare(seed_b, r);
            const kernels::ExitSample s = kernel.exits(z, z);
            hor_b[static_cast<std::size_t>(r)] = static_cast<double>(s.zhor);
            ver_b[static_cast<std::size_t>(r)] = static_cast<double>(s.zver);
        }
    });

    const KsResult ks_plus = ks_two_sample(plus_a, hor_b);
    const KsResult ks_minus = ks_two_sample(minus_a, ver_b);

    McReport rep;
    rep.experiment = "verify-exit-identity";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.params = {{"z", fmt(z)},
                  {"p", std::to_string(p)},
                  {"q", std::to_string(q)},
                  {"m", std::to_string(m)},
                  {"n", std::to_string(n)},
                  {"alpha", fmt(alpha)}};
    rep.checks.push_back({"ks_plus_vs_hor", ks_plus.p >= alpha,
                          "D=" + fmt(ks_plus.d) + " p=" + fmt(ks_plus.p)});
    rep.checks.push_back({"ks_minus_vs_ver", ks_minus.p >= alpha,
                          "D=" + fmt(ks_minus.d) + " p=" + fmt(ks_minus.p)});
    rep.checks.push_back({"support", support_ok, "exit offsets inside {0..m} x {0..n}"});
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

// ---------------------------------------------------------------------------
// Increment stationarity

McReport verify_stationarity(double z, std::int64_t m, std::int64_t n,
                             std::span<const std::pair<std::int64_t, std::int64_t>> shifts,
                             const LabConfig& cfg, double alpha) {
    if (!(z > 0.0 && z < 1.0))
        throw std::invalid_argument("verify_stationarity: z must lie in (0,1)");
    const auto t0 = Clock::now();

    McReport rep;
    rep.experiment = "verify-stationarity";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.params = {{"z", fmt(z)}, {"m", std::to_string(m)}, {"n", std::to_string(n)}};

    // reference sample of Ghat(m,n) on its own stream
    std::vector<double> ref(cfg.reps);
    const std::uint64_t seed_ref = derived_seed(cfg.seed, 1);
    run_replica_blocks<Nothing>(cfg.reps, cfg.threads,
                                [&](std::uint64_t begin, std::uint64_t end, Nothing&) {
                                    kernels::StationaryValueKernel kernel(m, n);
                                    for (std::uint64_t r = begin; r < end; ++r)
                                        ref[static_cast<std::size_t>(r)] =
                                            kernel.value(seed_ref, r, z, z);
                                });

    int shift_id = 0;
    for (const auto& shift : shifts) {
        const std::int64_t p = shift.first;
        const std::int64_t q = shift.second;
        const Rect rect({0, 0}, {m + p, n + q});
        std::vector<double> inc(cfg.reps);
        const std::uint64_t seed_s = derived_seed(cfg.seed, 100 + static_cast<std::uint64_t>(shift_id));
        run_replica_blocks<Nothing>(
            cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Nothing&) {
                for (std::uint64_t r = begin; r < end; ++r) {
                    const NoiseField noise(seed_s, r, rect);
                    const WeightField field = build_weights(noise, TwoParamRecipe{z, z});
                    const LppTable table = last_passage_table(field, {0, 0}, rect);
                    inc[static_cast<std::size_t>(r)] = table(m + p, n + q) - table(p, q);
                }
            });
        const KsResult ks = ks_two_sample(inc, ref);
        rep.checks.push_back({"ks_shift_" + std::to_string(p) + "_" + std::to_string(q),
                              ks.p >= alpha, "D=" + fmt(ks.d) + " p=" + fmt(ks.p)});
        ++shift_id;
    }
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

}  // namespace lpp
