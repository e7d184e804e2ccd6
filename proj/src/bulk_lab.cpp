#include "lpplab/bulk_lab.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "lpplab/kernels.hpp"
#include "lpplab/parallel.hpp"

namespace lpp {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) { return format_double(v); }

struct Nothing {
    void merge(const Nothing&) {}
};

}  // namespace

CifPath cif_simulate(const WeightField& weights, std::int64_t n_steps) {
    if (n_steps < 1) throw std::invalid_argument("cif_simulate: need n_steps >= 1");
    const Rect need({1, 1}, {n_steps + 1, n_steps + 1});
    if (!weights.rect().contains(need))
        throw std::invalid_argument("cif_simulate: weights must cover [1, n+1]^2");
    const LppTable table = last_passage_table(weights.values, {1, 1}, need);

    CifPath path;
    path.points.push_back({1, 1});
    Vertex phi{1, 1};
    for (std::int64_t n = 1; n < n_steps; ++n) {
        const double hor = table(phi.i + 1, phi.j);
        const double ver = table(phi.i, phi.j + 1);
        phi = (hor <= ver) ? phi.offset(1, 0) : phi.offset(0, 1);
        path.points.push_back(phi);
    }
    return path;
}

TailCurve transversal_fluct(const DownRightPath& nu, std::int64_t m, std::int64_t n,
                            std::vector<double> s_grid, bool minus_side, const LabConfig& cfg) {
    ExitTailOptions opt(TwoParamRecipe{1.0, 0.0}, nu, m, n, std::move(s_grid));
    opt.minus_side = minus_side;
    TailCurve curve = exit_tail(opt, cfg);
    curve.experiment = "fluctuation";
    const Vertex base = nu.base_vertex();
    const double gap = std::fabs(characteristic_zeta(static_cast<double>(m + base.i + 1),
                                                     static_cast<double>(n + base.j + 1)) -
                                 characteristic_zeta(static_cast<double>(m), static_cast<double>(n)));
    curve.params["colinearity_gap"] = fmt(gap);
    return curve;
}

McReport midpoint_fluctuation(std::span<const std::int64_t> n_grid, const LabConfig& cfg,
                              double slope_lo, double slope_hi) {
    if (n_grid.size() < 2) throw std::invalid_argument("midpoint_fluctuation: need >= 2 sizes");
    const auto t0 = Clock::now();

    struct Partial {
        MeanAcc acc;
        void merge(const Partial& o) { acc.merge(o.acc); }
    };

    McReport rep;
    rep.experiment = "fluctuation-midpoint";
    rep.reps = cfg.reps;
    rep.seed = cfg.seed;
    rep.report_only = false;

    std::vector<double> log_n, log_std, unit_w;
    for (std::size_t k = 0; k < n_grid.size(); ++k) {
        const std::int64_t N = n_grid[k];
        const std::uint64_t seed_k = derived_seed(cfg.seed, 300 + k);
        const Partial total = run_replica_blocks<Partial>(
            cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
                kernels::MidpointKernel kernel(N);
                const double center = 0.5 * static_cast<double>(N + 1);
                for (std::uint64_t r = begin; r < end; ++r)
                    out.acc.add(static_cast<double>(kernel.crossing_column(seed_k, r)) - center);
            });
        const double sd = std::sqrt(total.acc.variance());
        rep.estimates.push_back({"std.N" + std::to_string(N), sd, 0.0, sd, sd});
        log_n.push_back(std::log(static_cast<double>(N)));
        log_std.push_back(std::log(sd));
        unit_w.push_back(1.0);
    }
    const LineFit fit = weighted_least_squares(log_n, log_std, unit_w);
    rep.estimates.push_back({"loglog_slope", fit.slope, 0.0, fit.slope, fit.slope});
    rep.params = {{"target_exponent", "0.6666666666666666"}};
    rep.checks.push_back({"slope_in_window", fit.present && fit.slope >= slope_lo && fit.slope <= slope_hi,
                          "slope=" + fmt(fit.slope) + " window=[" + fmt(slope_lo) + "," +
                              fmt(slope_hi) + "]"});
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

ConvergenceReport busemann_experiment(const DownRightPath& nu, IncrementKind kind,
                                      std::span<const double> s, std::span<const double> t,
                                      std::span<const std::pair<std::int64_t, std::int64_t>> sizes,
                                      const LabConfig& cfg, double box_eps) {
    const StepSets sets = path_steps(nu);
    if (s.size() != sets.right.size() || t.size() != sets.down.size())
        throw std::invalid_argument(
            "busemann_experiment: s,t must match the right/down edge counts of nu");
    std::int64_t extent = 1;
    for (const Vertex& v : nu.vertices()) {
        if (v.i < 1 || v.j < 1)
            throw std::invalid_argument("busemann_experiment: nu must lie in the bulk");
        extent = std::max({extent, v.i, v.j});
    }

    const auto t0 = Clock::now();
    ConvergenceReport out;
    out.experiment = "busemann";
    out.reps = cfg.reps;
    out.seed = cfg.seed;
    out.params = {{"path", format_path(nu)},
                  {"kind", kind == IncrementKind::Hor ? "hor" : "ver"},
                  {"box_eps", fmt(box_eps)}};

    std::vector<double> log_mn, log_dist, unit_w;
    for (std::size_t idx = 0; idx < sizes.size(); ++idx) {
        const auto [m, n] = sizes[idx];
        if (static_cast<double>(extent) > box_eps * std::pow(static_cast<double>(m + n), 2.0 / 3.0))
            throw std::invalid_argument(
                "busemann_experiment: nu leaves the box [1, eps (m+n)^{2/3}]^2 at size " +
                std::to_string(m) + "x" + std::to_string(n));

        struct Partial {
            std::uint64_t hits = 0;
            void merge(const Partial& o) { hits += o.hits; }
        };
        const std::uint64_t seed_k = derived_seed(cfg.seed, 400 + idx);
        const Partial total = run_replica_blocks<Partial>(
            cfg.reps, cfg.threads, [&, m = m, n = n](std::uint64_t begin, std::uint64_t end, Partial& out_p) {
                kernels::BusemannWindowKernel kernel(m, n, extent);
                Grid<double> window;
                for (std::uint64_t r = begin; r < end; ++r) {
                    kernel.run(seed_k, r, window);
                    bool ok = true;
                    for (std::size_t e = 0; e < sets.right.size() && ok; ++e) {
                        const Vertex v = nu.at(sets.right[e]);
                        const double bhor = window(v) - window(v.offset(1, 0));
                        ok = (kind == IncrementKind::Hor) ? (bhor >= -s[e]) : (bhor <= s[e]);
                    }
                    for (std::size_t e = 0; e < sets.down.size() && ok; ++e) {
                        const Vertex v = nu.at(sets.down[e]);
                        const double bver = window(v) - window(v.offset(0, 1));
                        ok = (kind == IncrementKind::Hor) ? (bver <= t[e]) : (bver >= -t[e]);
                    }
                    if (ok) ++out_p.hits;
                }
            });

        const double p_hat = static_cast<double>(total.hits) / static_cast<double>(cfg.reps);
        const double limit = busemann_cdf(
            kind, characteristic_zeta(static_cast<double>(m), static_cast<double>(n)), s, t);
        ConvergencePoint pt{m + n, 0.0, p_hat, limit, std::fabs(p_hat - limit)};
        out.points.push_back(pt);
        out.n_grid.push_back(m + n);
        out.sup_distance.push_back(pt.abs_err);
        log_mn.push_back(std::log(static_cast<double>(m + n)));
        log_dist.push_back(std::log(std::max(pt.abs_err, 1e-12)));
        unit_w.push_back(1.0);
    }
    out.loglog = weighted_least_squares(log_mn, log_dist, unit_w);
    out.wall_seconds = seconds_since(t0);
    return out;
}

namespace {

ConvergenceReport interface_convergence(const char* name, bool stationary, double w, double z,
                                        std::span<const std::int64_t> n_grid,
                                        std::span<const double> x_grid, const LabConfig& cfg) {
    for (double x : x_grid)
        if (!(x >= 0.0 && x <= 1.0))
            throw std::invalid_argument("cif experiment: x grid must lie in [0,1]");
    if (n_grid.empty() || x_grid.empty())
        throw std::invalid_argument("cif experiment: empty grids");
    const std::int64_t n_max = *std::max_element(n_grid.begin(), n_grid.end());
    const auto t0 = Clock::now();

    struct Partial {
        std::vector<std::uint64_t> hits;  // [n_index * nx + x_index]
        void merge(const Partial& o) {
            if (hits.empty()) {
                hits = o.hits;
                return;
            }
            for (std::size_t k = 0; k < hits.size(); ++k) hits[k] += o.hits[k];
        }
    };
    const std::size_t nn = n_grid.size(), nx = x_grid.size();

    const Partial total = run_replica_blocks<Partial>(
        cfg.reps, cfg.threads, [&](std::uint64_t begin, std::uint64_t end, Partial& out_p) {
            out_p.hits.assign(nn * nx, 0);
            std::vector<std::int64_t> phi_hor(static_cast<std::size_t>(n_max));
            kernels::BulkCifKernel bulk(n_max);
            kernels::StationaryCifKernel stat(n_max);
            for (std::uint64_t r = begin; r < end; ++r) {
                if (stationary)
                    stat.run(cfg.seed, r, w, z, phi_hor);
                else
                    bulk.run(cfg.seed, r, phi_hor);
                for (std::size_t a = 0; a < nn; ++a) {
                    const double hor =
                        static_cast<double>(phi_hor[static_cast<std::size_t>(n_grid[a] - 1)]);
                    for (std::size_t b = 0; b < nx; ++b)
                        if (hor <= static_cast<double>(n_grid[a]) * x_grid[b])
                            ++out_p.hits[a * nx + b];
                }
            }
        });

    ConvergenceReport out;
    out.experiment = name;
    out.reps = cfg.reps;
    out.seed = cfg.seed;
    if (stationary) out.params = {{"w", fmt(w)}, {"z", fmt(z)}};
    std::vector<double> log_n, log_dist, unit_w;
    for (std::size_t a = 0; a < nn; ++a) {
        double sup = 0.0;
        for (std::size_t b = 0; b < nx; ++b) {
            ConvergencePoint pt;
            pt.n = n_grid[a];
            pt.x = x_grid[b];
            pt.p_hat = static_cast<double>(total.hits[a * nx + b]) / static_cast<double>(cfg.reps);
            pt.limit = stationary ? cif_limit_cdf(w, z, pt.x)
                                  : characteristic_zeta(pt.x, 1.0 - pt.x);
            pt.abs_err = std::fabs(pt.p_hat - pt.limit);
            sup = std::max(sup, pt.abs_err);
            out.points.push_back(pt);
        }
        out.n_grid.push_back(n_grid[a]);
        out.sup_distance.push_back(sup);
        log_n.push_back(std::log(static_cast<double>(n_grid[a])));
        log_dist.push_back(std::log(std::max(sup, 1e-12)));
        unit_w.push_back(1.0);
    }
    out.loglog = weighted_least_squares(log_n, log_dist, unit_w);
    out.wall_seconds = seconds_since(t0);
    return out;
}

}  // namespace

ConvergenceReport cif_experiment(std::span<const std::int64_t> n_grid,
                                 std::span<const double> x_grid, const LabConfig& cfg) {
    return interface_convergence("cif", false, 0.0, 0.0, n_grid, x_grid, cfg);
}

ConvergenceReport stationary_cif(double w, double z, std::span<const std::int64_t> n_grid,
                                 std::span<const double> x_grid, const LabConfig& cfg) {
    if (!(w > 0.0 && w <= 1.0) || !(z >= 0.0 && z < 1.0))
        throw std::invalid_argument("stationary_cif: need w in (0,1], z in [0,1)");
    return interface_convergence("cif-stationary", true, w, z, n_grid, x_grid, cfg);
}

McReport stationary_cif_equivalences(double w, double z, std::int64_t n,
                                     std::uint64_t realizations, std::uint64_t seed) {
    if (!(w > 0.0 && w <= 1.0) || !(z >= 0.0 && z < 1.0))
        throw std::invalid_argument("stationary_cif_equivalences: need w in (0,1], z in [0,1)");
    if (n < 2) throw std::invalid_argument("stationary_cif_equivalences: need n >= 2");
    const auto t0 = Clock::now();

    const std::int64_t M = n + 1;
    const Rect rect({0, 0}, {M, M});
    std::uint64_t exit_violations = 0, tree_violations = 0;
    std::string first_failure;

    for (std::uint64_t r = 0; r < realizations; ++r) {
        const NoiseField noise(seed, r, rect);
        const WeightField field = build_weights(noise, TwoParamRecipe{w, z});
        const LppTable table = last_passage_table(field, {0, 0}, rect);

        // interface through the increments of Ghat
        std::vector<Vertex> phi(static_cast<std::size_t>(n + 1));
        phi[0] = {0, 0};
        for (std::int64_t k = 0; k < n; ++k) {
            const Vertex c = phi[static_cast<std::size_t>(k)];
            phi[static_cast<std::size_t>(k + 1)] =
                (table(c.i + 1, c.j) <= table(c.i, c.j + 1)) ? c.offset(1, 0) : c.offset(0, 1);
        }
        const std::int64_t hor_n = phi[static_cast<std::size_t>(n)].i;

        for (std::int64_t k = 0; k <= n && exit_violations == 0; ++k) {
            const AxisExits za = axis_exits_from_table(table, k, n - k + 1);
            const AxisExits zb = axis_exits_from_table(table, k + 1, n - k);
            const bool lhs_lt = hor_n < k;
            const bool lhs_gt = hor_n > k;
            if (lhs_lt != (za.zhor > 0) || lhs_gt != (zb.zver > 0)) {
                ++exit_violations;
                first_failure = "replica " + std::to_string(r) + " k=" + std::to_string(k) +
                                " phi_hor=" + std::to_string(hor_n);
            }
        }

        // tree membership of the interface neighbors: Ghat_{1,0} vs Ghat_{0,1}
        const LppTable g10 = last_passage_table(field.values, {1, 0}, Rect({1, 0}, {M, M}));
        const LppTable g01 = last_passage_table(field.values, {0, 1}, Rect({0, 1}, {M, M}));
        auto in_hor_tree = [&](const Vertex& v) {
            const double a = (v.j >= 0 && v.i >= 1) ? g10(v) : kNegInf;
            const double b = (v.j >= 1) ? g01(v) : kNegInf;
            return a > b;
        };
        for (std::int64_t k = 1; k <= n && tree_violations == 0; ++k) {
            const Vertex c = phi[static_cast<std::size_t>(k)];
            const bool hor_ok = in_hor_tree({c.i + 1, c.j});
            const bool ver_ok = !in_hor_tree({c.i, c.j + 1});
            if (!hor_ok || !ver_ok) {
                ++tree_violations;
                if (first_failure.empty())
                    first_failure = "replica " + std::to_string(r) + " tree membership at step " +
                                    std::to_string(k);
            }
        }
    }

    McReport rep;
    rep.experiment = "cif-stationary-equivalences";
    rep.reps = realizations;
    rep.seed = seed;
    rep.params = {{"w", fmt(w)}, {"z", fmt(z)}, {"n", std::to_string(n)}};
    rep.checks.push_back({"exit_equivalences", exit_violations == 0,
                          exit_violations == 0 ? "ok" : first_failure});
    rep.checks.push_back({"tree_membership", tree_violations == 0,
                          tree_violations == 0 ? "ok" : first_failure});
    rep.wall_seconds = seconds_since(t0);
    return rep;
}

}  // namespace lpp
