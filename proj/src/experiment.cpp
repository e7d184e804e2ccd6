#include "lpplab/experiment.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include "lpplab/analytic.hpp"
#include "lpplab/bulk_lab.hpp"
#include "lpplab/stationary_lab.hpp"
#include "lpplab/tasep.hpp"

namespace lpp {

void ExperimentSpec::set_default(const std::string& key, const std::string& value) {
    kv.emplace(key, value);
}

std::string ExperimentSpec::get_str(const std::string& key,
                                    std::optional<std::string> fallback) const {
    auto it = kv.find(key);
    if (it != kv.end()) return it->second;
    if (fallback) return *fallback;
    throw UsageError("missing parameter '" + key + "' for experiment '" + name + "'");
}

double ExperimentSpec::get_double(const std::string& key, std::optional<double> fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) return *fallback;
        throw UsageError("missing parameter '" + key + "' for experiment '" + name + "'");
    }
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw UsageError("parameter '" + key + "' is not a number: " + it->second);
    }
}

std::int64_t ExperimentSpec::get_int(const std::string& key,
                                     std::optional<std::int64_t> fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) return *fallback;
        throw UsageError("missing parameter '" + key + "' for experiment '" + name + "'");
    }
    try {
        return std::stoll(it->second);
    } catch (const std::exception&) {
        throw UsageError("parameter '" + key + "' is not an integer: " + it->second);
    }
}

std::uint64_t ExperimentSpec::get_u64(const std::string& key,
                                      std::optional<std::uint64_t> fallback) const {
    auto it = kv.find(key);
    if (it == kv.end()) {
        if (fallback) return *fallback;
        throw UsageError("missing parameter '" + key + "' for experiment '" + name + "'");
    }
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw UsageError("parameter '" + key + "' is not an unsigned integer: " + it->second);
    }
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : text) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> out;
    if (text.find(':') != std::string::npos) {
        const auto parts = split(text, ':');
        if (parts.size() != 3) throw UsageError("grid range must be lo:hi:step, got " + text);
        const double lo = std::stod(parts[0]);
        const double hi = std::stod(parts[1]);
        const double step = std::stod(parts[2]);
        if (!(step > 0.0)) throw UsageError("grid step must be positive in " + text);
        for (double v = lo; v <= hi + 1e-12; v += step) out.push_back(v);
        return out;
    }
    for (const std::string& piece : split(text, ','))
        if (!piece.empty()) out.push_back(std::stod(piece));
    if (out.empty()) throw UsageError("empty grid: " + text);
    return out;
}

}  // namespace

std::vector<double> ExperimentSpec::get_grid(const std::string& key,
                                             const std::string& fallback) const {
    auto it = kv.find(key);
    return parse_grid(it != kv.end() ? it->second : fallback);
}

std::vector<std::int64_t> ExperimentSpec::get_int_grid(const std::string& key,
                                                       const std::string& fallback) const {
    std::vector<std::int64_t> out;
    for (double v : get_grid(key, fallback)) out.push_back(static_cast<std::int64_t>(v));
    return out;
}

std::uint64_t ExperimentSpec::hash() const {
    std::string canon = name;
    for (const auto& [k, v] : kv) {
        if (k == "out" || k == "format" || k == "threads") continue;  // not part of the result
        canon += ";" + k + "=" + v;
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void load_config_file(const std::string& path, ExperimentSpec& spec) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config file '" + path + "'");
    std::string line;
    while (std::getline(in, line)) {
        const auto hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line.erase(hash_pos);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string{} : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!key.empty()) spec.kv.emplace(key, value);  // flags keep precedence
    }
}

namespace {

LabConfig lab_config(const ExperimentSpec& spec, std::uint64_t default_reps) {
    LabConfig cfg;
    cfg.reps = spec.get_u64("reps", default_reps);
    cfg.seed = spec.get_u64("seed", 1);
    cfg.threads = static_cast<unsigned>(spec.get_u64("threads", 0));
    if (cfg.reps == 0) throw UsageError("reps must be positive");
    return cfg;
}

void write_artifacts(const ExperimentSpec& spec, const std::string& csv, const std::string& json) {
    const std::string format = spec.get_str("format", std::string("csv"));
    if (format != "csv" && format != "json") throw UsageError("format must be csv or json");
    if (spec.has("out")) {
        const std::string base = spec.get_str("out");
        emit(format == "csv" ? csv : json, base);
    }
}

template <class Report>
int finish(const ExperimentSpec& spec, Report&& rep, std::ostream& out) {
    rep.spec_hash = spec.hash();
    const std::string csv = to_csv(rep);
    const std::string json = to_json(rep);
    write_artifacts(spec, csv, json);
    if (!spec.has("out")) out << (spec.get_str("format", std::string("csv")) == "csv" ? csv : json);
    if constexpr (requires { rep.verdict(); }) {
        out << "[" << rep.experiment << "] verdict: " << verdict_name(rep.verdict()) << " ("
            << format_double(rep.wall_seconds) << " s)\n";
        return rep.verdict() == Verdict::Fail ? kExitFail : kExitPass;
    } else {
        out << "[" << rep.experiment << "] done (" << format_double(rep.wall_seconds) << " s)\n";
        return kExitPass;
    }
}

DownRightPath spec_path(const ExperimentSpec& spec, const std::string& fallback) {
    return parse_path(spec.get_str("path", fallback));
}

int run_shape(const ExperimentSpec& spec, std::ostream& out) {
    const double x = spec.get_double("x");
    const double y = spec.get_double("y");
    McReport rep;
    rep.experiment = "shape";
    rep.report_only = true;
    rep.seed = spec.get_u64("seed", 1);
    rep.params = {{"x", format_double(x)}, {"y", format_double(y)}};
    const double g = shape_gamma(x, y);
    const double zeta = characteristic_zeta(x, y);
    const double sigma = scale_sigma(x, y);
    rep.estimates.push_back({"gamma", g, 0, g, g});
    rep.estimates.push_back({"zeta", zeta, 0, zeta, zeta});
    rep.estimates.push_back({"sigma", sigma, 0, sigma, sigma});
    if (spec.has("z")) {
        const double z = spec.get_double("z");
        const double mv = mean_fn(z, x, y);
        rep.estimates.push_back({"mean", mv, 0, mv, mv});
        if (spec.has("w")) {
            const double w = spec.get_double("w");
            const double lv = lmgf(w, z, x, y);
            rep.estimates.push_back({"lmgf", lv, 0, lv, lv});
        }
    }
    return finish(spec, std::move(rep), out);
}

int run_simulate(const ExperimentSpec& spec, std::ostream& out) {
    const std::string what = spec.get_str("what", std::string("table"));
    const std::uint64_t seed = spec.get_u64("seed", 1);
    const std::uint64_t replica = spec.get_u64("replica", 0);
    const double w = spec.get_double("w", 0.5);
    const double z = spec.get_double("z", 0.5);
    const std::int64_t m = spec.get_int("m", 10);
    const std::int64_t n = spec.get_int("n", 10);
    std::ostringstream body;
    if (what == "table") {
        const Rect rect({0, 0}, {m, n});
        const NoiseField noise(seed, replica, rect);
        const LppTable table =
            last_passage_table(build_weights(noise, TwoParamRecipe{w, z}), {0, 0}, rect);
        body << "# Ghat^{w,z} table, rows j descending\n";
        for (std::int64_t j = n; j >= 0; --j) {
            for (std::int64_t i = 0; i <= m; ++i)
                body << (i ? "," : "") << format_double(table(i, j));
            body << "\n";
        }
    } else if (what == "geodesic") {
        const Rect rect({0, 0}, {m, n});
        const NoiseField noise(seed, replica, rect);
        const LppTable table =
            last_passage_table(build_weights(noise, TwoParamRecipe{w, z}), {0, 0}, rect);
        body << "i,j\n";
        for (const Vertex& v : geodesic(table, {m, n}).vertices)
            body << v.i << "," << v.j << "\n";
    } else if (what == "cif") {
        const std::int64_t steps = spec.get_int("steps", 100);
        const Rect rect({1, 1}, {steps + 1, steps + 1});
        const NoiseField noise(seed, replica, rect);
        const CifPath path = cif_simulate(build_weights(noise, BulkOnlyRecipe{}), steps);
        body << "n,i,j\n";
        for (std::size_t k = 0; k < path.points.size(); ++k)
            body << (k + 1) << "," << path.points[k].i << "," << path.points[k].j << "\n";
    } else if (what == "tasep") {
        body << trace_to_json(simulate_tasep(w, z, m, n, seed, replica));
    } else {
        throw UsageError("simulate: unknown --what '" + what + "'");
    }
    if (spec.has("out"))
        emit(body.str(), spec.get_str("out"));
    else
        out << body.str();
    out << "[simulate " << what << "] done\n";
    return kExitPass;
}

}  // namespace

int run_experiment(const ExperimentSpec& spec, std::ostream& out) {
    const std::string& name = spec.name;
    if (name == "shape") return run_shape(spec, out);
    if (name == "simulate") return run_simulate(spec, out);

    if (name == "verify-burke") {
        const LabConfig cfg = lab_config(spec, 100000);
        return finish(spec,
                      verify_burke(spec_path(spec, "0,3:DRRDDRRDRD@1"), spec.get_double("z", 0.5),
                                   cfg, spec.get_double("alpha", 0.01)),
                      out);
    }
    if (name == "verify-rains") {
        const LabConfig cfg = lab_config(spec, 1000000);
        return finish(spec,
                      verify_rains(spec.get_double("w"), spec.get_double("z"), spec.get_int("m"),
                                   spec.get_int("n"), cfg),
                      out);
    }
    if (name == "verify-variance") {
        const LabConfig cfg = lab_config(spec, 100000);
        return finish(spec,
                      verify_variance(spec.get_double("z"), spec.get_int("m"), spec.get_int("n"),
                                      cfg),
                      out);
    }
    if (name == "verify-stationarity") {
        const LabConfig cfg = lab_config(spec, 100000);
        std::vector<std::pair<std::int64_t, std::int64_t>> shifts;
        for (const std::string& piece : split(spec.get_str("shifts", std::string("0x0,2x1,5x5")), ',')) {
            const auto xy = split(piece, 'x');
            if (xy.size() != 2) throw UsageError("shifts must look like 0x0,2x1,5x5");
            shifts.emplace_back(std::stoll(xy[0]), std::stoll(xy[1]));
        }
        return finish(spec,
                      verify_stationarity(spec.get_double("z", 0.4), spec.get_int("m", 15),
                                          spec.get_int("n", 10), shifts, cfg,
                                          spec.get_double("alpha", 0.01)),
                      out);
    }
    if (name == "verify-exit-identity") {
        const LabConfig cfg = lab_config(spec, 100000);
        return finish(spec,
                      verify_exit_identity(spec.get_double("z", 0.5), spec.get_int("p", 3),
                                           spec.get_int("q", 2), spec.get_int("m", 20),
                                           spec.get_int("n", 20), cfg,
                                           spec.get_double("alpha", 0.01)),
                      out);
    }
    if (name == "verify-lemmas") {
        return finish(spec,
                      check_deterministic_lemmas(spec.get_u64("trials", 1000),
                                                 spec.get_u64("seed", 1)),
                      out);
    }
    if (name == "verify-tasep") {
        const double w = spec.get_double("w", 0.5);
        const double z = spec.get_double("z", 0.5);
        const std::int64_t n = spec.get_int("n", 30);
        const std::uint64_t seed = spec.get_u64("seed", 1);
        McReport rep = second_class_vs_cif(w, z, n, seed);
        // matrix agreement between the event loop and the DP table
        const TasepRun run = simulate_tasep(w, z, n, n, seed);
        const Grid<double> table = swap_times_from_lpp(w, z, n, n, seed);
        double max_gap = 0.0;
        for (std::int64_t j = 0; j <= n; ++j)
            for (std::int64_t i = 0; i <= n; ++i)
                max_gap = std::max(max_gap, std::fabs(run.swap_times(i, j) - table(i, j)));
        rep.checks.push_back({"swap_matrix_matches_lpp", max_gap <= 1e-9,
                              "max gap " + format_double(max_gap)});
        return finish(spec, std::move(rep), out);
    }
    if (name == "exit-tail") {
        const LabConfig cfg = lab_config(spec, 1000000);
        const std::int64_t m = spec.get_int("m", 200);
        const std::int64_t n = spec.get_int("n", 200);
        const double zeta = characteristic_zeta(static_cast<double>(m), static_cast<double>(n));
        const double w = spec.get_double("w", zeta);
        const double z = spec.get_double("z", zeta);
        const std::vector<double> sgrid = spec.get_grid("s-grid", "0.5:2.5:0.25");
        const DownRightPath nu =
            spec.has("path") ? parse_path(spec.get_str("path")) : l_shaped(0, 0, m, n);
        BoundaryRecipe recipe = TwoParamRecipe{w, z};
        if (spec.get_str("recipe", std::string("two-param")) == "path-induced")
            recipe = PathInducedRecipe{nu, z};
        ExitTailOptions opt(std::move(recipe), nu, m, n, sgrid);
        opt.minus_side = spec.get_str("side", std::string("plus")) == "minus";
        opt.strict_regime = spec.has("strict") && spec.get_str("strict") != "0";
        return finish(spec, exit_tail(opt, cfg), out);
    }
    if (name == "first-step") {
        const LabConfig cfg = lab_config(spec, 1000000);
        return finish(spec,
                      first_step_prob(spec.get_double("z"), spec.get_int("m", 400),
                                      spec.get_int("n", 400), cfg),
                      out);
    }
    if (name == "fluctuation") {
        const LabConfig cfg = lab_config(spec, 4000);
        if (spec.get_str("mode", std::string("midpoint")) == "midpoint") {
            const auto grid = spec.get_int_grid("n-grid", "250,500,1000,2000");
            return finish(spec, midpoint_fluctuation(grid, cfg), out);
        }
        const std::int64_t m = spec.get_int("m", 150);
        const std::int64_t n = spec.get_int("n", 150);
        const DownRightPath nu = parse_path(spec.get_str("path"));  // required in exits mode
        return finish(spec,
                      transversal_fluct(nu, m, n, spec.get_grid("s-grid", "0.5:2.5:0.5"),
                                        spec.get_str("side", std::string("plus")) == "minus", cfg),
                      out);
    }
    if (name == "busemann") {
        const LabConfig cfg = lab_config(spec, 100000);
        const DownRightPath nu = spec_path(spec, "1,1:R");
        const StepSets sets = path_steps(nu);
        std::vector<double> s = spec.has("s") ? parse_grid(spec.get_str("s")) : std::vector<double>{};
        std::vector<double> t = spec.has("t") ? parse_grid(spec.get_str("t")) : std::vector<double>{};
        if (s.empty() && !sets.right.empty()) s.assign(sets.right.size(), -1.0);
        if (t.empty() && !sets.down.empty()) t.assign(sets.down.size(), 1.0);
        std::vector<std::pair<std::int64_t, std::int64_t>> sizes;
        for (const std::string& piece :
             split(spec.get_str("sizes", std::string("100x100,400x400,1600x1600")), ',')) {
            const auto xy = split(piece, 'x');
            if (xy.size() != 2) throw UsageError("sizes must look like 100x100,400x400");
            sizes.emplace_back(std::stoll(xy[0]), std::stoll(xy[1]));
        }
        const IncrementKind kind = spec.get_str("kind", std::string("hor")) == "ver"
                                       ? IncrementKind::Ver
                                       : IncrementKind::Hor;
        return finish(spec,
                      busemann_experiment(nu, kind, s, t, sizes, cfg,
                                          spec.get_double("box-eps", 0.5)),
                      out);
    }
    if (name == "cif") {
        const LabConfig cfg = lab_config(spec, 10000);
        const auto ngrid = spec.get_int_grid("n-grid", "250,500,1000,2000,4000");
        const auto xgrid = spec.get_grid("x-grid", "0.1:0.9:0.05");
        return finish(spec, cif_experiment(ngrid, xgrid, cfg), out);
    }
    if (name == "cif-stationary") {
        const double w = spec.get_double("w", 0.5);
        const double z = spec.get_double("z", 0.5);
        if (spec.has("equivalences")) {
            return finish(spec,
                          stationary_cif_equivalences(w, z, spec.get_int("n", 50),
                                                      spec.get_u64("realizations", 1000),
                                                      spec.get_u64("seed", 1)),
                          out);
        }
        const LabConfig cfg = lab_config(spec, 10000);
        const auto ngrid = spec.get_int_grid("n-grid", "100,200,500");
        const auto xgrid = spec.get_grid("x-grid", "0.1:0.9:0.05");
        return finish(spec, stationary_cif(w, z, ngrid, xgrid, cfg), out);
    }
    throw UsageError("unknown experiment '" + name + "'");
}

}  // namespace lpp
