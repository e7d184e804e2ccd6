// Command-line front end: experiment verbs over the lpplab library.
//
//   lpplab shape --x 1 --y 1
//   lpplab verify rains --w 0.55 --z 0.45 --m 5 --n 5 --reps 1000000
//   lpplab exit-tail --m 200 --n 200 --reps 1000000 --out tail.csv
//
// Exit codes: 0 pass, 1 fail, 2 usage error, 3 runtime error.

#include <iostream>

#include <CLI11.hpp>

#include "lpplab/experiment.hpp"

namespace {

struct FlagSet {
    CLI::App* app;
    lpp::ExperimentSpec* spec;

    void str(const std::string& flag, const std::string& key, const std::string& help) {
        lpp::ExperimentSpec* s = spec;
        app->add_option_function<std::string>(
               flag, [s, key](const std::string& v) { s->kv[key] = v; }, help)
            ->expected(1);
    }
};

void add_common_flags(CLI::App* cmd, lpp::ExperimentSpec* spec, std::string* config_path) {
    FlagSet fs{cmd, spec};
    fs.str("--seed", "seed", "master seed");
    fs.str("--reps", "reps", "replica count");
    fs.str("--threads", "threads", "worker threads (0 = hardware)");
    fs.str("--out", "out", "output artifact path");
    fs.str("--format", "format", "csv|json");
    cmd->add_option("--config", *config_path, "flat key=value config file (flags win)");
}

void add_model_flags(CLI::App* cmd, lpp::ExperimentSpec* spec) {
    FlagSet fs{cmd, spec};
    fs.str("--w", "w", "horizontal boundary rate w");
    fs.str("--z", "z", "parameter z");
    fs.str("--m", "m", "horizontal size");
    fs.str("--n", "n", "vertical size");
    fs.str("--path", "path", "down-right path, e.g. 0,3:DRRD@2");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo laboratory for exponential corner-growth LPP"};
    app.require_subcommand(1);

    lpp::ExperimentSpec spec;
    std::string config_path;

    auto make = [&](CLI::App* parent, const std::string& verb, const std::string& name,
                    const std::string& help) {
        CLI::App* cmd = parent->add_subcommand(verb, help);
        add_common_flags(cmd, &spec, &config_path);
        add_model_flags(cmd, &spec);
        cmd->callback([&spec, name] { spec.name = name; });
        return cmd;
    };

    {
        CLI::App* shape = make(&app, "shape", "shape", "closed-form shape quantities");
        FlagSet fs{shape, &spec};
        fs.str("--x", "x", "direction x");
        fs.str("--y", "y", "direction y");
    }
    {
        CLI::App* sim = make(&app, "simulate", "simulate", "single-realization artifacts");
        FlagSet fs{sim, &spec};
        fs.str("--what", "what", "table|geodesic|cif|tasep");
        fs.str("--steps", "steps", "interface steps for --what cif");
        fs.str("--replica", "replica", "replica index");
    }
    {
        CLI::App* verify = app.add_subcommand("verify", "statistical and exact verifications");
        verify->require_subcommand(1);
        {
            CLI::App* cmd = make(verify, "burke", "verify-burke", "Burke increment property");
            FlagSet fs{cmd, &spec};
            fs.str("--alpha", "alpha", "KS significance level");
        }
        make(verify, "rains", "verify-rains", "exponential moment identity");
        make(verify, "variance", "verify-variance", "variance identity, weight-sum form");
        {
            CLI::App* cmd =
                make(verify, "stationarity", "verify-stationarity", "increment stationarity");
            FlagSet fs{cmd, &spec};
            fs.str("--shifts", "shifts", "shift list, e.g. 0x0,2x1,5x5");
            fs.str("--alpha", "alpha", "KS significance level");
        }
        {
            CLI::App* cmd = make(verify, "exit-identity", "verify-exit-identity",
                                 "path-to-point vs axis exit distribution");
            FlagSet fs{cmd, &spec};
            fs.str("--p", "p", "L-path base column");
            fs.str("--q", "q", "L-path base row");
            fs.str("--alpha", "alpha", "KS significance level");
        }
        {
            CLI::App* cmd =
                make(verify, "lemmas", "verify-lemmas", "deterministic lemma suite");
            FlagSet fs{cmd, &spec};
            fs.str("--trials", "trials", "random instances");
        }
        make(verify, "tasep", "verify-tasep", "TASEP coupling checks");
    }
    {
        CLI::App* cmd = make(&app, "exit-tail", "exit-tail", "exit-point exceedance curve");
        FlagSet fs{cmd, &spec};
        fs.str("--s-grid", "s-grid", "grid, e.g. 0.5:2.5:0.25 or 1,2,3");
        fs.str("--side", "side", "plus|minus");
        fs.str("--strict", "strict", "enforce the theorem parameter window");
        fs.str("--recipe", "recipe", "two-param|path-induced");
    }
    make(&app, "first-step", "first-step", "first-step probabilities and refined rate");
    {
        CLI::App* cmd = make(&app, "fluctuation", "fluctuation", "bulk transversal fluctuations");
        FlagSet fs{cmd, &spec};
        fs.str("--mode", "mode", "midpoint|exits");
        fs.str("--n-grid", "n-grid", "sizes for midpoint mode");
        fs.str("--s-grid", "s-grid", "s grid for exits mode");
        fs.str("--side", "side", "plus|minus");
    }
    {
        CLI::App* cmd = make(&app, "busemann", "busemann", "pre-limit Busemann CDFs");
        FlagSet fs{cmd, &spec};
        fs.str("--kind", "kind", "hor|ver");
        fs.str("--s", "s", "thresholds for right edges");
        fs.str("--t", "t", "thresholds for down edges");
        fs.str("--sizes", "sizes", "ladder, e.g. 100x100,400x400");
        fs.str("--box-eps", "box-eps", "box constraint constant");
    }
    {
        CLI::App* cmd = make(&app, "cif", "cif", "bulk competition interface limit law");
        FlagSet fs{cmd, &spec};
        fs.str("--n-grid", "n-grid", "interface step grid");
        fs.str("--x-grid", "x-grid", "direction grid");
    }
    {
        CLI::App* cmd =
            make(&app, "cif-stationary", "cif-stationary", "stationary competition interface");
        FlagSet fs{cmd, &spec};
        fs.str("--n-grid", "n-grid", "interface step grid");
        fs.str("--x-grid", "x-grid", "direction grid");
        fs.str("--equivalences", "equivalences", "run the per-realization equivalence check");
        fs.str("--realizations", "realizations", "realizations for the equivalence check");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : lpp::kExitUsage;
    }

    try {
        if (!config_path.empty()) lpp::load_config_file(config_path, spec);
        return lpp::run_experiment(spec, std::cout);
    } catch (const lpp::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return lpp::kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return lpp::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "runtime error: " << e.what() << "\n";
        return lpp::kExitRuntime;
    }
}
