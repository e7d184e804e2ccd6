#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "lpplab/experiment.hpp"
#include "lpplab/report.hpp"

using namespace lpp;

TEST_CASE("spec getters, grids and hash") {
    ExperimentSpec spec;
    spec.name = "verify-rains";
    spec.kv = {{"w", "0.55"}, {"m", "5"}, {"reps", "100"}};
    CHECK(spec.get_double("w") == 0.55);
    CHECK(spec.get_int("m") == 5);
    CHECK(spec.get_double("z", 0.45) == 0.45);
    CHECK_THROWS_AS(spec.get_double("missing"), UsageError);
    CHECK(spec.get_grid("s", "0.5:1.5:0.5") == std::vector<double>{0.5, 1.0, 1.5});
    CHECK(spec.get_grid("s", "1,2,4") == std::vector<double>{1, 2, 4});

    const std::uint64_t h1 = spec.hash();
    spec.kv["out"] = "/tmp/x.csv";  // artifact path stays out of the hash
    spec.kv["threads"] = "4";
    CHECK(spec.hash() == h1);
    spec.kv["w"] = "0.56";
    CHECK(spec.hash() != h1);
}

TEST_CASE("config file fills defaults, flags win") {
    const std::string path = "/tmp/lpplab_test_config.txt";
    {
        std::ofstream f(path);
        f << "# comment\nz = 0.45\nreps = 777\n\nbad line without equals\n";
    }
    ExperimentSpec spec;
    spec.kv["reps"] = "55";  // pre-set flag
    load_config_file(path, spec);
    CHECK(spec.kv.at("z") == "0.45");
    CHECK(spec.kv.at("reps") == "55");
    std::remove(path.c_str());
    CHECK_THROWS_AS(load_config_file("/nonexistent/cfg", spec), UsageError);
}

TEST_CASE("byte-identical reruns of the same spec") {
    auto run_once = [](const std::string& out) {
        ExperimentSpec spec;
        spec.name = "verify-rains";
        spec.kv = {{"w", "0.55"}, {"z", "0.45"}, {"m", "3"}, {"n", "3"},
                   {"reps", "2000"}, {"seed", "9"}, {"out", out}};
        std::ostringstream sink;
        CHECK(run_experiment(spec, sink) == kExitPass);
        std::ifstream f(out, std::ios::binary);
        std::ostringstream body;
        body << f.rdbuf();
        return body.str();
    };
    const std::string a = run_once("/tmp/lpplab_run_a.csv");
    const std::string b = run_once("/tmp/lpplab_run_b.csv");
    CHECK(a == b);
    CHECK(!a.empty());
    std::remove("/tmp/lpplab_run_a.csv");
    std::remove("/tmp/lpplab_run_b.csv");
}

TEST_CASE("thread count does not change estimates") {
    auto value_with_threads = [](const char* threads) {
        ExperimentSpec spec;
        spec.name = "verify-rains";
        spec.kv = {{"w", "0.6"}, {"z", "0.5"}, {"m", "4"}, {"n", "4"},
                   {"reps", "5000"}, {"seed", "12"}, {"threads", threads},
                   {"out", "/tmp/lpplab_thr.json"}, {"format", "json"}};
        std::ostringstream sink;
        run_experiment(spec, sink);
        std::ifstream f("/tmp/lpplab_thr.json");
        std::ostringstream body;
        body << f.rdbuf();
        return mc_report_from_json(body.str());
    };
    const McReport one = value_with_threads("1");
    const McReport two = value_with_threads("2");
    CHECK(one.find("exp_moment")->value == two.find("exp_moment")->value);
    CHECK(one.find("exp_moment")->stderr_ == two.find("exp_moment")->stderr_);
    std::remove("/tmp/lpplab_thr.json");
}

TEST_CASE("usage errors: unknown experiment, zero reps, bad grid") {
    std::ostringstream sink;
    ExperimentSpec spec;
    spec.name = "no-such-experiment";
    CHECK_THROWS_AS(run_experiment(spec, sink), UsageError);
    spec.name = "verify-rains";
    spec.kv = {{"w", "0.5"}, {"z", "0.5"}, {"m", "1"}, {"n", "1"}, {"reps", "0"}};
    CHECK_THROWS_AS(run_experiment(spec, sink), UsageError);
}

TEST_CASE("emit surfaces the path on I/O failure") {
    CHECK_THROWS_WITH_AS(emit("data", "/nonexistent-dir/x.csv"),
                         doctest::Contains("/nonexistent-dir/x.csv"), std::runtime_error);
}

TEST_CASE("json round trip preserves report bits") {
    McReport rep;
    rep.experiment = "demo";
    rep.reps = 42;
    rep.seed = 7;
    rep.spec_hash = 1234567890123ULL;
    rep.wall_seconds = 0.25;
    rep.params = {{"z", "0.5"}};
    rep.estimates.push_back({"value", 0.1 + 0.2, 1e-17, 0.3 - 3e-17, 0.3 + 3e-17});
    rep.checks.push_back({"ok", true, "detail"});
    const McReport back = mc_report_from_json(to_json(rep));
    CHECK(back.experiment == rep.experiment);
    CHECK(back.reps == rep.reps);
    CHECK(back.estimates[0].value == rep.estimates[0].value);  // bitwise
    CHECK(back.estimates[0].stderr_ == rep.estimates[0].stderr_);
    CHECK(back.checks[0].pass);
    CHECK(back.params.at("z") == "0.5");
}

TEST_CASE("csv schemas match the registry") {
    TailCurve tail;
    tail.experiment = "exit-tail";
    tail.points.push_back({0.5, 10, 0.25, 0.01, 0.22, 0.28});
    const std::string tail_csv = to_csv(tail);
    CHECK(tail_csv.find("s,k,p_hat,stderr,lo,hi\n") != std::string::npos);

    ConvergenceReport conv;
    conv.experiment = "cif";
    conv.points.push_back({100, 0.5, 0.49, 0.5, 0.01});
    const std::string conv_csv = to_csv(conv);
    CHECK(conv_csv.find("n,x,p_hat,limit,abs_err\n") != std::string::npos);

    McReport rep;
    rep.experiment = "demo";
    CHECK(to_csv(rep).find("key,value\n") != std::string::npos);
    // 17 significant digits round-trip
    CHECK(format_double(0.1) == "0.10000000000000001");
}
