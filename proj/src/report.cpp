#include "lpplab/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lpp {

using nlohmann::json;

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Pass: return "pass";
        case Verdict::Fail: return "fail";
        case Verdict::ReportOnly: return "report-only";
    }
    return "?";
}

Estimate Estimate::from_acc(std::string name, const MeanAcc& acc) {
    Estimate e;
    e.name = std::move(name);
    e.value = acc.mean();
    e.stderr_ = acc.stderr_of_mean();
    e.lo = e.value - 3.0 * e.stderr_;
    e.hi = e.value + 3.0 * e.stderr_;
    return e;
}

bool McReport::all_checks_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

Verdict McReport::verdict() const {
    if (report_only) return Verdict::ReportOnly;
    return all_checks_pass() ? Verdict::Pass : Verdict::Fail;
}

const Estimate* McReport::find(const std::string& name) const {
    for (const Estimate& e : estimates)
        if (e.name == name) return &e;
    return nullptr;
}

const Check* McReport::find_check(const std::string& name) const {
    for (const Check& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

std::string header_comment(const std::string& experiment, std::uint64_t seed,
                           std::uint64_t spec_hash) {
    std::ostringstream os;
    os << "# experiment=" << experiment << " seed=" << seed << " spec=" << std::hex << spec_hash
       << std::dec << "\n";
    return os.str();
}

}  // namespace

std::string to_csv(const McReport& r) {
    std::ostringstream os;
    os << header_comment(r.experiment, r.seed, r.spec_hash);
    os << "key,value\n";
    os << "experiment," << r.experiment << "\n";
    os << "reps," << r.reps << "\n";
    os << "seed," << r.seed << "\n";
    os << "verdict," << verdict_name(r.verdict()) << "\n";
    for (const auto& [k, v] : r.params) os << "param." << k << "," << v << "\n";
    for (const Estimate& e : r.estimates) {
        os << e.name << "," << format_double(e.value) << "\n";
        os << e.name << ".stderr," << format_double(e.stderr_) << "\n";
        os << e.name << ".lo," << format_double(e.lo) << "\n";
        os << e.name << ".hi," << format_double(e.hi) << "\n";
    }
    for (const Check& c : r.checks)
        os << "check." << c.name << "," << (c.pass ? "pass" : "fail") << "\n";
    return os.str();
}

std::string to_csv(const TailCurve& r) {
    std::ostringstream os;
    os << header_comment(r.experiment, r.seed, r.spec_hash);
    os << "s,k,p_hat,stderr,lo,hi\n";
    for (const TailPoint& p : r.points)
        os << format_double(p.s) << "," << p.k << "," << format_double(p.p_hat) << ","
           << format_double(p.stderr_) << "," << format_double(p.lo) << ","
           << format_double(p.hi) << "\n";
    return os.str();
}

std::string to_csv(const ConvergenceReport& r) {
    std::ostringstream os;
    os << header_comment(r.experiment, r.seed, r.spec_hash);
    os << "n,x,p_hat,limit,abs_err\n";
    for (const ConvergencePoint& p : r.points)
        os << p.n << "," << format_double(p.x) << "," << format_double(p.p_hat) << ","
           << format_double(p.limit) << "," << format_double(p.abs_err) << "\n";
    return os.str();
}

namespace {

json params_json(const std::map<std::string, std::string>& params) {
    json j = json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j;
}

json fit_json(const LineFit& fit) {
    return json{{"present", fit.present},
                {"slope", fit.slope},
                {"intercept", fit.intercept},
                {"r2", fit.r2}};
}

}  // namespace

std::string to_json(const McReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["spec_hash"] = r.spec_hash;
    j["wall_seconds"] = r.wall_seconds;
    j["verdict"] = verdict_name(r.verdict());
    j["params"] = params_json(r.params);
    j["estimates"] = json::array();
    for (const Estimate& e : r.estimates)
        j["estimates"].push_back(json{{"name", e.name},
                                      {"value", e.value},
                                      {"stderr", e.stderr_},
                                      {"lo", e.lo},
                                      {"hi", e.hi}});
    j["checks"] = json::array();
    for (const Check& c : r.checks)
        j["checks"].push_back(json{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    j["report_only"] = r.report_only;
    return j.dump(2) + "\n";
}

McReport mc_report_from_json(const std::string& text) {
    const json j = json::parse(text);
    McReport r;
    r.experiment = j.at("experiment").get<std::string>();
    r.reps = j.at("reps").get<std::uint64_t>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.spec_hash = j.at("spec_hash").get<std::uint64_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.report_only = j.at("report_only").get<bool>();
    for (const auto& [k, v] : j.at("params").items()) r.params[k] = v.get<std::string>();
    for (const auto& e : j.at("estimates"))
        r.estimates.push_back(Estimate{e.at("name").get<std::string>(),
                                       e.at("value").get<double>(), e.at("stderr").get<double>(),
                                       e.at("lo").get<double>(), e.at("hi").get<double>()});
    for (const auto& c : j.at("checks"))
        r.checks.push_back(Check{c.at("name").get<std::string>(), c.at("pass").get<bool>(),
                                 c.at("detail").get<std::string>()});
    return r;
}

std::string to_json(const TailCurve& r) {
    json j;
    j["experiment"] = r.experiment;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["spec_hash"] = r.spec_hash;
    j["wall_seconds"] = r.wall_seconds;
    j["params"] = params_json(r.params);
    j["fit"] = fit_json(r.fit);
    j["points"] = json::array();
    for (const TailPoint& p : r.points)
        j["points"].push_back(json{{"s", p.s},
                                   {"k", p.k},
                                   {"p_hat", p.p_hat},
                                   {"stderr", p.stderr_},
                                   {"lo", p.lo},
                                   {"hi", p.hi}});
    return j.dump(2) + "\n";
}

std::string to_json(const ConvergenceReport& r) {
    json j;
    j["experiment"] = r.experiment;
    j["reps"] = r.reps;
    j["seed"] = r.seed;
    j["spec_hash"] = r.spec_hash;
    j["wall_seconds"] = r.wall_seconds;
    j["params"] = params_json(r.params);
    j["n_grid"] = r.n_grid;
    j["sup_distance"] = r.sup_distance;
    j["loglog"] = fit_json(r.loglog);
    j["points"] = json::array();
    for (const ConvergencePoint& p : r.points)
        j["points"].push_back(json{{"n", p.n},
                                   {"x", p.x},
                                   {"p_hat", p.p_hat},
                                   {"limit", p.limit},
                                   {"abs_err", p.abs_err}});
    return j.dump(2) + "\n";
}

void emit(const std::string& serialized, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    out << serialized;
    if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace lpp
