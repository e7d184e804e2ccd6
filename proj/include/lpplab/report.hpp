#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lpplab/stats.hpp"

namespace lpp {

enum class Verdict { Pass, Fail, ReportOnly };

std::string verdict_name(Verdict v);

struct Estimate {
    std::string name;
    double value = 0.0;
    double stderr_ = 0.0;
    double lo = 0.0;  // 3-sigma interval
    double hi = 0.0;

    static Estimate from_acc(std::string name, const MeanAcc& acc);
};

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Common result envelope for verification experiments.
struct McReport {
    std::string experiment;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
    std::vector<Estimate> estimates;
    std::vector<Check> checks;
    bool report_only = false;
    double wall_seconds = 0.0;
    std::uint64_t spec_hash = 0;

    Verdict verdict() const;
    bool all_checks_pass() const;
    const Estimate* find(const std::string& name) const;
    const Check* find_check(const std::string& name) const;
};

struct TailPoint {
    double s = 0.0;
    std::int64_t k = 0;  // floor(s (m+n)^{2/3})
    double p_hat = 0.0;
    double stderr_ = 0.0;
    double lo = 0.0;  // Wilson score interval
    double hi = 0.0;
};

struct TailCurve {
    std::string experiment;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
    std::vector<TailPoint> points;
    LineFit fit;  // -ln p on s^3 over the usable window
    double wall_seconds = 0.0;
    std::uint64_t spec_hash = 0;
};

struct ConvergencePoint {
    std::int64_t n = 0;
    double x = 0.0;
    double p_hat = 0.0;
    double limit = 0.0;
    double abs_err = 0.0;
};

struct ConvergenceReport {
    std::string experiment;
    std::uint64_t reps = 0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> params;
    std::vector<ConvergencePoint> points;
    std::vector<std::int64_t> n_grid;
    std::vector<double> sup_distance;  // per n: sup_x |p_hat - limit|
    LineFit loglog;                    // log distance on log n
    double wall_seconds = 0.0;
    std::uint64_t spec_hash = 0;
};

// Serialization. CSV columns per schema registry:
//   report:      key,value
//   tail:        s,k,p_hat,stderr,lo,hi
//   convergence: n,x,p_hat,limit,abs_err
// Floats carry 17 significant digits so numeric round-trips preserve bits.
// The seed and spec hash ride along as comment lines; wall time stays out
// of the CSV so identical runs emit identical bytes.
std::string to_csv(const McReport& r);
std::string to_csv(const TailCurve& r);
std::string to_csv(const ConvergenceReport& r);

std::string to_json(const McReport& r);
std::string to_json(const TailCurve& r);
std::string to_json(const ConvergenceReport& r);

McReport mc_report_from_json(const std::string& text);

enum class EmitFormat { Csv, Json };

// Writes the serialized report; I/O failures surface with the path.
void emit(const std::string& serialized, const std::string& path);

std::string format_double(double v);  // %.17g

}  // namespace lpp
