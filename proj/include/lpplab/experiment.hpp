#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lpp {

// Exit codes shared by the CLI and the dispatcher.
inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitRuntime = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Fully determines a run given the code version: experiment name plus flat
// key-value parameters. The config file uses the same `key = value` lines;
// command-line flags override file entries.
struct ExperimentSpec {
    std::string name;
    std::map<std::string, std::string> kv;

    bool has(const std::string& key) const { return kv.count(key) != 0; }
    void set_default(const std::string& key, const std::string& value);

    std::string get_str(const std::string& key, std::optional<std::string> fallback = {}) const;
    double get_double(const std::string& key, std::optional<double> fallback = {}) const;
    std::int64_t get_int(const std::string& key, std::optional<std::int64_t> fallback = {}) const;
    std::uint64_t get_u64(const std::string& key, std::optional<std::uint64_t> fallback = {}) const;
    // "a,b,c" or "lo:hi:step"
    std::vector<double> get_grid(const std::string& key, const std::string& fallback) const;
    std::vector<std::int64_t> get_int_grid(const std::string& key,
                                           const std::string& fallback) const;

    // FNV-1a over the canonical "name;key=value;..." form.
    std::uint64_t hash() const;
};

// Merges `key = value` lines into spec.kv without overriding present keys.
void load_config_file(const std::string& path, ExperimentSpec& spec);

// Dispatches to the named experiment, writes artifacts per the out/format
// keys, prints a short summary, and returns the exit code.
int run_experiment(const ExperimentSpec& spec, std::ostream& out);

}  // namespace lpp
