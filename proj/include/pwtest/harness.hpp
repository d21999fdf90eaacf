#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "pwtest/instances.hpp"
#include "pwtest/params.hpp"
#include "pwtest/report.hpp"
#include "pwtest/testers.hpp"

namespace pwtest {

/// Invalid configuration; the CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class TesterKind { ActiveGeneral, ConstantActive, ConstantPassive, LearnValidate, PolyExact };

std::string_view to_string(TesterKind t) noexcept;
std::optional<TesterKind> parse_tester_kind(std::string_view s) noexcept;

struct RunConfig {
    TesterKind tester = TesterKind::ConstantPassive;
    std::string base = "constants";
    int k = 200;
    double eps = 0.4;
    TesterConstants constants;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    /// Instance family; its base, k and eps are taken from the fields above.
    InstanceSpec instance;
    QueryCounting query_counting = QueryCounting::Distinct;
    /// 0 means one worker per hardware thread.
    unsigned workers = 0;
    /// Where run files go; empty writes nothing. PWTEST_OUTPUT_DIR overrides.
    std::string output_dir;
    /// File stem for <name>.csv and <name>_summary.json.
    std::string name = "run";
};

/// The tester a config resolves to and its exact budgets. Noise-sensitivity
/// testers fall back to learn-then-validate when k < 80/eps.
struct RunPlan {
    TesterKind requested = TesterKind::ConstantPassive;
    TesterKind effective = TesterKind::ConstantPassive;
    std::size_t s = 0;
    std::size_t q = 0;
    double threshold = 0.0;
    std::optional<ActiveParams> active;
    std::optional<ConstantParams> constant;
    std::optional<LearnValidateParams> learn_validate;
    std::optional<PolyExactParams> poly_exact;
};

/// Throws ConfigError on an invalid combination.
RunPlan plan_run(const RunConfig& config);

struct TrialRecord {
    std::size_t trial = 0;
    TesterReport report;
};

struct RunSummary {
    std::string tester;
    std::string effective_tester;
    std::size_t trials = 0;
    std::size_t accepts = 0;
    std::size_t rejects = 0;
    std::size_t failures = 0;
    /// Over trials without a failure event.
    double accept_rate = 0.0;
    double reject_rate = 0.0;
    /// Over all trials.
    double failure_rate = 0.0;
    double mean_statistic = 0.0;
    double threshold = 0.0;
    std::size_t s = 0;
    std::size_t q = 0;
    std::size_t max_samples_used = 0;
    std::size_t max_queries_used = 0;
    double wall_seconds = 0.0;
};

struct RunResult {
    RunSummary summary;
    std::vector<TrialRecord> records;
};

/// Runs config.trials independent trials. Trial t uses the stream
/// substream_seed(seed, t): its instance from sub-stream 1 and its oracle
/// from sub-stream 2, so results never depend on the worker count. Every
/// trial is checked against the declared budgets. Writes the CSV and the
/// JSON summary when an output directory is set.
RunResult run(const RunConfig& config);

/// "trial,verdict,statistic,threshold,samples,queries,failure"
std::string_view csv_header() noexcept;
std::string csv_row(const TrialRecord& r);
/// Header plus one row per record, LF line ends.
std::string to_csv(const std::vector<TrialRecord>& records);

nlohmann::json to_json(const RunSummary& s);
nlohmann::json to_json(const RunPlan& p);

/// Reads a config object; unknown keys and bad values throw ConfigError.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Formats a double so it reads back to the same value.
std::string format_double(double v);

} // namespace pwtest
