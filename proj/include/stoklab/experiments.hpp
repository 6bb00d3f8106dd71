#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace stoklab {

/// One verification row of an experiment report. The pass flag is always
/// recomputable as |estimate - oracle| <= tolerance.
struct ReportRow {
    std::string check_id;
    double estimate = 0.0;
    double stderr_ = 0.0;
    double oracle = 0.0;
    std::string oracle_source;
    double tolerance = 0.0;
    bool pass = false;
    double seconds = 0.0;
};

struct Report {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<ReportRow> rows;

    bool all_pass() const;
    /// CSV with the fixed column set; floats use 17 significant digits.
    /// redact_timing zeroes the seconds column (golden-file diffs).
    std::string to_csv(bool redact_timing = false) const;
    std::string to_json(bool redact_timing = false) const;
};

using ParamMap = std::map<std::string, double>;

struct ExperimentInfo {
    std::string name;
    std::string description;
    ParamMap defaults;
};

/// Registry of runnable verifications, one per named experiment.
const std::vector<ExperimentInfo>& list_experiments();

/// Runs the named experiment. Unknown names or override keys raise
/// invalid_argument before any computation. Deterministic given
/// (name, seed, overrides).
Report run_experiment(const std::string& name, std::uint64_t seed, const ParamMap& overrides);

} // namespace stoklab
