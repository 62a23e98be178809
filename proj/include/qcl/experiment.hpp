#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qcl/fitting.hpp"
#include "qcl/quench.hpp"

namespace qcl {

enum class FitModelChoice { none, automatic, pure_exponential, offset_exponential };

/// Declarative description of one run (one curve): model, disorder, measure,
/// pair scheme, realization count, seed, solver and fit settings. Serializes
/// to a flat "key = value" document with a versioned schema; unknown keys are
/// rejected on parse.
struct ExperimentConfig {
    int schema_version = 1;
    std::string name = "run";
    ChainSpec spec;
    DisorderSpec dis;
    int realizations = 1;
    std::uint64_t master_seed = 1;
    Measure measure = Measure::discord;
    PairScheme pair_scheme = PairScheme::fixed_i_all_j;
    SolverKind solver = SolverKind::freefermion;
    int r_max = 0;
    int margin = -1;
    int workers = 1;
    MeasuredParty measured_party = MeasuredParty::first;
    bool force_numeric_discord = false;
    FailurePolicy failure_policy = FailurePolicy::abort;
    FitModelChoice fit_model = FitModelChoice::automatic;
    double fit_zero_threshold = 1e-6;
    DmrgConfig dmrg;
    std::string out_dir = "out";

    QuenchPlan to_plan() const;
};

/// Parses the key-value document; throws ConfigError with the offending key
/// or line for unknown keys, bad values, or a wrong schema version.
ExperimentConfig parse_config(const std::string& text);

/// Canonical serialization (fixed key order, shortest round-trip numbers);
/// parse(serialize(c)) == c and serialize is a fixed point.
std::string serialize_config(const ExperimentConfig& config);

/// Schema and cross-field checks without running anything; empty means valid.
std::vector<std::string> validate_config(const ExperimentConfig& config);

struct RunArtifacts {
    std::string csv_path;
    std::string meta_path;
    std::string plot_path;
    std::string fit_path;  // empty when no fit was requested/possible
};

struct RunResult {
    QuenchSeries series;
    std::optional<DecayFit> fit;
    RunArtifacts artifacts;
    double wall_seconds = 0.0;
};

/// Executes the pipeline for one config and writes the artifacts under
/// config.out_dir: <name>.csv, <name>.meta.json, <name>.dat and, when a fit
/// model applies, <name>.fit.json.
RunResult run_experiment(const ExperimentConfig& config);

/// Named presets reproducing the paper-style figures and the discord-length
/// table; each preset expands to one config per curve.
std::vector<std::string> preset_names();
std::vector<ExperimentConfig> expand_preset(const std::string& name);

struct PresetOverrides {
    std::optional<std::uint64_t> master_seed;
    std::optional<int> realizations;
    std::optional<int> workers;
    std::optional<std::string> out_dir;
};

/// Runs every curve of a preset (with optional overrides applied first) and
/// writes per-preset summaries (scaling fit for the size-scan preset, the
/// discord-length table for table1).
std::vector<RunResult> run_preset(const std::string& name, const PresetOverrides& overrides);

}  // namespace qcl
