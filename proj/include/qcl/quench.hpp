#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "qcl/model.hpp"
#include "qcl/mps.hpp"
#include "qcl/qcorr.hpp"

namespace qcl {

enum class Measure { concurrence, discord, mutual_information, classical_correlation };
enum class PairScheme { fixed_i_all_j, central_site_distance };
enum class SolverKind { freefermion, ed, mps };
enum class FailurePolicy { abort, skip_and_log };

struct QuenchPlan {
    ChainSpec spec;
    DisorderSpec dis;
    int n_realizations = 1;
    std::uint64_t master_seed = 0;
    Measure measure = Measure::discord;
    PairScheme pair_scheme = PairScheme::fixed_i_all_j;
    SolverKind solver = SolverKind::freefermion;
    int r_max = 0;    // 0: n/2 for periodic chains, margin-limited for central
    int margin = -1;  // central scheme only; <0 selects n/4
    int workers = 1;  // <=0: hardware concurrency
    FailurePolicy on_failure = FailurePolicy::abort;
    MeasuredParty measured_party = MeasuredParty::first;
    bool force_numeric_discord = false;  // default: closed form when valid
    DmrgConfig dmrg;

    /// Throws ConfigError on solver/model/scheme mismatches.
    void validate() const;

    /// The (i, j) pairs evaluated per realization, one per distance.
    std::vector<std::pair<int, int>> pairs() const;
};

/// Quenched average: the measure is evaluated per realization and then
/// averaged per distance (never the states themselves). std_error is the
/// sample standard deviation over realizations divided by sqrt(R).
struct QuenchSeries {
    std::vector<int> distances;
    Eigen::VectorXd mean;
    Eigen::VectorXd std_error;
    int n_realizations = 0;
    std::vector<std::int64_t> skipped_indices;  // only under skip_and_log
};

/// Runs the full pipeline. Deterministic for a fixed plan: realization k is
/// drawn from the (master_seed, k) stream and the reduction is a fixed-order
/// pairwise sum, so the worker count cannot change any output bit.
QuenchSeries run_quench(const QuenchPlan& plan);

/// Single deterministic run of the ordered chain (std_error = 0).
QuenchSeries ordered_series(const ChainSpec& spec, double j, double h, Measure measure,
                            const QuenchPlan& opts = {});

/// Value of `measure` for one two-site state.
double evaluate_measure(const TwoSiteState& state, Measure measure, MeasuredParty party,
                        bool force_numeric);

/// CSV with header "r,mean,std_error,n_realizations".
void write_series_csv(const QuenchSeries& series, std::ostream& out);

}  // namespace qcl
