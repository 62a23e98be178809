#include "qcl/quench.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>

#include "qcl/common.hpp"
#include "qcl/ed.hpp"
#include "qcl/freefermion.hpp"

namespace qcl {

void QuenchPlan::validate() const {
    spec.validate();
    if (n_realizations < 1) throw ConfigError("n_realizations must be >= 1");
    if (dis.std_dev < 0.0) throw ConfigError("std_dev must be >= 0");
    switch (solver) {
        case SolverKind::freefermion:
            if (spec.kind != ModelKind::xy)
                throw ConfigError("freefermion solver requires the xy model");
            break;
        case SolverKind::mps:
            if (spec.boundary != Boundary::open)
                throw ConfigError("mps solver requires open boundary");
            break;
        case SolverKind::ed:
            if (spec.n_sites > 14) throw ConfigError("ed solver supports n_sites <= 14");
            break;
    }
    if (pair_scheme == PairScheme::central_site_distance && spec.boundary != Boundary::open)
        throw ConfigError("central_site_distance pairs require open boundary");
    if (pairs().empty()) throw ConfigError("no valid site pairs for this plan");
}

std::vector<std::pair<int, int>> QuenchPlan::pairs() const {
    const int n = spec.n_sites;
    std::vector<std::pair<int, int>> out;
    if (pair_scheme == PairScheme::fixed_i_all_j) {
        int rmax = r_max;
        if (rmax <= 0) rmax = (spec.boundary == Boundary::periodic) ? n / 2 : n - 1;
        rmax = std::min(rmax, n - 1);
        for (int r = 1; r <= rmax; ++r) out.emplace_back(0, r);
    } else {
        // Central site is the (n/2)-th counted from 1.
        const int i = n / 2 - 1;
        const int m = (margin < 0) ? n / 4 : margin;
        int rmax = (r_max <= 0) ? n : r_max;
        for (int r = 1; r <= rmax; ++r) {
            const int j = i + r;
            if (j >= n || std::min(i, n - 1 - j) < m) break;
            out.emplace_back(i, j);
        }
    }
    return out;
}

double evaluate_measure(const TwoSiteState& state, Measure measure, MeasuredParty party,
                        bool force_numeric) {
    switch (measure) {
        case Measure::concurrence:
            return concurrence(state);
        case Measure::mutual_information:
            return mutual_information(state);
        case Measure::discord:
        case Measure::classical_correlation: {
            DiscordResult res;
            if (force_numeric) {
                DiscordOptions opts;
                opts.measured_party = party;
                res = discord_numeric(state, opts);
            } else {
                res = discord_auto(state, party);
            }
            return measure == Measure::discord ? res.discord : res.classical_correlation;
        }
    }
    throw ConfigError("unknown measure");
}

namespace {

/// Evaluates all pair measures of one realization.
Eigen::VectorXd measure_realization(const QuenchPlan& plan, const Realization& real,
                                    const std::vector<std::pair<int, int>>& pairs) {
    const auto n_pairs = static_cast<Eigen::Index>(pairs.size());
    Eigen::VectorXd values(n_pairs);

    const auto eval = [&](const TwoSiteState& st) {
        return evaluate_measure(st, plan.measure, plan.measured_party, plan.force_numeric_discord);
    };

    switch (plan.solver) {
        case SolverKind::freefermion: {
            const GroundSolution sol = solve_ground(build_quadratic_form(real));
            const CorrelatorTable table = correlators(sol, pairs);
            for (Eigen::Index p = 0; p < n_pairs; ++p)
                values(p) = eval(two_site_rdm(table.entries[static_cast<std::size_t>(p)]));
            break;
        }
        case SolverKind::ed: {
            const ManyBodyState st = ed_ground_state(real);
            for (Eigen::Index p = 0; p < n_pairs; ++p) {
                const auto& [i, j] = pairs[static_cast<std::size_t>(p)];
                values(p) = eval(ed_two_site_rdm(st, i, j));
            }
            break;
        }
        case SolverKind::mps: {
            DmrgConfig cfg = plan.dmrg;
            // Seed the random-init stream from the realization so reruns match.
            cfg.init_seed = plan.master_seed ^ (0x9E3779B97F4A7C15ULL *
                                               (static_cast<std::uint64_t>(real.realization_index) + 1));
            const MpsState st = dmrg_ground_state(real, cfg);
            const int m = (plan.margin < 0) ? real.spec.n_sites / 4 : plan.margin;
            for (Eigen::Index p = 0; p < n_pairs; ++p) {
                const auto& [i, j] = pairs[static_cast<std::size_t>(p)];
                values(p) = eval(mps_two_site_rdm(st, i, j, m));
            }
            break;
        }
    }
    return values;
}

}  // namespace

QuenchSeries run_quench(const QuenchPlan& plan) {
    plan.validate();
    const auto pairs = plan.pairs();
    const auto n_pairs = static_cast<Eigen::Index>(pairs.size());
    const int n_real = plan.n_realizations;

    // One value slot per (realization, distance); slots are filled by index,
    // so the parallel schedule cannot influence the reduction below.
    Eigen::MatrixXd values(n_real, n_pairs);
    std::vector<std::uint8_t> ok(static_cast<std::size_t>(n_real), 0);

    parallel_for(
        static_cast<std::size_t>(n_real),
        [&](std::size_t k) {
            const Realization real = sample_realization(plan.spec, plan.dis, plan.master_seed,
                                                        static_cast<std::int64_t>(k));
            try {
                values.row(static_cast<Eigen::Index>(k)) =
                    measure_realization(plan, real, pairs).transpose();
                ok[k] = 1;
            } catch (const std::exception& e) {
                if (plan.on_failure == FailurePolicy::abort)
                    throw SolverError("realization " + std::to_string(k) + ": " + e.what());
                ok[k] = 0;  // skip_and_log: recorded below
            }
        },
        plan.workers);

    QuenchSeries series;
    series.n_realizations = n_real;
    for (const auto& [i, j] : pairs) series.distances.push_back(j - i);
    series.mean.resize(n_pairs);
    series.std_error.resize(n_pairs);
    for (std::size_t k = 0; k < ok.size(); ++k)
        if (!ok[k]) series.skipped_indices.push_back(static_cast<std::int64_t>(k));

    const auto n_valid = static_cast<Eigen::Index>(ok.size() - series.skipped_indices.size());
    if (n_valid == 0) throw SolverError("all realizations failed");

    std::vector<double> column;
    column.reserve(static_cast<std::size_t>(n_valid));
    for (Eigen::Index p = 0; p < n_pairs; ++p) {
        column.clear();
        for (int k = 0; k < n_real; ++k)
            if (ok[static_cast<std::size_t>(k)]) column.push_back(values(k, p));
        const double mean = pairwise_sum(column) / static_cast<double>(n_valid);
        series.mean(p) = mean;
        if (n_valid > 1) {
            std::vector<double> sq(column.size());
            for (std::size_t k = 0; k < column.size(); ++k) {
                const double d = column[k] - mean;
                sq[k] = d * d;
            }
            const double var = pairwise_sum(sq) / static_cast<double>(n_valid - 1);
            series.std_error(p) = std::sqrt(var / static_cast<double>(n_valid));
        } else {
            series.std_error(p) = 0.0;
        }
    }
    return series;
}

QuenchSeries ordered_series(const ChainSpec& spec, double j, double h, Measure measure,
                            const QuenchPlan& opts) {
    QuenchPlan plan = opts;
    plan.spec = spec;
    plan.dis = DisorderSpec{DisorderTarget::none, j, h, 0.0};
    plan.n_realizations = 1;
    plan.measure = measure;
    QuenchSeries series = run_quench(plan);
    series.std_error.setZero();
    return series;
}

void write_series_csv(const QuenchSeries& series, std::ostream& out) {
    out << "r,mean,std_error,n_realizations\n";
    char buf[96];
    for (std::size_t i = 0; i < series.distances.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%d\n", series.distances[i],
                      series.mean(static_cast<Eigen::Index>(i)),
                      series.std_error(static_cast<Eigen::Index>(i)),
                      series.n_realizations - static_cast<int>(series.skipped_indices.size()));
        out << buf;
    }
}

}  // namespace qcl
