#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qcl/common.hpp"
#include "qcl/experiment.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw qcl::ConfigError("cannot read config file " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int realizations = 0;
    int workers = 0;
    std::string out_dir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    auto* config = cmd->add_option("--config", args.config_path, "path to a key = value config file")
                       ->envname("QCORRLEN_CONFIG");
    auto* preset =
        cmd->add_option("--preset", args.preset, "named preset (fig1..fig7, table1)")
            ->envname("QCORRLEN_PRESET");
    config->excludes(preset);
    cmd->add_option("--seed", args.seed, "master seed override")->envname("QCORRLEN_SEED");
    cmd->add_option("--realizations", args.realizations, "realization count override")
        ->envname("QCORRLEN_REALIZATIONS");
    cmd->add_option("--workers", args.workers, "worker thread count (0 = all cores)")
        ->envname("QCORRLEN_WORKERS");
    cmd->add_option("--out", args.out_dir, "output directory override")->envname("QCORRLEN_OUT");
}

int do_validate(const CommonArgs& args) {
    std::vector<qcl::ExperimentConfig> configs;
    if (!args.preset.empty())
        configs = qcl::expand_preset(args.preset);
    else if (!args.config_path.empty())
        configs.push_back(qcl::parse_config(read_file(args.config_path)));
    else
        throw qcl::ConfigError("validate needs --config or --preset");

    bool ok = true;
    for (const auto& c : configs) {
        const auto diags = qcl::validate_config(c);
        if (diags.empty()) {
            std::printf("ok      %s\n", c.name.c_str());
        } else {
            ok = false;
            for (const auto& d : diags) std::printf("error   %s: %s\n", c.name.c_str(), d.c_str());
        }
    }
    return ok ? 0 : 2;
}

int do_run(const CommonArgs& args) {
    qcl::PresetOverrides overrides;
    if (args.seed_set) overrides.master_seed = args.seed;
    if (args.realizations > 0) overrides.realizations = args.realizations;
    if (args.workers != 0) overrides.workers = args.workers;
    if (!args.out_dir.empty()) overrides.out_dir = args.out_dir;

    std::vector<qcl::RunResult> results;
    if (!args.preset.empty()) {
        results = qcl::run_preset(args.preset, overrides);
    } else if (!args.config_path.empty()) {
        qcl::ExperimentConfig c = qcl::parse_config(read_file(args.config_path));
        if (overrides.master_seed) c.master_seed = *overrides.master_seed;
        if (overrides.realizations) c.realizations = *overrides.realizations;
        if (overrides.workers) c.workers = *overrides.workers;
        if (overrides.out_dir) c.out_dir = *overrides.out_dir;
        results.push_back(qcl::run_experiment(c));
    } else {
        throw qcl::ConfigError("run needs --config or --preset");
    }

    for (const auto& r : results) {
        std::printf("wrote %s", r.artifacts.csv_path.c_str());
        if (r.fit && r.fit->converged)
            std::printf("  (xi = %.4f)", r.fit->xi);
        else if (r.fit)
            std::printf("  (fit: not converged)");
        std::printf("  [%.2fs]\n", r.wall_seconds);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"quenched-disorder spin chain quantum correlation toolkit"};
    app.require_subcommand(1);

    CommonArgs run_args, val_args;
    auto* run_cmd = app.add_subcommand("run", "execute a config or preset and write artifacts");
    add_common(run_cmd, run_args);
    auto* val_cmd = app.add_subcommand("validate", "check a config or preset without running");
    add_common(val_cmd, val_args);
    auto* presets_cmd = app.add_subcommand("presets", "list preset names");

    try {
        app.parse(argc, argv);
        run_args.seed_set = run_cmd->count("--seed") > 0;
        if (presets_cmd->parsed()) {
            for (const auto& name : qcl::preset_names()) std::printf("%s\n", name.c_str());
            return 0;
        }
        if (val_cmd->parsed()) return do_validate(val_args);
        return do_run(run_args);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const qcl::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const qcl::SolverError& e) {
        std::fprintf(stderr, "solver error: %s\n", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
