#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>

#include "qcl/rng.hpp"

namespace qcl {

enum class Boundary { periodic, open };
enum class ModelKind { xy, xyz };

/// Static geometry and couplings of a spin-1/2 chain:
///   H = kappa * [ sum_i J_i/4 ((1+gamma) Sx Sx + (1-gamma) Sy Sy)
///                 + sum_i delta/4 Sz Sz  - sum_i h_i/2 Sz ]
/// with the zz term present only for the xyz kind (open boundary).
struct ChainSpec {
    int n_sites = 2;
    double gamma = 0.5;        // anisotropy in [0, 1]
    double delta = 0.0;        // zz coupling, 0 for xy
    double kappa = 1.0;        // overall energy scale, fixed to 1 by convention
    Boundary boundary = Boundary::periodic;
    ModelKind kind = ModelKind::xy;

    /// Throws ConfigError on an inconsistent spec (n_sites < 2, gamma outside
    /// [0,1], xyz with periodic boundary, nonzero delta for xy).
    void validate() const;
};

enum class DisorderTarget { none, coupling, field };

/// Which parameter is random and the (mean, std_dev) of its gaussian. The
/// non-disordered parameter is held constant at its mean.
struct DisorderSpec {
    DisorderTarget target = DisorderTarget::none;
    double coupling_mean = 1.0;  // J or <J>
    double field_mean = 1.0;     // h or <h>
    double std_dev = 1.0;        // ignored when target == none
};

/// Identifies the RNG stream a realization was drawn from.
struct SeedTrace {
    std::uint64_t master_seed = 0;
    std::uint64_t index = 0;
    std::uint64_t salt = 0;
};

/// One fixed configuration of the chain. For open boundaries the last
/// coupling entry is unused.
struct Realization {
    ChainSpec spec;
    Eigen::VectorXd couplings;  // J_i, size n_sites
    Eigen::VectorXd fields;     // h_i, size n_sites
    std::int64_t realization_index = 0;
    SeedTrace seed_trace;
};

/// Draws realization `index` of the disorder ensemble. The stream is derived
/// from (master_seed, index) alone, so results do not depend on evaluation
/// order or worker count. Gaussian values are kept as drawn (no truncation).
Realization sample_realization(const ChainSpec& spec, const DisorderSpec& dis,
                               std::uint64_t master_seed, std::int64_t index);

/// Uniform couplings and fields.
Realization ordered_realization(const ChainSpec& spec, double j, double h);

/// Audit format: one line "<index> <n> <J_0..J_{n-1}> <h_0..h_{n-1}>".
std::string realization_to_line(const Realization& r);

/// Parses a realization line; the chain spec is supplied by the caller.
Realization realization_from_line(const std::string& line, const ChainSpec& spec);

}  // namespace qcl
