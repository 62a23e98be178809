#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "qcl/model.hpp"
#include "qcl/qcorr.hpp"

namespace qcl {

/// One MPS site tensor, stored per physical index as (left bond x right bond)
/// matrices. Physical index 0 is spin up.
struct SiteTensor {
    Eigen::MatrixXd m[2];
    Eigen::Index rows() const { return m[0].rows(); }
    Eigen::Index cols() const { return m[0].cols(); }
};

struct MpsState {
    std::vector<SiteTensor> tensors;
    int canonical_center = 0;
    double energy = 0.0;
    double truncation_error = 0.0;         // discarded weight over the final sweep
    std::vector<double> sweep_energies;    // one entry per completed sweep

    int n() const { return static_cast<int>(tensors.size()); }
    Eigen::Index bond_dim(int bond) const { return tensors[static_cast<std::size_t>(bond)].cols(); }
};

enum class DmrgWarmup { growth, random_init };

struct DmrgConfig {
    int chi_max = 64;
    int n_sweeps = 8;
    double energy_tol = 1e-9;
    DmrgWarmup warmup = DmrgWarmup::growth;
    double svd_cutoff = 1e-12;             // relative discarded weight per split
    double truncation_threshold = 1e-8;    // per-sweep budget before erroring out
    int lanczos_max_iter = 100;
    double lanczos_tol = 1e-11;
    std::uint64_t init_seed = 1;           // stream for random_init
};

/// Two-site DMRG ground-state search for open xyz chains (delta may be 0).
/// Sweeps stop once the energy change per sweep drops below energy_tol;
/// exhausting n_sweeps without that is reported as a SolverError carrying the
/// last two sweep energies, as is blowing the truncation budget at chi_max.
MpsState dmrg_ground_state(const Realization& r, const DmrgConfig& cfg = {});

/// Exact contraction of the two-site density matrix. Both sites must stay
/// `margin` sites away from the chain ends (margin < 0 selects the default
/// n/4, rounded down). Parity-odd (off-X) entries are zeroed; entries above
/// 1e-8 additionally emit a warning on stderr, and the removed magnitude is
/// recorded in x_projection_residual.
TwoSiteState mps_two_site_rdm(const MpsState& state, int i, int j, int margin = -1);

/// <psi|psi>.
double mps_norm(const MpsState& state);

/// One-site expectation value of a 2x2 operator.
double mps_site_expectation(const MpsState& state, int site, const Eigen::Matrix2d& op);

/// Moves the canonical center (pure gauge; observables are unchanged).
void mps_canonicalize(MpsState& state, int center);

/// Binary checkpoint with a versioned header; load rejects foreign files.
void save_mps(const MpsState& state, const std::string& path);
MpsState load_mps(const std::string& path);

}  // namespace qcl
