#pragma once

#include <Eigen/Core>

#include "qcl/model.hpp"
#include "qcl/qcorr.hpp"

namespace qcl {

/// Full many-body state on 2^N basis states. Site i maps to bit i of the
/// basis index, bit 0 meaning spin up (sigma_z = +1). Hamiltonians here are
/// real, so amplitudes are real.
struct ManyBodyState {
    Eigen::VectorXd amplitudes;
    double energy = 0.0;
    int degeneracy_multiplicity = 1;
    int n_sites = 0;
};

/// Brute-force ground state for XY/XYZ chains, N <= 14 (dense below N = 9,
/// Lanczos above). When the two lowest energies agree within 1e-10 the equal
/// superposition of the parity-resolved degenerate pair is returned, each
/// member phased so its largest-magnitude amplitude is positive.
ManyBodyState ed_ground_state(const Realization& r);

/// <state|H|state>; used to check the variational identity.
double ed_energy_expectation(const ManyBodyState& state, const Realization& r);

/// Exact partial trace onto sites (i, j), no X-form assumption.
TwoSiteState ed_two_site_rdm(const ManyBodyState& state, int i, int j);

/// Applies H to a vector (shared by the dense builder and Lanczos).
void ed_apply_hamiltonian(const Realization& r, const Eigen::VectorXd& in, Eigen::VectorXd& out);

}  // namespace qcl
