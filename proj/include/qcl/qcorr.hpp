#pragma once

#include <Eigen/Core>
#include <complex>
#include <vector>

namespace qcl {

/// Two-qubit density matrix in the computational basis |s_i s_j>, the first
/// tensor slot belonging to site_i. Spin up (sigma_z = +1) is |0>.
struct TwoSiteState {
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    int site_i = 0;
    int site_j = 1;
    /// Largest off-X entry removed by parity projection (0 unless projected).
    double x_projection_residual = 0.0;

    /// Throws SolverError unless rho is Hermitian (1e-12), unit trace (1e-10)
    /// and has eigenvalues >= -1e-9.
    void validate() const;
};

/// Builds the X-form state 1/4 [I + mz_i Sz(x)I + mz_j I(x)Sz + sum T Sa(x)Sa].
TwoSiteState two_site_state_from_correlators(double mz_i, double mz_j, double txx, double tyy,
                                             double tzz, int site_i = 0, int site_j = 1);

Eigen::Matrix2cd partial_trace_second(const Eigen::Matrix4cd& rho);
Eigen::Matrix2cd partial_trace_first(const Eigen::Matrix4cd& rho);

/// Magnitude of the largest matrix element outside the X (diagonal plus
/// antidiagonal) pattern.
double off_x_norm(const Eigen::Matrix4cd& rho);

/// Binary entropy in bits; H2(0) = H2(1) = 0.
double binary_entropy_bits(double x);

/// Von Neumann entropy in bits; eigenvalues below 1e-12 are treated as 0.
double von_neumann_entropy_bits(const Eigen::MatrixXcd& rho);

/// Wootters concurrence in ebits: max{0, l1-l2-l3-l4} with l_k the square
/// roots of the eigenvalues of rho * (Sy(x)Sy) conj(rho) (Sy(x)Sy).
double concurrence(const TwoSiteState& state);

/// I = S(rho_A) + S(rho_B) - S(rho_AB), base-2 logs.
double mutual_information(const TwoSiteState& state);

enum class MeasuredParty { first, second };
enum class DiscordMethod { xstate_closed_form, numeric_minimization };

struct DiscordResult {
    double mutual_information = 0.0;    // bits
    double classical_correlation = 0.0; // bits
    double discord = 0.0;               // bits
    double theta = 0.0;                 // polar angle of the optimal projector axis
    double phi = 0.0;                   // azimuthal angle
    DiscordMethod method = DiscordMethod::numeric_minimization;
};

struct DiscordOptions {
    MeasuredParty measured_party = MeasuredParty::first;
    int grid_theta = 60;
    int grid_phi = 120;
    double refine_tol = 1e-8;  // convergence of the conditional entropy
};

/// True when the closed form applies: X-form within tol and |Txx| >= |Tyy|.
bool xstate_closed_form_valid(const TwoSiteState& state, double tol = 1e-8);

/// Closed form for X states: J = H2((1+m)/2) - H2((1+p)/2) with
/// p = sqrt(m^2 + Txx^2) and m the z-magnetization of the unmeasured site
/// (the conditional entropy left behind by an x-basis measurement on the
/// measured party). Throws std::invalid_argument outside the validity regime.
DiscordResult discord_xstate_closed_form(const TwoSiteState& state,
                                         MeasuredParty measured_party = MeasuredParty::first);

/// Minimizes the conditional entropy over all rank-one projective
/// measurements on the measured party: coarse (theta, phi) grid plus local
/// refinement. Works for arbitrary two-qubit states.
DiscordResult discord_numeric(const TwoSiteState& state, const DiscordOptions& opts = {});

/// Dispatch: closed form when valid, numeric otherwise.
DiscordResult discord_auto(const TwoSiteState& state,
                           MeasuredParty measured_party = MeasuredParty::first);

struct MonogamyReport {
    int nodal_site = 0;
    std::vector<double> pairwise_discords;  // bits
    double sum = 0.0;
    bool witness_violated = false;  // sum > 1 refutes monogamy for a qubit nodal party
};

/// Sums pairwise discords D(rho_{nodal,i}); all inputs must lie in [0, 1].
MonogamyReport monogamy_witness(const std::vector<double>& pairwise_discords, int nodal_site = 0);

}  // namespace qcl
