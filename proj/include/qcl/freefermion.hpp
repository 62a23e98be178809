#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "qcl/model.hpp"
#include "qcl/qcorr.hpp"

namespace qcl {

enum class ParitySector { even, odd, both };

/// Quadratic fermion form H = sum c+ A c + 1/2 (c+ B c+ - c B c) + const,
/// obtained from the XY chain by the Jordan-Wigner mapping. For periodic
/// chains the boundary bond carries a parity-dependent sign, so the corner
/// terms are kept separate until a sector is chosen (parity_sector == both).
struct QuadraticForm {
    Eigen::MatrixXd a_matrix;  // symmetric hopping, corner excluded when pending
    Eigen::MatrixXd b_matrix;  // antisymmetric pairing, likewise
    double corner_hopping = 0.0;  // pending boundary-bond terms (periodic only)
    double corner_pairing = 0.0;
    bool has_boundary_link = false;
    ParitySector parity_sector = ParitySector::both;
    double constant_offset = 0.0;
    int n = 0;

    /// Materializes (A, B) for a sector: the even sector takes boundary sign
    /// -1 (antiperiodic fermions), the odd sector +1.
    std::pair<Eigen::MatrixXd, Eigen::MatrixXd> sector_matrices(ParitySector s) const;
};

/// Ground-state contraction matrix G_{mn} = <B_m A_n> with A = c+ + c,
/// B = c+ - c. For periodic chains both parity sectors are solved and the
/// lowest valid one selected; `degenerate` is set (and `g_partner` filled)
/// when the two candidate energies agree within 1e-10 * N.
struct GroundSolution {
    Eigen::MatrixXd g_matrix;
    double energy = 0.0;
    bool degenerate = false;
    std::optional<Eigen::MatrixXd> g_partner;  // second state of a degenerate pair
    double partner_energy = 0.0;
    ParitySector sector = ParitySector::both;
};

struct CorrelatorEntry {
    int i = 0, j = 1;
    double mz_i = 0.0, mz_j = 0.0;
    double txx = 0.0, tyy = 0.0, tzz = 0.0;
};

struct CorrelatorTable {
    std::vector<CorrelatorEntry> entries;
};

/// Maps Eq.-of-motion data of an XY realization onto the quadratic form:
/// hopping J_i/2, pairing gamma J_i/2, on-site h_i (all times kappa).
/// Throws std::invalid_argument for xyz chains.
QuadraticForm build_quadratic_form(const Realization& r,
                                   ParitySector sector = ParitySector::both);

/// Diagonalizes via the singular-vector construction on (A - B) and returns
/// the global ground state G matrix (with parity bookkeeping for periodic
/// chains as described on GroundSolution).
GroundSolution solve_ground(const QuadraticForm& q);

/// One- and two-point correlators: m^z from the diagonal of G, T^zz from a
/// 2x2 minor, T^xx / T^yy as r x r determinants of contiguous sub-blocks.
/// Degenerate solutions average the correlators of the two states.
CorrelatorTable correlators(const GroundSolution& sol,
                            const std::vector<std::pair<int, int>>& pairs);

/// Reconstruction of the two-site density matrix from one entry. Raises
/// SolverError if the result fails positivity beyond 1e-9.
TwoSiteState two_site_rdm(const CorrelatorEntry& entry);

/// CSV dump, header "i,j,mz_i,mz_j,txx,tyy,tzz".
void dump_correlators_csv(const CorrelatorTable& table, std::ostream& out);

/// CSV dump of a G matrix, one row per line.
void dump_g_matrix_csv(const Eigen::MatrixXd& g, std::ostream& out);

}  // namespace qcl
