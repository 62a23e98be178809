#include "qcl/freefermion.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

#include "qcl/common.hpp"
#include "qcl/linalg.hpp"

namespace qcl {

namespace {

struct SectorState {
    Eigen::MatrixXd g;
    double energy = 0.0;
};

/// Solves one quadratic form (A, B): SVD of (A - B) = U S V^T gives the
/// Bogoliubov modes (phi_k = U col k, psi_k = V col k, energies S_k >= 0),
/// the vacuum G = -V U^T and the vacuum fermion parity det(U) det(V).
/// `required_parity` = +-1 forces the returned state into that parity by
/// adding the cheapest quasiparticle when needed; 0 means unconstrained.
SectorState solve_sector(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                         double constant_offset, int required_parity, double* min_mode_energy) {
    Eigen::MatrixXd u, v;
    Eigen::VectorXd s;
    full_svd(a - b, u, s, v);

    SectorState out;
    out.energy = 0.5 * a.trace() - 0.5 * s.sum() + constant_offset;
    out.g = -v * u.transpose();
    if (min_mode_energy) *min_mode_energy = s(s.size() - 1);

    if (required_parity != 0) {
        const double parity = u.determinant() * v.determinant();
        if (parity * required_parity < 0.0) {
            // Singular values are sorted descending, so the last mode is the
            // cheapest excitation.
            const auto q = s.size() - 1;
            out.energy += s(q);
            out.g += 2.0 * v.col(q) * u.col(q).transpose();
        }
    }
    return out;
}

double determinant_of_block(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) return m(0, 0);
    return Eigen::PartialPivLU<Eigen::MatrixXd>(m).determinant();
}

CorrelatorEntry correlators_from_g(const Eigen::MatrixXd& g, int i, int j) {
    const int r = j - i;
    CorrelatorEntry e;
    e.i = i;
    e.j = j;
    e.mz_i = -g(i, i);
    e.mz_j = -g(j, j);
    e.tzz = g(i, i) * g(j, j) - g(i, j) * g(j, i);
    // String formulas: T^xx is det G[i..j-1, i+1..j], T^yy det G[i+1..j, i..j-1].
    e.txx = determinant_of_block(g.block(i, i + 1, r, r));
    e.tyy = determinant_of_block(g.block(i + 1, i, r, r));
    return e;
}

}  // namespace

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> QuadraticForm::sector_matrices(ParitySector s) const {
    Eigen::MatrixXd a = a_matrix;
    Eigen::MatrixXd b = b_matrix;
    if (has_boundary_link && parity_sector == ParitySector::both) {
        if (s == ParitySector::both)
            throw std::invalid_argument("periodic quadratic form needs a definite parity sector");
        const double sign = (s == ParitySector::odd) ? 1.0 : -1.0;
        a(n - 1, 0) += sign * corner_hopping;
        a(0, n - 1) += sign * corner_hopping;
        b(n - 1, 0) += sign * corner_pairing;
        b(0, n - 1) -= sign * corner_pairing;
    }
    return {std::move(a), std::move(b)};
}

QuadraticForm build_quadratic_form(const Realization& r, ParitySector sector) {
    r.spec.validate();
    if (r.spec.kind != ModelKind::xy)
        throw std::invalid_argument("the free-fermion route only covers xy chains");

    const int n = r.spec.n_sites;
    const double k = r.spec.kappa;
    const double g = r.spec.gamma;

    QuadraticForm q;
    q.n = n;
    q.a_matrix = Eigen::MatrixXd::Zero(n, n);
    q.b_matrix = Eigen::MatrixXd::Zero(n, n);
    q.constant_offset = -0.5 * k * r.fields.sum();
    q.parity_sector = sector;

    for (int i = 0; i < n; ++i) q.a_matrix(i, i) = k * r.fields(i);
    for (int i = 0; i + 1 < n; ++i) {
        const double hop = 0.5 * k * r.couplings(i);
        const double pair = 0.5 * k * g * r.couplings(i);
        q.a_matrix(i, i + 1) = hop;
        q.a_matrix(i + 1, i) = hop;
        q.b_matrix(i, i + 1) = pair;
        q.b_matrix(i + 1, i) = -pair;
    }

    if (r.spec.boundary == Boundary::periodic) {
        q.has_boundary_link = true;
        q.corner_hopping = 0.5 * k * r.couplings(n - 1);
        q.corner_pairing = 0.5 * k * g * r.couplings(n - 1);
        if (sector != ParitySector::both) {
            // Bake the corner in directly for a single-sector form.
            const double sign = (sector == ParitySector::odd) ? 1.0 : -1.0;
            q.a_matrix(n - 1, 0) += sign * q.corner_hopping;
            q.a_matrix(0, n - 1) += sign * q.corner_hopping;
            q.b_matrix(n - 1, 0) += sign * q.corner_pairing;
            q.b_matrix(0, n - 1) -= sign * q.corner_pairing;
            q.corner_hopping = 0.0;
            q.corner_pairing = 0.0;
        }
    }
    return q;
}

GroundSolution solve_ground(const QuadraticForm& q) {
    const double degeneracy_tol = 1e-10 * q.n;
    GroundSolution sol;

    if (q.has_boundary_link && q.parity_sector == ParitySector::both) {
        const auto [a_even, b_even] = q.sector_matrices(ParitySector::even);
        const auto [a_odd, b_odd] = q.sector_matrices(ParitySector::odd);
        const SectorState even = solve_sector(a_even, b_even, q.constant_offset, +1, nullptr);
        const SectorState odd = solve_sector(a_odd, b_odd, q.constant_offset, -1, nullptr);

        const bool even_lower = even.energy <= odd.energy;
        const SectorState& lo = even_lower ? even : odd;
        const SectorState& hi = even_lower ? odd : even;
        sol.g_matrix = lo.g;
        sol.energy = lo.energy;
        sol.sector = even_lower ? ParitySector::even : ParitySector::odd;
        if (hi.energy - lo.energy <= degeneracy_tol) {
            sol.degenerate = true;
            sol.g_partner = hi.g;
            sol.partner_energy = hi.energy;
        }
        return sol;
    }

    // Open chain (or explicit single sector): the vacuum is the ground state;
    // a near-zero mode signals a degenerate partner.
    const auto [a, b] = q.parity_sector == ParitySector::both
                            ? std::make_pair(q.a_matrix, q.b_matrix)
                            : q.sector_matrices(q.parity_sector);
    double min_mode = 0.0;
    Eigen::MatrixXd u, v;
    Eigen::VectorXd s;
    full_svd(a - b, u, s, v);
    sol.energy = 0.5 * a.trace() - 0.5 * s.sum() + q.constant_offset;
    sol.g_matrix = -v * u.transpose();
    sol.sector = q.parity_sector;
    min_mode = s(s.size() - 1);
    if (min_mode <= degeneracy_tol) {
        sol.degenerate = true;
        const auto m = s.size() - 1;
        sol.g_partner = sol.g_matrix + 2.0 * v.col(m) * u.col(m).transpose();
        sol.partner_energy = sol.energy + min_mode;
    }
    return sol;
}

CorrelatorTable correlators(const GroundSolution& sol,
                            const std::vector<std::pair<int, int>>& pairs) {
    const int n = static_cast<int>(sol.g_matrix.rows());
    CorrelatorTable table;
    table.entries.reserve(pairs.size());
    for (const auto& [i, j] : pairs) {
        if (!(0 <= i && i < j && j < n)) throw std::invalid_argument("site pair out of range");
        CorrelatorEntry e = correlators_from_g(sol.g_matrix, i, j);
        if (sol.degenerate && sol.g_partner) {
            // All observables in the table are parity-even, so the symmetric
            // superposition's expectation is the plain average of the two
            // degenerate states (the cross terms vanish).
            const CorrelatorEntry p = correlators_from_g(*sol.g_partner, i, j);
            e.mz_i = 0.5 * (e.mz_i + p.mz_i);
            e.mz_j = 0.5 * (e.mz_j + p.mz_j);
            e.txx = 0.5 * (e.txx + p.txx);
            e.tyy = 0.5 * (e.tyy + p.tyy);
            e.tzz = 0.5 * (e.tzz + p.tzz);
        }
        table.entries.push_back(e);
    }
    return table;
}

TwoSiteState two_site_rdm(const CorrelatorEntry& entry) {
    for (double c : {entry.mz_i, entry.mz_j, entry.txx, entry.tyy, entry.tzz})
        if (std::abs(c) > 1.0 + 1e-9)
            throw SolverError("correlator magnitude exceeds 1; upstream solver bug");
    return two_site_state_from_correlators(entry.mz_i, entry.mz_j, entry.txx, entry.tyy, entry.tzz,
                                           entry.i, entry.j);
}

void dump_correlators_csv(const CorrelatorTable& table, std::ostream& out) {
    out << "i,j,mz_i,mz_j,txx,tyy,tzz\n";
    char buf[160];
    for (const auto& e : table.entries) {
        std::snprintf(buf, sizeof buf, "%d,%d,%.17g,%.17g,%.17g,%.17g,%.17g\n", e.i, e.j, e.mz_i,
                      e.mz_j, e.txx, e.tyy, e.tzz);
        out << buf;
    }
}

void dump_g_matrix_csv(const Eigen::MatrixXd& g, std::ostream& out) {
    char buf[32];
    for (Eigen::Index i = 0; i < g.rows(); ++i) {
        for (Eigen::Index j = 0; j < g.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", g(i, j));
            out << (j ? "," : "") << buf;
        }
        out << '\n';
    }
}

}  // namespace qcl
