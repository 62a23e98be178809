#include "qcl/ed.hpp"

#include <Eigen/Dense>
#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qcl/common.hpp"
#include "qcl/linalg.hpp"

namespace qcl {

namespace {

struct Bond {
    int i, j;
    double cxx, cyy, czz;  // coefficients of Sx Sx, Sy Sy, Sz Sz
};

struct TermList {
    std::vector<Bond> bonds;
    Eigen::VectorXd field;  // coefficient of Sz per site (includes the -1/2 h)
    int n = 0;
};

TermList build_terms(const Realization& r) {
    r.spec.validate();
    const int n = r.spec.n_sites;
    const double k = r.spec.kappa;
    const double g = r.spec.gamma;

    TermList t;
    t.n = n;
    const int n_bonds = (r.spec.boundary == Boundary::periodic) ? n : n - 1;
    for (int b = 0; b < n_bonds; ++b) {
        const double j = r.couplings(b);
        t.bonds.push_back(Bond{b, (b + 1) % n, k * j * (1.0 + g) / 4.0, k * j * (1.0 - g) / 4.0,
                               k * r.spec.delta / 4.0});
    }
    t.field = -0.5 * k * r.fields;
    return t;
}

inline double z_of(std::uint32_t s, int site) { return (s >> site) & 1u ? -1.0 : 1.0; }

void apply_terms(const TermList& t, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    const std::size_t dim = static_cast<std::size_t>(in.size());
    out.setZero(in.size());
    for (std::uint32_t s = 0; s < dim; ++s) {
        const double amp = in(s);
        if (amp == 0.0) continue;
        double diag = 0.0;
        for (int i = 0; i < t.n; ++i) diag += t.field(i) * z_of(s, i);
        for (const Bond& b : t.bonds) {
            const double zz = z_of(s, b.i) * z_of(s, b.j);
            diag += b.czz * zz;
            // Sx Sx flips both bits with +1; Sy Sy flips with -(zi zj).
            const double flip = b.cxx - b.cyy * zz;
            if (flip != 0.0) {
                const std::uint32_t s2 = s ^ ((1u << b.i) | (1u << b.j));
                out(s2) += flip * amp;
            }
        }
        out(s) += diag * amp;
    }
}

Eigen::MatrixXd build_dense(const TermList& t) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << t.n);
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(dim), col(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        basis(s) = 1.0;
        apply_terms(t, basis, col);
        h.col(s) = col;
        basis(s) = 0.0;
    }
    return h;
}

/// Phase convention: the largest-magnitude amplitude (lowest index on ties)
/// is made positive.
void fix_phase(Eigen::VectorXd& v) {
    Eigen::Index best = 0;
    double best_abs = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v(i));
        if (a > best_abs + 1e-15) {
            best_abs = a;
            best = i;
        }
    }
    if (v(best) < 0.0) v = -v;
}

/// Rotates a (near-)degenerate pair into parity eigenstates, even sector
/// first, then forms the phased equal superposition.
Eigen::VectorXd symmetric_superposition(const Eigen::VectorXd& v0, const Eigen::VectorXd& v1) {
    const auto dim = v0.size();
    Eigen::VectorXd parity(dim);
    for (Eigen::Index s = 0; s < dim; ++s)
        parity(s) = (std::popcount(static_cast<std::uint32_t>(s)) % 2 == 0) ? 1.0 : -1.0;

    Eigen::Matrix2d m;
    m(0, 0) = v0.dot(parity.asDiagonal() * v0);
    m(0, 1) = v0.dot(parity.asDiagonal() * v1);
    m(1, 0) = m(0, 1);
    m(1, 1) = v1.dot(parity.asDiagonal() * v1);
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(m);
    // Eigenvalues ascending: column 1 has the larger parity (+1, even sector).
    Eigen::VectorXd even = es.eigenvectors()(0, 1) * v0 + es.eigenvectors()(1, 1) * v1;
    Eigen::VectorXd odd = es.eigenvectors()(0, 0) * v0 + es.eigenvectors()(1, 0) * v1;
    even.normalize();
    odd.normalize();
    fix_phase(even);
    fix_phase(odd);
    Eigen::VectorXd out = even + odd;
    out.normalize();
    return out;
}

}  // namespace

ManyBodyState ed_ground_state(const Realization& r) {
    const int n = r.spec.n_sites;
    if (n > 14) throw std::invalid_argument("ed_ground_state supports N <= 14");
    const TermList terms = build_terms(r);
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n);
    constexpr double kDegenerateTol = 1e-10;

    ManyBodyState st;
    st.n_sites = n;

    double e0 = 0.0, e1 = 0.0;
    Eigen::VectorXd v0, v1;
    int multiplicity = 1;

    if (n <= 8) {
        Eigen::VectorXd evals;
        Eigen::MatrixXd evecs;
        symmetric_eigen(build_dense(terms), evals, evecs);
        e0 = evals(0);
        e1 = evals(1);
        v0 = evecs.col(0);
        v1 = evecs.col(1);
        while (multiplicity < dim && evals(multiplicity) - e0 <= kDegenerateTol) ++multiplicity;
    } else {
        const auto apply = [&](const Eigen::VectorXd& in, Eigen::VectorXd& out) {
            apply_terms(terms, in, out);
        };
        LanczosOptions opts;
        opts.max_iterations = 500;
        opts.tolerance = 1e-12;
        opts.seed = 0x6b43a9b1u;
        const LanczosResult ground = lanczos_lowest(static_cast<std::size_t>(dim), apply, {}, {}, opts);
        if (!ground.converged) throw SolverError("ED Lanczos did not converge");
        const LanczosResult second =
            lanczos_lowest(static_cast<std::size_t>(dim), apply, {}, {ground.eigenvector}, opts);
        if (!second.converged) throw SolverError("ED Lanczos (deflated) did not converge");
        e0 = ground.eigenvalue;
        e1 = second.eigenvalue;
        v0 = ground.eigenvector;
        v1 = second.eigenvector;
        if (e1 - e0 <= kDegenerateTol) multiplicity = 2;
    }

    if (e1 - e0 <= kDegenerateTol) {
        st.amplitudes = symmetric_superposition(v0, v1);
        st.degeneracy_multiplicity = std::max(multiplicity, 2);
        st.energy = 0.5 * (e0 + e1);
    } else {
        fix_phase(v0);
        st.amplitudes = v0;
        st.degeneracy_multiplicity = 1;
        st.energy = e0;
    }
    return st;
}

double ed_energy_expectation(const ManyBodyState& state, const Realization& r) {
    const TermList terms = build_terms(r);
    Eigen::VectorXd hv;
    apply_terms(terms, state.amplitudes, hv);
    return state.amplitudes.dot(hv);
}

void ed_apply_hamiltonian(const Realization& r, const Eigen::VectorXd& in, Eigen::VectorXd& out) {
    apply_terms(build_terms(r), in, out);
}

TwoSiteState ed_two_site_rdm(const ManyBodyState& state, int i, int j) {
    const int n = state.n_sites;
    if (!(0 <= i && i < j && j < n)) throw std::invalid_argument("site pair out of range");
    const auto dim = state.amplitudes.size();
    const std::uint32_t mask_i = 1u << i, mask_j = 1u << j;

    Eigen::Matrix4d acc = Eigen::Matrix4d::Zero();
    for (Eigen::Index s = 0; s < dim; ++s) {
        const double amp = state.amplitudes(s);
        if (amp == 0.0) continue;
        const std::uint32_t u = static_cast<std::uint32_t>(s);
        const int a = 2 * static_cast<int>((u >> i) & 1u) + static_cast<int>((u >> j) & 1u);
        for (int a2 = 0; a2 < 4; ++a2) {
            std::uint32_t s2 = u & ~(mask_i | mask_j);
            if (a2 & 2) s2 |= mask_i;
            if (a2 & 1) s2 |= mask_j;
            acc(a, a2) += amp * state.amplitudes(static_cast<Eigen::Index>(s2));
        }
    }

    TwoSiteState out;
    out.site_i = i;
    out.site_j = j;
    out.rho = acc.cast<std::complex<double>>();
    out.validate();
    return out;
}

}  // namespace qcl
