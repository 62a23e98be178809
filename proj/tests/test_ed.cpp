#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcl/ed.hpp"
#include "qcl/linalg.hpp"
#include "qcl/qcorr.hpp"
#include "testutil.hpp"

using namespace qcl;

TEST_CASE("field-only chain is fully polarized") {
    for (double gamma : {0.0, 0.5, 1.0}) {
        const Realization r =
            ordered_realization(test::xy_spec(2, gamma, Boundary::open), 0.0, 1.0);
        const ManyBodyState st = ed_ground_state(r);
        CHECK(st.energy == doctest::Approx(-1.0).epsilon(1e-12));
        CHECK(std::abs(st.amplitudes(0)) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("two-site Ising bond has ground energy -1/2") {
    const Realization r = ordered_realization(test::xy_spec(2, 1.0, Boundary::open), 1.0, 0.0);
    const ManyBodyState st = ed_ground_state(r);
    CHECK(st.energy == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(st.degeneracy_multiplicity >= 2);  // both sigma-x product states
}

TEST_CASE("variational identity and norm") {
    DisorderSpec dis{DisorderTarget::coupling, 0.8, 1.0, 1.0};
    for (int k = 0; k < 5; ++k) {
        const Realization r = sample_realization(test::xy_spec(8, 0.5), dis, 321, k);
        const ManyBodyState st = ed_ground_state(r);
        CHECK(std::abs(st.amplitudes.norm() - 1.0) < 1e-12);
        CHECK(ed_energy_expectation(st, r) == doctest::Approx(st.energy).epsilon(1e-10));
    }
}

TEST_CASE("Lanczos path matches a dense solve at N = 10") {
    DisorderSpec dis{DisorderTarget::field, 0.9, 1.0, 1.0};
    const Realization r = sample_realization(test::xy_spec(10, 0.5), dis, 99, 2);
    const ManyBodyState lanczos = ed_ground_state(r);
    CHECK(std::abs(lanczos.amplitudes.norm() - 1.0) < 1e-12);

    Eigen::VectorXd hv;
    ed_apply_hamiltonian(r, lanczos.amplitudes, hv);
    CHECK((hv - lanczos.energy * lanczos.amplitudes).norm() < 1e-9);

    // Independent dense diagonalization of the same Hamiltonian.
    const Eigen::Index dim = 1 << 10;
    Eigen::MatrixXd h(dim, dim);
    Eigen::VectorXd basis = Eigen::VectorXd::Zero(dim), col(dim);
    for (Eigen::Index s = 0; s < dim; ++s) {
        basis(s) = 1.0;
        ed_apply_hamiltonian(r, basis, col);
        h.col(s) = col;
        basis(s) = 0.0;
    }
    Eigen::VectorXd evals;
    Eigen::MatrixXd evecs;
    symmetric_eigen(h, evals, evecs);
    CHECK(lanczos.energy == doctest::Approx(evals(0)).epsilon(1e-11));
}

TEST_CASE("parity symmetry: transverse magnetizations vanish") {
    DisorderSpec dis{DisorderTarget::coupling, 0.6, 1.0, 1.0};
    for (int k = 0; k < 3; ++k) {
        const Realization r = sample_realization(test::xy_spec(7, 0.5), dis, 17, k);
        const ManyBodyState st = ed_ground_state(r);
        for (int i = 0; i < 7; ++i) {
            // <sx_i> and <sy_i> from one-site marginals of a pair RDM.
            const int j = (i + 1) % 7;
            const TwoSiteState rdm = (i < j) ? ed_two_site_rdm(st, i, j) : ed_two_site_rdm(st, j, i);
            const Eigen::Matrix2cd one =
                (i < j) ? partial_trace_second(rdm.rho) : partial_trace_first(rdm.rho);
            CHECK(std::abs(one(0, 1).real()) < 1e-10);  // <sx>/2
            CHECK(std::abs(one(0, 1).imag()) < 1e-10);  // <sy>/2
        }
    }
}

TEST_CASE("ground-state RDMs are X-form in the computational basis") {
    DisorderSpec dis{DisorderTarget::coupling, 1.2, 1.0, 1.0};
    for (int k = 0; k < 4; ++k) {
        const Realization r = sample_realization(test::xy_spec(8, 0.5), dis, 4242, k);
        const ManyBodyState st = ed_ground_state(r);
        for (auto [i, j] : {std::pair{0, 1}, {0, 4}, {2, 7}}) {
            const TwoSiteState rdm = ed_two_site_rdm(st, i, j);
            CHECK(off_x_norm(rdm.rho) < 1e-10);
        }
    }
}

TEST_CASE("GHZ-style vector has the expected pair correlators") {
    ManyBodyState st;
    st.n_sites = 3;
    st.amplitudes = Eigen::VectorXd::Zero(8);
    st.amplitudes(0) = std::sqrt(0.5);  // |000>
    st.amplitudes(7) = std::sqrt(0.5);  // |111>
    const TwoSiteState rdm = ed_two_site_rdm(st, 0, 2);
    // T^zz = 1, T^xx = T^yy = 0 once the third site is traced out.
    const double tzz = (rdm.rho(0, 0) - rdm.rho(1, 1) - rdm.rho(2, 2) + rdm.rho(3, 3)).real();
    CHECK(tzz == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(rdm.rho(0, 3)) < 1e-12);  // (Txx - Tyy)/4
    CHECK(std::abs(rdm.rho(1, 2)) < 1e-12);  // (Txx + Tyy)/4
    CHECK(concurrence(rdm) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("product ground state gives product RDM with zero concurrence") {
    const Realization r = ordered_realization(test::xy_spec(6, 0.5, Boundary::open), 0.0, 1.0);
    const ManyBodyState st = ed_ground_state(r);
    const TwoSiteState rdm = ed_two_site_rdm(st, 1, 4);
    CHECK(concurrence(rdm) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(rdm.rho(0, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("global phase does not change the RDM") {
    DisorderSpec dis{DisorderTarget::coupling, 0.5, 1.0, 1.0};
    const Realization r = sample_realization(test::xy_spec(6, 0.5), dis, 5, 0);
    ManyBodyState st = ed_ground_state(r);
    const TwoSiteState a = ed_two_site_rdm(st, 1, 3);
    st.amplitudes = -st.amplitudes;
    const TwoSiteState b = ed_two_site_rdm(st, 1, 3);
    CHECK(test::trace_distance(a.rho, b.rho) < 1e-14);
}

TEST_CASE("out-of-range pairs and oversized chains are rejected") {
    const Realization r = ordered_realization(test::xy_spec(4, 0.5), 0.5, 1.0);
    const ManyBodyState st = ed_ground_state(r);
    CHECK_THROWS_AS((void)ed_two_site_rdm(st, 2, 2), std::invalid_argument);
    CHECK_THROWS_AS((void)ed_two_site_rdm(st, 0, 4), std::invalid_argument);

    const Realization big = ordered_realization(test::xy_spec(15, 0.5), 0.5, 1.0);
    CHECK_THROWS_AS((void)ed_ground_state(big), std::invalid_argument);
}
