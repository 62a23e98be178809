#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "qcl/ed.hpp"
#include "qcl/freefermion.hpp"
#include "qcl/qcorr.hpp"
#include "testutil.hpp"

using namespace qcl;

namespace {

std::vector<std::pair<int, int>> all_pairs(int n) {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) out.emplace_back(i, j);
    return out;
}

/// Correlators straight from an ED state, to cross-check the string formulas.
CorrelatorEntry ed_correlators(const ManyBodyState& st, int i, int j) {
    const TwoSiteState rdm = ed_two_site_rdm(st, i, j);
    CorrelatorEntry e;
    e.i = i;
    e.j = j;
    const auto& rho = rdm.rho;
    e.mz_i = (rho(0, 0) + rho(1, 1) - rho(2, 2) - rho(3, 3)).real();
    e.mz_j = (rho(0, 0) - rho(1, 1) + rho(2, 2) - rho(3, 3)).real();
    e.tzz = (rho(0, 0) - rho(1, 1) - rho(2, 2) + rho(3, 3)).real();
    e.txx = 2.0 * (rho(0, 3) + rho(1, 2)).real();
    e.tyy = 2.0 * (rho(1, 2) - rho(0, 3)).real();
    return e;
}

}  // namespace

TEST_CASE("decoupled spins: diagonal A, zero B") {
    const Realization r = ordered_realization(test::xy_spec(6, 0.7), 0.0, 1.3);
    const QuadraticForm q = build_quadratic_form(r);
    CHECK(q.b_matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.corner_pairing == 0.0);
    Eigen::MatrixXd off = q.a_matrix;
    off.diagonal().setZero();
    CHECK(off.cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.a_matrix(2, 2) == doctest::Approx(1.3));
}

TEST_CASE("gamma = 0 keeps the form number-conserving") {
    const Realization r = ordered_realization(test::xy_spec(6, 0.0), 0.8, 1.0);
    const QuadraticForm q = build_quadratic_form(r);
    CHECK(q.b_matrix.cwiseAbs().maxCoeff() == 0.0);
    CHECK(q.corner_pairing == 0.0);
    CHECK(q.a_matrix(0, 1) == doctest::Approx(0.4));
}

TEST_CASE("a is symmetric, b antisymmetric, both tridiagonal up to corners") {
    DisorderSpec dis{DisorderTarget::coupling, 0.5, 1.0, 1.0};
    const Realization r = sample_realization(test::xy_spec(8, 0.5), dis, 3, 1);
    for (auto sector : {ParitySector::even, ParitySector::odd}) {
        const QuadraticForm q = build_quadratic_form(r, sector);
        CHECK((q.a_matrix - q.a_matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
        CHECK((q.b_matrix + q.b_matrix.transpose()).cwiseAbs().maxCoeff() == 0.0);
        for (int i = 0; i < 8; ++i)
            for (int j = 0; j < 8; ++j)
                if (std::abs(i - j) > 1 && std::abs(i - j) != 7) {
                    CHECK(q.a_matrix(i, j) == 0.0);
                    CHECK(q.b_matrix(i, j) == 0.0);
                }
    }
}

TEST_CASE("polarized chain: G = -identity, energy -N/2") {
    const Realization r = ordered_realization(test::xy_spec(10, 0.5), 0.0, 1.0);
    const GroundSolution sol = solve_ground(build_quadratic_form(r));
    CHECK(sol.energy == doctest::Approx(-5.0).epsilon(1e-12));
    CHECK((sol.g_matrix + Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);

    const CorrelatorTable table = correlators(sol, {{0, 3}});
    CHECK(table.entries[0].mz_i == doctest::Approx(1.0));
    CHECK(table.entries[0].tzz == doctest::Approx(1.0));
    CHECK(std::abs(table.entries[0].txx) < 1e-12);
    CHECK(std::abs(table.entries[0].tyy) < 1e-12);

    const TwoSiteState rdm = two_site_rdm(table.entries[0]);
    CHECK(rdm.rho(0, 0).real() == doctest::Approx(1.0));  // pure |00><00|
}

TEST_CASE("ordered N=8 ground energy matches ED to 1e-10") {
    const Realization r = ordered_realization(test::xy_spec(8, 1.0), 0.5, 1.0);
    const GroundSolution ff = solve_ground(build_quadratic_form(r));
    const ManyBodyState ed = ed_ground_state(r);
    CHECK(ff.energy == doctest::Approx(ed.energy).epsilon(1e-12));
}

TEST_CASE("spectrum of a random N=4 form matches ED many-body gaps") {
    DisorderSpec dis{DisorderTarget::coupling, 0.7, 1.0, 1.0};
    const Realization r = sample_realization(test::xy_spec(4, 0.5), dis, 21, 5);
    const GroundSolution ff = solve_ground(build_quadratic_form(r));
    const ManyBodyState ed = ed_ground_state(r);
    CHECK(ff.energy == doctest::Approx(ed.energy).epsilon(1e-10));
}

TEST_CASE("ED equivalence on random realizations, all disorder cases and boundaries") {
    const std::vector<DisorderSpec> cases = {
        {DisorderTarget::coupling, 0.5, 1.0, 1.0},
        {DisorderTarget::field, 0.8, 1.0, 1.0},
        {DisorderTarget::none, 1.2, 1.0, 0.0},
    };
    for (int n : {4, 7, 10}) {
        for (auto boundary : {Boundary::periodic, Boundary::open}) {
            for (std::size_t c = 0; c < cases.size(); ++c) {
                for (int k = 0; k < 3; ++k) {
                    const Realization r = sample_realization(test::xy_spec(n, 0.5, boundary),
                                                             cases[c], 1000 + c, k);
                    const GroundSolution ff = solve_ground(build_quadratic_form(r));
                    const ManyBodyState ed = ed_ground_state(r);
                    REQUIRE(std::abs(ff.energy - ed.energy) < 1e-8);

                    const auto pairs = all_pairs(n);
                    const CorrelatorTable table = correlators(ff, pairs);
                    for (const auto& e : table.entries) {
                        const CorrelatorEntry ref = ed_correlators(ed, e.i, e.j);
                        REQUIRE(std::abs(e.mz_i - ref.mz_i) < 1e-8);
                        REQUIRE(std::abs(e.txx - ref.txx) < 1e-8);
                        REQUIRE(std::abs(e.tyy - ref.tyy) < 1e-8);
                        REQUIRE(std::abs(e.tzz - ref.tzz) < 1e-8);
                        const TwoSiteState mine = two_site_rdm(e);
                        const TwoSiteState theirs = ed_two_site_rdm(ed, e.i, e.j);
                        REQUIRE(test::trace_distance(mine.rho, theirs.rho) < 1e-8);
                    }
                }
            }
        }
    }
}

TEST_CASE("factorization point: degenerate flag and product two-site states") {
    const double gamma = 0.5;
    const double jh = 1.0 / std::sqrt(1.0 - gamma * gamma);
    const Realization r = ordered_realization(test::xy_spec(50, gamma), jh, 1.0);
    const GroundSolution sol = solve_ground(build_quadratic_form(r));
    CHECK(sol.degenerate);

    const CorrelatorTable table = correlators(sol, {{0, 1}, {0, 10}, {0, 25}});
    for (const auto& e : table.entries) {
        CHECK(e.tzz == doctest::Approx(e.mz_i * e.mz_j).epsilon(1e-8));
        CHECK(concurrence(two_site_rdm(e)) < 1e-6);
    }
}

TEST_CASE("translation invariance of ordered periodic correlators") {
    const Realization r = ordered_realization(test::xy_spec(24, 0.5), 0.8, 1.0);
    const GroundSolution sol = solve_ground(build_quadratic_form(r));
    const CorrelatorTable table =
        correlators(sol, {{0, 4}, {5, 9}, {13, 17}});
    for (std::size_t k = 1; k < table.entries.size(); ++k) {
        CHECK(table.entries[k].txx ==
              doctest::Approx(table.entries[0].txx).epsilon(1e-10));
        CHECK(table.entries[k].tyy ==
              doctest::Approx(table.entries[0].tyy).epsilon(1e-10));
        CHECK(table.entries[k].tzz ==
              doctest::Approx(table.entries[0].tzz).epsilon(1e-10));
    }
    // Toeplitz property of G itself.
    for (int d : {1, 3, 7}) {
        for (int i = 0; i + d < 20; ++i)
            CHECK(sol.g_matrix(i, i + d) ==
                  doctest::Approx(sol.g_matrix(i + 1, i + d + 1)).epsilon(1e-10));
    }
}

TEST_CASE("string determinant at r=1 reduces to single G elements") {
    DisorderSpec dis{DisorderTarget::coupling, 0.9, 1.0, 1.0};
    const Realization r = sample_realization(test::xy_spec(12, 0.5), dis, 8, 0);
    const GroundSolution sol = solve_ground(build_quadratic_form(r));
    const CorrelatorTable table = correlators(sol, {{3, 4}});
    CHECK(table.entries[0].txx == doctest::Approx(sol.g_matrix(3, 4)).epsilon(1e-12));
    CHECK(table.entries[0].tyy == doctest::Approx(sol.g_matrix(4, 3)).epsilon(1e-12));
}

TEST_CASE("two-site states from correlators are valid density matrices") {
    DisorderSpec dis{DisorderTarget::field, 1.1, 1.0, 1.0};
    for (int k = 0; k < 10; ++k) {
        const Realization r = sample_realization(test::xy_spec(16, 0.5), dis, 777, k);
        const GroundSolution sol = solve_ground(build_quadratic_form(r));
        const CorrelatorTable table = correlators(sol, {{0, 1}, {0, 5}, {2, 9}});
        for (const auto& e : table.entries) {
            const TwoSiteState st = two_site_rdm(e);
            st.validate();
            CHECK(std::abs(st.rho.trace().real() - 1.0) < 1e-12);
        }
    }
}

TEST_CASE("xyz input is rejected") {
    const Realization r = ordered_realization(test::xyz_spec(8, 0.5, 0.3), 0.5, 1.0);
    CHECK_THROWS_AS((void)build_quadratic_form(r), std::invalid_argument);
}

TEST_CASE("csv dumps carry the expected headers") {
    const Realization r = ordered_realization(test::xy_spec(6, 0.5), 0.5, 1.0);
    const GroundSolution sol = solve_ground(build_quadratic_form(r));
    const CorrelatorTable table = correlators(sol, {{0, 2}});
    std::ostringstream csv;
    dump_correlators_csv(table, csv);
    CHECK(csv.str().rfind("i,j,mz_i,mz_j,txx,tyy,tzz\n", 0) == 0);
    std::ostringstream gcsv;
    dump_g_matrix_csv(sol.g_matrix, gcsv);
    CHECK(!gcsv.str().empty());
}
