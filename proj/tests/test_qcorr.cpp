#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "qcl/freefermion.hpp"
#include "qcl/qcorr.hpp"
#include "qcl/rng.hpp"
#include "testutil.hpp"

using namespace qcl;
using test::bell_phi_plus;
using test::product_state;
using test::werner;

namespace {

/// Haar-ish random single-qubit unitary from four gaussians.
Eigen::Matrix2cd random_unitary(RngStream& rng) {
    Eigen::Matrix2cd m;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            m(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    const Eigen::HouseholderQR<Eigen::Matrix2cd> qr(m);
    Eigen::Matrix2cd q = qr.householderQ();
    Eigen::Matrix2cd r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < 2; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

}  // namespace

TEST_CASE("concurrence of the Bell state is 1 and of products 0") {
    CHECK(concurrence(bell_phi_plus()) == doctest::Approx(1.0).epsilon(1e-10));
    Eigen::Vector2cd up(1, 0), plus(std::sqrt(0.5), std::sqrt(0.5));
    CHECK(concurrence(product_state(up, plus)) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("Werner state concurrence matches (3p-1)/2") {
    // Eigenvalues of rho rho~ for a Bell-diagonal mixture are known in closed
    // form; at p = 0.5 the concurrence is 0.25.
    CHECK(concurrence(werner(0.5)) == doctest::Approx(0.25).epsilon(1e-10));
    CHECK(concurrence(werner(1.0 / 3.0)) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(concurrence(werner(0.8)) == doctest::Approx(0.7).epsilon(1e-10));
}

TEST_CASE("convex mixtures of product states are separable") {
    RngStream rng = RngStream::derive(7, 0);
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    double total = 0;
    for (int k = 0; k < 5; ++k) {
        Eigen::Vector2cd a(std::complex<double>(rng.next_gaussian(), rng.next_gaussian()),
                           std::complex<double>(rng.next_gaussian(), rng.next_gaussian()));
        Eigen::Vector2cd b(std::complex<double>(rng.next_gaussian(), rng.next_gaussian()),
                           std::complex<double>(rng.next_gaussian(), rng.next_gaussian()));
        a.normalize();
        b.normalize();
        const double w = rng.next_double() + 0.1;
        rho += w * product_state(a, b).rho;
        total += w;
    }
    TwoSiteState st;
    st.rho = rho / total;
    CHECK(concurrence(st) <= 1e-9);
}

TEST_CASE("mutual information reference values") {
    TwoSiteState mixed;
    mixed.rho = 0.25 * Eigen::Matrix4cd::Identity();
    CHECK(mutual_information(mixed) == doctest::Approx(0.0).epsilon(1e-12));

    CHECK(mutual_information(bell_phi_plus()) == doctest::Approx(2.0).epsilon(1e-10));

    TwoSiteState classical;
    classical.rho.setZero();
    classical.rho(0, 0) = classical.rho(3, 3) = 0.5;
    CHECK(mutual_information(classical) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("discord of product and Bell states") {
    Eigen::Vector2cd up(1, 0), plus(std::sqrt(0.5), std::sqrt(0.5));
    const TwoSiteState prod = product_state(up, plus);
    const DiscordResult dn = discord_numeric(prod);
    CHECK(std::abs(dn.discord) < 1e-8);

    const DiscordResult bell = discord_numeric(bell_phi_plus());
    CHECK(bell.discord == doctest::Approx(1.0).epsilon(1e-7));
    CHECK(bell.classical_correlation == doctest::Approx(1.0).epsilon(1e-7));

    const DiscordResult bell_cf = discord_xstate_closed_form(bell_phi_plus());
    CHECK(bell_cf.discord == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("numeric minimization never exceeds the closed form on X states") {
    RngStream rng = RngStream::derive(11, 0);
    int checked = 0;
    for (int k = 0; k < 120; ++k) {
        // Random X states via rejection on positivity. The optimal basis for
        // these need not be x, so only the one-sided bound holds in general.
        const double mzi = 2 * rng.next_double() - 1;
        const double mzj = 2 * rng.next_double() - 1;
        const double txx = 2 * rng.next_double() - 1;
        const double tyy = (2 * rng.next_double() - 1) * std::abs(txx);
        const double tzz = 2 * rng.next_double() - 1;
        TwoSiteState st;
        bool valid = false;
        // Shrink toward the maximally mixed state until positive.
        for (double s = 1.0; s > 0.05; s *= 0.5) {
            try {
                st = two_site_state_from_correlators(s * mzi, s * mzj, s * txx, s * tyy, s * tzz);
                valid = true;
                break;
            } catch (...) {
            }
        }
        if (!valid || !xstate_closed_form_valid(st)) continue;
        ++checked;
        const DiscordResult cf = discord_xstate_closed_form(st);
        const DiscordResult num = discord_numeric(st);
        // The numeric search includes the x-basis point, so it can only do
        // better (find a lower conditional entropy, i.e. lower discord).
        CHECK(num.discord <= cf.discord + 1e-8);
        CHECK(cf.discord == doctest::Approx(cf.mutual_information - cf.classical_correlation)
                                .epsilon(1e-12));
        CHECK(num.discord >= -1e-9);
        CHECK(num.discord <= num.mutual_information + 1e-9);
    }
    CHECK(checked > 30);
}

TEST_CASE("closed form matches numeric minimization on chain-ground-state RDMs") {
    // The x-basis measurement is the optimal one for the two-site states of
    // these chains; harvested states should agree to 1e-4 bits.
    DisorderSpec glass{DisorderTarget::coupling, 0.5, 1.0, 1.0};
    DisorderSpec field{DisorderTarget::field, 1.5, 1.0, 1.0};
    int checked = 0;
    double worst = 0.0;
    for (int k = 0; k < 6; ++k) {
        for (const auto& dis : {glass, field}) {
            const Realization r = sample_realization(test::xy_spec(12, 0.5), dis, 2025, k);
            const GroundSolution sol = solve_ground(build_quadratic_form(r));
            const CorrelatorTable table = correlators(sol, {{0, 1}, {0, 3}, {0, 6}, {2, 5}});
            for (const auto& e : table.entries) {
                const TwoSiteState st = two_site_rdm(e);
                if (!xstate_closed_form_valid(st)) continue;
                const DiscordResult cf = discord_xstate_closed_form(st);
                const DiscordResult num = discord_numeric(st);
                worst = std::max(worst, std::abs(num.discord - cf.discord));
                CHECK(num.discord <= cf.discord + 1e-8);
                ++checked;
            }
        }
    }
    CHECK(checked >= 40);
    CHECK(worst < 1e-4);
}

TEST_CASE("closed form refuses non-X states") {
    RngStream rng = RngStream::derive(13, 0);
    Eigen::Matrix4cd m;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            m(i, j) = std::complex<double>(rng.next_gaussian(), rng.next_gaussian());
    TwoSiteState st;
    st.rho = m * m.adjoint();
    st.rho /= st.rho.trace();
    CHECK_THROWS_AS((void)discord_xstate_closed_form(st), std::invalid_argument);
}

TEST_CASE("discord is invariant under local unitaries (numeric path)") {
    RngStream rng = RngStream::derive(17, 0);
    const TwoSiteState base = werner(0.6);
    const DiscordResult ref = discord_numeric(base);
    for (int k = 0; k < 4; ++k) {
        const Eigen::Matrix4cd u = kron(random_unitary(rng), random_unitary(rng));
        TwoSiteState rotated;
        rotated.rho = u * base.rho * u.adjoint();
        const DiscordResult rot = discord_numeric(rotated);
        CHECK(std::abs(rot.discord - ref.discord) < 1e-6);
    }
}

TEST_CASE("binary entropy is symmetric and entropies bounded") {
    for (double x : {0.0, 0.1, 0.25, 0.5, 0.77, 1.0}) {
        CHECK(binary_entropy_bits(x) == doctest::Approx(binary_entropy_bits(1 - x)).epsilon(1e-14));
        CHECK(binary_entropy_bits(x) >= 0.0);
        CHECK(binary_entropy_bits(x) <= 1.0);
    }
    CHECK(von_neumann_entropy_bits(0.25 * Eigen::Matrix4cd::Identity()) ==
          doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("monogamy witness arithmetic") {
    const auto zero = monogamy_witness({0.0, 0.0, 0.0});
    CHECK(zero.sum == 0.0);
    CHECK(!zero.witness_violated);

    const auto hot = monogamy_witness({0.4, 0.4, 0.4});
    CHECK(hot.sum == doctest::Approx(1.2).epsilon(1e-14));
    CHECK(hot.witness_violated);

    CHECK_THROWS_AS((void)monogamy_witness({}), std::invalid_argument);
    CHECK_THROWS_AS((void)monogamy_witness({1.5}), std::invalid_argument);
}
