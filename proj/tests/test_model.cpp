#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qcl/common.hpp"
#include "qcl/model.hpp"
#include "qcl/rng.hpp"
#include "testutil.hpp"

using namespace qcl;

TEST_CASE("degenerate distribution gives constant couplings") {
    const auto spec = test::xy_spec(12, 0.5);
    DisorderSpec dis{DisorderTarget::coupling, 0.5, 1.0, 0.0};
    const Realization r = sample_realization(spec, dis, 42, 7);
    for (int i = 0; i < spec.n_sites; ++i) {
        CHECK(r.couplings(i) == 0.5);
        CHECK(r.fields(i) == 1.0);
    }
}

TEST_CASE("same seed and index reproduce the realization bitwise") {
    const auto spec = test::xy_spec(20, 0.5);
    DisorderSpec dis{DisorderTarget::field, 0.7, 1.0, 1.0};
    const Realization a = sample_realization(spec, dis, 123456789ULL, 3);
    const Realization b = sample_realization(spec, dis, 123456789ULL, 3);
    CHECK(a.fields == b.fields);
    CHECK(a.couplings == b.couplings);

    const Realization c = sample_realization(spec, dis, 123456789ULL, 4);
    CHECK(a.fields != c.fields);
}

TEST_CASE("sample mean obeys the central-limit bound") {
    const auto spec = test::xy_spec(10, 0.5);
    DisorderSpec dis{DisorderTarget::coupling, 0.5, 1.0, 1.0};
    const int reps = 10000;
    double sum = 0.0;
    for (int k = 0; k < reps; ++k) {
        const Realization r = sample_realization(spec, dis, 987654321ULL, k);
        sum += r.couplings.sum();
    }
    const double mean = sum / (reps * spec.n_sites);
    const double bound = 3.0 / std::sqrt(double(reps) * spec.n_sites);
    CHECK(std::abs(mean - 0.5) < bound);
}

TEST_CASE("ordered realization matches zero-width sampling for both targets") {
    const auto spec = test::xy_spec(50, 0.5);
    const Realization ord = ordered_realization(spec, 0.5, 1.0);
    for (auto target : {DisorderTarget::coupling, DisorderTarget::field}) {
        DisorderSpec dis{target, 0.5, 1.0, 0.0};
        const Realization s = sample_realization(spec, dis, 1, 0);
        CHECK(ord.couplings == s.couplings);
        CHECK(ord.fields == s.fields);
    }
}

TEST_CASE("decoupled two-site chain") {
    const Realization r = ordered_realization(test::xy_spec(2, 0.5, Boundary::open), 0.0, 1.0);
    CHECK(r.couplings(0) == 0.0);
    CHECK(r.fields(1) == 1.0);
}

TEST_CASE("negative index and bad specs are rejected") {
    const auto spec = test::xy_spec(4, 0.5);
    DisorderSpec dis{DisorderTarget::coupling, 0.5, 1.0, 1.0};
    CHECK_THROWS_AS((void)sample_realization(spec, dis, 1, -1), ConfigError);

    ChainSpec bad = spec;
    bad.n_sites = 1;
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    ChainSpec xyz_periodic = test::xyz_spec(8, 0.5, 0.3);
    xyz_periodic.boundary = Boundary::periodic;
    CHECK_THROWS_AS(xyz_periodic.validate(), ConfigError);
}

TEST_CASE("audit line round-trips") {
    const auto spec = test::xy_spec(6, 0.5);
    DisorderSpec dis{DisorderTarget::coupling, -0.3, 2.0, 1.0};
    const Realization r = sample_realization(spec, dis, 55, 9);
    const Realization back = realization_from_line(realization_to_line(r), spec);
    CHECK(back.realization_index == 9);
    CHECK(back.couplings == r.couplings);
    CHECK(back.fields == r.fields);
}

TEST_CASE("gaussian stream moments are sane") {
    auto rng = RngStream::derive(2024, 0);
    const int n = 200000;
    double s1 = 0, s2 = 0;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        s1 += g;
        s2 += g * g;
    }
    CHECK(std::abs(s1 / n) < 0.01);
    CHECK(std::abs(s2 / n - 1.0) < 0.02);
}
