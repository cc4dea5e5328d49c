#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "njl/lattice.hpp"

using namespace njl;

TEST_CASE("site enumeration and ordering") {
    LatticeSpec s1{1, 1, 3};
    auto xs = sites(s1);
    REQUIRE(xs.size() == 2);
    CHECK(xs[0] == Site{0});
    CHECK(xs[1] == Site{1});

    LatticeSpec s2{2, 2, 3};
    CHECK(sites(s2).size() == 16);
    LatticeSpec s3{3, 1, 3};
    CHECK(sites(s3).size() == 8);

    // rank round trip, lexicographic with x^(1) most significant
    auto all = sites(s2);
    for (long r = 0; r < static_cast<long>(all.size()); ++r)
        CHECK(site_rank(s2, all[r]) == r);
    CHECK(all[0][0] == -1);
}

TEST_CASE("staggered phases") {
    LatticeSpec spec{2, 1, 3};
    CHECK(staggered_phase(spec, {0, 0}, 1) == 1);
    CHECK(staggered_phase(spec, {1, 0}, 1) == -1);
    // theta_2 = x1 (+1 at the boundary x2 = L)
    CHECK(staggered_phase(spec, {1, 1}, 2) == 1);
    CHECK(staggered_phase(spec, {0, 1}, 2) == -1);
    CHECK(staggered_phase(spec, {1, 0}, 2) == -1);
    CHECK_THROWS(staggered_phase(spec, {0, 0}, 3));

    // depends only on the listed coordinates
    LatticeSpec s3{3, 2, 3};
    for (const auto& x : sites(s3)) {
        int t1 = staggered_phase(s3, x, 1);
        CHECK((t1 == 1 || t1 == -1));
        Site y = x;
        y[2] = (y[2] == s3.L) ? -s3.L + 1 : y[2] + 1;  // x^(3) irrelevant for mu<=2
        CHECK(staggered_phase(s3, y, 1) == t1);
        CHECK(staggered_phase(s3, y, 2) == staggered_phase(s3, x, 2));
    }
}

TEST_CASE("neighbors and wrap") {
    LatticeSpec s1{1, 1, 3};
    CHECK(neighbor(s1, {1}, 1) == Site{0});
    LatticeSpec s2{2, 2, 3};
    CHECK(neighbor(s2, {0, 0}, 2) == Site{0, 1});
    LatticeSpec s12{1, 2, 3};
    CHECK(neighbor(s12, {2}, 1) == Site{-1});

    // 2L steps return to the start
    for (const auto& x : sites(s2))
        for (int mu = 1; mu <= 2; ++mu) {
            Site y = x;
            for (int k = 0; k < 2 * s2.L; ++k) y = neighbor(s2, y, mu);
            CHECK(y == x);
        }
}

TEST_CASE("parity") {
    CHECK(parity({0, 0}) == 1);
    CHECK(parity({1, 0}) == -1);
    CHECK(parity({-1, 1}) == 1);
}

TEST_CASE("momentum set and dispersion") {
    LatticeSpec spec{3, 1, 3};
    auto ps = momenta(spec);
    CHECK(ps.size() == 8);
    bool has_q = false;
    for (const auto& p : ps) has_q = has_q || is_corner_Q(p);
    CHECK(has_q);

    Momentum zero;
    zero.comp = {0, 0, 0};
    CHECK(dispersion(zero) == doctest::Approx(0.0));
    CHECK(dispersion(corner_Q(spec)) == doctest::Approx(6.0));
    Momentum p2;
    p2.comp = {M_PI, 0.0};
    CHECK(dispersion(p2) == doctest::Approx(2.0));

    // the set is closed under p -> p + Q and E_{p+Q} = sum(1 + cos p)
    LatticeSpec s22{2, 2, 3};
    auto ps2 = momenta(s22);
    for (const auto& p : ps2) {
        Momentum q = shift_by_Q(p);
        bool found = false;
        for (const auto& r : ps2) {
            double d = 0;
            for (int i = 0; i < s22.nu; ++i)
                d += std::abs(r.comp[i] - q.comp[i]);
            found = found || d < 1e-12;
        }
        CHECK(found);
        double expect = 0.0;
        for (double c : p.comp) expect += 1.0 + std::cos(c);
        CHECK(dispersion(q) == doctest::Approx(expect).epsilon(1e-12));
    }
}
