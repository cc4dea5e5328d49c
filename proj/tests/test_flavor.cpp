#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "njl/flavor.hpp"

using namespace njl;

TEST_CASE("explicit generator entries") {
    CHECK(gell_mann(3)(0, 0).real() == doctest::Approx(1.0));
    CHECK(gell_mann(3)(1, 1).real() == doctest::Approx(-1.0));
    CHECK(gell_mann(3)(2, 2).real() == doctest::Approx(0.0));
    CHECK(gell_mann(8)(2, 2).real() ==
          doctest::Approx(-2.0 / std::sqrt(3.0)));
    CHECK(gell_mann(2).real().cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS(gell_mann(9));
    CHECK_THROWS(pauli(4));
}

TEST_CASE("hermitian, traceless, normalized") {
    for (int flavors : {2, 3}) {
        GeneratorSet gs = generator_set(flavors);
        for (int a = 1; a <= gs.count(); ++a) {
            const MatC& m = gs.matrix(a);
            CHECK((m - MatC(m.adjoint())).cwiseAbs().maxCoeff() < 1e-15);
            CHECK(std::abs(m.trace()) < 1e-15);
            for (int b = 1; b <= gs.count(); ++b) {
                cplx t = (gs.matrix(a) * gs.matrix(b)).trace();
                CHECK(std::abs(t - (a == b ? 2.0 : 0.0)) < 1e-14);
            }
        }
    }
}

TEST_CASE("doubled structure constants") {
    StructureConstants f = structure_constants(3);
    CHECK(f(1, 2, 3) == doctest::Approx(2.0));
    CHECK(f(4, 5, 8) == doctest::Approx(std::sqrt(3.0)));
    CHECK(f(6, 7, 8) == doctest::Approx(std::sqrt(3.0)));
    CHECK(f(1, 4, 7) == doctest::Approx(1.0));
    CHECK(f(2, 4, 6) == doctest::Approx(1.0));
    CHECK(f(2, 5, 7) == doctest::Approx(1.0));
    CHECK(f(3, 4, 5) == doctest::Approx(1.0));
    CHECK(f(1, 5, 6) == doctest::Approx(-1.0));
    CHECK(f(3, 6, 7) == doctest::Approx(-1.0));
    CHECK(f(1, 2, 4) == doctest::Approx(0.0));

    // total antisymmetry
    for (int a = 1; a <= 8; ++a)
        for (int b = 1; b <= 8; ++b)
            for (int c = 1; c <= 8; ++c) {
                CHECK(f(a, b, c) == doctest::Approx(-f(b, a, c)));
                CHECK(f(a, b, c) == doctest::Approx(-f(a, c, b)));
            }

    StructureConstants f2 = structure_constants(2);
    CHECK(f2(1, 2, 3) == doctest::Approx(2.0));
    CHECK(f2(2, 3, 1) == doctest::Approx(2.0));
    CHECK(f2(1, 3, 2) == doctest::Approx(-2.0));
}

TEST_CASE("reality tags") {
    GeneratorSet g3 = generator_set(3);
    CHECK(g3.imaginary_channels() == std::vector<int>{2, 5, 7});
    GeneratorSet g2 = generator_set(2);
    CHECK(g2.imaginary_channels() == std::vector<int>{2});
}
