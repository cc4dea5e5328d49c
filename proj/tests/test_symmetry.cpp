#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "njl/diagnostics.hpp"
#include "njl/hamiltonian.hpp"
#include "njl/symmetry.hpp"

using namespace njl;

TEST_CASE("particle-hole conjugates every mode") {
    FockSpace space = make_fock_space({1, 1, 2});
    UnitaryOp u = particle_hole(space);
    CHECK(u.unitarity_residual() < 1e-12);
    for (long m = 0; m < space.M; ++m) {
        SparseOperator psi = annihilation(space, m);
        SparseOperator psid = creation(space, m);
        CHECK((u.conjugate(psi) - psid).max_abs() < 1e-12);
    }
}

TEST_CASE("odd-sublattice conjugation of modes") {
    FockSpace space = make_fock_space({1, 1, 3});
    UnitaryOp u = u_odd(space);
    CHECK(u.unitarity_residual() < 1e-12);
    for (long r = 0; r < 2; ++r) {
        bool odd = parity(space.site_list[r]) == -1;
        for (int f = 1; f <= 3; ++f) {
            SparseOperator psi = annihilation(space, space.mode_of(r, f));
            SparseOperator expect =
                odd ? creation(space, space.mode_of(r, f)) : psi;
            CHECK((u.conjugate(psi) - expect).max_abs() < 1e-12);
        }
    }
}

TEST_CASE("full symmetry suite on the smallest lattices") {
    for (int flavors : {2, 3}) {
        FockSpace space = make_fock_space({1, 1, flavors});
        ModelParams p{0.3, 1.0, 0.2};
        auto reports = symmetry_checks(space, p);
        for (const auto& r : reports) {
            INFO(r.name, " lhs=", r.lhs, " rhs=", r.rhs);
            CHECK(r.passed);
        }
    }
}

TEST_CASE("gauge map and boundary shift in two dimensions") {
    FockSpace space = make_fock_space({2, 1, 2});
    ModelParams p{0.4, 0.8, 0.0};
    auto reports = symmetry_checks(space, p);
    for (const auto& r : reports) {
        INFO(r.name, " lhs=", r.lhs, " rhs=", r.rhs);
        CHECK(r.passed);
    }
}

TEST_CASE("reflection positivity") {
    FockSpace space = make_fock_space({1, 1, 3});
    double worst = rp_min_trace(space, 100, 12345);
    CHECK(worst > -1e-9);
}

TEST_CASE("lattice shift conjugation moves sites") {
    FockSpace space = make_fock_space({1, 2, 3});
    UnitaryOp t = lattice_shift(space, 1, 1);
    CHECK(t.unitarity_residual() < 1e-12);
    // T S(x) T^dagger = S(x + e_1)
    const Site x0 = space.site_list[0];
    Site x1 = neighbor(space.spec, x0, 1);
    SparseOperator lhs =
        t.op * s_current(space, x0, 3) * t.op.adjoint();
    CHECK((lhs - s_current(space, x1, 3)).max_abs() < 1e-12);
}
