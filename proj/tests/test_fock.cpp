#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "njl/fock.hpp"

using namespace njl;

namespace {
const cplx I(0, 1);

double op_diff(const SparseOperator& a, const SparseOperator& b) {
    return (a - b).max_abs();
}
}  // namespace

TEST_CASE("canonical anticommutation relations") {
    // SU(3) two-site chain: 6 modes, checked for every mode pair
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator id = SparseOperator::identity(space).to_full();
    for (long p = 0; p < space.M; ++p)
        for (long q = 0; q < space.M; ++q) {
            SparseOperator cp = creation(space, p);
            SparseOperator aq = annihilation(space, q);
            SparseOperator anti = aq * cp + cp * aq;
            if (p == q)
                CHECK(op_diff(anti, id) < 1e-14);
            else
                CHECK(anti.max_abs() < 1e-14);
            SparseOperator anti2 =
                annihilation(space, p) * aq + aq * annihilation(space, p);
            CHECK(anti2.max_abs() < 1e-14);
        }
}

TEST_CASE("vacuum and single occupation") {
    FockSpace space = make_fock_space({1, 1, 3});
    // psi^dagger_1(x0)|0> has amplitude +1 on the single-bit state
    SparseOperator c0 = creation(space, 0);
    VecC vac = VecC::Zero(space.dim_full());
    vac(0) = 1.0;
    VecC v = c0.full() * vac;
    CHECK(std::abs(v(1) - 1.0) < 1e-15);
    CHECK(v.norm() == doctest::Approx(1.0));
    // annihilating the vacuum gives zero
    CHECK((annihilation(space, 0).full() * vac).norm() < 1e-15);
    // antisymmetry of two creations
    SparseOperator c1 = creation(space, 1);
    CHECK(op_diff(c1 * c0, (c0 * c1).scaled(-1.0)) < 1e-14);
}

TEST_CASE("number operators") {
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator ntot = total_number_op(space);
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        uint32_t mask = static_cast<uint32_t>(rng()) &
                        ((1u << space.M) - 1);
        int N = std::popcount(mask);
        int pos = space.pos_in_sector[mask];
        CHECK(std::real(ntot.block(N).coeff(pos, pos)) ==
              doctest::Approx(N));
    }
    // single mode occupancy is 0/1 diagonal
    SparseOperator n0 = number_op(space, 0);
    CHECK(n0.hermiticity_residual() < 1e-15);
    CHECK(n0.norm() == doctest::Approx(1.0));
}

TEST_CASE("majorana algebra") {
    FockSpace space = make_fock_space({1, 1, 2});
    SparseOperator id = SparseOperator::identity(space).to_full();
    for (long p = 0; p < space.M; ++p) {
        SparseOperator xi = majorana_xi(space, p);
        SparseOperator eta = majorana_eta(space, p);
        CHECK(xi.hermiticity_residual() < 1e-14);
        CHECK(eta.hermiticity_residual() < 1e-14);
        CHECK(op_diff(xi * xi, id) < 1e-14);
        CHECK(op_diff(eta * eta, id) < 1e-14);
        for (long q = 0; q < space.M; ++q) {
            SparseOperator xq = majorana_xi(space, q);
            SparseOperator eq_ = majorana_eta(space, q);
            CHECK((xi * eq_ + eq_ * xi).max_abs() < 1e-14);
            if (p != q) {
                CHECK((xi * xq + xq * xi).max_abs() < 1e-14);
                CHECK((eta * eq_ + eq_ * eta).max_abs() < 1e-14);
            }
        }
    }
    // bilinear identity: psi^d_i(x) psi_i(x) - psi^d_i(y) psi_i(x) pattern
    // (xi_i(x) xi_i(y) + eta_i(x) eta_i(y))/2 = psi^d(x)psi(y) - psi^d(y)psi(x)
    // holds for distinct sites x != y
    long mx = space.mode_of(0L, 1), my = space.mode_of(1L, 1);
    SparseOperator lhs =
        (majorana_xi(space, mx) * majorana_xi(space, my) +
         majorana_eta(space, mx) * majorana_eta(space, my))
            .scaled(0.5);
    SparseOperator rhs = creation(space, mx) * annihilation(space, my) -
                         creation(space, my) * annihilation(space, mx);
    CHECK(op_diff(lhs, rhs) < 1e-14);
}

TEST_CASE("operator algebra basics") {
    FockSpace space = make_fock_space({1, 1, 2});
    SparseOperator a = s_current(space, {0}, 1);
    CHECK(commutator(a, a).max_abs() < 1e-15);
    CHECK(op_diff(a.adjoint().adjoint(), a) < 1e-15);
    CHECK(SparseOperator::identity(space).norm() == doctest::Approx(1.0));
}

TEST_CASE("sector decomposition") {
    FockSpace space = make_fock_space({1, 1, 2});
    SparseOperator id = SparseOperator::identity(space);
    for (int N = 0; N <= space.M; ++N) {
        long expect = 1;
        for (int k = 1; k <= N; ++k)
            expect = expect * (space.M - k + 1) / k;
        CHECK(id.block(N).rows() == expect);
    }
    // a non-conserving operator must be rejected
    SparseOperator c = creation(space, 0);
    CHECK_THROWS(sector_decompose(c));
    // while a conserving full-rep operator splits cleanly
    SparseOperator n = total_number_op(space).to_full();
    auto blocks = sector_decompose(n);
    CHECK(blocks.size() == static_cast<size_t>(space.M + 1));
}

TEST_CASE("currents conserve particle number") {
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator ntot = total_number_op(space);
    for (int a = 1; a <= 8; ++a) {
        SparseOperator s = s_current(space, {0}, a);
        CHECK(commutator(s, ntot).max_abs() < 1e-14);
        CHECK(s.hermiticity_residual() < 1e-14);
    }
}

TEST_CASE("momentum current adjoint") {
    FockSpace space = make_fock_space({1, 2, 3});
    auto ps = momenta(space.spec);
    for (const auto& p : ps) {
        Momentum mp;
        for (double c : p.comp) mp.comp.push_back(-c);
        SparseOperator sp = momentum_current(space, 3, p);
        SparseOperator sm = momentum_current(space, 3, mp);
        CHECK(op_diff(sp.adjoint(), sm) < 1e-13);
    }
}

TEST_CASE("jordan-wigner sign convention") {
    FockSpace space = make_fock_space({1, 1, 2});
    // acting on |0110..>, the sign counts occupied modes below
    FermiTerm t{1.0, {{2, false}}};
    auto r = apply_term(t, 0b0110u);
    REQUIRE(r.has_value());
    CHECK(r->second == -1);  // one occupied mode below index 2
    auto r2 = apply_term(FermiTerm{1.0, {{0, true}}}, 0b0110u);
    REQUIRE(r2.has_value());
    CHECK(r2->second == 1);
}
