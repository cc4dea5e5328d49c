#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "njl/eigensolve.hpp"
#include "njl/hamiltonian.hpp"
#include "njl/symmetry.hpp"

using namespace njl;

namespace {
const cplx I(0, 1);
}

TEST_CASE("two-site hopping spectrum") {
    // both bonds of the L=1 ring add up, giving +-2|kappa| per flavor
    const double kappa = 0.7;
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator hk = build_hopping(space, kappa);
    CHECK(hk.hermiticity_residual() < 1e-13);

    MatC blk(hk.block(1));
    auto ev = eigvalsh_inplace(blk);
    REQUIRE(ev.size() == 6);
    for (int i = 0; i < 3; ++i) {
        CHECK(ev(i) == doctest::Approx(-2 * kappa).epsilon(1e-12));
        CHECK(ev(5 - i) == doctest::Approx(2 * kappa).epsilon(1e-12));
    }

    // single-particle block has the expected 2i kappa structure per flavor
    // (modes are site-major, flavor-minor: |x=0,f=1> is column 0, |x=1,f=1>
    // is column 3)
    CHECK(std::abs(blk(0, 0)) < 1e-14);

    // flavor-resolved number conservation
    for (int f = 1; f <= 3; ++f) {
        SparseOperator nf = SparseOperator::zero(space);
        for (long r = 0; r < 2; ++r)
            nf += number_op(space, space.mode_of(r, f));
        CHECK(commutator(hk, nf).max_abs() < 1e-13);
    }
}

TEST_CASE("interaction expectation in the Neel-type product state") {
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator hint = build_interaction(space, 1.0);
    CHECK(hint.hermiticity_residual() < 1e-12);

    // global charges commute
    for (int a = 1; a <= 8; ++a) {
        std::vector<cplx> ones(space.site_list.size(), 1.0);
        SparseOperator q = smeared_current(space, a, ones);
        CHECK(commutator(hint, q).max_abs() < 1e-12);
    }
}

TEST_CASE("order parameter properties") {
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator o = build_order_parameter(space);
    CHECK(o.hermiticity_residual() < 1e-13);
    // purely imaginary entries in the occupation basis
    CHECK((o + o.conjugate()).max_abs() < 1e-13);
    // invariant under particle-hole conjugation
    UnitaryOp ph = particle_hole(space);
    CHECK((ph.conjugate(o.to_full()) - o.to_full()).max_abs() < 1e-12);
}

TEST_CASE("total Hamiltonian invariances") {
    FockSpace space = make_fock_space({1, 1, 3});
    ModelParams p{0.4, 1.3, 0.25};
    SparseOperator h = build_total(space, p);
    CHECK(h.hermiticity_residual() < 1e-12);
    CHECK(commutator(h, total_number_op(space)).max_abs() < 1e-12);

    UnitaryOp ph = particle_hole(space);
    SparseOperator hf = h.to_full();
    CHECK((ph.conjugate(hf) - hf).max_abs() < 1e-11);

    // Q2 and Q8 commute even at m > 0
    std::vector<cplx> ones(space.site_list.size(), 1.0);
    CHECK(commutator(h, smeared_current(space, 2, ones)).max_abs() < 1e-12);
    CHECK(commutator(h, smeared_current(space, 8, ones)).max_abs() < 1e-12);
}

TEST_CASE("completed squares reproduce the interaction at h=0") {
    for (int flavors : {2, 3}) {
        for (int L : {1, 2}) {
            FockSpace space = make_fock_space({1, L, flavors});
            ModelParams p{0.3, 1.7, 0.1};
            SparseOperator total = build_total(space, p);
            double scale = std::max(1.0, total.max_abs());
            std::vector<int> channels{3};
            if (flavors == 3) {
                channels.push_back(4);
                channels.push_back(7);
            }
            for (int ch : channels) {
                SourcedBuilder b(space, p, ch);
                CHECK((b.at_zero() - total).max_abs() / scale < 1e-12);
            }
        }
    }
    // channels 4 and 7 are SU(3)-only
    FockSpace su2 = make_fock_space({1, 1, 2});
    CHECK_THROWS(build_sourced(su2, {0.1, 1.0, 0.0},
                               SourceField::zeros(su2.spec), 4));
    CHECK_THROWS(build_sourced_channel7(su2, {0.1, 1.0, 0.0},
                                        SourceField::zeros(su2.spec)));
}

TEST_CASE("sourced Hamiltonian equals base plus linear source") {
    FockSpace space = make_fock_space({1, 1, 3});
    ModelParams p{0.2, 0.9, 0.15};
    std::mt19937_64 rng(11);
    auto u01 = [&rng]() { return double(rng() >> 11) * 0x1.0p-53; };
    for (int ch : {3, 4, 7}) {
        SourceField h = SourceField::zeros(space.spec);
        for (auto& v : h.v) v = 2 * u01() - 1;
        SourcedBuilder builder(space, p, ch);
        SparseOperator built = builder.build(h);
        CHECK(built.hermiticity_residual() < 1e-12);

        // independent route: staggered weights through the linear term
        const LatticeSpec& spec = space.spec;
        std::vector<cplx> w(space.site_list.size(), 0.0);
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
            const Site& x = space.site_list[r];
            for (int mu = 1; mu <= spec.nu; ++mu) {
                long rm = site_rank(spec, neighbor(spec, x, mu, -1));
                w[r] += double(parity(x)) * h.at(mu, r) +
                        double(parity(space.site_list[rm])) * h.at(mu, rm);
            }
        }
        GeneratorSet gens =
            ch == 7 ? tilde_generator_set() : generator_set(3);
        SparseOperator lin = SparseOperator::zero(space);
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r)
            lin += SparseOperator::from_poly(
                space, s_current_poly(space, r, ch, gens).scaled(w[r]));
        if (ch == 7) {
            SparseOperator v = v_fock_unitary(space);
            lin = v * lin * v.adjoint();
        }
        SparseOperator expect =
            build_total(space, p) + lin.scaled(p.g) +
            SparseOperator::identity(space).scaled(0.5 * p.g * h.norm_sq());
        CHECK((built - expect).max_abs() < 1e-11);
    }
}

TEST_CASE("smeared current basics") {
    FockSpace space = make_fock_space({1, 2, 3});
    std::vector<cplx> zero(space.site_list.size(), 0.0);
    CHECK(smeared_current(space, 3, zero).max_abs() < 1e-15);

    // p = 0 momentum mode is the normalized global charge
    Momentum p0;
    p0.comp = {0.0};
    std::vector<cplx> ones(space.site_list.size(), 1.0);
    SparseOperator q = smeared_current(space, 3, ones);
    SparseOperator sp0 = momentum_current(space, 3, p0);
    CHECK((sp0.scaled(std::sqrt(4.0)) - q).max_abs() < 1e-13);
}
