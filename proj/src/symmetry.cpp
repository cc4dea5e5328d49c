#include "njl/symmetry.hpp"

#include <Eigen/Dense>
#include <bit>
#include <random>

#include "njl/hamiltonian.hpp"

namespace njl {

namespace {
const cplx I(0.0, 1.0);

// dense matrix of a polynomial on an isolated F-mode register
MatC local_dense(const FermiPoly& p, int F) {
    const long d = 1L << F;
    MatC m = MatC::Zero(d, d);
    for (long col = 0; col < d; ++col)
        for (const auto& t : p.terms) {
            auto r = apply_term(t, static_cast<uint32_t>(col));
            if (r) m(r->first, col) += t.coeff * double(r->second);
        }
    return m;
}

// exp(i H_loc) for a hermitian local generator, block by site occupation
MatC local_exp_i(const MatC& gen, int F) {
    const long d = 1L << F;
    MatC out = MatC::Zero(d, d);
    for (int n = 0; n <= F; ++n) {
        std::vector<long> idx;
        for (long s = 0; s < d; ++s)
            if (std::popcount(static_cast<unsigned>(s)) == n) idx.push_back(s);
        MatC blk(idx.size(), idx.size());
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                blk(i, j) = gen(idx[i], idx[j]);
        Eigen::SelfAdjointEigenSolver<MatC> es(blk);
        MatC e = es.eigenvectors() *
                 (I * es.eigenvalues().array().cast<cplx>()).exp().matrix().asDiagonal() *
                 es.eigenvectors().adjoint();
        for (size_t i = 0; i < idx.size(); ++i)
            for (size_t j = 0; j < idx.size(); ++j)
                out(idx[i], idx[j]) = e(i, j);
    }
    return out;
}

// u_i(x) = [prod over all other (y,j) of (-1)^{n_j(y)}] (psi^d + psi)
SparseOperator ph_factor(const FockSpace& space, long mode) {
    SparseOperator str = SparseOperator::diagonal(space, [&](uint32_t mask) {
        int n = std::popcount(mask);
        if (mask & (1u << mode)) n -= 1;
        return cplx((n & 1) ? -1.0 : 1.0, 0.0);
    });
    return str.to_full() * majorana_xi(space, mode);
}
}  // namespace

double UnitaryOp::unitarity_residual() const {
    SparseOperator d = op.adjoint() * op;
    if (d.sectored()) {
        SparseOperator id = SparseOperator::identity(*op.space());
        return (d - id).max_abs();
    }
    SpMat id(d.full().rows(), d.full().cols());
    id.setIdentity();
    SparseOperator r = d;
    r.full_mut() = d.full() - id;
    return r.max_abs();
}

UnitaryOp particle_hole(const FockSpace& space) {
    SparseOperator u;
    bool first = true;
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r)
        for (int i = 1; i <= space.spec.flavors; ++i) {
            SparseOperator f = ph_factor(space, space.mode_of(r, i));
            u = first ? f : u * f;
            first = false;
        }
    return {u, "U_PH"};
}

UnitaryOp u_odd(const FockSpace& space) {
    SparseOperator u = SparseOperator::identity(space).to_full();
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        if (parity(space.site_list[r]) != -1) continue;
        for (int i = 1; i <= space.spec.flavors; ++i)
            u = u * ph_factor(space, space.mode_of(r, i));
    }
    return {u, "U_odd"};
}

UnitaryOp u1(const FockSpace& space) {
    const LatticeSpec& spec = space.spec;
    SparseOperator u = SparseOperator::diagonal(space, [&](uint32_t mask) {
        long quarter_turns = 0;
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
            int even_dirs = 0;
            for (int j = 2; j <= spec.nu; ++j)
                if ((space.site_list[r][j - 1] & 1) == 0) ++even_dirs;
            if (!even_dirs) continue;
            for (int i = 1; i <= spec.flavors; ++i)
                if (mask & (1u << space.mode_of(r, i)))
                    quarter_turns += even_dirs;
        }
        static const cplx tbl[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                    cplx(0, -1)};
        return tbl[quarter_turns % 4];
    });
    return {u, "U_1"};
}

UnitaryOp gauge_equivalence(const FockSpace& space, int j) {
    const LatticeSpec& spec = space.spec;
    if (j < 2 || j > spec.nu)
        throw std::invalid_argument("gauge map needs 2 <= j <= nu");
    // product over k < j of the (-1)^n factors on sites with x^(j), x^(k) odd
    SparseOperator u = SparseOperator::diagonal(space, [&](uint32_t mask) {
        long flips = 0;
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
            const Site& x = space.site_list[r];
            if (!(x[j - 1] & 1)) continue;
            int odd_partners = 0;
            for (int k = 1; k < j; ++k)
                if (x[k - 1] & 1) ++odd_partners;
            if (!odd_partners) continue;
            for (int i = 1; i <= spec.flavors; ++i)
                if (mask & (1u << space.mode_of(r, i)))
                    flips += odd_partners;
        }
        return cplx((flips & 1) ? -1.0 : 1.0, 0.0);
    });
    return {u, "U_HA(" + std::to_string(j) + "->1)"};
}

SparseOperator build_hopping_gauge_pattern(const FockSpace& space,
                                           double kappa, int j) {
    const LatticeSpec& spec = space.spec;
    FermiPoly p;
    auto theta_tilde = [&](const Site& x, int mu) -> long {
        long t = 0;
        if (mu == j) {
            t = (x[j - 1] == spec.L) ? 1 : 0;
        } else if (mu > j) {
            for (int k = 1; k < mu; ++k) t += x[k - 1];
            if (x[mu - 1] == spec.L) t += 1;
        } else {
            for (int k = 1; k < mu; ++k) t += x[k - 1];
            t += x[j - 1];
            if (x[mu - 1] == spec.L) t += 1;
        }
        return t;
    };
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        const Site& x = space.site_list[r];
        for (int mu = 1; mu <= spec.nu; ++mu) {
            long ry = site_rank(spec, neighbor(spec, x, mu));
            cplx amp = I * kappa * ((theta_tilde(x, mu) & 1) ? -1.0 : 1.0);
            for (int f = 1; f <= spec.flavors; ++f) {
                int a = static_cast<int>(space.mode_of(r, f));
                int b = static_cast<int>(space.mode_of(ry, f));
                p += FermiPoly::bilinear(amp, a, b);
                p += FermiPoly::bilinear(-amp, b, a);
            }
        }
    }
    return SparseOperator::from_poly(space, p);
}

UnitaryOp boundary_shift(const FockSpace& space, int i, int l) {
    const LatticeSpec& spec = space.spec;
    if (i < 1 || i > spec.nu)
        throw std::invalid_argument("boundary shift: bad direction");
    if (l < -spec.L + 2 || l > spec.L)
        throw std::invalid_argument("boundary shift: bad cut position");
    SparseOperator u = SparseOperator::diagonal(space, [&](uint32_t mask) {
        long flips = 0;
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
            int c = space.site_list[r][i - 1];
            if (c < l || c > spec.L) continue;
            for (int f = 1; f <= spec.flavors; ++f)
                if (mask & (1u << space.mode_of(r, f))) ++flips;
        }
        return cplx((flips & 1) ? -1.0 : 1.0, 0.0);
    });
    return {u, "U_BC"};
}

SparseOperator site_rotation(const FockSpace& space, long site_r, int a,
                             double theta) {
    GeneratorSet gs = generator_set(space.spec.flavors);
    // local generator on one site register
    FermiPoly p;
    const MatC& l = gs.matrix(a);
    for (int i = 1; i <= space.spec.flavors; ++i)
        for (int j = 1; j <= space.spec.flavors; ++j) {
            cplx c = theta * l(i - 1, j - 1);
            if (std::abs(c) < 1e-15) continue;
            p += FermiPoly::bilinear(c, i - 1, j - 1);
        }
    MatC gen = local_dense(p, space.spec.flavors);
    return SparseOperator::lift_local(space, site_r,
                                      local_exp_i(gen, space.spec.flavors));
}

UnitaryOp global_rotation(const FockSpace& space, int a, double theta) {
    SparseOperator u = SparseOperator::identity(space);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r)
        u = u * site_rotation(space, r, a, theta);
    return {u, "U^(" + std::to_string(a) + ")"};
}

SparseOperator v_fock_unitary(const FockSpace& space) {
    if (space.spec.flavors != 3)
        throw std::invalid_argument("spin-1 rotation needs the SU(3) model");
    MatC v = v_spin1_matrix();
    // V is unitary, so its Schur form is diagonal with unitary Q
    Eigen::ComplexSchur<MatC> schur(v);
    MatC q = schur.matrixU();
    MatC a = MatC::Zero(3, 3);
    for (int k = 0; k < 3; ++k) {
        double phase = std::arg(schur.matrixT()(k, k));
        a += phase * q.col(k) * q.col(k).adjoint();
    }
    a = 0.5 * (a + MatC(a.adjoint()));  // hermitian generator, V = exp(iA)
    SparseOperator u = SparseOperator::identity(space);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        FermiPoly p;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) {
                cplx c = a(i - 1, j - 1);
                if (std::abs(c) < 1e-15) continue;
                p += FermiPoly::bilinear(c, i - 1, j - 1);
            }
        MatC gen = local_dense(p, 3);
        u = u * SparseOperator::lift_local(space, r, local_exp_i(gen, 3));
    }
    return u;
}

UnitaryOp lattice_shift(const FockSpace& space, int mu, int steps) {
    const LatticeSpec& spec = space.spec;
    std::vector<int> perm(space.M);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        Site y = neighbor(spec, space.site_list[r], mu, steps);
        long ry = site_rank(spec, y);
        for (int f = 1; f <= spec.flavors; ++f)
            perm[space.mode_of(r, f)] =
                static_cast<int>(space.mode_of(ry, f));
    }
    return {SparseOperator::mode_permutation(space, perm),
            "T(" + std::to_string(mu) + "," + std::to_string(steps) + ")"};
}

Reflection reflection(const FockSpace& space) {
    const LatticeSpec& spec = space.spec;
    Reflection refl;
    refl.space = &space;
    refl.mode_perm.assign(space.M, 0);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        Site y = space.site_list[r];
        y[0] = 1 - y[0];  // reflect across x^(1) = 1/2
        long ry = site_rank(spec, y);
        for (int f = 1; f <= spec.flavors; ++f)
            refl.mode_perm[space.mode_of(r, f)] =
                static_cast<int>(space.mode_of(ry, f));
        if (space.site_list[r][0] <= 0)
            for (int f = 1; f <= spec.flavors; ++f)
                refl.minus_modes.push_back(space.mode_of(r, f));
    }
    refl.perm_op = SparseOperator::mode_permutation(space, refl.mode_perm);
    return refl;
}

SparseOperator Reflection::apply(const SparseOperator& a) const {
    SparseOperator pa = perm_op.sectored() && !a.sectored()
                            ? perm_op.to_full()
                            : perm_op;
    return pa * a.conjugate() * pa.adjoint();
}

double rp_min_trace(const FockSpace& space, int trials, uint64_t seed) {
    Reflection refl = reflection(space);
    std::mt19937_64 rng(seed);
    auto urand = [&rng]() {
        return 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
    };
    const auto& modes = refl.minus_modes;
    double worst = 1e300;
    for (int t = 0; t < trials; ++t) {
        // random polynomial in bilinears on the minus half
        FermiPoly poly;
        int n_terms = 1 + static_cast<int>(rng() % 4);
        for (int k = 0; k < n_terms; ++k) {
            cplx alpha(urand(), urand());
            int depth = 1 + static_cast<int>(rng() % 2);
            FermiPoly prod;
            for (int d = 0; d < depth; ++d) {
                int p = static_cast<int>(modes[rng() % modes.size()]);
                int q = static_cast<int>(modes[rng() % modes.size()]);
                bool dp = rng() & 1, dq = rng() & 1;
                FermiTerm t2{1.0, {{p, dp}, {q, dq}}};
                FermiPoly b;
                b.terms.push_back(t2);
                prod = (d == 0) ? b : prod * b;
            }
            poly += prod.scaled(alpha);
        }
        SparseOperator A = SparseOperator::from_poly_full(space, poly);
        SparseOperator prod = A * refl.apply(A);
        cplx tr(0, 0);
        const SpMat& m = prod.full();
        for (int c = 0; c < m.outerSize(); ++c)
            for (SpMat::InnerIterator it(m, c); it; ++it)
                if (it.row() == c) tr += it.value();
        double scale = std::max(1.0, A.max_abs());
        worst = std::min(worst, tr.real() / (scale * scale));
    }
    return worst;
}

}  // namespace njl
