#pragma once

#include <string>

#include "njl/fock.hpp"

namespace njl {

struct UnitaryOp {
    SparseOperator op;
    std::string label;

    SparseOperator conjugate(const SparseOperator& a) const {
        return op.adjoint() * a * op;  // U^dagger A U
    }
    double unitarity_residual() const;
};

// Product over all (site, flavor) of the particle-hole factors u_i(x);
// conjugation sends psi_j(x) -> psi_j^dagger(x) everywhere.
UnitaryOp particle_hole(const FockSpace& space);

// Single particle-hole factor restricted to the odd-parity sublattice.
UnitaryOp u_odd(const FockSpace& space);

// Diagonal phase i^{n} on sites with even coordinate in directions 2..nu.
UnitaryOp u1(const FockSpace& space);

// Gauge map making direction j look like direction 1, 2 <= j <= nu.
UnitaryOp gauge_equivalence(const FockSpace& space, int j);

// Hopping built from the gauge-transformed staggered angles of direction j.
SparseOperator build_hopping_gauge_pattern(const FockSpace& space,
                                           double kappa, int j);

// Sign flip psi -> -psi on the slab l <= x^(i) <= L.
UnitaryOp boundary_shift(const FockSpace& space, int i, int l);

// Global flavor rotation prod_x exp[i theta S^(a)(x)].
UnitaryOp global_rotation(const FockSpace& space, int a, double theta);

// Single-site rotation exp[i theta S^(a)(x)].
SparseOperator site_rotation(const FockSpace& space, long site_r, int a,
                             double theta);

// Fock-space unitary inducing Psi -> V Psi with the spin-1 matrix V.
SparseOperator v_fock_unitary(const FockSpace& space);

// Translation by steps*e_mu as a permutation unitary with fermionic signs.
UnitaryOp lattice_shift(const FockSpace& space, int mu, int steps);

// Reflection across the x^(1) = 1/2 hyperplane.
struct Reflection {
    const FockSpace* space;
    std::vector<int> mode_perm;       // mode -> reflected mode
    SparseOperator perm_op;           // the permutation unitary P
    std::vector<long> minus_modes;    // modes on the x^(1) <= 0 half

    // theta(A) = P conj(A) P^dagger; antilinear homomorphism with
    // theta(psi_i(x)) = psi_i(r(x)).
    SparseOperator apply(const SparseOperator& a) const;
};

Reflection reflection(const FockSpace& space);

// min over trials of Tr(A theta(A)) / scale for random even-parity A
// supported on the x^(1) <= 0 half lattice.
double rp_min_trace(const FockSpace& space, int trials, uint64_t seed);

}  // namespace njl
