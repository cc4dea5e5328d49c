#pragma once

#include <span>

#include "njl/fock.hpp"

namespace njl {

struct SectorEig {
    int N = 0;
    Eigen::VectorXd evals;  // ascending
    MatC vecs;              // empty when eigenvalues-only
};

struct EigenDecomposition {
    const FockSpace* space = nullptr;
    std::vector<SectorEig> sectors;  // indexed by N
    bool has_vectors = false;
    double e_min = 0.0;
    double e_max = 0.0;

    const SectorEig& sector(int N) const { return sectors[N]; }
    double spectral_scale() const {
        return std::max(std::abs(e_min), std::abs(e_max));
    }
};

// Dense per-sector decomposition. Refuses sectors above the cap.
EigenDecomposition diagonalize(const SparseOperator& h, bool vectors = true,
                               long dense_cap = 0 /* 0 -> env or 4096 */);

long dense_cap_from_env();

struct GroundSpace {
    double e0 = 0.0;
    int degeneracy = 0;
    // (sector, vector) pairs spanning the ground multiplet
    std::vector<std::pair<int, VecC>> vectors;

    SparseOperator projector(const FockSpace& space) const;
};

GroundSpace ground_space(const EigenDecomposition& d, double rel_gap = 1e-8);

// Iterative route: lowest eigenpairs per sector by deflated Lanczos; used
// when sector dimensions exceed the dense cap.
GroundSpace ground_space_lanczos(const SparseOperator& h,
                                 double rel_gap = 1e-8, int max_multiplet = 16);

struct ThermalState {
    const EigenDecomposition* decomp = nullptr;
    double beta = 0.0;
    double z_shifted = 0.0;  // sum e^{-beta(E - e_min)}
    double log_z = 0.0;      // true ln Tr e^{-beta H}
};

ThermalState make_thermal(const EigenDecomposition& d, double beta);

// Tr[A e^{-beta H}]/Z for a sector-blocked A.
cplx thermal_expectation(const SparseOperator& a, const ThermalState& th);

// (1/d) sum_j <Psi_j, A Psi_j>
cplx ground_expectation(const SparseOperator& a, const GroundSpace& gs);

// Duhamel two-point function (A, B) at the state's temperature.
cplx duhamel(const SparseOperator& a, const SparseOperator& b,
             const ThermalState& th);

// <[B, [H, B^dagger]]> evaluated thermally.
cplx double_commutator_expectation(const SparseOperator& b,
                                   const SparseOperator& h,
                                   const ThermalState& th);

// Smooth energy-window profile f = g * eta * f1 with support in
// (delta, 2r), equal to s^{eps/2} on [2 delta, r].
struct SpectralFilter {
    double delta = 0.05;
    double r = 1.0;
    double eps = 0.5;

    void validate() const;
    double operator()(double s) const;
};

// f(H - E0) A Psi_j for every ground vector; needs vectors in the
// decomposition.
std::vector<std::pair<int, VecC>> filtered_state(
    const SparseOperator& a, const SpectralFilter& f,
    const EigenDecomposition& d, const GroundSpace& gs);

// Apply a scalar function of H - e0 to a sector vector.
VecC apply_energy_function(const EigenDecomposition& d, int sector,
                           const std::function<double(double)>& fn,
                           const VecC& v, double e0);

// ---- fast spectrum path for trace inequalities ----

// Unitary that turns H(m,h) into a real symmetric matrix: the quarter-turn
// coordinate ramp composed with the spin-1 flavor rotation (SU(3)).
struct RealGauge {
    SparseOperator g;  // sectored
    bool has_rotation = false;
};
RealGauge make_real_gauge(const FockSpace& space);

// All eigenvalues of a number-conserving hermitian operator. With `mirror`
// set, only sectors N <= M/2 are solved and the rest duplicated, valid when
// the caller has checked the particle-hole mirror identity. The gauge is
// used when conjugation leaves a real matrix, else the complex solver runs.
std::vector<double> spectrum_all_sectors(const SparseOperator& h,
                                         const RealGauge* gauge,
                                         bool mirror);

// ln sum_i e^{-beta E_i}, overflow-safe.
double log_trace_exp(std::span<const double> evals, double beta);

}  // namespace njl
