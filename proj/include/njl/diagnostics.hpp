#pragma once

#include "njl/hamiltonian.hpp"
#include "njl/report.hpp"
#include "njl/spectral.hpp"

namespace njl {

// ---- trial-state helpers ----

// Staggered window operator A_R^(a) = |O_R|^{-1} sum_{x in O_R} (-1)^... S^(a)(x)
// with O_R = [-R+1, R]^nu intersected with the lattice.
SparseOperator trial_operator(const FockSpace& space, int a, int R);
long trial_window_size(const LatticeSpec& spec, int R);

// Trapezoid profile h'(x): 1 on O_{R+1}, linear ramp on O_{2R}\O_{R+1}.
std::vector<double> h_prime_profile(const LatticeSpec& spec, int R);
// tilde h'(x) = h'(x) + h'(x - e_1)
std::vector<double> tilde_h_prime(const LatticeSpec& spec,
                                  const std::vector<double>& h_prime);

// Occupation-basis Neel trial state: flavors 1,2 fill the odd sublattice
// and flavor 3 the even one (SU(3)); single flavors in the SU(2) model.
std::pair<int, VecC> neel_state(const FockSpace& space);

// ---- bound and identity checks ----

BoundReport gaussian_domination_single(const SourcedBuilder& builder,
                                       const SourceField& h, double beta,
                                       json ctx);

// Seeded batch across many h samples; uses the real-gauge fast path and the
// verified particle-hole mirror. One report per (sample, beta).
std::vector<BoundReport> gaussian_domination_batch(
    const FockSpace& space, const ModelParams& params,
    const std::vector<double>& betas, int n_samples, double amplitude,
    uint64_t seed, int channel, bool verify_mirror_all = false);

std::vector<BoundReport> infrared_bound(const FockSpace& space,
                                        const ModelParams& params,
                                        double beta);

std::vector<BoundReport> sum_rule(const FockSpace& space,
                                  const ModelParams& params, double beta);

std::vector<BoundReport> dls_bound(const FockSpace& space,
                                   const ModelParams& params, double beta);

std::vector<BoundReport> double_commutator_checks(const FockSpace& space,
                                                  const ModelParams& params,
                                                  double beta);

std::vector<BoundReport> neel_bounds(const FockSpace& space,
                                     const ModelParams& params, double beta);

struct LROResult {
    double m_lro_sq = 0.0;      // |L|^-2 <O^2>
    double sq_structure = 0.0;  // |L|^-1 <S~_Q S~_Q>
    double nn_correlator = 0.0; // -|L|^-1 sum_x <S3(x) S3(x+e1)>
};

std::pair<LROResult, std::vector<BoundReport>> lro_diagnostics(
    const FockSpace& space, const ModelParams& params, double beta);

// Ground-state staggered magnetization plus window-independence and
// antisymmetry checks.
std::vector<BoundReport> staggered_magnetization_checks(
    const FockSpace& space, const ModelParams& params);
double staggered_magnetization(const FockSpace& space,
                               const ModelParams& params);

std::vector<BoundReport> ng_trial_energy(const FockSpace& space,
                                         const ModelParams& params,
                                         const SpectralFilter& filter, int R,
                                         int channel);

std::vector<BoundReport> ng_mode_gram(const FockSpace& space,
                                      const ModelParams& params,
                                      const SpectralFilter& filter, int R);

std::vector<BoundReport> kls_inequality(const FockSpace& space,
                                        const ModelParams& params,
                                        const SpectralFilter& filter, int R);

// beta (B,B) vs the ground-state resolvent form, plus the closed-form
// source bound, B = S^(3)[tilde h'].
std::vector<BoundReport> duhamel_ground_checks(const FockSpace& space,
                                               const ModelParams& params,
                                               int R);

std::vector<BoundReport> rp_checks(const FockSpace& space, int trials,
                                   uint64_t seed);

std::vector<BoundReport> algebra_checks(int flavors);
std::vector<BoundReport> algebra_fock_checks(const FockSpace& space);

std::vector<BoundReport> symmetry_checks(const FockSpace& space,
                                         const ModelParams& params);

std::vector<BoundReport> completed_square_checks(const FockSpace& space,
                                                 const ModelParams& params);

std::vector<BoundReport> integral_checks(bool su3, bool su2,
                                         bool monotonicity);

}  // namespace njl
