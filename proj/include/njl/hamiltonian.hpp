#pragma once

#include "njl/fock.hpp"

namespace njl {

struct ModelParams {
    double kappa = 0.0;  // hopping amplitude
    double g = 0.0;      // coupling, >= 0
    double m = 0.0;      // symmetry-breaking mass, >= 0

    void validate() const {
        if (g < 0) throw std::invalid_argument("params: g must be >= 0");
        if (m < 0) throw std::invalid_argument("params: m must be >= 0");
    }
};

// Real field h = (h^(1),...,h^(nu)) on the lattice.
struct SourceField {
    int nu = 0;
    long nsites = 0;
    std::vector<double> v;  // [(mu-1)*nsites + site_rank]

    static SourceField zeros(const LatticeSpec& spec) {
        SourceField h;
        h.nu = spec.nu;
        h.nsites = spec.n_sites();
        h.v.assign(static_cast<size_t>(h.nu) * h.nsites, 0.0);
        return h;
    }
    double at(int mu, long r) const { return v[(mu - 1) * nsites + r]; }
    double& at(int mu, long r) { return v[(mu - 1) * nsites + r]; }
    double norm_sq() const {
        double s = 0;
        for (double x : v) s += x * x;
        return s;
    }
};

// i*kappa sum_{x,mu} (-1)^{theta_mu(x)} [Psi^d(x)Psi(x+e_mu) - h.c.]
SparseOperator build_hopping(const FockSpace& space, double kappa);

// g sum_{x,mu,a} S^(a)(x) S^(a)(x+e_mu)
SparseOperator build_interaction(const FockSpace& space, double g);

// O = sum_x (-1)^{x1+...+xnu} S^(2)(x)
SparseOperator build_order_parameter(const FockSpace& space);

// H(m) = H_K + m O + H_int
SparseOperator build_total(const FockSpace& space, const ModelParams& p);

// Completed-square interaction with the staggered source attached to one
// channel: the sourced squares, the plus-squares of the remaining real
// channels, minus-squares of the imaginary channels, and the on-site
// counterterms. At h = 0 this reproduces build_interaction exactly.
SparseOperator completed_square_interaction(const FockSpace& space, double g,
                                            const GeneratorSet& gens,
                                            int channel,
                                            const SourceField& h);

// H(m,h) = H_K + H_int(h) + m O, channel 3 or 4 (4 requires SU(3)).
SparseOperator build_sourced(const FockSpace& space, const ModelParams& p,
                             const SourceField& h, int channel);

// Spin-1 route: H_7(m,h) = H_K + V~ H~_{int,7}(h) V~^dagger + m O (SU(3)).
SparseOperator build_sourced_channel7(const FockSpace& space,
                                      const ModelParams& p,
                                      const SourceField& h);

// Generators conjugated by the spin-1 rotation, l~^a = V^d l^a V.
GeneratorSet tilde_generator_set();
MatC v_spin1_matrix();

// Incremental builder for scans over many source fields with fixed params.
class SourcedBuilder {
  public:
    SourcedBuilder(const FockSpace& space, const ModelParams& p, int channel);
    SparseOperator build(const SourceField& h) const;
    const SparseOperator& at_zero() const { return h_zero_; }

  private:
    const FockSpace* space_;
    ModelParams params_;
    int channel_;
    GeneratorSet gens_;
    SparseOperator base_;    // H_K + m O
    SparseOperator fixed_;   // h-independent square groups (without g)
    SparseOperator h_zero_;  // full Hamiltonian at h = 0
    std::vector<SparseOperator> chan_site_;  // S^{ch}(x) per site
    // for channel 7 the squares live in the tilde frame
    SparseOperator frame_, frame_adj_;
    bool conjugate_frame_ = false;
    double g_;
};

}  // namespace njl
