#pragma once

#include <Eigen/Sparse>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "njl/flavor.hpp"
#include "njl/lattice.hpp"

namespace njl {

using SpMat = Eigen::SparseMatrix<cplx>;
using VecC = Eigen::VectorXcd;

// Fermionic Fock space over (site, flavor) modes. Mode order is site-major,
// flavor-minor; all Jordan-Wigner signs follow from it.
struct FockSpace {
    LatticeSpec spec;
    int M = 0;  // number of modes
    std::vector<Site> site_list;
    std::vector<std::vector<uint32_t>> sector_states;  // N -> sorted bitmasks
    std::vector<uint32_t> pos_in_sector;               // bitmask -> index

    long mode_of(long site_r, int flavor) const {
        return site_r * spec.flavors + (flavor - 1);
    }
    long mode_of(const Site& x, int flavor) const {
        return mode_of(site_rank(spec, x), flavor);
    }
    long dim_full() const { return 1L << M; }
    long sector_dim(int N) const {
        return static_cast<long>(sector_states[N].size());
    }
};

FockSpace make_fock_space(const LatticeSpec& spec);

// A sum of monomials in creation/annihilation operators. Each factor in a
// monomial is (mode, dagger); factors act on a ket right to left.
struct FermiTerm {
    cplx coeff;
    std::vector<std::pair<int, bool>> ops;  // ops.front() is leftmost
    int particle_change() const {
        int d = 0;
        for (auto& [m, dag] : ops) d += dag ? 1 : -1;
        return d;
    }
};

struct FermiPoly {
    std::vector<FermiTerm> terms;

    FermiPoly() = default;
    static FermiPoly bilinear(cplx c, int create_mode, int destroy_mode);
    static FermiPoly single(cplx c, int mode, bool dagger);

    FermiPoly& operator+=(const FermiPoly& o);
    FermiPoly operator*(const FermiPoly& o) const;  // term concatenation
    FermiPoly scaled(cplx c) const;
    bool conserves_number() const;
};

// Apply one monomial to a basis mask. Returns (new mask, sign) or nullopt.
std::optional<std::pair<uint32_t, int>> apply_term(const FermiTerm& t,
                                                   uint32_t mask);

// Sparse operator on the Fock space. Number-conserving operators are stored
// as one block per particle-number sector; general operators (single
// creation/annihilation, Majoranas) live on the full 2^M space.
class SparseOperator {
  public:
    enum class Rep { Sectored, Full };

    SparseOperator() = default;
    SparseOperator(const FockSpace* space, Rep rep);

    static SparseOperator zero(const FockSpace& space);
    static SparseOperator identity(const FockSpace& space);
    static SparseOperator from_poly(const FockSpace& space,
                                    const FermiPoly& p);
    static SparseOperator from_poly_full(const FockSpace& space,
                                         const FermiPoly& p);
    // Diagonal operator from a per-basis-state phase/value.
    static SparseOperator diagonal(const FockSpace& space,
                                   const std::function<cplx(uint32_t)>& fn);
    // Permutation of modes lifted to the Fock space with reordering signs.
    static SparseOperator mode_permutation(const FockSpace& space,
                                           const std::vector<int>& perm);
    // Number-conserving operator acting on the modes of one site, given as
    // a dense matrix in the site-local occupation basis (dimension 2^F).
    static SparseOperator lift_local(const FockSpace& space, long site_r,
                                     const MatC& local);

    const FockSpace* space() const { return space_; }
    Rep rep() const { return rep_; }
    bool sectored() const { return rep_ == Rep::Sectored; }
    const SpMat& block(int N) const { return blocks_[N]; }
    SpMat& block(int N) { return blocks_[N]; }
    int n_blocks() const { return static_cast<int>(blocks_.size()); }
    const SpMat& full() const;
    SpMat& full_mut();
    SparseOperator to_full() const;           // materialize sectored -> full
    SparseOperator to_sectored(double tol = 1e-13) const;

    SparseOperator operator+(const SparseOperator& o) const;
    SparseOperator operator-(const SparseOperator& o) const;
    SparseOperator operator*(const SparseOperator& o) const;
    SparseOperator scaled(cplx c) const;
    SparseOperator adjoint() const;
    // Entrywise complex conjugate in the occupation basis.
    SparseOperator conjugate() const;
    SparseOperator& operator+=(const SparseOperator& o);

    double max_abs() const;                  // sup-norm of entries
    double hermiticity_residual() const;     // max |A - A^dagger|
    bool is_hermitian(double tol = 1e-12) const;
    void prune(double tol = 1e-14);

    // Spectral norm (largest singular value). Dense SVD for small blocks,
    // deterministic power iteration above.
    double norm() const;

  private:
    const FockSpace* space_ = nullptr;
    Rep rep_ = Rep::Sectored;
    std::vector<SpMat> blocks_;
    SpMat full_;
};

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b);

// Elementary operators (full-space representation).
SparseOperator creation(const FockSpace& space, long mode);
SparseOperator annihilation(const FockSpace& space, long mode);
SparseOperator majorana_xi(const FockSpace& space, long mode);
SparseOperator majorana_eta(const FockSpace& space, long mode);

// Number-conserving operators (sector-blocked representation).
SparseOperator number_op(const FockSpace& space, long mode);
SparseOperator total_number_op(const FockSpace& space);

// On-site flavor current S^(a)(x) = Psi^dagger(x) l^(a) Psi(x).
FermiPoly s_current_poly(const FockSpace& space, long site_r, int a,
                         const GeneratorSet& gs);
SparseOperator s_current(const FockSpace& space, const Site& x, int a);

// Weighted sum over sites of S^(a), sum_x w(x) S^(a)(x).
SparseOperator smeared_current(const FockSpace& space, int a,
                               const std::vector<cplx>& site_weights);

// Momentum-space current |Lambda|^{-1/2} sum_x S^(a)(x) e^{ip.x}.
SparseOperator momentum_current(const FockSpace& space, int a,
                                const Momentum& p);

// Splits a full-representation operator into sector blocks; throws if it
// has matrix elements between different particle numbers.
std::vector<SpMat> sector_decompose(const SparseOperator& op,
                                    double tol = 1e-13);

}  // namespace njl
