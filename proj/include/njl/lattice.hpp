#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace njl {

// Finite hypercubic lattice with coordinates -L+1..L in each of nu
// directions, periodic wrap-around, and 2 or 3 fermion flavors per site.
struct LatticeSpec {
    int nu = 1;       // spatial dimension
    int L = 1;        // half extent; side length is 2L
    int flavors = 3;  // 2 -> SU(2) mode, 3 -> SU(3) mode

    void validate() const {
        if (nu < 1) throw std::invalid_argument("lattice: nu must be >= 1");
        if (L < 1) throw std::invalid_argument("lattice: L must be >= 1");
        if (flavors != 2 && flavors != 3)
            throw std::invalid_argument("lattice: flavors must be 2 or 3");
    }
    int L_side() const { return 2 * L; }
    long n_sites() const {
        long n = 1;
        for (int i = 0; i < nu; ++i) n *= L_side();
        return n;
    }
    long n_modes() const { return flavors * n_sites(); }
    int n_channels() const { return flavors == 3 ? 8 : 3; }
};

using Site = std::vector<int>;  // length nu, entries in [-L+1, L]

// Ordered site list; lexicographic in the 0-based shifted coordinates with
// x^(1) most significant. This ordering fixes all fermionic sign
// conventions downstream.
std::vector<Site> sites(const LatticeSpec& spec);

// Rank of a site in the canonical ordering.
long site_rank(const LatticeSpec& spec, const Site& x);

// x + step*e_mu with periodic wrap from L back to -L+1. mu is 1-based.
Site neighbor(const LatticeSpec& spec, const Site& x, int mu, int step = 1);

// (-1)^{theta_mu(x)} staggered hopping sign. mu is 1-based.
int staggered_phase(const LatticeSpec& spec, const Site& x, int mu);

// (-1)^{x^(1)+...+x^(nu)}
int parity(const Site& x);

struct Momentum {
    std::vector<double> comp;  // each of the form pi*n/L
};

// Dual lattice: p^(mu) = pi*n/L with n in {-L+1,...,L}; (2L)^nu points,
// closed under p -> p+Q modulo 2*pi, and contains Q = (pi,...,pi).
std::vector<Momentum> momenta(const LatticeSpec& spec);

// E_p = sum_mu (1 - cos p^(mu))
double dispersion(const Momentum& p);

// p + Q folded back into the canonical window (-pi, pi].
Momentum shift_by_Q(const Momentum& p);

Momentum corner_Q(const LatticeSpec& spec);

inline bool is_corner_Q(const Momentum& p) {
    for (double c : p.comp)
        if (std::abs(c - M_PI) > 1e-12) return false;
    return true;
}

}  // namespace njl
