#pragma once

#include <functional>
#include <string>
#include <vector>

#include "njl/lattice.hpp"

namespace njl {

struct IntegralResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::string method;
    int nu = 0;
    long evaluations = 0;
};

// Adaptive Genz-Malik cubature over a box, deterministic region ordering.
IntegralResult adaptive_cubature(
    const std::function<double(const double*)>& f, std::vector<double> lo,
    std::vector<double> hi, double abs_tol, long max_evals);

// Stratified quasi-Monte Carlo: dyadic boxes graded toward the origin
// corner, shifted Halton points inside, error from shift replicates.
IntegralResult corner_stratified_qmc(
    const std::function<double(const double*)>& f, int dim, double side,
    long n_points, int replicates, uint64_t seed);

// Lattice Green-function constants over the Brillouin zone.
// I diverges for nu <= 2, J for nu <= 1, K for nu <= 1.
IntegralResult compute_I(int nu, double abs_tol = 2e-4, bool qmc = false);
IntegralResult compute_J(int nu, double abs_tol = 2e-4, bool qmc = false);
IntegralResult compute_K(int nu, double abs_tol = 1.5e-4, bool qmc = false);

// Finite-lattice momentum sums excluding the staggered corner Q.
struct FiniteLatticeSums {
    double J = 0.0;
    double K = 0.0;
};
FiniteLatticeSums finite_lattice_sums(const LatticeSpec& spec);

}  // namespace njl
