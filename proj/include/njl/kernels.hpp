#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "njl/fock.hpp"

namespace njl {

// Data-parallel inner loops. Every kernel has a serial reference
// implementation and an OpenMP one; both reduce in the same fixed order,
// so results are bit-identical and independent of the thread count.
namespace kernels {

bool parallel_enabled();
void set_parallel(bool on);
int thread_count();

// y = A x per sector block
VecC spmv(const SpMat& a, const VecC& x);

// sum_j w_j * <v_j| A |v_j> for the eigencolumns of V.
cplx weighted_diag_expectation(const SpMat& a, const MatC& v,
                               const Eigen::VectorXd& w);

// sum_{jk} Atil_{jk} Btil_{kj} Phi(E_j, E_k) with the Duhamel weight
// Phi = (e^{-b(Ek-E0)} - e^{-b(Ej-E0)})/(b(Ej-Ek)), equal-energy limit
// e^{-b(Ej-E0)}.
cplx duhamel_pair_sum(const MatC& a_til, const MatC& b_til,
                      const Eigen::VectorXd& evals, double beta, double e0);

// Independent tasks i = 0..n-1; results land in out[i], then are visited
// serially in index order by the caller.
void parallel_for(long n, const std::function<void(long)>& body);

namespace serial {
cplx weighted_diag_expectation(const SpMat& a, const MatC& v,
                               const Eigen::VectorXd& w);
cplx duhamel_pair_sum(const MatC& a_til, const MatC& b_til,
                      const Eigen::VectorXd& evals, double beta, double e0);
VecC spmv(const SpMat& a, const VecC& x);
}  // namespace serial

}  // namespace kernels
}  // namespace njl
