#pragma once

#include <Eigen/Dense>

#include "njl/flavor.hpp"

namespace njl {

// Dense hermitian eigensolvers backed by LAPACK. Matrices are overwritten.
Eigen::VectorXd eigvalsh_inplace(MatC& a);
Eigen::VectorXd eigvalsh_real_inplace(Eigen::MatrixXd& a);

// Eigenvalues ascending; eigenvectors returned in the input matrix columns.
Eigen::VectorXd eigh_inplace(MatC& a);

}  // namespace njl
