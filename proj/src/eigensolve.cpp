#include "njl/eigensolve.hpp"

#include <lapacke.h>

#include <stdexcept>

namespace njl {

namespace {
void check(int info, const char* what) {
    if (info != 0)
        throw std::runtime_error(std::string(what) + " failed, info=" +
                                 std::to_string(info));
}
}  // namespace

Eigen::VectorXd eigvalsh_inplace(MatC& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'N', 'U', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    check(info, "zheevd");
    return w;
}

Eigen::VectorXd eigvalsh_real_inplace(Eigen::MatrixXd& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'U', n, a.data(), n,
                              w.data());
    check(info, "dsyevd");
    return w;
}

Eigen::VectorXd eigh_inplace(MatC& a) {
    const int n = static_cast<int>(a.rows());
    Eigen::VectorXd w(n);
    if (n == 0) return w;
    int info = LAPACKE_zheevd(
        LAPACK_COL_MAJOR, 'V', 'U', n,
        reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
    check(info, "zheevd");
    return w;
}

}  // namespace njl
