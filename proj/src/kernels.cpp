#include "njl/kernels.hpp"

#include <atomic>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace njl {
namespace kernels {

namespace {
std::atomic<bool> g_parallel{true};

inline double duhamel_phi(double ej, double ek, double beta, double e0) {
    const double dj = ej - e0, dk = ek - e0;
    const double diff = ej - ek;
    if (std::abs(diff) < 1e-13 * std::max({1.0, std::abs(ej), std::abs(ek)}))
        return std::exp(-beta * 0.5 * (dj + dk));
    return (std::exp(-beta * dk) - std::exp(-beta * dj)) / (beta * diff);
}

cplx duhamel_row(const MatC& a_til, const MatC& b_til,
                 const Eigen::VectorXd& evals, double beta, double e0,
                 long j) {
    const long n = evals.size();
    cplx acc(0, 0);
    for (long k = 0; k < n; ++k)
        acc += a_til(j, k) * b_til(k, j) *
               duhamel_phi(evals(j), evals(k), beta, e0);
    return acc;
}

cplx diag_entry(const SpMat& a, const MatC& v, long j) {
    VecC av = a * v.col(j);
    return v.col(j).dot(av);  // conjugates the left factor
}

VecC spmv_rows(const SpMat& at, const VecC& x, bool par) {
    VecC y = VecC::Zero(at.outerSize());
#pragma omp parallel for schedule(static) if (par)
    for (long r = 0; r < at.outerSize(); ++r) {
        cplx acc(0, 0);
        for (SpMat::InnerIterator it(at, r); it; ++it)
            acc += it.value() * x(it.row());
        y(r) = acc;
    }
    return y;
}
}  // namespace

bool parallel_enabled() { return g_parallel.load(); }
void set_parallel(bool on) { g_parallel.store(on); }

int thread_count() {
#ifdef _OPENMP
    return parallel_enabled() ? omp_get_max_threads() : 1;
#else
    return 1;
#endif
}

void parallel_for(long n, const std::function<void(long)>& body) {
    if (parallel_enabled()) {
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < n; ++i) body(i);
    } else {
        for (long i = 0; i < n; ++i) body(i);
    }
}

namespace serial {

VecC spmv(const SpMat& a, const VecC& x) {
    SpMat at = SpMat(a.transpose());
    return spmv_rows(at, x, false);
}

cplx weighted_diag_expectation(const SpMat& a, const MatC& v,
                               const Eigen::VectorXd& w) {
    cplx acc(0, 0);
    for (long j = 0; j < v.cols(); ++j) acc += w(j) * diag_entry(a, v, j);
    return acc;
}

cplx duhamel_pair_sum(const MatC& a_til, const MatC& b_til,
                      const Eigen::VectorXd& evals, double beta, double e0) {
    cplx acc(0, 0);
    for (long j = 0; j < evals.size(); ++j)
        acc += duhamel_row(a_til, b_til, evals, beta, e0, j);
    return acc;
}

}  // namespace serial

VecC spmv(const SpMat& a, const VecC& x) {
    SpMat at = SpMat(a.transpose());
    return spmv_rows(at, x, parallel_enabled());
}

cplx weighted_diag_expectation(const SpMat& a, const MatC& v,
                               const Eigen::VectorXd& w) {
    if (!parallel_enabled()) return serial::weighted_diag_expectation(a, v, w);
    const long n = v.cols();
    std::vector<cplx> parts(n);
#pragma omp parallel for schedule(dynamic, 8)
    for (long j = 0; j < n; ++j) parts[j] = w(j) * diag_entry(a, v, j);
    cplx acc(0, 0);
    for (long j = 0; j < n; ++j) acc += parts[j];
    return acc;
}

cplx duhamel_pair_sum(const MatC& a_til, const MatC& b_til,
                      const Eigen::VectorXd& evals, double beta, double e0) {
    if (!parallel_enabled())
        return serial::duhamel_pair_sum(a_til, b_til, evals, beta, e0);
    const long n = evals.size();
    std::vector<cplx> rows(n);
#pragma omp parallel for schedule(static)
    for (long j = 0; j < n; ++j)
        rows[j] = duhamel_row(a_til, b_til, evals, beta, e0, j);
    cplx acc(0, 0);
    for (long j = 0; j < n; ++j) acc += rows[j];
    return acc;
}

}  // namespace kernels
}  // namespace njl
