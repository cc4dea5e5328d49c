#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "njl/hamiltonian.hpp"
#include "njl/kernels.hpp"
#include "njl/spectral.hpp"

using namespace njl;

namespace {
struct ParallelTestData {
    FockSpace space = make_fock_space({1, 1, 3});
    SparseOperator h;
    EigenDecomposition decomp;
    ParallelTestData() {
        h = build_total(space, {0.3, 1.4, 0.1});
        decomp = diagonalize(h, true);
    }
};
}  // namespace

TEST_CASE("serial and parallel kernels agree bitwise") {
    ParallelTestData d;
    const int N = d.space.M / 2;
    const auto& se = d.decomp.sector(N);
    Eigen::VectorXd w(se.evals.size());
    for (long j = 0; j < se.evals.size(); ++j)
        w(j) = std::exp(-0.9 * (se.evals(j) - d.decomp.e_min));

    kernels::set_parallel(true);
    cplx p1 = kernels::weighted_diag_expectation(d.h.block(N), se.vecs, w);
    cplx s1 = kernels::serial::weighted_diag_expectation(d.h.block(N),
                                                         se.vecs, w);
    CHECK(p1.real() == s1.real());
    CHECK(p1.imag() == s1.imag());

    MatC a_til = se.vecs.adjoint() * (d.h.block(N) * se.vecs);
    cplx p2 = kernels::duhamel_pair_sum(a_til, a_til, se.evals, 2.0,
                                        d.decomp.e_min);
    cplx s2 = kernels::serial::duhamel_pair_sum(a_til, a_til, se.evals, 2.0,
                                                d.decomp.e_min);
    CHECK(p2.real() == s2.real());
    CHECK(p2.imag() == s2.imag());

    std::mt19937_64 rng(17);
    VecC x(d.space.sector_dim(N));
    for (long i = 0; i < x.size(); ++i)
        x(i) = cplx(double(rng() >> 11) * 0x1.0p-53,
                    double(rng() >> 11) * 0x1.0p-53);
    VecC yp = kernels::spmv(d.h.block(N), x);
    VecC ys = kernels::serial::spmv(d.h.block(N), x);
    CHECK((yp - ys).norm() == 0.0);
}

TEST_CASE("parallel_for covers every index once") {
    std::vector<int> hits(257, 0);
    kernels::parallel_for(257, [&](long i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
}

TEST_CASE("thermal results independent of threading") {
    ParallelTestData d;
    auto th = make_thermal(d.decomp, 1.3);
    SparseOperator a = s_current(d.space, d.space.site_list[0], 8);

    kernels::set_parallel(false);
    cplx serial_val = thermal_expectation(a, th);
    cplx serial_duh = duhamel(a, a, th);
    kernels::set_parallel(true);
    cplx par_val = thermal_expectation(a, th);
    cplx par_duh = duhamel(a, a, th);

    CHECK(serial_val.real() == par_val.real());
    CHECK(serial_val.imag() == par_val.imag());
    CHECK(serial_duh.real() == par_duh.real());
    CHECK(serial_duh.imag() == par_duh.imag());
}
