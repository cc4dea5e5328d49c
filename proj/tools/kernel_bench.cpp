#include <chrono>
#include <cstdio>
#include <random>

#include "njl/diagnostics.hpp"
#include "njl/hamiltonian.hpp"
#include "njl/integrals.hpp"
#include "njl/kernels.hpp"
#include "njl/spectral.hpp"

using namespace njl;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <class F>
double time_ms(F&& f, int reps = 3) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        double t0 = now_ms();
        f();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

}  // namespace

int main() {
    LatticeSpec spec{1, 2, 3};
    FockSpace space = make_fock_space(spec);
    ModelParams params{0.3, 2.0, 0.0};
    SparseOperator h = build_total(space, params);

    printf("%-34s %10s %10s %8s\n", "kernel", "serial ms", "omp ms",
           "speedup");

    // thermal expectation (weighted diagonal) on the largest sector
    {
        auto decomp = diagonalize(h, true);
        const auto& se = decomp.sector(space.M / 2);
        Eigen::VectorXd w(se.evals.size());
        for (long j = 0; j < se.evals.size(); ++j)
            w(j) = std::exp(-(se.evals(j) - decomp.e_min));
        const SpMat& a = h.block(space.M / 2);
        cplx r1, r2;
        double ts = time_ms([&] {
            r1 = kernels::serial::weighted_diag_expectation(a, se.vecs, w);
        });
        double tp = time_ms([&] {
            r2 = kernels::weighted_diag_expectation(a, se.vecs, w);
        });
        printf("%-34s %10.2f %10.2f %7.2fx   (|diff|=%.1e)\n",
               "weighted_diag_expectation", ts, tp, ts / tp,
               std::abs(r1 - r2));

        MatC a_til = se.vecs.adjoint() * (a * se.vecs);
        cplx d1, d2;
        double ds = time_ms([&] {
            d1 = kernels::serial::duhamel_pair_sum(a_til, a_til, se.evals,
                                                   2.0, decomp.e_min);
        });
        double dp = time_ms([&] {
            d2 = kernels::duhamel_pair_sum(a_til, a_til, se.evals, 2.0,
                                           decomp.e_min);
        });
        printf("%-34s %10.2f %10.2f %7.2fx   (|diff|=%.1e)\n",
               "duhamel_pair_sum", ds, dp, ds / dp, std::abs(d1 - d2));
    }

    // spectrum scan across many source fields
    {
        SourcedBuilder builder(space, params, 3);
        RealGauge gauge = make_real_gauge(space);
        std::mt19937_64 rng(7);
        std::vector<SourceField> fields;
        for (int s = 0; s < 8; ++s) {
            SourceField f = SourceField::zeros(spec);
            for (auto& v : f.v)
                v = 2.0 * (double(rng() >> 11) * 0x1.0p-53) - 1.0;
            fields.push_back(f);
        }
        auto scan = [&](bool par) {
            kernels::set_parallel(par);
            std::vector<double> out(fields.size());
            kernels::parallel_for(
                static_cast<long>(fields.size()), [&](long i) {
                    auto ev = spectrum_all_sectors(builder.build(fields[i]),
                                                   &gauge, true);
                    out[i] = log_trace_exp(ev, 2.0);
                });
            kernels::set_parallel(true);
            return out;
        };
        std::vector<double> o1, o2;
        double ts = time_ms([&] { o1 = scan(false); }, 1);
        double tp = time_ms([&] { o2 = scan(true); }, 1);
        double diff = 0;
        for (size_t i = 0; i < o1.size(); ++i)
            diff = std::max(diff, std::abs(o1[i] - o2[i]));
        printf("%-34s %10.2f %10.2f %7.2fx   (|diff|=%.1e)\n",
               "trace_spectrum_batch(8 fields)", ts, tp, ts / tp, diff);
    }

    // adaptive cubature
    {
        auto once = [&](bool par) {
            kernels::set_parallel(par);
            auto r = compute_K(3, 3e-4, false);
            kernels::set_parallel(true);
            return r.value;
        };
        double v1 = 0, v2 = 0;
        double ts = time_ms([&] { v1 = once(false); }, 1);
        double tp = time_ms([&] { v2 = once(true); }, 1);
        printf("%-34s %10.2f %10.2f %7.2fx   (|diff|=%.1e)\n",
               "adaptive_cubature(K, nu=3)", ts, tp, ts / tp,
               std::abs(v1 - v2));
    }
    return 0;
}
