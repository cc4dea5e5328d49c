#include "njl/spectral.hpp"

#include <algorithm>
#include <cstdlib>
#include <random>

#include "njl/eigensolve.hpp"
#include "njl/hamiltonian.hpp"
#include "njl/kernels.hpp"
#include "njl/symmetry.hpp"

namespace njl {

long dense_cap_from_env() {
    const char* s = std::getenv("NJL_DENSE_CAP");
    if (!s) return 4096;
    long v = std::atol(s);
    return v > 0 ? v : 4096;
}

EigenDecomposition diagonalize(const SparseOperator& h, bool vectors,
                               long dense_cap) {
    if (!h.sectored())
        throw std::invalid_argument("diagonalize: operator must conserve N");
    if (!h.is_hermitian(1e-10))
        throw std::invalid_argument("diagonalize: operator not hermitian");
    if (dense_cap <= 0) dense_cap = dense_cap_from_env();
    const FockSpace& fs = *h.space();
    EigenDecomposition d;
    d.space = &fs;
    d.has_vectors = vectors;
    d.sectors.resize(fs.M + 1);
    double emin = 1e300, emax = -1e300;
    for (int N = 0; N <= fs.M; ++N) {
        long dim = fs.sector_dim(N);
        if (dim > dense_cap)
            throw std::runtime_error(
                "diagonalize: sector dimension " + std::to_string(dim) +
                " above dense cap " + std::to_string(dense_cap));
        SectorEig se;
        se.N = N;
        MatC dense(h.block(N));
        if (vectors) {
            se.evals = eigh_inplace(dense);
            se.vecs = std::move(dense);
        } else {
            se.evals = eigvalsh_inplace(dense);
        }
        if (se.evals.size()) {
            emin = std::min(emin, se.evals.minCoeff());
            emax = std::max(emax, se.evals.maxCoeff());
        }
        d.sectors[N] = std::move(se);
    }
    d.e_min = emin;
    d.e_max = emax;
    return d;
}

GroundSpace ground_space(const EigenDecomposition& d, double rel_gap) {
    GroundSpace gs;
    gs.e0 = d.e_min;
    const double tol = rel_gap * std::max(1.0, d.spectral_scale());
    for (const auto& se : d.sectors)
        for (long j = 0; j < se.evals.size(); ++j)
            if (se.evals(j) <= gs.e0 + tol) {
                if (!d.has_vectors)
                    throw std::logic_error("ground_space needs vectors");
                gs.vectors.emplace_back(se.N, se.vecs.col(j));
            }
    gs.degeneracy = static_cast<int>(gs.vectors.size());
    return gs;
}

SparseOperator GroundSpace::projector(const FockSpace& space) const {
    SparseOperator p = SparseOperator::zero(space);
    for (const auto& [N, v] : vectors) {
        MatC outer = v * v.adjoint();
        p.block(N) = p.block(N) + outer.sparseView(1.0, 1e-300);
    }
    return p;
}

namespace {
// Lanczos with full reorthogonalization against both the Krylov basis and
// the deflation set.
double lanczos_lowest(const SpMat& a, const std::vector<VecC>& deflate,
                      VecC& out_vec, bool& converged) {
    const long n = a.rows();
    const int max_iter = std::min<long>(n, 400);
    std::mt19937_64 rng(98765);
    VecC v(n);
    for (long i = 0; i < n; ++i)
        v(i) = cplx(double(rng() >> 11) * 0x1.0p-53 - 0.5,
                    double(rng() >> 11) * 0x1.0p-53 - 0.5);
    auto project_out = [&](VecC& x) {
        for (const auto& d : deflate) x -= d.dot(x) * d;
    };
    project_out(v);
    if (v.norm() < 1e-12) {
        converged = false;
        return 0.0;
    }
    v.normalize();
    std::vector<VecC> basis{v};
    std::vector<double> alpha, beta;
    double prev = 1e300;
    converged = false;
    for (int it = 0; it < max_iter; ++it) {
        VecC w = a * basis.back();
        project_out(w);
        double al = std::real(basis.back().dot(w));
        alpha.push_back(al);
        // full reorthogonalization
        for (const auto& b : basis) w -= b.dot(w) * b;
        for (const auto& b : basis) w -= b.dot(w) * b;
        double bt = w.norm();
        // tridiagonal eigenvalue
        long k = static_cast<long>(alpha.size());
        Eigen::MatrixXd t = Eigen::MatrixXd::Zero(k, k);
        for (long i = 0; i < k; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < k) t(i, i + 1) = t(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
        double e = es.eigenvalues()(0);
        if (bt < 1e-12 || std::abs(e - prev) < 1e-12 * std::max(1.0, std::abs(e))) {
            // assemble the Ritz vector
            VecC r = VecC::Zero(n);
            for (long i = 0; i < k; ++i)
                r += es.eigenvectors()(i, 0) * basis[i];
            project_out(r);
            r.normalize();
            out_vec = r;
            converged = true;
            return e;
        }
        prev = e;
        beta.push_back(bt);
        basis.push_back(w / bt);
    }
    if (!basis.empty()) {
        out_vec = basis.front();
    }
    return prev;
}
}  // namespace

GroundSpace ground_space_lanczos(const SparseOperator& h, double rel_gap,
                                 int max_multiplet) {
    if (!h.sectored())
        throw std::invalid_argument("lanczos: operator must conserve N");
    const FockSpace& fs = *h.space();
    struct Cand {
        int N;
        double e;
        VecC v;
    };
    std::vector<Cand> cands;
    double e0 = 1e300;
    double scale = 1.0;
    for (int N = 0; N <= fs.M; ++N) {
        const SpMat& blk = h.block(N);
        if (blk.rows() == 0) continue;
        if (blk.rows() == 1) {
            cands.push_back({N, std::real(blk.coeff(0, 0)), VecC::Ones(1)});
            e0 = std::min(e0, cands.back().e);
            continue;
        }
        std::vector<VecC> deflate;
        for (int k = 0; k < max_multiplet; ++k) {
            VecC v;
            bool ok = false;
            double e = lanczos_lowest(blk, deflate, v, ok);
            if (!ok) break;
            cands.push_back({N, e, v});
            deflate.push_back(v);
            e0 = std::min(e0, e);
            scale = std::max(scale, std::abs(e));
            // stop once this sector's candidates exceed the multiplet window
            if (e > e0 + 10 * rel_gap * scale && k > 0) break;
        }
    }
    GroundSpace gs;
    gs.e0 = e0;
    const double tol = rel_gap * std::max(1.0, scale);
    for (auto& c : cands)
        if (c.e <= e0 + tol) gs.vectors.emplace_back(c.N, std::move(c.v));
    gs.degeneracy = static_cast<int>(gs.vectors.size());
    return gs;
}

ThermalState make_thermal(const EigenDecomposition& d, double beta) {
    ThermalState th;
    th.decomp = &d;
    th.beta = beta;
    double z = 0.0;
    for (const auto& se : d.sectors)
        for (long j = 0; j < se.evals.size(); ++j)
            z += std::exp(-beta * (se.evals(j) - d.e_min));
    th.z_shifted = z;
    th.log_z = std::log(z) - beta * d.e_min;
    return th;
}

cplx thermal_expectation(const SparseOperator& a, const ThermalState& th) {
    const EigenDecomposition& d = *th.decomp;
    if (!d.has_vectors)
        throw std::logic_error("thermal expectation needs eigenvectors");
    if (!a.sectored())
        throw std::invalid_argument("thermal expectation: sectored ops only");
    cplx acc(0, 0);
    for (const auto& se : d.sectors) {
        if (!se.evals.size()) continue;
        Eigen::VectorXd w(se.evals.size());
        for (long j = 0; j < se.evals.size(); ++j)
            w(j) = std::exp(-th.beta * (se.evals(j) - d.e_min));
        acc += kernels::weighted_diag_expectation(a.block(se.N), se.vecs, w);
    }
    return acc / th.z_shifted;
}

cplx ground_expectation(const SparseOperator& a, const GroundSpace& gs) {
    cplx acc(0, 0);
    for (const auto& [N, v] : gs.vectors) acc += v.dot(a.block(N) * v);
    return acc / double(gs.degeneracy);
}

cplx duhamel(const SparseOperator& a, const SparseOperator& b,
             const ThermalState& th) {
    const EigenDecomposition& d = *th.decomp;
    if (!d.has_vectors) throw std::logic_error("duhamel needs eigenvectors");
    cplx acc(0, 0);
    for (const auto& se : d.sectors) {
        if (!se.evals.size()) continue;
        MatC a_til = se.vecs.adjoint() * (a.block(se.N) * se.vecs);
        MatC b_til = se.vecs.adjoint() * (b.block(se.N) * se.vecs);
        acc += kernels::duhamel_pair_sum(a_til, b_til, se.evals, th.beta,
                                         d.e_min);
    }
    return acc / th.z_shifted;
}

cplx double_commutator_expectation(const SparseOperator& b,
                                   const SparseOperator& h,
                                   const ThermalState& th) {
    SparseOperator inner = commutator(h, b.adjoint());
    SparseOperator outer = commutator(b, inner);
    return thermal_expectation(outer, th);
}

void SpectralFilter::validate() const {
    if (!(delta > 0) || !(r > 0) || !(eps > 0) || !(2 * delta <= r))
        throw std::invalid_argument(
            "filter: need 0 < delta, 2*delta <= r, eps > 0");
}

namespace {
double smoothstep(double t) {
    auto phi = [](double u) { return u > 0 ? std::exp(-1.0 / u) : 0.0; };
    double a = phi(t), b = phi(1.0 - t);
    return a / (a + b);
}
}  // namespace

double SpectralFilter::operator()(double s) const {
    if (s <= delta || s >= 2 * r) return 0.0;
    double eta = s > 0 ? std::pow(s, eps / 2.0) : 0.0;
    double g = smoothstep((s - delta) / delta);       // 0 below delta, 1 above 2 delta
    double f1 = 1.0 - smoothstep((s - r) / r);        // 1 below r, 0 above 2r
    return g * eta * f1;
}

std::vector<std::pair<int, VecC>> filtered_state(
    const SparseOperator& a, const SpectralFilter& f,
    const EigenDecomposition& d, const GroundSpace& gs) {
    f.validate();
    std::vector<std::pair<int, VecC>> out;
    for (const auto& [N, v] : gs.vectors) {
        VecC av = a.block(N) * v;
        out.emplace_back(
            N, apply_energy_function(
                   d, N, [&](double s) { return f(s); }, av, gs.e0));
    }
    return out;
}

VecC apply_energy_function(const EigenDecomposition& d, int sector,
                           const std::function<double(double)>& fn,
                           const VecC& v, double e0) {
    if (!d.has_vectors)
        throw std::logic_error("apply_energy_function needs eigenvectors");
    const SectorEig& se = d.sector(sector);
    VecC coeff = se.vecs.adjoint() * v;
    for (long j = 0; j < coeff.size(); ++j)
        coeff(j) *= fn(se.evals(j) - e0);
    return se.vecs * coeff;
}

RealGauge make_real_gauge(const FockSpace& space) {
    RealGauge rg;
    // quarter-turn ramp phase i^{sum_mu x^(mu)} per occupied mode
    SparseOperator ramp = SparseOperator::diagonal(space, [&](uint32_t mask) {
        long q = 0;
        for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
            long s = 0;
            for (int c : space.site_list[r]) s += c;
            for (int i = 1; i <= space.spec.flavors; ++i)
                if (mask & (1u << space.mode_of(r, i))) q += s;
        }
        static const cplx tbl[4] = {cplx(1, 0), cplx(0, 1), cplx(-1, 0),
                                    cplx(0, -1)};
        return tbl[((q % 4) + 4) % 4];
    });
    if (space.spec.flavors == 3) {
        rg.g = ramp * v_fock_unitary(space);
        rg.has_rotation = true;
    } else {
        rg.g = ramp;
    }
    return rg;
}

std::vector<double> spectrum_all_sectors(const SparseOperator& h,
                                         const RealGauge* gauge,
                                         bool mirror) {
    const FockSpace& fs = *h.space();
    std::vector<double> out;
    out.reserve(fs.dim_full());
    const int n_top = mirror ? fs.M / 2 : fs.M;
    for (int N = 0; N <= n_top; ++N) {
        const SpMat& blk = h.block(N);
        Eigen::VectorXd ev;
        bool solved = false;
        if (gauge) {
            SpMat gb = gauge->g.block(N);
            SpMat conj = (SpMat(gb.adjoint()) * SpMat(blk * gb)).pruned();
            double scale = 0.0, imax = 0.0;
            for (int c = 0; c < conj.outerSize(); ++c)
                for (SpMat::InnerIterator it(conj, c); it; ++it) {
                    scale = std::max(scale, std::abs(it.value()));
                    imax = std::max(imax, std::abs(it.value().imag()));
                }
            if (imax <= 1e-11 * std::max(1.0, scale)) {
                Eigen::MatrixXd dense = MatC(conj).real();
                dense = 0.5 * (dense + dense.transpose()).eval();
                ev = eigvalsh_real_inplace(dense);
                solved = true;
            }
        }
        if (!solved) {
            MatC dense(blk);
            ev = eigvalsh_inplace(dense);
        }
        const int copies = (mirror && N != fs.M - N) ? 2 : 1;
        for (int c = 0; c < copies; ++c)
            for (long j = 0; j < ev.size(); ++j) out.push_back(ev(j));
    }
    return out;
}

double log_trace_exp(std::span<const double> evals, double beta) {
    if (evals.empty()) throw std::invalid_argument("empty spectrum");
    double emin = *std::min_element(evals.begin(), evals.end());
    double s = 0.0;
    for (double e : evals) s += std::exp(-beta * (e - emin));
    return std::log(s) - beta * emin;
}

}  // namespace njl
