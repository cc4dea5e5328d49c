#include "njl/fock.hpp"

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <bit>
#include <random>
#include <stdexcept>

namespace njl {

FockSpace make_fock_space(const LatticeSpec& spec) {
    spec.validate();
    FockSpace fs;
    fs.spec = spec;
    fs.site_list = sites(spec);
    long M = spec.n_modes();
    if (M > 28) throw std::invalid_argument("fock: more than 28 modes");
    fs.M = static_cast<int>(M);
    fs.sector_states.assign(fs.M + 1, {});
    fs.pos_in_sector.assign(1L << fs.M, 0);
    for (uint32_t mask = 0; mask < (1u << fs.M); ++mask) {
        int N = std::popcount(mask);
        fs.pos_in_sector[mask] =
            static_cast<uint32_t>(fs.sector_states[N].size());
        fs.sector_states[N].push_back(mask);
    }
    return fs;
}

FermiPoly FermiPoly::bilinear(cplx c, int create_mode, int destroy_mode) {
    FermiPoly p;
    p.terms.push_back({c, {{create_mode, true}, {destroy_mode, false}}});
    return p;
}

FermiPoly FermiPoly::single(cplx c, int mode, bool dagger) {
    FermiPoly p;
    p.terms.push_back({c, {{mode, dagger}}});
    return p;
}

FermiPoly& FermiPoly::operator+=(const FermiPoly& o) {
    terms.insert(terms.end(), o.terms.begin(), o.terms.end());
    return *this;
}

FermiPoly FermiPoly::operator*(const FermiPoly& o) const {
    FermiPoly out;
    out.terms.reserve(terms.size() * o.terms.size());
    for (const auto& a : terms)
        for (const auto& b : o.terms) {
            FermiTerm t;
            t.coeff = a.coeff * b.coeff;
            t.ops = a.ops;
            t.ops.insert(t.ops.end(), b.ops.begin(), b.ops.end());
            out.terms.push_back(std::move(t));
        }
    return out;
}

FermiPoly FermiPoly::scaled(cplx c) const {
    FermiPoly out = *this;
    for (auto& t : out.terms) t.coeff *= c;
    return out;
}

bool FermiPoly::conserves_number() const {
    for (const auto& t : terms)
        if (t.particle_change() != 0) return false;
    return true;
}

std::optional<std::pair<uint32_t, int>> apply_term(const FermiTerm& t,
                                                   uint32_t mask) {
    int sign = 1;
    for (auto it = t.ops.rbegin(); it != t.ops.rend(); ++it) {
        const uint32_t bit = 1u << it->first;
        const bool occupied = mask & bit;
        if (it->second) {
            if (occupied) return std::nullopt;
            if (std::popcount(mask & (bit - 1)) & 1) sign = -sign;
            mask |= bit;
        } else {
            if (!occupied) return std::nullopt;
            if (std::popcount(mask & (bit - 1)) & 1) sign = -sign;
            mask &= ~bit;
        }
    }
    return std::make_pair(mask, sign);
}

SparseOperator::SparseOperator(const FockSpace* space, Rep rep)
    : space_(space), rep_(rep) {
    if (rep == Rep::Sectored) {
        blocks_.resize(space->M + 1);
        for (int N = 0; N <= space->M; ++N) {
            long d = space->sector_dim(N);
            blocks_[N] = SpMat(d, d);
        }
    } else {
        full_ = SpMat(space->dim_full(), space->dim_full());
    }
}

SparseOperator SparseOperator::zero(const FockSpace& space) {
    return SparseOperator(&space, Rep::Sectored);
}

SparseOperator SparseOperator::identity(const FockSpace& space) {
    SparseOperator op(&space, Rep::Sectored);
    for (int N = 0; N <= space.M; ++N) op.blocks_[N].setIdentity();
    return op;
}

SparseOperator SparseOperator::from_poly(const FockSpace& space,
                                         const FermiPoly& p) {
    if (!p.conserves_number())
        return from_poly_full(space, p);
    SparseOperator op(&space, Rep::Sectored);
    using T = Eigen::Triplet<cplx>;
    for (int N = 0; N <= space.M; ++N) {
        std::vector<T> trips;
        const auto& states = space.sector_states[N];
        for (uint32_t col = 0; col < states.size(); ++col) {
            for (const auto& t : p.terms) {
                auto r = apply_term(t, states[col]);
                if (!r) continue;
                uint32_t row = space.pos_in_sector[r->first];
                trips.emplace_back(row, col, t.coeff * double(r->second));
            }
        }
        op.blocks_[N].setFromTriplets(trips.begin(), trips.end());
        op.blocks_[N].prune(1e-15, 1.0);
    }
    return op;
}

SparseOperator SparseOperator::from_poly_full(const FockSpace& space,
                                              const FermiPoly& p) {
    SparseOperator op(&space, Rep::Full);
    using T = Eigen::Triplet<cplx>;
    std::vector<T> trips;
    const long dim = space.dim_full();
    for (long col = 0; col < dim; ++col) {
        for (const auto& t : p.terms) {
            auto r = apply_term(t, static_cast<uint32_t>(col));
            if (!r) continue;
            trips.emplace_back(r->first, col, t.coeff * double(r->second));
        }
    }
    op.full_.setFromTriplets(trips.begin(), trips.end());
    op.full_.prune(1e-15, 1.0);
    return op;
}

SparseOperator SparseOperator::diagonal(
    const FockSpace& space, const std::function<cplx(uint32_t)>& fn) {
    SparseOperator op(&space, Rep::Sectored);
    using T = Eigen::Triplet<cplx>;
    for (int N = 0; N <= space.M; ++N) {
        std::vector<T> trips;
        const auto& states = space.sector_states[N];
        for (uint32_t i = 0; i < states.size(); ++i)
            trips.emplace_back(i, i, fn(states[i]));
        op.blocks_[N].setFromTriplets(trips.begin(), trips.end());
    }
    return op;
}

SparseOperator SparseOperator::mode_permutation(const FockSpace& space,
                                                const std::vector<int>& perm) {
    SparseOperator op(&space, Rep::Sectored);
    using T = Eigen::Triplet<cplx>;
    for (int N = 0; N <= space.M; ++N) {
        std::vector<T> trips;
        const auto& states = space.sector_states[N];
        for (uint32_t col = 0; col < states.size(); ++col) {
            uint32_t mask = states[col];
            // collect images of occupied modes, count inversions
            std::vector<int> img;
            for (int m = 0; m < space.M; ++m)
                if (mask & (1u << m)) img.push_back(perm[m]);
            int sign = 1;
            uint32_t out = 0;
            for (size_t i = 0; i < img.size(); ++i) {
                for (size_t j = i + 1; j < img.size(); ++j)
                    if (img[i] > img[j]) sign = -sign;
                out |= 1u << img[i];
            }
            trips.emplace_back(space.pos_in_sector[out], col, cplx(sign, 0));
        }
        op.blocks_[N].setFromTriplets(trips.begin(), trips.end());
    }
    return op;
}

SparseOperator SparseOperator::lift_local(const FockSpace& space, long site_r,
                                          const MatC& local) {
    const int F = space.spec.flavors;
    const long dloc = 1L << F;
    if (local.rows() != dloc || local.cols() != dloc)
        throw std::invalid_argument("lift_local: wrong local dimension");
    // local operator must conserve the site particle number; the contiguous
    // mode layout then guarantees sign-free embedding
    for (long i = 0; i < dloc; ++i)
        for (long j = 0; j < dloc; ++j)
            if (std::popcount(unsigned(i)) != std::popcount(unsigned(j)) &&
                std::abs(local(i, j)) > 1e-12)
                throw std::invalid_argument(
                    "lift_local: local operator changes site occupation");
    const int shift = static_cast<int>(site_r) * F;
    const uint32_t loc_mask = ((1u << F) - 1u) << shift;
    SparseOperator op(&space, Rep::Sectored);
    using T = Eigen::Triplet<cplx>;
    for (int N = 0; N <= space.M; ++N) {
        std::vector<T> trips;
        const auto& states = space.sector_states[N];
        for (uint32_t col = 0; col < states.size(); ++col) {
            uint32_t mask = states[col];
            uint32_t loc = (mask & loc_mask) >> shift;
            uint32_t rest = mask & ~loc_mask;
            for (long lrow = 0; lrow < dloc; ++lrow) {
                cplx v = local(lrow, loc);
                if (std::abs(v) < 1e-15) continue;
                uint32_t out = rest | (static_cast<uint32_t>(lrow) << shift);
                trips.emplace_back(space.pos_in_sector[out], col, v);
            }
        }
        op.blocks_[N].setFromTriplets(trips.begin(), trips.end());
        op.blocks_[N].prune(1e-15, 1.0);
    }
    return op;
}

const SpMat& SparseOperator::full() const {
    if (rep_ != Rep::Full)
        throw std::logic_error("operator is not in full representation");
    return full_;
}

SpMat& SparseOperator::full_mut() {
    if (rep_ != Rep::Full)
        throw std::logic_error("operator is not in full representation");
    return full_;
}

SparseOperator SparseOperator::to_full() const {
    if (rep_ == Rep::Full) return *this;
    if (space_->M > 16)
        throw std::logic_error("to_full: space too large");
    SparseOperator op(space_, Rep::Full);
    using T = Eigen::Triplet<cplx>;
    std::vector<T> trips;
    for (int N = 0; N <= space_->M; ++N) {
        const auto& states = space_->sector_states[N];
        for (int col = 0; col < blocks_[N].outerSize(); ++col)
            for (SpMat::InnerIterator it(blocks_[N], col); it; ++it)
                trips.emplace_back(states[it.row()], states[col], it.value());
    }
    op.full_.setFromTriplets(trips.begin(), trips.end());
    return op;
}

SparseOperator SparseOperator::to_sectored(double tol) const {
    if (rep_ == Rep::Sectored) return *this;
    SparseOperator op(space_, Rep::Sectored);
    auto blocks = sector_decompose(*this, tol);
    op.blocks_ = std::move(blocks);
    return op;
}

namespace {
template <class F>
SparseOperator combine(const SparseOperator& a, const SparseOperator& b,
                       F&& f) {
    if (a.space() != b.space())
        throw std::invalid_argument("operator spaces differ");
    if (a.rep() != b.rep()) {
        // promote both to full
        SparseOperator af = a.sectored() ? a.to_full() : a;
        SparseOperator bf = b.sectored() ? b.to_full() : b;
        return combine(af, bf, std::forward<F>(f));
    }
    SparseOperator out(a.space(), a.rep());
    if (a.sectored()) {
        for (int N = 0; N < a.n_blocks(); ++N)
            out.block(N) = f(a.block(N), b.block(N));
    } else {
        out.full_mut() = f(a.full(), b.full());
    }
    return out;
}
}  // namespace

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
    return combine(*this, o,
                   [](const SpMat& x, const SpMat& y) -> SpMat { return x + y; });
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
    return combine(*this, o,
                   [](const SpMat& x, const SpMat& y) -> SpMat { return x - y; });
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
    return combine(*this, o, [](const SpMat& x, const SpMat& y) -> SpMat {
        return (x * y).pruned(1e-15, 1.0);
    });
}

SparseOperator& SparseOperator::operator+=(const SparseOperator& o) {
    *this = *this + o;
    return *this;
}

SparseOperator SparseOperator::scaled(cplx c) const {
    SparseOperator out = *this;
    if (sectored()) {
        for (auto& b : out.blocks_) b = b * c;
    } else {
        out.full_ = out.full_ * c;
    }
    return out;
}

SparseOperator SparseOperator::adjoint() const {
    SparseOperator out = *this;
    if (sectored()) {
        for (int N = 0; N < n_blocks(); ++N)
            out.blocks_[N] = SpMat(blocks_[N].adjoint());
    } else {
        out.full_ = SpMat(full_.adjoint());
    }
    return out;
}

SparseOperator SparseOperator::conjugate() const {
    SparseOperator out = *this;
    if (sectored()) {
        for (int N = 0; N < n_blocks(); ++N)
            out.blocks_[N] = blocks_[N].conjugate();
    } else {
        out.full_ = full_.conjugate();
    }
    return out;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    auto scan = [&m](const SpMat& s) {
        for (int c = 0; c < s.outerSize(); ++c)
            for (SpMat::InnerIterator it(s, c); it; ++it)
                m = std::max(m, std::abs(it.value()));
    };
    if (sectored())
        for (const auto& b : blocks_) scan(b);
    else
        scan(full_);
    return m;
}

double SparseOperator::hermiticity_residual() const {
    SparseOperator d = *this - adjoint();
    return d.max_abs();
}

bool SparseOperator::is_hermitian(double tol) const {
    return hermiticity_residual() <= tol * std::max(1.0, max_abs());
}

void SparseOperator::prune(double tol) {
    if (sectored())
        for (auto& b : blocks_) b.prune(tol, 1.0);
    else
        full_.prune(tol, 1.0);
}

namespace {
double spectral_norm_block(const SpMat& a) {
    const long n = a.rows();
    if (n == 0 || a.nonZeros() == 0) return 0.0;
    if (n <= 256) {
        Eigen::MatrixXcd d(a);
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(d);
        return svd.singularValues()(0);
    }
    // power iteration on A^dagger A with a fixed seed start vector
    std::mt19937_64 rng(12345);
    VecC v(n);
    for (long i = 0; i < n; ++i)
        v(i) = cplx(double(rng()) / double(UINT64_MAX) - 0.5,
                    double(rng()) / double(UINT64_MAX) - 0.5);
    v.normalize();
    double s = 0.0, prev = -1.0;
    for (int it = 0; it < 500; ++it) {
        VecC w = a * v;
        v = a.adjoint() * w;
        double nv = v.norm();
        if (nv == 0.0) return 0.0;
        v /= nv;
        s = std::sqrt(nv);
        if (std::abs(s - prev) <= 1e-12 * std::max(1.0, s)) break;
        prev = s;
    }
    return s;
}
}  // namespace

double SparseOperator::norm() const {
    double m = 0.0;
    if (sectored()) {
        for (const auto& b : blocks_)
            m = std::max(m, spectral_norm_block(b));
    } else {
        m = spectral_norm_block(full_);
    }
    return m;
}

SparseOperator commutator(const SparseOperator& a, const SparseOperator& b) {
    return a * b - b * a;
}

SparseOperator creation(const FockSpace& space, long mode) {
    return SparseOperator::from_poly_full(
        space, FermiPoly::single(1.0, static_cast<int>(mode), true));
}

SparseOperator annihilation(const FockSpace& space, long mode) {
    return SparseOperator::from_poly_full(
        space, FermiPoly::single(1.0, static_cast<int>(mode), false));
}

SparseOperator majorana_xi(const FockSpace& space, long mode) {
    FermiPoly p = FermiPoly::single(1.0, static_cast<int>(mode), true);
    p += FermiPoly::single(1.0, static_cast<int>(mode), false);
    return SparseOperator::from_poly_full(space, p);
}

SparseOperator majorana_eta(const FockSpace& space, long mode) {
    FermiPoly p = FermiPoly::single(cplx(0, 1), static_cast<int>(mode), true);
    p += FermiPoly::single(cplx(0, -1), static_cast<int>(mode), false);
    return SparseOperator::from_poly_full(space, p);
}

SparseOperator number_op(const FockSpace& space, long mode) {
    return SparseOperator::from_poly(
        space, FermiPoly::bilinear(1.0, static_cast<int>(mode),
                                   static_cast<int>(mode)));
}

SparseOperator total_number_op(const FockSpace& space) {
    return SparseOperator::diagonal(space, [](uint32_t mask) {
        return cplx(std::popcount(mask), 0.0);
    });
}

FermiPoly s_current_poly(const FockSpace& space, long site_r, int a,
                         const GeneratorSet& gs) {
    const MatC& l = gs.matrix(a);
    FermiPoly p;
    for (int i = 1; i <= space.spec.flavors; ++i)
        for (int j = 1; j <= space.spec.flavors; ++j) {
            cplx c = l(i - 1, j - 1);
            if (std::abs(c) < 1e-15) continue;
            p += FermiPoly::bilinear(c, static_cast<int>(space.mode_of(site_r, i)),
                                     static_cast<int>(space.mode_of(site_r, j)));
        }
    return p;
}

SparseOperator s_current(const FockSpace& space, const Site& x, int a) {
    GeneratorSet gs = generator_set(space.spec.flavors);
    return SparseOperator::from_poly(
        space, s_current_poly(space, site_rank(space.spec, x), a, gs));
}

SparseOperator smeared_current(const FockSpace& space, int a,
                               const std::vector<cplx>& site_weights) {
    GeneratorSet gs = generator_set(space.spec.flavors);
    FermiPoly p;
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        if (std::abs(site_weights[r]) < 1e-300) continue;
        p += s_current_poly(space, r, a, gs).scaled(site_weights[r]);
    }
    return SparseOperator::from_poly(space, p);
}

SparseOperator momentum_current(const FockSpace& space, int a,
                                const Momentum& p) {
    const double norm = 1.0 / std::sqrt(double(space.spec.n_sites()));
    std::vector<cplx> w(space.site_list.size());
    for (size_t r = 0; r < space.site_list.size(); ++r) {
        double phase = 0.0;
        for (int i = 0; i < space.spec.nu; ++i)
            phase += p.comp[i] * space.site_list[r][i];
        w[r] = norm * std::exp(cplx(0, phase));
    }
    return smeared_current(space, a, w);
}

std::vector<SpMat> sector_decompose(const SparseOperator& op, double tol) {
    const FockSpace& fs = *op.space();
    if (op.sectored()) {
        std::vector<SpMat> out;
        for (int N = 0; N <= fs.M; ++N) out.push_back(op.block(N));
        return out;
    }
    const SpMat& A = op.full();
    double scale = std::max(1.0, op.max_abs());
    std::vector<std::vector<Eigen::Triplet<cplx>>> trips(fs.M + 1);
    for (int c = 0; c < A.outerSize(); ++c) {
        int Nc = std::popcount(static_cast<uint32_t>(c));
        for (SpMat::InnerIterator it(A, c); it; ++it) {
            int Nr = std::popcount(static_cast<uint32_t>(it.row()));
            if (Nr != Nc) {
                if (std::abs(it.value()) > tol * scale)
                    throw std::runtime_error(
                        "sector_decompose: operator mixes particle numbers");
                continue;
            }
            trips[Nc].emplace_back(fs.pos_in_sector[it.row()],
                                   fs.pos_in_sector[c], it.value());
        }
    }
    std::vector<SpMat> out;
    for (int N = 0; N <= fs.M; ++N) {
        SpMat b(fs.sector_dim(N), fs.sector_dim(N));
        b.setFromTriplets(trips[N].begin(), trips[N].end());
        out.push_back(std::move(b));
    }
    return out;
}

}  // namespace njl
