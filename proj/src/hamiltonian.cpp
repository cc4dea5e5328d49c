#include "njl/hamiltonian.hpp"

#include "njl/symmetry.hpp"

namespace njl {

namespace {
const cplx I(0.0, 1.0);
}

SparseOperator build_hopping(const FockSpace& space, double kappa) {
    const LatticeSpec& spec = space.spec;
    FermiPoly p;
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        const Site& x = space.site_list[r];
        for (int mu = 1; mu <= spec.nu; ++mu) {
            Site y = neighbor(spec, x, mu);
            long ry = site_rank(spec, y);
            cplx amp = I * kappa * double(staggered_phase(spec, x, mu));
            for (int j = 1; j <= spec.flavors; ++j) {
                int a = static_cast<int>(space.mode_of(r, j));
                int b = static_cast<int>(space.mode_of(ry, j));
                p += FermiPoly::bilinear(amp, a, b);
                p += FermiPoly::bilinear(-amp, b, a);
            }
        }
    }
    return SparseOperator::from_poly(space, p);
}

SparseOperator build_interaction(const FockSpace& space, double g) {
    const LatticeSpec& spec = space.spec;
    GeneratorSet gs = generator_set(spec.flavors);
    std::vector<std::vector<SparseOperator>> s_ops(space.site_list.size());
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r)
        for (int a = 1; a <= gs.count(); ++a)
            s_ops[r].push_back(SparseOperator::from_poly(
                space, s_current_poly(space, r, a, gs)));
    SparseOperator h = SparseOperator::zero(space);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        const Site& x = space.site_list[r];
        for (int mu = 1; mu <= spec.nu; ++mu) {
            long ry = site_rank(spec, neighbor(spec, x, mu));
            for (int a = 1; a <= gs.count(); ++a)
                h += s_ops[r][a - 1] * s_ops[ry][a - 1];
        }
    }
    h = h.scaled(g);
    h.prune();
    return h;
}

SparseOperator build_order_parameter(const FockSpace& space) {
    std::vector<cplx> w(space.site_list.size());
    for (size_t r = 0; r < space.site_list.size(); ++r)
        w[r] = cplx(parity(space.site_list[r]), 0.0);
    return smeared_current(space, 2, w);
}

SparseOperator build_total(const FockSpace& space, const ModelParams& p) {
    SparseOperator h = build_hopping(space, p.kappa);
    if (p.m != 0.0) h += build_order_parameter(space).scaled(p.m);
    h += build_interaction(space, p.g);
    h.prune();
    return h;
}

MatC v_spin1_matrix() {
    MatC v(3, 3);
    const double s = 1.0 / std::sqrt(2.0);
    v << 1, 0, -1,
         I, 0, I,
         0, std::sqrt(2.0), 0;
    return (-I * s) * v;
}

GeneratorSet tilde_generator_set() {
    GeneratorSet gs = generator_set(3);
    MatC v = v_spin1_matrix();
    GeneratorSet out;
    out.flavors = 3;
    for (int a = 1; a <= 8; ++a)
        out.lambda.push_back(v.adjoint() * gs.matrix(a) * v);
    for (auto& m : out.lambda) {
        // clean numerical dust so the reality tags are sharp
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                cplx c = m(i, j);
                double re = std::abs(c.real()) < 1e-14 ? 0.0 : c.real();
                double im = std::abs(c.imag()) < 1e-14 ? 0.0 : c.imag();
                m(i, j) = cplx(re, im);
            }
        out.is_imaginary.push_back(m.real().cwiseAbs().maxCoeff() < 1e-14);
    }
    return out;
}

SparseOperator completed_square_interaction(const FockSpace& space, double g,
                                            const GeneratorSet& gens,
                                            int channel,
                                            const SourceField& h) {
    const LatticeSpec& spec = space.spec;
    if (channel < 1 || channel > gens.count())
        throw std::invalid_argument("completed square: bad channel");
    if (gens.imaginary(channel))
        throw std::invalid_argument(
            "completed square: channel must be real hermitian");
    const long nsites = space.site_list.size();
    std::vector<std::vector<SparseOperator>> s_ops(nsites);
    for (long r = 0; r < nsites; ++r)
        for (int a = 1; a <= gens.count(); ++a)
            s_ops[r].push_back(SparseOperator::from_poly(
                space, s_current_poly(space, r, a, gens)));

    SparseOperator id = SparseOperator::identity(space);
    SparseOperator acc = SparseOperator::zero(space);
    for (long r = 0; r < nsites; ++r) {
        const Site& x = space.site_list[r];
        const double stag = parity(x);
        for (int mu = 1; mu <= spec.nu; ++mu) {
            long ry = site_rank(spec, neighbor(spec, x, mu));
            // sourced square of the chosen channel
            SparseOperator sum = s_ops[r][channel - 1] + s_ops[ry][channel - 1];
            double c = stag * h.at(mu, r);
            if (c != 0.0) sum += id.scaled(c);
            acc += (sum * sum).scaled(0.5);
            for (int b = 1; b <= gens.count(); ++b) {
                if (b == channel) continue;
                if (!gens.imaginary(b)) {
                    SparseOperator s = s_ops[r][b - 1] + s_ops[ry][b - 1];
                    acc += (s * s).scaled(0.5);
                } else {
                    SparseOperator d = s_ops[r][b - 1] - s_ops[ry][b - 1];
                    acc += (d * d).scaled(-0.5);
                }
            }
        }
    }
    // on-site counterterms
    for (long r = 0; r < nsites; ++r)
        for (int a = 1; a <= gens.count(); ++a) {
            double w = gens.imaginary(a) ? double(spec.nu) : -double(spec.nu);
            acc += (s_ops[r][a - 1] * s_ops[r][a - 1]).scaled(w);
        }
    acc = acc.scaled(g);
    acc.prune();
    return acc;
}

SourcedBuilder::SourcedBuilder(const FockSpace& space, const ModelParams& p,
                               int channel)
    : space_(&space), params_(p), channel_(channel), g_(p.g) {
    const LatticeSpec& spec = space.spec;
    if (channel != 3 && channel != 4 && channel != 7)
        throw std::invalid_argument("sourced builder: channel must be 3, 4 or 7");
    if (channel != 3 && spec.flavors != 3)
        throw std::invalid_argument(
            "sourced builder: channels 4 and 7 need the SU(3) model");
    gens_ = (channel == 7) ? tilde_generator_set() : generator_set(spec.flavors);
    conjugate_frame_ = (channel == 7);
    if (conjugate_frame_) {
        frame_ = v_fock_unitary(space);
        frame_adj_ = frame_.adjoint();
    }

    const long nsites = space.site_list.size();
    for (long r = 0; r < nsites; ++r)
        chan_site_.push_back(SparseOperator::from_poly(
            space, s_current_poly(space, r, channel_, gens_)));

    // all square groups except the sourced one, plus counterterms
    std::vector<std::vector<SparseOperator>> s_ops(nsites);
    for (long r = 0; r < nsites; ++r)
        for (int a = 1; a <= gens_.count(); ++a)
            s_ops[r].push_back(SparseOperator::from_poly(
                space, s_current_poly(space, r, a, gens_)));
    SparseOperator rest = SparseOperator::zero(space);
    for (long r = 0; r < nsites; ++r) {
        const Site& x = space.site_list[r];
        for (int mu = 1; mu <= spec.nu; ++mu) {
            long ry = site_rank(spec, neighbor(spec, x, mu));
            for (int b = 1; b <= gens_.count(); ++b) {
                if (b == channel_) continue;
                if (!gens_.imaginary(b)) {
                    SparseOperator s = s_ops[r][b - 1] + s_ops[ry][b - 1];
                    rest += (s * s).scaled(0.5);
                } else {
                    SparseOperator d = s_ops[r][b - 1] - s_ops[ry][b - 1];
                    rest += (d * d).scaled(-0.5);
                }
            }
        }
    }
    for (long r = 0; r < nsites; ++r)
        for (int a = 1; a <= gens_.count(); ++a) {
            double w = gens_.imaginary(a) ? double(spec.nu) : -double(spec.nu);
            rest += (s_ops[r][a - 1] * s_ops[r][a - 1]).scaled(w);
        }
    fixed_ = rest;  // still missing the g factor; applied in build()

    base_ = build_hopping(space, params_.kappa);
    if (params_.m != 0.0)
        base_ += build_order_parameter(space).scaled(params_.m);

    h_zero_ = build(SourceField::zeros(spec));
}

SparseOperator SourcedBuilder::build(const SourceField& h) const {
    const FockSpace& space = *space_;
    const LatticeSpec& spec = space.spec;
    SparseOperator id = SparseOperator::identity(space);
    SparseOperator acc = SparseOperator::zero(space);
    for (long r = 0; r < static_cast<long>(space.site_list.size()); ++r) {
        const Site& x = space.site_list[r];
        const double stag = parity(x);
        for (int mu = 1; mu <= spec.nu; ++mu) {
            long ry = site_rank(spec, neighbor(spec, x, mu));
            SparseOperator sum = chan_site_[r] + chan_site_[ry];
            double c = stag * h.at(mu, r);
            if (c != 0.0) sum += id.scaled(c);
            acc += (sum * sum).scaled(0.5);
        }
    }
    SparseOperator inter = (fixed_ + acc).scaled(g_);
    if (conjugate_frame_) inter = frame_ * inter * frame_adj_;
    SparseOperator total = base_ + inter;
    total.prune();
    return total;
}

SparseOperator build_sourced(const FockSpace& space, const ModelParams& p,
                             const SourceField& h, int channel) {
    if (channel != 3 && channel != 4)
        throw std::invalid_argument("build_sourced: channel must be 3 or 4");
    SourcedBuilder b(space, p, channel);
    return b.build(h);
}

SparseOperator build_sourced_channel7(const FockSpace& space,
                                      const ModelParams& p,
                                      const SourceField& h) {
    SourcedBuilder b(space, p, 7);
    return b.build(h);
}

}  // namespace njl
