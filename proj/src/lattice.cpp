#include "njl/lattice.hpp"

namespace njl {

std::vector<Site> sites(const LatticeSpec& spec) {
    spec.validate();
    const long n = spec.n_sites();
    std::vector<Site> out;
    out.reserve(n);
    Site x(spec.nu, -spec.L + 1);
    for (long r = 0; r < n; ++r) {
        out.push_back(x);
        // advance lexicographically, x^(nu) fastest
        for (int i = spec.nu - 1; i >= 0; --i) {
            if (x[i] < spec.L) {
                ++x[i];
                break;
            }
            x[i] = -spec.L + 1;
        }
    }
    return out;
}

long site_rank(const LatticeSpec& spec, const Site& x) {
    long r = 0;
    for (int i = 0; i < spec.nu; ++i) {
        int c = x[i];
        if (c < -spec.L + 1 || c > spec.L)
            throw std::invalid_argument("site coordinate out of range");
        r = r * spec.L_side() + (c + spec.L - 1);
    }
    return r;
}

Site neighbor(const LatticeSpec& spec, const Site& x, int mu, int step) {
    if (mu < 1 || mu > spec.nu)
        throw std::invalid_argument("direction out of range");
    Site y = x;
    int side = spec.L_side();
    int c = y[mu - 1] + step;
    // wrap into [-L+1, L]
    int shifted = c + spec.L - 1;
    shifted = ((shifted % side) + side) % side;
    y[mu - 1] = shifted - spec.L + 1;
    return y;
}

int staggered_phase(const LatticeSpec& spec, const Site& x, int mu) {
    if (mu < 1 || mu > spec.nu)
        throw std::invalid_argument("direction out of range");
    long theta = 0;
    for (int j = 1; j < mu; ++j) theta += x[j - 1];
    if (x[mu - 1] == spec.L) theta += 1;
    return (theta & 1) ? -1 : 1;
}

int parity(const Site& x) {
    long s = 0;
    for (int c : x) s += c;
    return (s & 1) ? -1 : 1;
}

std::vector<Momentum> momenta(const LatticeSpec& spec) {
    spec.validate();
    const long n = spec.n_sites();
    std::vector<Momentum> out;
    out.reserve(n);
    std::vector<int> idx(spec.nu, -spec.L + 1);
    for (long r = 0; r < n; ++r) {
        Momentum p;
        p.comp.resize(spec.nu);
        for (int i = 0; i < spec.nu; ++i)
            p.comp[i] = M_PI * idx[i] / spec.L;
        out.push_back(std::move(p));
        for (int i = spec.nu - 1; i >= 0; --i) {
            if (idx[i] < spec.L) {
                ++idx[i];
                break;
            }
            idx[i] = -spec.L + 1;
        }
    }
    return out;
}

double dispersion(const Momentum& p) {
    double e = 0.0;
    for (double c : p.comp) e += 1.0 - std::cos(c);
    return e;
}

Momentum shift_by_Q(const Momentum& p) {
    Momentum q;
    q.comp.reserve(p.comp.size());
    for (double c : p.comp) {
        double v = c + M_PI;
        // fold into (-pi, pi]
        while (v > M_PI + 1e-12) v -= 2.0 * M_PI;
        while (v <= -M_PI + 1e-12) v += 2.0 * M_PI;
        q.comp.push_back(v);
    }
    return q;
}

Momentum corner_Q(const LatticeSpec& spec) {
    Momentum q;
    q.comp.assign(spec.nu, M_PI);
    return q;
}

}  // namespace njl
