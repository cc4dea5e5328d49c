#include "njl/flavor.hpp"

#include <stdexcept>

namespace njl {

namespace {
const cplx I(0.0, 1.0);
}

MatC gell_mann(int a) {
    MatC m = MatC::Zero(3, 3);
    switch (a) {
        case 1: m(0, 1) = 1; m(1, 0) = 1; break;
        case 2: m(0, 1) = -I; m(1, 0) = I; break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        case 4: m(0, 2) = 1; m(2, 0) = 1; break;
        case 5: m(0, 2) = -I; m(2, 0) = I; break;
        case 6: m(1, 2) = 1; m(2, 1) = 1; break;
        case 7: m(1, 2) = -I; m(2, 1) = I; break;
        case 8:
            m(0, 0) = 1; m(1, 1) = 1; m(2, 2) = -2;
            m /= std::sqrt(3.0);
            break;
        default: throw std::out_of_range("gell_mann: index must be 1..8");
    }
    return m;
}

MatC pauli(int a) {
    MatC m = MatC::Zero(2, 2);
    switch (a) {
        case 1: m(0, 1) = 1; m(1, 0) = 1; break;
        case 2: m(0, 1) = -I; m(1, 0) = I; break;
        case 3: m(0, 0) = 1; m(1, 1) = -1; break;
        default: throw std::out_of_range("pauli: index must be 1..3");
    }
    return m;
}

const MatC& GeneratorSet::matrix(int a) const {
    if (a < 1 || a > count())
        throw std::out_of_range("generator index out of range");
    return lambda[a - 1];
}

std::vector<int> GeneratorSet::imaginary_channels() const {
    std::vector<int> out;
    for (int a = 1; a <= count(); ++a)
        if (imaginary(a)) out.push_back(a);
    return out;
}

std::vector<int> GeneratorSet::real_channels() const {
    std::vector<int> out;
    for (int a = 1; a <= count(); ++a)
        if (!imaginary(a)) out.push_back(a);
    return out;
}

GeneratorSet generator_set(int flavors) {
    GeneratorSet gs;
    gs.flavors = flavors;
    if (flavors == 3) {
        for (int a = 1; a <= 8; ++a) gs.lambda.push_back(gell_mann(a));
    } else if (flavors == 2) {
        for (int a = 1; a <= 3; ++a) gs.lambda.push_back(pauli(a));
    } else {
        throw std::invalid_argument("generator_set: flavors must be 2 or 3");
    }
    for (const MatC& m : gs.lambda)
        gs.is_imaginary.push_back(m.real().cwiseAbs().maxCoeff() < 1e-14);
    return gs;
}

StructureConstants structure_constants(int flavors) {
    GeneratorSet gs = generator_set(flavors);
    const int n = gs.count();
    StructureConstants sc;
    sc.n = n;
    sc.f.assign(static_cast<size_t>(n) * n * n, 0.0);
    for (int a = 1; a <= n; ++a)
        for (int b = 1; b <= n; ++b) {
            MatC comm = gs.matrix(a) * gs.matrix(b) - gs.matrix(b) * gs.matrix(a);
            for (int c = 1; c <= n; ++c) {
                cplx tr = (comm * gs.matrix(c)).trace();
                double v = (tr / (2.0 * I)).real();
                if (std::abs(v) < 1e-13) v = 0.0;
                sc.f[((a - 1) * n + (b - 1)) * n + (c - 1)] = v;
            }
        }
    return sc;
}

}  // namespace njl
