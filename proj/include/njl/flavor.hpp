#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace njl {

using cplx = std::complex<double>;
using MatC = Eigen::MatrixXcd;

// On-site flavor generators in the normalization with tr(l^a l^b) = 2 d_ab.
// SU(3): the eight Gell-Mann matrices; SU(2): the three Pauli matrices.
// With this normalization the structure constants come out doubled
// relative to the textbook SU(3) convention: f_123 = 2, f_458 = sqrt(3).
struct GeneratorSet {
    int flavors;                 // 2 or 3
    std::vector<MatC> lambda;    // 1-based access through matrix(a)
    std::vector<bool> is_imaginary;  // true for the pure-imaginary hermitian ones

    int count() const { return static_cast<int>(lambda.size()); }
    const MatC& matrix(int a) const;  // a = 1..count()
    bool imaginary(int a) const { return is_imaginary[a - 1]; }

    std::vector<int> imaginary_channels() const;  // {2,5,7} or {2}
    std::vector<int> real_channels() const;       // complement
};

GeneratorSet generator_set(int flavors);

// Single Gell-Mann matrix, a = 1..8.
MatC gell_mann(int a);

// Single Pauli matrix, a = 1..3.
MatC pauli(int a);

// Totally antisymmetric structure constants in the doubled normalization,
// computed from the matrices via f_abc = tr([l^a,l^b] l^c) / (2i).
struct StructureConstants {
    int n;                      // number of generators
    std::vector<double> f;      // dense n^3 tensor, 1-based via operator()
    double operator()(int a, int b, int c) const {
        return f[((a - 1) * n + (b - 1)) * n + (c - 1)];
    }
};

StructureConstants structure_constants(int flavors);

}  // namespace njl
