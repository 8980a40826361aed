#pragma once

#include <vector>

#include "bhlab/numeric.hpp"

namespace bhlab {

enum class Family { Full, Skew, Sym };

// Descriptor of one of the three matrix families with its invariant polynomial:
// det on Mat_n, Pff on Skew_{2n}, det on Sym_n. For Skew the matrix size
// is 2n and deg(Pff) = n.
struct MatrixSpace {
    Family family;
    int n;

    int matrix_size() const { return family == Family::Skew ? 2 * n : n; }
    int ambient_dim() const {
        switch (family) {
            case Family::Full: return n * n;
            case Family::Skew: return 2 * n * n - n;
            case Family::Sym: return n * (n + 1) / 2;
        }
        return 0;
    }
    int poly_degree() const { return n; }
    const char* family_name() const {
        switch (family) {
            case Family::Full: return "full";
            case Family::Skew: return "skew";
            case Family::Sym: return "sym";
        }
        return "?";
    }
};

// Free coordinates, row-major. Skew stores the strict upper triangle,
// Sym the upper triangle including the diagonal.
struct IntMatrix {
    MatrixSpace space;
    std::vector<i64> coords;
};

struct RealMatrix {
    MatrixSpace space;
    std::vector<double> coords;
};

// Reconstruction to the full matrix_size x matrix_size matrix (row-major).
std::vector<i64> reconstruct(const MatrixSpace& sp, const std::vector<i64>& coords);
std::vector<double> reconstruct_real(const MatrixSpace& sp, const std::vector<double>& coords);

i64 sup_norm(const IntMatrix& A);
double sup_norm_real(const std::vector<double>& coords);

// Exact invariant polynomial: det for Full/Sym, Pff for Skew.
// 128-bit checked intermediates; throws OverflowError instead of wrapping.
i128 eval_poly(const MatrixSpace& sp, const IntMatrix& A);
i128 eval_poly_coords(const MatrixSpace& sp, const std::vector<i64>& coords);

double eval_poly_real(const MatrixSpace& sp, const std::vector<double>& coords);

// Pfaffian of a full skew matrix (size 2m), two exact routes that are cross-tested.
i128 pfaffian_expand(const std::vector<i128>& M, int size);
i128 pfaffian_eliminate(std::vector<i128> M, int size);

i128 det_bareiss(std::vector<i128> M, int size);

// Gradient with respect to the free coordinates (chain rule folds the tied
// entries of Skew/Sym), satisfying <X, grad F(X)> = deg * F(X).
std::vector<double> gradient(const MatrixSpace& sp, const std::vector<double>& coords);

// Sylvester signature of a nonsingular symmetric integer matrix via exact
// rational congruence pivoting.
std::pair<int, int> signature(const IntMatrix& A);

inline int psi_factor(int /*p*/, int q) { return (q % 2 == 0) ? 1 : 0; }

// Largest |F| over the box of height T (Hadamard-type bound), used to size
// sieve tables and to guard the int64 fast paths.
i128 hadamard_bound(const MatrixSpace& sp, i64 T);

} // namespace bhlab
