#pragma once

#include <map>
#include <string>
#include <vector>

#include "bhlab/numeric.hpp"
#include "bhlab/primes.hpp"

namespace bhlab {

// Symmetric integral matrices here are dense row-major n x n (not the
// packed Sym coordinates; the Siegel machinery lives on Gram matrices).
using SymMat = std::vector<i64>;

i128 sym_det(const SymMat& S, int n);
bool is_positive_definite(const SymMat& S, int n);

struct OddJordanBlock {
    int scale = 0;     // p-power of the block
    int dim = 0;
    int det_class = 1; // +1 square unit, -1 nonsquare unit
};

struct JordanSymbolOdd {
    i64 p = 0;
    std::vector<OddJordanBlock> blocks;
};

JordanSymbolOdd jordan_decompose_odd(const SymMat& S, int n, i64 p);

enum class BlockType2 { I, II, LoveBound, LoveFree };

struct Jordan2Block {
    int scale = 0;
    int dim = 0;
    BlockType2 type = BlockType2::LoveFree;
    int octane = 0;   // E1 - E3 mod 8 for Type I, 0/4 for Type II
    int det_mod8 = 1; // unit-part determinant mod 8
};

struct JordanSymbol2 {
    std::vector<Jordan2Block> blocks; // includes love forms at adjacent scales
    int oct = 0;                      // octane of the scale-0 block
};

JordanSymbol2 jordan_decompose_2(const SymMat& S, int n);

// Standard p-density for p not dividing 2D, eq. (standard p mass).
Rational alpha_p_standard(int n, i64 p, i64 D);

// Conway-Sloane evaluation of alpha_p at odd p from the Jordan symbol.
Rational alpha_p_conway_sloane(const SymMat& S, int n, i64 p);

// 2-adic density via the M_2 table, love forms, and 2^{n(I,I)-n(II)};
// odd determinants only (multiple nontrivial scales are out of scope).
Rational alpha_2(const SymMat& S, int n);

struct BruteforceAlpha {
    Rational alpha;
    bool stabilized = false;
    i64 count = 0; // solutions of T^t S T = S mod p^k
};

// Defining limit of the p-adic density: exact congruence-solution counting
// by base enumeration mod p plus level-by-level linear lifting.
BruteforceAlpha alpha_p_bruteforce(const SymMat& S, int n, i64 p, int k,
                                   i64 budget = 80000000LL);

// Solution counts N_j for j = 1..k (the raw lifting data).
std::vector<i64> congruence_counts(const SymMat& S, int n, i64 p, int k,
                                   i64 budget = 80000000LL);

struct MassResult {
    double mass = 0;
    Rational bad_local_part;                 // prod over p | 2D of alpha_p^-1, exact
    std::map<i64, Rational> alpha_factors;   // p -> alpha_p(S), bad primes
    int n = 0;
    i64 D = 0;
};

MassResult siegel_mass(const SymMat& S, int n);

struct AutResult {
    i64 count = 0;
    bool has_improper = false; // some automorphism with det -1
};

AutResult automorphism_count(const SymMat& S, int n);

struct ClassData {
    SymMat rep;
    i64 aut = 0;
    bool has_improper = false;
};

// All GL_n(Z)-classes of positive definite integral symmetric matrices of
// determinant D, by reduced-candidate enumeration plus minimal-vector
// canonicalization.
std::vector<ClassData> enumerate_classes(int n, i64 D);

struct GenusData {
    std::vector<int> class_indices;
    Rational mass;          // sum of 1/|Aut| over the classes
    SymMat representative;
};

std::vector<GenusData> mass_bruteforce(int n, i64 D);

enum class Equivalence { GL, SL };
i64 class_number_bruteforce(int n, i64 D, Equivalence eq);

int hilbert_symbol(i64 a, i64 b, i64 p); // p = 0 encodes the real place
int hasse_invariant(const SymMat& S, int n, i64 p);
int hasse_invariant_infinity(const SymMat& S, int n);

// L(n/2, ((-1)^{n/2} q | .)) as the odd-m Jacobi character sum.
double dirichlet_L(i64 q, int n_even);

// Local factor product governing which orbits contribute matched
// Hasse invariants, in its closed large-q form.
double symmetric_orbit_constant(int n, i64 q);

// Closed-form main term of the class-number asymptotic for prime q.
double class_number_asymptotic(int n, i64 q);

// Scalar relating the normalized Haar measure on the positive definite
// cone to mu_infinity (uses vol(SO_n)).
double measure_ratio_constant(int n);

struct KitaokaRow {
    i64 D = 0;
    i64 h_sl = 0;
    double mass_total = 0;
    double ratio = 0; // h / (factor * sum of masses)
};

KitaokaRow kitaoka_relation_check(int n, i64 D);

// Random GL_n(Z) element with entries bounded by `spread`, for
// genus-invariance property tests.
SymMat random_unimodular(int n, u64 seed, int spread = 2);
SymMat congruence_transform(const SymMat& S, const SymMat& U, int n); // U^T S U

} // namespace bhlab
