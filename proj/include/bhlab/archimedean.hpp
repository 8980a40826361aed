#pragma once

#include "bhlab/mc.hpp"
#include "bhlab/region.hpp"

namespace bhlab {

// Generic integrand problem so the machinery can also run the 1-d sanity
// family F(x) = x used to validate against quadrature.
struct IntegrandProblem {
    int dim;
    int degree;
    std::function<double(const std::vector<double>&)> F;
    std::function<bool(const std::vector<double>&)> member; // region indicator
    double bounding_radius;
    SignMode sign_mode = SignMode::PositivePrime;
};

IntegrandProblem problem_from_region(const MatrixSpace& sp, const Region& region);

// MC estimate of int_region dx / log+(F) (log+|F| in PrimeIdeal mode),
// stratified over 16 sup-norm radial shells.
McEstimate bh_integral_problem(const IntegrandProblem& prob, i64 samples, u64 seed,
                               int threads = 1);
McEstimate bh_integral(const MatrixSpace& sp, const Region& region, i64 samples, u64 seed,
                       int threads = 1);

struct MuInfinityResult {
    McEstimate surface; // ray-shot co-area form  int_Omega |grad F|^-1
    McEstimate shell;   // vol([1-eps,1+eps]Omega)/2eps, Richardson over 3 widths
};

struct MuProblem {
    int dim;
    int degree;
    std::function<double(const std::vector<double>&)> F;
    PatchPredicate patch;  // membership on the level-1 set
    double patch_height;   // sup-norm bound over the patch
};

MuInfinityResult mu_infinity_problem(const MuProblem& prob, i64 samples, u64 seed);

// Both estimators of the Bateman-Horn measure of a patch Omega of V_1(R),
// given as a membership predicate plus a bound on sup-norm over the patch.
MuInfinityResult mu_infinity(const MatrixSpace& sp, const PatchPredicate& patch,
                             double patch_height, i64 samples, u64 seed);

inline double asymptotic_form(double mu_inf, double T, int dim) {
    if (!(T > 1)) throw PreconditionError("asymptotic_form: T > 1");
    return mu_inf * std::pow(T, dim) / (dim * std::log(T));
}

struct CuttingPiece {
    int sign = +1;      // which level-set sheet the patch lives on
    double m_lo = 0;    // outer radius m_k - eta (exclusive)
    double m_hi = 0;    // inner radius m_k (inclusive)
    double height = 1;  // cone height scale of the enclosing region
};

struct EpsilonCutting {
    std::vector<CuttingPiece> pieces;
    double epsilon = 0;
    double exceptional_volume_bound = 0; // MC estimate + 3 stderr, fraction of region volume
    double exceptional_fraction = 0;     // MC point estimate
    double exceptional_stderr = 0;
    double region_volume = 0;

    static bool piece_contains(const MatrixSpace& sp, const CuttingPiece& pc,
                               const std::vector<double>& x) {
        double f = eval_poly_real(sp, x);
        if (pc.sign > 0 ? (f <= 0) : (f >= 0)) return false;
        double t = std::pow(std::fabs(f), 1.0 / sp.poly_degree());
        double h = sup_norm_real(x) / t;
        if (!(h > pc.m_lo && h <= pc.m_hi)) return false;
        return sup_norm_real(x) <= pc.height * h / pc.m_hi + 1e-12;
    }
    bool covered(const MatrixSpace& sp, const std::vector<double>& x) const {
        for (const auto& pc : pieces)
            if (piece_contains(sp, pc, x)) return true;
        return false;
    }
};

// Constructive eps-cutting of a star-shaped region: excise directions near
// {F=0} by an |F| quantile, slice the surviving level-set patch by sup-norm
// intervals of calibrated width eta.
EpsilonCutting epsilon_cutting(const MatrixSpace& sp, const Region& region, double epsilon,
                               i64 samples, u64 seed);

struct PredictionRow {
    double T = 0;
    double empirical = 0;
    double predicted = 0;
    double exceptional_bound = 0;
    double ratio = 0;
    double stderr_ = 0;
};

std::vector<PredictionRow> cones_to_box_experiment(const MatrixSpace& sp,
                                                   const std::vector<i64>& T_list,
                                                   double epsilon, i64 samples, u64 seed,
                                                   int threads = 1);

} // namespace bhlab
