#include "bhlab/archimedean.hpp"

#include <algorithm>
#include <cmath>

#include "bhlab/enumerate.hpp"
#include "bhlab/localdensity.hpp"
#include "bhlab/sieve.hpp"

namespace bhlab {

namespace {

constexpr int kStrata = 16;
constexpr int kBlocksPerStratum = 4;

struct Accum {
    double sum = 0, sumsq = 0;
    i64 n = 0;
};

// Uniform direction on the sup-norm unit sphere under the cone measure:
// pick a face uniformly, uniform on the face.
void sample_direction(Rng& rng, int dim, std::vector<double>& y) {
    i64 face = rng.below(2 * dim);
    int j = (int)(face / 2);
    double s = (face % 2 == 0) ? 1.0 : -1.0;
    for (int i = 0; i < dim; ++i) y[i] = rng.uniform(-1.0, 1.0);
    y[j] = s;
}

} // namespace

IntegrandProblem problem_from_region(const MatrixSpace& sp, const Region& region) {
    IntegrandProblem prob;
    prob.dim = sp.ambient_dim();
    prob.degree = sp.poly_degree();
    prob.F = [sp](const std::vector<double>& x) { return eval_poly_real(sp, x); };
    if (region.kind == Region::Kind::Box) {
        prob.member = [](const std::vector<double>&) { return true; };
    } else {
        Region r = region;
        prob.member = [sp, r](const std::vector<double>& x) { return r.contains(sp, x); };
    }
    prob.bounding_radius = region.bounding_radius;
    prob.sign_mode = region.sign_mode;
    return prob;
}

McEstimate bh_integral_problem(const IntegrandProblem& prob, i64 samples, u64 seed,
                               int threads) {
    (void)threads; // per-block substreams keep results thread-layout invariant
    if (samples < 1000) throw PreconditionError("bh_integral: samples >= 1000");
    int D = prob.dim;
    double R = prob.bounding_radius;
    double boxvol = std::pow(2.0 * R, D);

    double value = 0, var = 0;
    std::vector<double> x(D), y(D);
    for (int s = 0; s < kStrata; ++s) {
        double lo = (double)s / kStrata, hi = (double)(s + 1) / kStrata;
        double volfrac = std::pow(hi, D) - std::pow(lo, D);
        double vol_s = boxvol * volfrac;
        i64 n_s = std::max<i64>(64, (i64)((double)samples * volfrac));
        Accum acc;
        for (int b = 0; b < kBlocksPerStratum; ++b) {
            Rng rng = Rng::substream(seed, (u64)(s * kBlocksPerStratum + b));
            i64 nb = n_s / kBlocksPerStratum + (b < n_s % kBlocksPerStratum ? 1 : 0);
            for (i64 i = 0; i < nb; ++i) {
                sample_direction(rng, D, y);
                double t = std::pow(std::pow(lo, D) + rng.uniform() * (std::pow(hi, D) - std::pow(lo, D)),
                                    1.0 / D);
                for (int k = 0; k < D; ++k) x[k] = R * t * y[k];
                double g = 0;
                if (prob.member(x)) {
                    double f = prob.F(x);
                    if (prob.sign_mode == SignMode::PrimeIdeal) f = std::fabs(f);
                    g = logplus_inv(f);
                }
                acc.sum += g;
                acc.sumsq += g * g;
                ++acc.n;
            }
        }
        double mean = acc.sum / acc.n;
        double v = (acc.sumsq - acc.sum * acc.sum / acc.n) / std::max<i64>(acc.n - 1, 1);
        value += vol_s * mean;
        var += vol_s * vol_s * v / acc.n;
    }

    McEstimate est;
    est.value = value;
    est.stderr_ = std::sqrt(var);
    est.samples = samples;
    est.seed = seed;
    return est;
}

McEstimate bh_integral(const MatrixSpace& sp, const Region& region, i64 samples, u64 seed,
                       int threads) {
    return bh_integral_problem(problem_from_region(sp, region), samples, seed, threads);
}

MuInfinityResult mu_infinity_problem(const MuProblem& prob, i64 samples, u64 seed) {
    int D = prob.dim;
    int g = prob.degree;
    const auto& patch = prob.patch;
    double patch_height = prob.patch_height;
    MuInfinityResult out;

    // Surface form: ray-shoot from the sup-norm sphere onto V_1; the cone
    // measure turns int_Omega |grad F|^-1 into (D 2^D / g) E[t(u)^D].
    {
        i64 n = samples / 2;
        double sum = 0, sumsq = 0;
        i64 hits = 0;
        std::vector<double> u(D), y(D);
        for (int b = 0; b < 8; ++b) {
            Rng rng = Rng::substream(seed, 100 + b);
            i64 nb = n / 8 + (b < n % 8 ? 1 : 0);
            for (i64 i = 0; i < nb; ++i) {
                sample_direction(rng, D, u);
                double f = prob.F(u);
                double w = 0;
                if (f > 0) {
                    double t = std::pow(f, -1.0 / g);
                    if (t <= patch_height * 1.0000001) {
                        for (int k = 0; k < D; ++k) y[k] = t * u[k];
                        if (patch(y)) {
                            w = std::pow(t, D);
                            ++hits;
                        }
                    }
                }
                sum += w;
                sumsq += w * w;
            }
        }
        double scale = (double)D * std::pow(2.0, D) / g;
        double mean = sum / n;
        double var = (sumsq - sum * sum / n) / std::max<i64>(n - 1, 1);
        out.surface.value = scale * mean;
        out.surface.stderr_ = scale * std::sqrt(var / n);
        out.surface.samples = n;
        out.surface.seed = seed;
        if (hits == 0) throw DegeneratePatchError("mu_infinity: patch empty under sampling");
    }

    // Shell form: vol{F in [1-eps,1+eps], direction patch}/2eps, Richardson
    // extrapolated over eps in {0.1, 0.05, 0.025}.
    {
        const double eps[3] = {0.1, 0.05, 0.025};
        double A[3], V[3];
        i64 n_each = samples / 6;
        std::vector<double> x(D), v(D);
        for (int e = 0; e < 3; ++e) {
            double R = patch_height * std::pow(1.0 + eps[e], 1.0 / g) * 1.0000001;
            double boxvol = std::pow(2.0 * R, D);
            double sum = 0;
            i64 n = 0;
            for (int b = 0; b < 8; ++b) {
                Rng rng = Rng::substream(seed, 200 + e * 8 + b);
                i64 nb = n_each / 8 + (b < n_each % 8 ? 1 : 0);
                for (i64 i = 0; i < nb; ++i) {
                    for (int k = 0; k < D; ++k) x[k] = rng.uniform(-R, R);
                    double f = prob.F(x);
                    double ind = 0;
                    if (f >= 1.0 - eps[e] && f <= 1.0 + eps[e]) {
                        double t = std::pow(f, 1.0 / g);
                        for (int k = 0; k < D; ++k) v[k] = x[k] / t;
                        if (patch(v)) ind = 1;
                    }
                    sum += ind;
                    ++n;
                }
            }
            double frac = sum / n;
            A[e] = boxvol * frac / (2.0 * eps[e]);
            V[e] = boxvol * boxvol * frac * (1.0 - frac) / n / (4.0 * eps[e] * eps[e]);
        }
        // (64 A3 - 20 A2 + A1) / 45 kills the eps^2 and eps^4 bias terms
        out.shell.value = (64.0 * A[2] - 20.0 * A[1] + A[0]) / 45.0;
        out.shell.stderr_ =
            std::sqrt(64.0 * 64.0 * V[2] + 20.0 * 20.0 * V[1] + V[0]) / 45.0;
        out.shell.samples = n_each * 3;
        out.shell.seed = seed;
    }
    return out;
}

MuInfinityResult mu_infinity(const MatrixSpace& sp, const PatchPredicate& patch,
                             double patch_height, i64 samples, u64 seed) {
    MuProblem prob;
    prob.dim = sp.ambient_dim();
    prob.degree = sp.poly_degree();
    prob.F = [sp](const std::vector<double>& x) { return eval_poly_real(sp, x); };
    prob.patch = patch;
    prob.patch_height = patch_height;
    return mu_infinity_problem(prob, samples, seed);
}

EpsilonCutting epsilon_cutting(const MatrixSpace& sp, const Region& region, double epsilon,
                               i64 samples, u64 seed) {
    if (!(epsilon > 0)) throw PreconditionError("epsilon_cutting: epsilon in (0,1)");
    int D = sp.ambient_dim();
    int g = sp.poly_degree();
    double R = region.bounding_radius;

    // star-shapedness is a hypothesis of the construction; spot-check it
    {
        Rng rng = Rng::substream(seed, 7);
        int checked = 0;
        std::vector<double> x(D), tx(D);
        for (int i = 0; i < 4000 && checked < 200; ++i) {
            for (int k = 0; k < D; ++k) x[k] = rng.uniform(-R, R);
            if (!region.contains(sp, x)) continue;
            ++checked;
            double t = rng.uniform();
            for (int k = 0; k < D; ++k) tx[k] = t * x[k];
            if (!region.contains(sp, tx))
                throw PreconditionError("epsilon_cutting: region fails star-shape sample test");
        }
    }

    EpsilonCutting cut;
    cut.epsilon = epsilon;
    if (epsilon >= 1.0) {
        // the whole region may be exceptional
        cut.exceptional_fraction = 1.0;
        cut.exceptional_volume_bound = 1.0;
        return cut;
    }

    // Pilot sample: |F| quantile excision and the h = ||x|| / |F|^{1/g} range.
    i64 npilot = std::min<i64>(samples, 200000);
    std::vector<double> fabsv;
    {
        Rng rng = Rng::substream(seed, 11);
        std::vector<double> x(D);
        for (i64 i = 0; i < npilot; ++i) {
            for (int k = 0; k < D; ++k) x[k] = rng.uniform(-R, R);
            if (!region.contains(sp, x)) continue;
            fabsv.push_back(std::fabs(eval_poly_real(sp, x)));
        }
    }
    if (fabsv.empty()) throw DegeneratePatchError("epsilon_cutting: region empty under sampling");
    std::sort(fabsv.begin(), fabsv.end());
    double theta = fabsv[(size_t)(0.4 * epsilon * (double)fabsv.size())];
    if (theta <= 0) theta = 1e-300;

    // h-ranges per sign, restricted to points with |F| >= theta
    double m_sign[2] = {0, 0}, M_sign[2] = {0, 0};
    bool have_sign[2] = {false, false};
    {
        Rng rng = Rng::substream(seed, 11); // same pilot stream, recomputed
        std::vector<double> x(D);
        double mn[2] = {1e300, 1e300}, mx[2] = {0, 0};
        for (i64 i = 0; i < npilot; ++i) {
            for (int k = 0; k < D; ++k) x[k] = rng.uniform(-R, R);
            if (!region.contains(sp, x)) continue;
            double f = eval_poly_real(sp, x);
            if (std::fabs(f) < theta || f == 0) continue;
            int sgn = f > 0 ? 0 : 1;
            double t = std::pow(std::fabs(f), 1.0 / g);
            double h = sup_norm_real(x) / t;
            mn[sgn] = std::min(mn[sgn], h);
            mx[sgn] = std::max(mx[sgn], h);
            have_sign[sgn] = true;
        }
        for (int sgn = 0; sgn < 2; ++sgn) {
            if (!have_sign[sgn]) continue;
            m_sign[sgn] = mn[sgn] * 0.999;
            M_sign[sgn] = mx[sgn] * 1.001;
        }
    }

    // Calibrate slice width eta: uncovered fraction <= 0.8 epsilon on the pilot.
    auto build_pieces = [&](double eta) {
        std::vector<CuttingPiece> pieces;
        for (int sgn = 0; sgn < 2; ++sgn) {
            if (!have_sign[sgn]) continue;
            int K = (int)std::ceil((M_sign[sgn] - m_sign[sgn]) / eta);
            for (int k = 0; k < K; ++k) {
                CuttingPiece pc;
                pc.sign = sgn == 0 ? +1 : -1;
                pc.m_lo = m_sign[sgn] + k * eta;
                pc.m_hi = std::min(m_sign[sgn] + (k + 1) * eta, M_sign[sgn]);
                pc.height = R;
                pieces.push_back(pc);
            }
        }
        return pieces;
    };
    auto uncovered_fraction = [&](const std::vector<CuttingPiece>& pieces, u64 sub, i64 n,
                                  double* se) {
        Rng rng = Rng::substream(seed, sub);
        std::vector<double> x(D);
        i64 in = 0, unc = 0;
        for (i64 i = 0; i < n; ++i) {
            for (int k = 0; k < D; ++k) x[k] = rng.uniform(-R, R);
            if (!region.contains(sp, x)) continue;
            ++in;
            bool cov = false;
            for (const auto& pc : pieces)
                if (EpsilonCutting::piece_contains(sp, pc, x)) {
                    cov = true;
                    break;
                }
            if (!cov) ++unc;
        }
        if (in == 0) return 1.0;
        double f = (double)unc / in;
        if (se) *se = std::sqrt(std::max(f * (1 - f), 1e-12) / in);
        return f;
    };

    double span = 0;
    for (int sgn = 0; sgn < 2; ++sgn)
        if (have_sign[sgn]) span = std::max(span, M_sign[sgn] - m_sign[sgn]);
    double eta = span / 8;
    std::vector<CuttingPiece> pieces = build_pieces(eta);
    for (int iter = 0; iter < 16; ++iter) {
        double f = uncovered_fraction(pieces, 13, std::min<i64>(samples, 50000), nullptr);
        if (f <= 0.8 * epsilon || eta < 1e-7) break;
        eta /= 2;
        pieces = build_pieces(eta);
    }

    cut.pieces = pieces;
    double se = 0;
    double frac = uncovered_fraction(pieces, 17, samples, &se);
    cut.exceptional_fraction = frac;
    cut.exceptional_stderr = se;
    cut.exceptional_volume_bound = frac + 3 * se;
    cut.region_volume = std::pow(2 * R, D); // box case; fraction fields are volume-relative
    return cut;
}

std::vector<PredictionRow> cones_to_box_experiment(const MatrixSpace& sp,
                                                   const std::vector<i64>& T_list,
                                                   double epsilon, i64 samples, u64 seed,
                                                   int threads) {
    EpsilonCutting cut = epsilon_cutting(sp, Region::box(1.0), epsilon, samples, seed);
    double series = singular_series_closed_form(sp);
    int D = sp.ambient_dim();

    std::vector<PredictionRow> rows;
    for (i64 T : T_list) {
        PredictionRow row;
        row.T = (double)T;
        CountResult cr = count_primes(sp, Region::box((double)T), threads);
        row.empirical = (double)cr.total;

        // per-piece predictions integrated in one pass over the union of the
        // positive-sheet pieces, rescaled to height T
        std::vector<CuttingPiece> plus;
        for (const auto& pc : cut.pieces)
            if (pc.sign > 0) {
                CuttingPiece q = pc;
                q.height = (double)T;
                plus.push_back(q);
            }
        IntegrandProblem prob;
        prob.dim = D;
        prob.degree = sp.poly_degree();
        prob.F = [sp](const std::vector<double>& x) { return eval_poly_real(sp, x); };
        prob.member = [sp, plus](const std::vector<double>& x) {
            for (const auto& pc : plus)
                if (EpsilonCutting::piece_contains(sp, pc, x)) return true;
            return false;
        };
        prob.bounding_radius = (double)T;
        prob.sign_mode = SignMode::PositivePrime;
        McEstimate bh = bh_integral_problem(prob, samples, seed + 1, threads);
        row.predicted = series * bh.value;
        row.stderr_ = series * bh.stderr_;

        // honest sieve bound on primes the cones may miss
        if (T >= 3) {
            SieveResult sv = rough_count(sp, T, 5.0, threads);
            row.exceptional_bound =
                cut.exceptional_volume_bound * (sv.main_term + sv.remainder_sum);
        } else {
            row.exceptional_bound = cut.exceptional_volume_bound * std::pow(2.0 * T + 1, D);
        }
        row.ratio = row.predicted > 0 ? row.empirical / row.predicted : 0;
        rows.push_back(row);
    }
    return rows;
}

} // namespace bhlab
