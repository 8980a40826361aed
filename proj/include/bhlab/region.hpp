#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "bhlab/spaces.hpp"

namespace bhlab {

enum class SignMode { PositivePrime, PrimeIdeal };

using PatchPredicate = std::function<bool(const std::vector<double>&)>;
using RadialFunction = std::function<double(const std::vector<double>&)>;

// Membership-testable subset of V(R). Box(T) is the sup-norm ball; Cone is
// the cone of a level-set patch of height T; Radial is a star-shaped radial
// profile over directions; Custom is an arbitrary predicate with a bounding
// radius the caller guarantees ("nice" boundaries are a caller obligation
// for Custom regions).
struct Region {
    enum class Kind { Box, Cone, Radial, Custom };

    Kind kind = Kind::Box;
    double T = 0;
    SignMode sign_mode = SignMode::PositivePrime;
    PatchPredicate patch;   // Cone: membership on V_{+-1}(R)
    double patch_height = 1.0;
    RadialFunction radial;  // Radial: direction -> rho
    PatchPredicate member;  // Custom
    double bounding_radius = 0;

    static Region box(double T, SignMode m = SignMode::PositivePrime) {
        Region r;
        r.kind = Kind::Box;
        r.T = T;
        r.sign_mode = m;
        r.bounding_radius = T;
        return r;
    }
    static Region cone(PatchPredicate p, double height, double patch_ht,
                       SignMode m = SignMode::PositivePrime) {
        Region r;
        r.kind = Kind::Cone;
        r.patch = std::move(p);
        r.T = height;
        r.patch_height = patch_ht;
        r.sign_mode = m;
        r.bounding_radius = height * patch_ht;
        return r;
    }
    static Region radial_region(RadialFunction rho, double scale, double rho_max,
                                SignMode m = SignMode::PositivePrime) {
        Region r;
        r.kind = Kind::Radial;
        r.radial = std::move(rho);
        r.T = scale;
        r.sign_mode = m;
        r.bounding_radius = scale * rho_max;
        return r;
    }
    static Region custom(PatchPredicate pred, double bound, SignMode m = SignMode::PositivePrime) {
        Region r;
        r.kind = Kind::Custom;
        r.member = std::move(pred);
        r.bounding_radius = bound;
        r.sign_mode = m;
        return r;
    }

    // Membership over the reals. Cone: normalize by |F|^{1/deg}; F = 0 never matches.
    bool contains(const MatrixSpace& sp, const std::vector<double>& x) const {
        switch (kind) {
            case Kind::Box: {
                for (double c : x)
                    if (std::fabs(c) > T) return false;
                return true;
            }
            case Kind::Cone: {
                double f = eval_poly_real(sp, x);
                if (f == 0.0) return false;
                double t = std::pow(std::fabs(f), 1.0 / sp.poly_degree());
                if (t > T) return false;
                std::vector<double> v(x.size());
                for (size_t i = 0; i < x.size(); ++i) v[i] = x[i] / t;
                return patch(v);
            }
            case Kind::Radial: {
                double nrm = sup_norm_real(x);
                if (nrm == 0.0) return true;
                std::vector<double> dir(x.size());
                for (size_t i = 0; i < x.size(); ++i) dir[i] = x[i] / nrm;
                return nrm <= T * radial(dir);
            }
            case Kind::Custom: {
                if (sup_norm_real(x) > bounding_radius) return false;
                return member(x);
            }
        }
        return false;
    }
};

} // namespace bhlab
