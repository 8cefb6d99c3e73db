#pragma once

#include <span>
#include <vector>

#include "hesslab/integrate.hpp"

namespace hesslab {

// Profile of the fundamental solution of the complex Hessian equation:
//   phi_{n,m}(s) = -1 / ((n/m - 1) s^{n/m - 1}),   1 <= m < n, s > 0.
double phi_fundamental(int n, int m, double s);

// Geometric radius ladder r_j = r0 theta^j, j = 0..rungs-1, discretizing the
// limit r -> 0.
struct RadiusLadder {
    double r0 = 0.5;
    double theta = 0.5;
    int rungs = 8;

    void validate() const;
    std::vector<double> radii() const;
    double r_min() const;
};

enum class Quality { converged, drifting, unreliable };
const char* to_string(Quality q);

struct LadderPoint {
    double r = 0.0;
    double value = 0.0;
    double std_error = 0.0;
};

// Limit extraction: fit value = L + C r^alpha on the last ceil(rungs/2) rungs
// (least squares over an alpha grid with local refinement) and report L.
// quality = converged iff the de-trended values over the last three rungs
// agree within max(1e-3 |L|, 3 max stderr); monotone sequences failing that
// budget are flagged drifting, everything else unreliable.
struct Extrapolation {
    double limit = 0.0;
    Quality quality = Quality::unreliable;
    double fit_slope = 0.0;       // fitted alpha
    double residual_spread = 0.0;
    double budget = 0.0;
};

Extrapolation extrapolate(std::span<const LadderPoint> per_radius);

struct LelongEstimate {
    std::vector<LadderPoint> per_radius;
    double limit = 0.0;
    Quality quality = Quality::unreliable;
    double fit_slope = 0.0;
};

// Sphere-mean route: per rung, 2 M(f, S(a,r)) / phi_{n,m}(r^2); limit by
// extrapolation.
LelongEstimate lelong_point_sphere(const TestFunction& f, const Point& a, int m,
                                   const RadiusLadder& ladder, const EstimatorConfig& cfg);

// Ball-mean route: prefactor 2 (1 + 1/n - 1/m).
LelongEstimate lelong_point_ball(const TestFunction& f, const Point& a, int m,
                                 const RadiusLadder& ladder, const EstimatorConfig& cfg);

// Mass route (raw form scale, no calibration applied): per rung,
//   r^{-2n(1-1/m)} * (n-1)!/n! * kappa_form(n) * integral of tr H over B(a,r).
// Radial functions centered at a use the exact quadrature path.
LelongEstimate lelong_point_mass_raw(const TestFunction& f, const Point& a, int m,
                                     const RadiusLadder& ladder, const EstimatorConfig& cfg);

// Bridge constant kappa_cal(n): fixed by requiring the mass-route point
// estimator to return 2 on the fundamental solution (the value the sphere
// and ball mean-value routes give), then reused for every directional and
// slice computation.
double calibration_constant(int n);

}  // namespace hesslab
