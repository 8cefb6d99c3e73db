#pragma once

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hesslab/garding.hpp"
#include "hesslab/lelong.hpp"

namespace hesslab {

// Smallest integer q with q >= m p / n (exact when m p / n is an integer).
int q_min(int n, int m, int p);

// Restriction v(x', .) as a TestFunction on C^{n-p}. The analytic Hessian of
// the slice is the lower-right (n-p) x (n-p) block of the parent Hessian at
// (x', z''); the singular set is the parent set with the first p coordinates
// pinned to x'.
TestFunction slice(const TestFunction& f, std::span<const cplx> xprime);

enum class Integrability { integrable, divergent };

struct IntegrabilityEvidence {
    Integrability verdict = Integrability::integrable;
    bool minus_inf_slice = false;        // slice identically -inf on the probe set
    std::vector<double> estimates;       // integral of max(-f, 0) per doubling
    double final_estimate = 0.0;
};

// L^1_loc test of the slice at x' on the test ball omega'': Monte Carlo
// estimate of the integral of max(-f(x', .), 0) with a doubling-sample
// stopping rule. Divergent when the slice is -inf on a probe set or the
// estimates keep growing across 4 doublings; throws when inconclusive.
IntegrabilityEvidence slice_integrability(const TestFunction& f,
                                          std::span<const cplx> xprime,
                                          const Ball& omega_second,
                                          const EstimatorConfig& cfg);

// Min over probe points of the subharmonicity index of the slice Hessian
// spectrum: an upper-bound certificate for the global slice index.
int slice_index(const TestFunction& f, std::span<const cplx> xprime,
                std::span<const Point> probes, double tol = kGardingTol);

struct DirectionalPoint {
    double r = 0.0;
    double total = 0.0;   // C(n-1,p) I + C(n-1,p-1) J, same samples
    double i_part = 0.0;
    double j_part = 0.0;
    double std_error = 0.0;        // of total
    double std_error_i = 0.0;
    double std_error_j = 0.0;
};

struct DirectionalEstimate {
    int n = 0, m = 0, p = 0, q = 0;
    std::vector<DirectionalPoint> per_radius;
    double limit = 0.0;
    Quality quality = Quality::unreliable;
    double fit_slope = 0.0;
};

// Directional (m-q)-Lelong function of dd^c v at x'' with respect to B':
// per rung, the Hessian-trace masses over B' x B''(x'', r) scaled by
// r^{-2(n-p)(1-1/(m-q))}, split into the I / J parts with their binomial
// weights, calibrated onto the mean-value scale by kappa_cal(n).
// Requires q >= q_min(n, m, p) and m - q >= 1.
DirectionalEstimate directional_lelong(const TestFunction& f, const Ball& bprime,
                                       std::span<const cplx> xsecond, int m, int q,
                                       const RadiusLadder& ladder,
                                       const EstimatorConfig& cfg);

struct MonotonicityViolation {
    std::string component;  // "total" | "I" | "J"
    double r_small = 0.0, r_large = 0.0;
    double drop = 0.0;      // positive amount by which monotonicity failed
    double slack = 0.0;
};

struct MonotonicityReport {
    DirectionalEstimate estimate;
    std::vector<MonotonicityViolation> violations;
    bool pass = false;
};

// Checks that the scaled totals, I and J are non-decreasing along the ladder
// within 3 stderr slack; violations are report content, not errors.
MonotonicityReport monotonicity_check(const TestFunction& f, const Ball& bprime,
                                      std::span<const cplx> xsecond, int m, int q,
                                      const RadiusLadder& ladder,
                                      const EstimatorConfig& cfg);

// log-log slope of a positive column over the last `window` rungs.
double loglog_slope(std::span<const double> radii, std::span<const double> values,
                    int window);

struct SliceIdentitySample {
    std::vector<cplx> xprime;
    double slice_limit = 0.0;
    Quality quality = Quality::unreliable;
    bool divergent_slice = false;
};

struct SliceIdentityReport {
    double lhs = 0.0;       // directional limit
    double rhs = 0.0;       // C(n-1,p) * Vol_{beta'}(B') * mean slice limit
    double difference = 0.0;
    double tolerance = 0.0;
    double j_rate_slope = 0.0;  // log-log trend of J over the last 4 rungs
    bool pass = false;
    bool tainted = false;   // some sub-estimate unreliable or divergent
    DirectionalEstimate directional;
    std::vector<SliceIdentitySample> per_xprime;
};

// Identity check: directional (m-q)-Lelong number of dd^c v versus
// C(n-1,p) * integral over B' of the slice point numbers, the latter via the
// sphere-mean estimator in dimension n-p with index m-q, on the calibrated
// scale. Both-sides-zero counts as agreement within the absolute tolerance.
SliceIdentityReport slice_identity_check(const TestFunction& f, const Ball& bprime,
                        std::span<const cplx> xsecond, int m, int q,
                        std::span<const std::vector<cplx>> xgrid,
                        const RadiusLadder& ladder, const EstimatorConfig& cfg,
                        double tol = 1e-2);

// Constants of the slice identity:
//   c(n,m,p) = pi^p Gamma(n - n/m + 1) / Gamma(n - n/m + p + 1)
//   d(n,m,p) = Gamma(n - x + p + 1) / (pi^p Gamma(n - x + 1)),
//              x = (n-p)/(m - q_{m,p}).
std::pair<double, double> point_identity_constants(int n, int m, int p);

enum class PointIdentityMode { integer_case, fractional_case };

struct PointIdentitySample {
    std::vector<cplx> xprime;
    double lhs = 0.0;       // nu_m of v at (x', x'')
    double rhs = 0.0;       // c(n,m,p) C(n-1,p) * slice limit (integer case)
    double slice_limit = 0.0;
    Quality quality = Quality::unreliable;
};

struct PointIdentityReport {
    int n = 0, m = 0, p = 0, q = 0;
    PointIdentityMode mode = PointIdentityMode::integer_case;
    double c_constant = 0.0, d_constant = 0.0;
    std::vector<PointIdentitySample> samples;
    double max_difference = 0.0;
    bool pass = false;
};

// Integer case (q_{m,p} = mp/n): both sides of the identity at a
// deterministic low-discrepancy x' sample, agreement within tol absolute.
// Fractional case: the slice (m - q_{m,p})-Lelong limits vanish at all
// sampled x' off the declared singular set.
PointIdentityReport point_identity_check(const TestFunction& f, const Ball& bprime,
                        std::span<const cplx> xsecond, int m, PointIdentityMode mode,
                        const RadiusLadder& ladder, const EstimatorConfig& cfg,
                        double tol = 1e-2);

// Deterministic low-discrepancy points (Halton + rejection) in a ball of C^p,
// excluding points within delta of `avoid` when given.
std::vector<std::vector<cplx>> low_discrepancy_ball(const Ball& b, int count,
                                                    const SingularSet* avoid = nullptr,
                                                    double delta = 0.0);

struct ExceptionalCandidate {
    std::vector<cplx> xprime;
    IntegrabilityEvidence evidence;
};

// Scans a grid of x' values (grid x grid over [-extent, extent]^2 in the
// first coordinate of C^p, remaining coordinates 0) and reports every slice
// failing the L^1_loc test, with per-point divergence evidence.
std::vector<ExceptionalCandidate> exceptional_scan(const TestFunction& f, int p,
                                                   int grid, double extent,
                                                   const Ball& omega_second,
                                                   const EstimatorConfig& cfg);

}  // namespace hesslab
