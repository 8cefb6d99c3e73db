#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hesslab/catalog.hpp"
#include "hesslab/point.hpp"

namespace hesslab {

// Reproducibility contract for all Monte Carlo work.
struct EstimatorConfig {
    int samples = 65536;          // >= 64
    std::uint64_t seed = 42;
    bool stratified = false;      // radius-stratified ball sampling
    double clamp_radius = 0.0;    // exclusion shell delta; 0 = use-site default
    bool radial_quadrature = false;  // 1-D Gauss-Legendre path for radial f

    void validate() const;
    EstimatorConfig with_samples(int s) const {
        EstimatorConfig c = *this;
        c.samples = s;
        return c;
    }
};

struct MassEstimate {
    double value = 0.0;
    double std_error = 0.0;
    long samples_used = 0;
    double clipped_fraction = 0.0;  // resampled draws / total draws

    bool reliable() const { return clipped_fraction < 0.5; }
};

// Ball in C^l.
struct Ball {
    std::vector<cplx> center;
    double radius = 0.0;
    int dim() const { return static_cast<int>(center.size()); }
};

// Volume of the ball of radius r in C^l (Lebesgue on R^{2l}): pi^l r^{2l} / l!.
double ball_volume(int dim_c, double r);
// Area of the sphere of radius r in C^l: 2 pi^l r^{2l-1} / (l-1)!.
double sphere_area(int dim_c, double r);
// Form-normalization constant: beta^n = kappa_form(n) dV with kappa_form = 2^n n!.
double kappa_form(int n);

// Uniform average of f over the sphere S(a, r). Gaussian-direction sampling
// with counter-based per-sample seeding; draws landing within delta of the
// singular set are replaced by resampling and counted in clipped_fraction.
// For functions with a declared full radial structure centered at a,
// cfg.radial_quadrature replaces MC by the exact profile value.
MassEstimate sphere_mean(const TestFunction& f, const Point& a, double r,
                         const EstimatorConfig& cfg);

// Uniform average of f over the ball B(a, r); radius factor U^{1/2n}
// (stratified over equal-probability shells when cfg.stratified). The radial
// quadrature path integrates the profile with 64-node Gauss-Legendre.
MassEstimate ball_mean(const TestFunction& f, const Point& a, double r,
                       const EstimatorConfig& cfg);

enum class MassPart { total, zprime_trace, zsecond_trace };

// Trace integrals of the complex Hessian over the product region
// B' x B''(x'', r):
//   value = kappa_form(n) * Vol(region) * mean over uniform samples of
//           tr H | tr' H (j <= p) | tr'' H (j > p).
// Up to shared constants these are the total mass, the J-integrand and the
// I-integrand of the directional Lelong decomposition.
MassEstimate hessian_mass(const TestFunction& f, const Ball& bprime,
                          std::span<const cplx> xsecond, double r, MassPart part,
                          const EstimatorConfig& cfg);

// All three parts from one shared sample stream (identical to calling
// hessian_mass three times with the same cfg, but one pass).
struct HessianMassParts {
    MassEstimate total, zprime, zsecond;
};
HessianMassParts hessian_mass_parts(const TestFunction& f, const Ball& bprime,
                                    std::span<const cplx> xsecond, double r,
                                    const EstimatorConfig& cfg);

// Lebesgue integral of tr H over the full ball B(a, r) (no form constant),
// by uniform ball sampling; radial functions centered at a take the exact
// quadrature route when cfg.radial_quadrature is set.
MassEstimate trace_ball_mass(const TestFunction& f, const Point& a, double r,
                             const EstimatorConfig& cfg);

// 64-node Gauss-Legendre rule (nodes computed once by Newton iteration).
class GaussLegendre {
  public:
    explicit GaussLegendre(int nodes = 64);
    double integrate(double a, double b, const std::function<double(double)>& fn) const;
    int nodes() const { return static_cast<int>(x_.size()); }

  private:
    std::vector<double> x_, w_;  // on [-1, 1]
};

const GaussLegendre& gauss_legendre_64();

// Mean of profile(t^2) over the ball of radius r in C^l (radial reduction,
// Gauss-Legendre in t). Used as the quadrature oracle for radial families.
double radial_ball_mean(const RadialProfile& f, int dim_c, double r);

// Integral of profile(t^2) * t^{2l-1} over [0, r] (Gauss-Legendre).
double radial_moment(const RadialProfile& f, int dim_c, double r);

}  // namespace hesslab
