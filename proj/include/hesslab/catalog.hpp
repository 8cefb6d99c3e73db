#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hesslab/hessian.hpp"
#include "hesslab/point.hpp"

namespace hesslab {

inline constexpr double kMinusInf = -std::numeric_limits<double>::infinity();

// Singular set described as an affine coordinate set {z : z[idx[j]] = val[j]}.
//   absent                -> no singular set
//   all indices fixed     -> a single point
//   a contiguous block    -> a plane {z' = a'} or {z'' = a''}
//   present, empty idx    -> the whole space (slices of log|z'| at x' = a')
struct SingularSet {
    bool present = false;
    std::vector<int> idx;
    std::vector<cplx> val;

    static SingularSet none() { return {}; }
    static SingularSet point_at(std::vector<cplx> a);
    // plane {z : z[first..first+vals) = vals}
    static SingularSet coordinate_plane(int first, std::vector<cplx> vals);
    static SingularSet everything() { return {true, {}, {}}; }

    // Euclidean distance from z to the set; +inf when absent, 0 for the whole space.
    double distance(const Point& z) const;
    bool is_everything() const { return present && idx.empty(); }
};

// One term c * s^gamma * (log s)^logpow with logpow in {0, 1}.
struct RadialTerm {
    double coeff = 0.0;
    double gamma = 0.0;
    int logpow = 0;
};

// Radial profile f(s) = sum of terms; closed under d/ds, so the first and
// second derivatives stay in the same representation and no finite
// differencing is ever needed near the singular point.
class RadialProfile {
  public:
    RadialProfile() = default;
    explicit RadialProfile(std::vector<RadialTerm> terms) : terms_(std::move(terms)) {}

    const std::vector<RadialTerm>& terms() const { return terms_; }
    double operator()(double s) const;  // extended real; handles s = 0
    RadialProfile derivative() const;
    // true when some term has gamma < 0 or a log factor (profile unbounded at 0)
    bool singular_at_zero() const;

  private:
    std::vector<RadialTerm> terms_;
};

enum class RadialBlock { full, zprime, zsecond };

// v(z) = f(|w|^2) with w = z_block - center. The complex Hessian on the block
// is H_jk = f'(s) delta_jk + f''(s) conj(w_j) w_k, zero outside the block;
// block eigenvalues are f' (multiplicity b-1) and f' + s f''.
struct RadialStructure {
    RadialBlock block = RadialBlock::full;
    std::vector<cplx> center;  // center within the block
    RadialProfile f, fp, fpp;
};

// An evaluable function on C^n with optional closed-form complex Hessian and
// a declared singular set. Immutable after construction; safe for concurrent
// reads.
class TestFunction {
  public:
    TestFunction() = default;

    int n() const { return n_; }
    int split() const { return p_; }
    const std::string& name() const { return name_; }
    const std::vector<double>& params() const { return params_; }
    const SingularSet& singular() const { return singular_; }
    const std::optional<RadialStructure>& radial() const { return radial_; }

    double operator()(const Point& z) const;
    bool has_analytic_hessian() const { return static_cast<bool>(hess_); }
    HermitianMatrix hessian(const Point& z) const;
    // Real diagonal of the complex Hessian (fast path for trace integrals).
    std::vector<double> hessian_diag(const Point& z) const;

    struct Builder;

  private:
    int n_ = 0;
    int p_ = 0;
    std::string name_;
    std::vector<double> params_;
    std::function<double(const Point&)> eval_;
    std::function<HermitianMatrix(const Point&)> hess_;
    std::function<std::vector<double>(const Point&)> diag_;
    SingularSet singular_;
    std::optional<RadialStructure> radial_;

    friend struct Builder;
};

struct TestFunction::Builder {
    int n = 0;
    int p = 0;
    std::string name;
    std::vector<double> params;
    std::function<double(const Point&)> eval;
    std::function<HermitianMatrix(const Point&)> hess;
    std::function<std::vector<double>(const Point&)> diag;
    SingularSet singular;
    std::optional<RadialStructure> radial;

    TestFunction build() const;
};

// Families:
//   abs_sq                       |z|^2
//   quadratic_ab  (a, b)         a|z_1|^2 + b|z_2|^2 + sum_{j>=3} |z_j|^2
//   power_tau     (tau > 1)      -|z|^{-2(tau-1)} / (tau-1)
//   fundamental   (m, 1<=m<n)    power_tau with tau = n/m
//   log_abs                      log |z|
//   log_abs_zprime (split p)     log |z'|, singular on the plane {z' = 0}
//   log_abs_z2     (split p)     log |z''|, singular on the plane {z'' = 0}
//   custom_radial (c,g,L)*       user radial profile, terms as flat triples
TestFunction catalog_lookup(const std::string& name, int n,
                            std::span<const double> params = {}, int p = 0);

// Radial profile applied to one coordinate block (the block-restricted
// analogue of custom_radial): v(z) = profile(|z_block|^2). Serves as a
// factory for derived oracles; the singular set is the complementary plane
// when the profile blows up at zero.
TestFunction custom_block_radial(int n, int p, RadialBlock block,
                                 std::span<const RadialTerm> terms);

// Evaluate f at z, returning -inf on the singular set for families unbounded
// below there. Throws on dimension mismatch.
double eval(const TestFunction& f, const Point& z);

}  // namespace hesslab
