#include "hesslab/lelong.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hesslab {

double phi_fundamental(int n, int m, double s) {
    if (m < 1 || m >= n)
        throw std::invalid_argument("phi_fundamental: requires 1 <= m < n");
    if (!(s > 0.0)) throw std::invalid_argument("phi_fundamental: argument must be positive");
    const double e = static_cast<double>(n) / m - 1.0;
    return -1.0 / (e * std::pow(s, e));
}

void RadiusLadder::validate() const {
    if (!(r0 > 0.0)) throw std::invalid_argument("RadiusLadder: r0 must be positive");
    if (!(theta > 0.0 && theta < 1.0))
        throw std::invalid_argument("RadiusLadder: theta must lie in (0, 1)");
    if (rungs < 3) throw std::invalid_argument("RadiusLadder: need at least 3 rungs");
}

std::vector<double> RadiusLadder::radii() const {
    validate();
    std::vector<double> r(static_cast<size_t>(rungs));
    double v = r0;
    for (int j = 0; j < rungs; ++j, v *= theta) r[static_cast<size_t>(j)] = v;
    return r;
}

double RadiusLadder::r_min() const { return r0 * std::pow(theta, rungs - 1); }

const char* to_string(Quality q) {
    switch (q) {
        case Quality::converged: return "converged";
        case Quality::drifting: return "drifting";
        case Quality::unreliable: return "unreliable";
    }
    return "unknown";
}

// ---------------------------------------------------------------- extrapolate

namespace {

// Least squares of v = L + C x over the window; returns SSE.
struct LinFit {
    double L = 0.0, C = 0.0, sse = 0.0;
};

LinFit fit_given_alpha(std::span<const LadderPoint> w, double alpha) {
    const double n = static_cast<double>(w.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const LadderPoint& q : w) {
        const double x = std::pow(q.r, alpha);
        sx += x;
        sy += q.value;
        sxx += x * x;
        sxy += x * q.value;
    }
    const double det = n * sxx - sx * sx;
    LinFit f;
    if (std::abs(det) < 1e-300) {
        f.L = sy / n;
        f.C = 0.0;
    } else {
        f.C = (n * sxy - sx * sy) / det;
        f.L = (sy - f.C * sx) / n;
    }
    for (const LadderPoint& q : w) {
        const double e = q.value - f.L - f.C * std::pow(q.r, alpha);
        f.sse += e * e;
    }
    return f;
}

}  // namespace

Extrapolation extrapolate(std::span<const LadderPoint> per_radius) {
    const int R = static_cast<int>(per_radius.size());
    if (R < 3) throw std::invalid_argument("extrapolate: need at least 3 rungs");

    // Fit window: the last ceil(R/2) rungs (smallest radii), at least 3.
    const int K = std::max(3, (R + 1) / 2);
    std::span<const LadderPoint> w = per_radius.subspan(static_cast<size_t>(R - K));

    double vmax = 0.0, smax = 0.0;
    double lo = w[0].value, hi = w[0].value;
    for (const LadderPoint& q : w) {
        vmax = std::max(vmax, std::abs(q.value));
        smax = std::max(smax, q.std_error);
        lo = std::min(lo, q.value);
        hi = std::max(hi, q.value);
    }

    Extrapolation out;

    // Degenerate fit: all values equal.
    if (hi - lo <= 1e-13 * std::max(1.0, vmax)) {
        out.limit = w[w.size() - 1].value;
        out.quality = Quality::converged;
        out.fit_slope = 0.0;
        out.residual_spread = hi - lo;
        out.budget = std::max({1e-3 * std::abs(out.limit), 3.0 * smax, 1e-12 * std::max(1.0, vmax)});
        return out;
    }

    // Coarse alpha grid, then golden-section refinement around the best cell.
    double best_alpha = 1.0, best_sse = std::numeric_limits<double>::infinity();
    std::vector<double> grid;
    for (double a = 0.05; a <= 10.0 + 1e-9; a *= 1.12) grid.push_back(a);
    for (double a : {0.5, 1.0, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0, 6.0, 8.0}) grid.push_back(a);
    std::sort(grid.begin(), grid.end());
    for (double a : grid) {
        const double sse = fit_given_alpha(w, a).sse;
        if (sse < best_sse) {
            best_sse = sse;
            best_alpha = a;
        }
    }
    {
        double a = best_alpha / 1.2, b = best_alpha * 1.2;
        const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
        double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
        double f1 = fit_given_alpha(w, x1).sse, f2 = fit_given_alpha(w, x2).sse;
        for (int it = 0; it < 60; ++it) {
            if (f1 < f2) {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = fit_given_alpha(w, x1).sse;
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = fit_given_alpha(w, x2).sse;
            }
        }
        const double refined = 0.5 * (a + b);
        if (fit_given_alpha(w, refined).sse <= best_sse) best_alpha = refined;
    }

    const LinFit fit = fit_given_alpha(w, best_alpha);
    out.limit = fit.L;
    out.fit_slope = best_alpha;

    // De-trended values over the last three rungs.
    const size_t k0 = w.size() - 3;
    double dlo = std::numeric_limits<double>::infinity();
    double dhi = -std::numeric_limits<double>::infinity();
    for (size_t j = k0; j < w.size(); ++j) {
        const double d = w[j].value - fit.C * std::pow(w[j].r, best_alpha);
        dlo = std::min(dlo, d);
        dhi = std::max(dhi, d);
    }
    out.residual_spread = dhi - dlo;
    out.budget = std::max({1e-3 * std::abs(fit.L), 3.0 * smax, 1e-12 * std::max(1.0, vmax)});

    if (out.residual_spread <= out.budget) {
        out.quality = Quality::converged;
        return out;
    }

    // Monotone run that the power model cannot explain: drifting.
    bool inc = true, dec = true;
    for (size_t j = 1; j < w.size(); ++j) {
        if (w[j].value < w[j - 1].value) inc = false;
        if (w[j].value > w[j - 1].value) dec = false;
    }
    out.quality = (inc || dec) ? Quality::drifting : Quality::unreliable;
    return out;
}

// ----------------------------------------------------------- point estimators

namespace {

EstimatorConfig with_default_shell(const EstimatorConfig& cfg, const RadiusLadder& ladder) {
    EstimatorConfig c = cfg;
    if (c.clamp_radius == 0.0) c.clamp_radius = ladder.r_min() / 8.0;
    if (!(c.clamp_radius < ladder.r_min() / 4.0))
        throw std::invalid_argument("lelong: clamp_radius must stay below r_min / 4");
    return c;
}

LelongEstimate assemble(std::vector<LadderPoint> pts, bool any_unreliable) {
    LelongEstimate est;
    est.per_radius = std::move(pts);
    const Extrapolation ex = extrapolate(est.per_radius);
    est.limit = ex.limit;
    est.fit_slope = ex.fit_slope;
    est.quality = any_unreliable ? Quality::unreliable : ex.quality;
    return est;
}

}  // namespace

LelongEstimate lelong_point_sphere(const TestFunction& f, const Point& a, int m,
                                   const RadiusLadder& ladder, const EstimatorConfig& cfg) {
    const int n = f.n();
    if (m < 1 || m >= n) throw std::invalid_argument("lelong_point_sphere: requires 1 <= m < n");
    const EstimatorConfig c = with_default_shell(cfg, ladder);

    std::vector<LadderPoint> pts;
    bool tainted = false;
    for (const double r : ladder.radii()) {
        const MassEstimate e = sphere_mean(f, a, r, c);
        const double phi = phi_fundamental(n, m, r * r);
        pts.push_back({r, 2.0 * e.value / phi, std::abs(2.0 * e.std_error / phi)});
        tainted = tainted || !e.reliable();
    }
    return assemble(std::move(pts), tainted);
}

LelongEstimate lelong_point_ball(const TestFunction& f, const Point& a, int m,
                                 const RadiusLadder& ladder, const EstimatorConfig& cfg) {
    const int n = f.n();
    if (m < 1 || m >= n) throw std::invalid_argument("lelong_point_ball: requires 1 <= m < n");
    const EstimatorConfig c = with_default_shell(cfg, ladder);
    const double pref = 2.0 * (1.0 + 1.0 / n - 1.0 / m);

    std::vector<LadderPoint> pts;
    bool tainted = false;
    for (const double r : ladder.radii()) {
        const MassEstimate e = ball_mean(f, a, r, c);
        const double phi = phi_fundamental(n, m, r * r);
        pts.push_back({r, pref * e.value / phi, std::abs(pref * e.std_error / phi)});
        tainted = tainted || !e.reliable();
    }
    return assemble(std::move(pts), tainted);
}

LelongEstimate lelong_point_mass_raw(const TestFunction& f, const Point& a, int m,
                                     const RadiusLadder& ladder, const EstimatorConfig& cfg) {
    const int n = f.n();
    if (m < 1 || m >= n) throw std::invalid_argument("lelong_point_mass_raw: requires 1 <= m < n");
    const EstimatorConfig c = with_default_shell(cfg, ladder);
    const double scaling_exp = 2.0 * n * (1.0 - 1.0 / static_cast<double>(m));
    // (n-1)!/n! * kappa_form(n): form mass of dd^c v wedge beta^{n-1} per unit
    // trace integral.
    const double form_const = kappa_form(n) / n;

    std::vector<LadderPoint> pts;
    bool tainted = false;
    for (const double r : ladder.radii()) {
        const MassEstimate e = trace_ball_mass(f, a, r, c);
        const double scale = form_const / std::pow(r, scaling_exp);
        pts.push_back({r, scale * e.value, std::abs(scale) * e.std_error});
        tainted = tainted || !e.reliable();
    }
    return assemble(std::move(pts), tainted);
}

double calibration_constant(int n) {
    if (n < 2) throw std::invalid_argument("calibration_constant: requires n >= 2");
    const int m = std::min(2, n - 1);
    const TestFunction phi = catalog_lookup("fundamental", n, std::array<double, 1>{static_cast<double>(m)});
    RadiusLadder ladder;
    EstimatorConfig cfg;
    cfg.radial_quadrature = true;
    const LelongEstimate raw = lelong_point_mass_raw(phi, Point::origin(n), m, ladder, cfg);
    if (raw.quality == Quality::unreliable || raw.limit == 0.0)
        throw std::runtime_error("calibration_constant: calibration run failed");
    return 2.0 / raw.limit;
}

}  // namespace hesslab
