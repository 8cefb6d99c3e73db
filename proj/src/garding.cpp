#include "hesslab/garding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace hesslab {

double binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0.0;
    k = std::min(k, n - k);
    double v = 1.0;
    for (int j = 1; j <= k; ++j) v = v * (n - k + j) / j;
    return v;
}

std::vector<double> elementary_symmetric_all(std::span<const double> lambda) {
    // Coefficients of prod_j (1 + lambda_j t), updated in place (Horner).
    std::vector<double> e(lambda.size() + 1, 0.0);
    e[0] = 1.0;
    int deg = 0;
    for (const double l : lambda) {
        ++deg;
        for (int i = deg; i >= 1; --i) e[static_cast<size_t>(i)] += l * e[static_cast<size_t>(i - 1)];
    }
    return e;
}

double elementary_symmetric(std::span<const double> lambda, int k) {
    if (k < 0 || k > static_cast<int>(lambda.size()))
        throw std::invalid_argument("elementary_symmetric: k out of range");
    if (k == 0) return 1.0;
    return elementary_symmetric_all(lambda)[static_cast<size_t>(k)];
}

namespace {

// S_k values together with the cancellation scales S_k(|lambda|) + 1.
struct ScaledSk {
    std::vector<double> sk;
    std::vector<double> scale;
};

ScaledSk scaled_sk(std::span<const double> lambda) {
    std::vector<double> absl(lambda.size());
    for (size_t j = 0; j < lambda.size(); ++j) absl[j] = std::abs(lambda[j]);
    ScaledSk out;
    out.sk = elementary_symmetric_all(lambda);
    out.scale = elementary_symmetric_all(absl);
    for (double& s : out.scale) s += 1.0;
    return out;
}

}  // namespace

bool cone_membership(std::span<const double> lambda, int m, double tol) {
    const int n = static_cast<int>(lambda.size());
    if (m < 1 || m > n) throw std::invalid_argument("cone_membership: need 1 <= m <= n");
    if (tol < 0.0) throw std::invalid_argument("cone_membership: tol must be nonnegative");
    const ScaledSk s = scaled_sk(lambda);
    for (int k = 1; k <= m; ++k)
        if (s.sk[static_cast<size_t>(k)] < -tol * s.scale[static_cast<size_t>(k)]) return false;
    return true;
}

int subharmonic_index(std::span<const double> lambda, double tol) {
    const int n = static_cast<int>(lambda.size());
    const ScaledSk s = scaled_sk(lambda);
    for (int k = 1; k <= n; ++k)
        if (s.sk[static_cast<size_t>(k)] < -tol * s.scale[static_cast<size_t>(k)]) return k - 1;
    return n;
}

double vab_sk(int n, int k, double a, double b) {
    return binom(n - 2, k) + binom(n - 2, k - 1) * (a + b) + binom(n - 2, k - 2) * a * b;
}

RegionLabel classify_vab(int n, double a, double b, double tol) {
    if (n < 3) throw std::invalid_argument("classify_vab: requires n >= 3");

    RegionLabel out;
    // m index from the closed form, with the same relative slack as
    // cone_membership: scale_k = S_k(|a|,|b|,1,...,1) + 1.
    int m = n;
    for (int k = 1; k <= n; ++k) {
        const double sk = vab_sk(n, k, a, b);
        const double scale = binom(n - 2, k) + binom(n - 2, k - 1) * (std::abs(a) + std::abs(b)) +
                             binom(n - 2, k - 2) * std::abs(a * b) + 1.0;
        if (sk < -tol * scale) {
            m = k - 1;
            break;
        }
    }
    out.m_index = m;

    // slice u_b is k-subharmonic on C^{n-1} iff b >= -(n-k-1)/k; the bound is
    // increasing in k, so the admissible set is downward closed.
    int slice_k = 0;
    for (int k = 1; k <= n - 1; ++k) {
        const double bound = -static_cast<double>(n - k - 1) / k;
        if (b >= bound - tol)
            slice_k = k;
        else
            break;
    }
    out.slice_k_index = slice_k;

    if (out.m_index >= 1 && out.slice_k_index >= 1)
        out.delta = out.slice_k_index - (out.m_index - 1);
    return out;
}

std::vector<BoundaryCurve> region_boundaries(int n) {
    if (n < 3) throw std::invalid_argument("region_boundaries: requires n >= 3");
    std::vector<BoundaryCurve> out;
    for (int k = 1; k <= n; ++k) {
        BoundaryCurve c;
        c.family = "msh";
        c.k = k;
        c.c0 = binom(n - 2, k);
        c.c1 = binom(n - 2, k - 1);
        c.c2 = binom(n - 2, k - 2);
        c.kind = (c.c2 == 0.0) ? BoundaryCurve::Kind::line : BoundaryCurve::Kind::hyperbola;
        out.push_back(c);
    }
    for (int k = 1; k <= n - 1; ++k) {
        BoundaryCurve c;
        c.family = "slice";
        c.k = k;
        c.kind = BoundaryCurve::Kind::line;
        c.c0 = -static_cast<double>(n - k - 1) / k;  // b = c0
        out.push_back(c);
    }
    return out;
}

double boundary_distance(const std::vector<BoundaryCurve>& curves, double a, double b) {
    double best = std::numeric_limits<double>::infinity();
    for (const BoundaryCurve& c : curves) {
        double d;
        if (c.family == "slice") {
            d = std::abs(b - c.c0);
        } else {
            const double f = c.c0 + c.c1 * (a + b) + c.c2 * a * b;
            const double ga = c.c1 + c.c2 * b;
            const double gb = c.c1 + c.c2 * a;
            const double g = std::sqrt(ga * ga + gb * gb);
            d = (g < 1e-12) ? std::numeric_limits<double>::infinity() : std::abs(f) / g;
        }
        best = std::min(best, d);
    }
    return best;
}

std::vector<RegionRow> table1(int n, int grid_resolution) {
    if (n < 3) throw std::invalid_argument("table1: requires n >= 3");
    if (grid_resolution < 2) throw std::invalid_argument("table1: resolution too small");

    const std::vector<BoundaryCurve> curves = region_boundaries(n);
    const double lo = -6.0, hi = 6.0;
    const double step = (hi - lo) / (grid_resolution - 1);
    constexpr double kMinBoundaryDist = 0.1;

    struct Candidate {
        double a, b, dist;
        RegionLabel label;
    };
    std::map<std::pair<int, int>, Candidate> best;

    for (int i = 0; i < grid_resolution; ++i) {
        const double a = lo + step * i;
        for (int j = 0; j < grid_resolution; ++j) {
            const double b = lo + step * j;
            const double d = boundary_distance(curves, a, b);
            if (d < kMinBoundaryDist) continue;
            const RegionLabel label = classify_vab(n, a, b);
            if (label.m_index < 1) continue;  // the table covers subharmonic v only
            const std::pair<int, int> key{label.m_index, label.slice_k_index};
            auto it = best.find(key);
            if (it == best.end() || d > it->second.dist) best[key] = {a, b, d, label};
        }
    }

    std::vector<RegionRow> rows;
    int id = 1;
    for (const auto& [key, cand] : best) {
        RegionRow r;
        r.region_id = id++;
        r.a = cand.a;
        r.b = cand.b;
        r.label = cand.label;
        rows.push_back(r);
    }
    return rows;
}

}  // namespace hesslab
