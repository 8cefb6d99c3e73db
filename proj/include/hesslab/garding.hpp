#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace hesslab {

// Default relative tolerance for cone membership; boundary points count as
// members (the cones are closed).
inline constexpr double kGardingTol = 1e-9;

double binom(int n, int k);

// k-th elementary symmetric polynomial S_k(lambda), computed by the stable
// Horner expansion of prod_j (1 + lambda_j t). S_0 = 1.
double elementary_symmetric(std::span<const double> lambda, int k);

// All coefficients S_0 .. S_n in one pass.
std::vector<double> elementary_symmetric_all(std::span<const double> lambda);

// lambda in Gamma_m, i.e. S_k(lambda) >= -tol * scale_k for k = 1..m with
// scale_k = S_k(|lambda_1|,...,|lambda_n|) + 1.
bool cone_membership(std::span<const double> lambda, int m, double tol = kGardingTol);

// Largest m with cone_membership(lambda, m, tol); 0 if none.
int subharmonic_index(std::span<const double> lambda, double tol = kGardingTol);

// Classification of one point of the (a, b) parameter plane of
// v_ab = a|z_1|^2 + b|z_2|^2 + sum_{j>=3} |z_j|^2:
//   m_index        largest m with the spectrum (a, b, 1, ..., 1) in Gamma_m
//   slice_k_index  largest k with b >= -(n-k-1)/k (subharmonicity index of
//                  the slice u_b on C^{n-1}); 0 when the slice is not Sh
//   delta          slice_k_index - (m_index - 1), absent when either index is 0
struct RegionLabel {
    int m_index = 0;
    int slice_k_index = 0;
    std::optional<int> delta;
};

// Closed form S_k(v_ab) = C(n-2,k) + C(n-2,k-1)(a+b) + C(n-2,k-2) ab.
double vab_sk(int n, int k, double a, double b);

RegionLabel classify_vab(int n, double a, double b, double tol = kGardingTol);

// One realized region of the (a, b) plane with a representative sample chosen
// at distance >= 0.1 from every boundary curve.
struct RegionRow {
    int region_id = 0;
    double a = 0.0, b = 0.0;
    RegionLabel label;
};

// Enumerates all realized (m_index, slice_k_index, delta) triples over the
// window [-6, 6]^2 by grid + boundary-offset search, ordered lexicographically
// in (m, k). For n = 5 this yields exactly the 15 table rows.
std::vector<RegionRow> table1(int n, int grid_resolution = 601);

// Boundary curve in the (a, b) plane. For family "msh" the curve is
// c0 + c1 (a+b) + c2 ab = 0 (the zero set of S_k); for family "slice" it is
// the horizontal line b = c0 with c0 = -(n-k-1)/k.
struct BoundaryCurve {
    enum class Kind { line, hyperbola };
    Kind kind = Kind::line;
    std::string family;  // "msh" | "slice"
    int k = 0;
    double c0 = 0.0, c1 = 0.0, c2 = 0.0;
};

std::vector<BoundaryCurve> region_boundaries(int n);

// First-order distance from (a, b) to the nearest boundary curve.
double boundary_distance(const std::vector<BoundaryCurve>& curves, double a, double b);

}  // namespace hesslab
