#pragma once

#include <span>
#include <vector>

#include "hesslab/point.hpp"

namespace hesslab {

class TestFunction;

// Dense complex Hermitian matrix, row-major storage.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(int n)
        : n_(n), a_(static_cast<size_t>(n) * static_cast<size_t>(n), cplx(0.0, 0.0)) {
        if (n <= 0) throw std::invalid_argument("HermitianMatrix: dimension must be positive");
    }

    int size() const { return n_; }
    cplx& at(int j, int k) { return a_[static_cast<size_t>(j) * n_ + k]; }
    const cplx& at(int j, int k) const { return a_[static_cast<size_t>(j) * n_ + k]; }

    double trace() const;
    double frobenius() const;
    // max entrywise |H[j][k] - conj(H[k][j])|
    double hermitian_defect() const;
    // H <- (H + H*)/2; diagonal becomes exactly real, H == H* bitwise afterwards.
    void symmetrize();

    std::vector<double> real_diagonal() const;

    static HermitianMatrix identity(int n);
    static HermitianMatrix diagonal(std::span<const double> d);

  private:
    int n_;
    std::vector<cplx> a_;
};

// Real eigenvalues in ascending order.
struct Spectrum {
    std::vector<double> eigenvalues;
};

// Eigenvalues of a Hermitian matrix by cyclic complex Jacobi rotations,
// iterated until the off-diagonal Frobenius norm falls below 1e-13 * ||H||.
// Inputs with Hermitian defect above 1e-6 * ||H|| are rejected.
Spectrum spectrum(const HermitianMatrix& H);

// As spectrum(), additionally reporting ||H - Q L Q*|| / ||H|| for the
// internally accumulated basis Q (the basis itself is not exposed).
Spectrum spectrum_checked(const HermitianMatrix& H, double* reconstruction_rel);

// Complex (Wirtinger) Hessian d^2 f / dz_j dz.bar_k by central second
// differences with step h on the 2n real coordinates:
//   H_jk = 1/4 [ (D_{x_j x_k} + D_{y_j y_k}) + i (D_{x_j y_k} - D_{y_j x_k}) ],
// symmetrized to exact Hermitian form. Requires the point to sit at distance
// greater than 10 h from the singular set of f.
HermitianMatrix wirtinger_hessian_fd(const TestFunction& f, const Point& z, double h);

// Default-step driver: h = 1e-4 * max(1, |z|), with Richardson combination of
// the (h, h/2) stages when they disagree by more than 1e-5 relative.
HermitianMatrix wirtinger_hessian_auto(const TestFunction& f, const Point& z);

}  // namespace hesslab
