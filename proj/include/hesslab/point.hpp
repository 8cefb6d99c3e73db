#pragma once

#include <complex>
#include <span>
#include <stdexcept>
#include <vector>

namespace hesslab {

using cplx = std::complex<double>;

// Point of C^n carrying a declared split z = (z', z'') into C^p x C^{n-p}.
// The split is only meaningful for slicing and product-region work; most
// operations ignore it.
struct Point {
    std::vector<cplx> z;
    int p = 0;

    Point() = default;
    Point(std::vector<cplx> coords, int split = 0) : z(std::move(coords)), p(split) {
        if (z.empty()) throw std::invalid_argument("Point: dimension must be positive");
        if (p < 0 || p >= static_cast<int>(z.size()))
            throw std::invalid_argument("Point: split p must satisfy 0 <= p < n");
    }

    int n() const { return static_cast<int>(z.size()); }

    static Point origin(int n, int split = 0) {
        return Point(std::vector<cplx>(static_cast<size_t>(n), cplx(0.0, 0.0)), split);
    }

    std::span<const cplx> zprime() const { return {z.data(), static_cast<size_t>(p)}; }
    std::span<const cplx> zsecond() const {
        return {z.data() + p, static_cast<size_t>(n() - p)};
    }
};

inline double abs2(std::span<const cplx> v) {
    double s = 0.0;
    for (const cplx& c : v) s += std::norm(c);
    return s;
}

inline double abs2(const Point& z) { return abs2(std::span<const cplx>(z.z)); }

inline double dist(std::span<const cplx> a, std::span<const cplx> b) {
    if (a.size() != b.size()) throw std::invalid_argument("dist: dimension mismatch");
    double s = 0.0;
    for (size_t j = 0; j < a.size(); ++j) s += std::norm(a[j] - b[j]);
    return std::sqrt(s);
}

// (x', z'') -> point of C^n with split |x'|.
inline Point concat(std::span<const cplx> xprime, std::span<const cplx> zsecond) {
    std::vector<cplx> out;
    out.reserve(xprime.size() + zsecond.size());
    out.insert(out.end(), xprime.begin(), xprime.end());
    out.insert(out.end(), zsecond.begin(), zsecond.end());
    return Point(std::move(out), static_cast<int>(xprime.size()));
}

}  // namespace hesslab
