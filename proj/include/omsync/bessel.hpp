// bessel.hpp — Bessel functions of the first kind for signed order and
// signed argument, on top of std::cyl_bessel_j.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace omsync {

inline constexpr int kBesselOrderLimit = 200;
inline constexpr double kBesselArgLimit = 100.0;

// J_n(x) for integer n in [-200, 200] and |x| <= 100.
// Uses J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x).
inline double bessel_j(int n, double x) {
    if (n < -kBesselOrderLimit || n > kBesselOrderLimit)
        throw std::domain_error("bessel_j: order out of range: " + std::to_string(n));
    if (!(std::abs(x) <= kBesselArgLimit))
        throw std::domain_error("bessel_j: argument out of range: " + std::to_string(x));
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? sign : 0.0;
    return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

// Table of J_n(x) for n in [-n_max, n_max]; entry [n + n_max] holds J_n(x).
// Orders outside the table are treated as zero by at(n).
struct BesselTable {
    int n_max = 0;
    double x = 0.0;
    std::vector<double> j;

    BesselTable() = default;
    BesselTable(int n_max_, double x_) : n_max(n_max_), x(x_), j(2 * n_max_ + 1) {
        for (int n = -n_max; n <= n_max; ++n) j[n + n_max] = bessel_j(n, x);
    }

    double at(int n) const {
        if (n < -n_max || n > n_max) return 0.0;
        return j[n + n_max];
    }
};

// Smallest N >= floor_order with |J_N(x)| < tol; Bessel functions decay
// super-exponentially once |n| exceeds |x|.
inline int adaptive_bessel_order(double x, double tol = 1e-14, int floor_order = 10,
                                 int cap = kBesselOrderLimit) {
    double ax = std::abs(x);
    for (int n = floor_order; n <= cap; ++n) {
        if (std::abs(bessel_j(n, ax)) < tol) return n;
    }
    return cap;
}

}  // namespace omsync
