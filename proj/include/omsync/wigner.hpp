// wigner.hpp — Wigner function of a mechanical (single-mode) density matrix
// over quadrature coordinates (x, p), beta = (x + i p) / sqrt(2), via the
// displaced-parity form W(x,p) = (1/pi) Tr[rho D(beta) P D(beta)'].
// Normalized so the vacuum gives W(0,0) = 1/pi and the grid sum * cell area
// approximates 1.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsync/quantum.hpp"

namespace omsync {

struct WignerGridSpec {
    double x_min = -8.0, x_max = 8.0;
    double p_min = -8.0, p_max = 8.0;
    int nx = 101, np = 101;

    double dx() const { return (x_max - x_min) / (nx - 1); }
    double dp() const { return (p_max - p_min) / (np - 1); }
    double x(int i) const { return x_min + i * dx(); }
    double p(int j) const { return p_min + j * dp(); }
};

struct WignerGrid {
    WignerGridSpec spec;
    Eigen::MatrixXd W;  // W(i, j) at (x_i, p_j)
    double mass = 0.0;  // grid sum * cell area
    bool coverage_warning = false;
};

// Displacement matrix elements via the associated-Laguerre closed form,
// iterated per diagonal offset (no factorials formed explicitly):
//   D_{n+d,n} = sqrt(n!/(n+d)!) beta^d e^{-|beta|^2/2} L_n^{(d)}(|beta|^2)
// with D_{m,n} for m < n obtained from D(beta)' = D(-beta).
inline Matrix displacement_matrix_laguerre(std::complex<double> beta, int dim) {
    Matrix D = Matrix::Zero(dim, dim);
    double x = std::norm(beta);
    double pref0 = std::exp(-0.5 * x);
    for (int sgn = 0; sgn < 2; ++sgn) {
        // sgn = 0: lower triangle (m >= n) with beta; sgn = 1: strict upper
        // with -conj(beta) and transposed-conjugate placement.
        std::complex<double> z = sgn == 0 ? beta : -std::conj(beta);
        for (int d = sgn; d < dim; ++d) {
            // P_0 = z^d / sqrt(d!) * e^{-x/2}, built multiplicatively
            std::complex<double> P = pref0;
            for (int k = 1; k <= d; ++k) P *= z / std::sqrt(static_cast<double>(k));
            double Lm1 = 0.0, L = 1.0;  // L_n^{(d)}(x) upward recursion
            for (int n = 0; n + d < dim; ++n) {
                if (n > 0) {
                    double Lnext = ((2.0 * n - 1.0 + d - x) * L - (n - 1.0 + d) * Lm1) / n;
                    Lm1 = L;
                    L = Lnext;
                    P *= std::sqrt(static_cast<double>(n) / (n + d));
                }
                std::complex<double> v = P * L;
                if (sgn == 0) D(n + d, n) = v;
                else D(n, n + d) = v;
            }
        }
    }
    return D;
}

inline WignerGrid wigner(const Matrix& rho_mech, const WignerGridSpec& spec,
                         double coverage_target = 0.999) {
    int dim = static_cast<int>(rho_mech.rows());
    if (rho_mech.cols() != dim) throw QuantumError("wigner: density matrix must be square");
    WignerGrid out;
    out.spec = spec;
    out.W.resize(spec.nx, spec.np);
    Eigen::VectorXd parity(dim);
    for (int k = 0; k < dim; ++k) parity(k) = k % 2 == 0 ? 1.0 : -1.0;
    Matrix tmp(dim, dim);
    for (int i = 0; i < spec.nx; ++i) {
        for (int j = 0; j < spec.np; ++j) {
            std::complex<double> beta(spec.x(i) / std::sqrt(2.0), spec.p(j) / std::sqrt(2.0));
            // D(beta) P D(beta)' = D(2 beta) P, whose matrix elements are exact
            // in the truncated space, so W is exact for rho supported there
            Matrix D2 = displacement_matrix_laguerre(2.0 * beta, dim);
            tmp.noalias() = rho_mech * D2;
            double w = 0.0;
            for (int k = 0; k < dim; ++k) w += parity(k) * std::real(tmp(k, k));
            out.W(i, j) = w / M_PI;
        }
    }
    out.mass = out.W.sum() * spec.dx() * spec.dp();
    out.coverage_warning = out.mass < coverage_target;
    return out;
}

// Ring structure of a Wigner distribution around a center point: radial peak
// location plus the angular profile on the peak band. Used to classify
// limit-cycle-like states (uniform ring) versus phase-locked states
// (localized lobe).
struct RingProfile {
    double r_peak = 0.0;
    std::vector<double> angular;   // band-averaged W per angle bin
    double angular_mean = 0.0;
    double angular_rel_std = 0.0;  // std / mean of the angular profile
    int n_lobes = 0;               // angular maxima above half the peak
    double peak_angle = 0.0;
};

inline RingProfile ring_profile(const WignerGrid& g, double xc = 0.0, double pc = 0.0,
                                int n_angles = 96, int n_radii = 120) {
    auto sample = [&](double x, double p) -> double {
        double fi = (x - g.spec.x_min) / g.spec.dx();
        double fj = (p - g.spec.p_min) / g.spec.dp();
        int i = static_cast<int>(std::floor(fi)), j = static_cast<int>(std::floor(fj));
        if (i < 0 || j < 0 || i + 1 >= g.spec.nx || j + 1 >= g.spec.np) return 0.0;
        double u = fi - i, v = fj - j;
        return (1 - u) * (1 - v) * g.W(i, j) + u * (1 - v) * g.W(i + 1, j) +
               (1 - u) * v * g.W(i, j + 1) + u * v * g.W(i + 1, j + 1);
    };
    double r_max = 0.5 * std::min(g.spec.x_max - g.spec.x_min, g.spec.p_max - g.spec.p_min);
    RingProfile out;
    // radial profile of angle-averaged W
    double best = -1.0;
    for (int k = 1; k < n_radii; ++k) {
        double r = r_max * k / n_radii;
        double acc = 0.0;
        for (int m = 0; m < n_angles; ++m) {
            double th = kTwoPi * m / n_angles;
            acc += sample(xc + r * std::cos(th), pc + r * std::sin(th));
        }
        acc /= n_angles;
        if (acc > best) {
            best = acc;
            out.r_peak = r;
        }
    }
    // angular profile averaged over a band around the peak radius
    out.angular.assign(n_angles, 0.0);
    const int n_band = 7;
    for (int m = 0; m < n_angles; ++m) {
        double th = kTwoPi * m / n_angles;
        double acc = 0.0;
        for (int bk = 0; bk < n_band; ++bk) {
            double r = out.r_peak * (0.85 + 0.3 * bk / (n_band - 1));
            acc += sample(xc + r * std::cos(th), pc + r * std::sin(th));
        }
        out.angular[m] = acc / n_band;
    }
    double mean = 0.0;
    for (double v : out.angular) mean += v;
    mean /= n_angles;
    double var = 0.0, peak = -1e300;
    for (int m = 0; m < n_angles; ++m) {
        var += (out.angular[m] - mean) * (out.angular[m] - mean);
        if (out.angular[m] > peak) {
            peak = out.angular[m];
            out.peak_angle = kTwoPi * m / n_angles;
        }
    }
    var /= n_angles;
    out.angular_mean = mean;
    out.angular_rel_std = mean != 0.0 ? std::sqrt(var) / std::abs(mean) : 0.0;
    double half = 0.5 * peak;
    for (int m = 0; m < n_angles; ++m) {
        double prev = out.angular[(m + n_angles - 1) % n_angles];
        double next = out.angular[(m + 1) % n_angles];
        if (out.angular[m] > half && out.angular[m] >= prev && out.angular[m] > next)
            ++out.n_lobes;
    }
    return out;
}

}  // namespace omsync
