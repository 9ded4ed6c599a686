#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "omsync/wigner.hpp"

using namespace omsync;

namespace {

const std::complex<double> I(0.0, 1.0);

Matrix coherent_density(std::complex<double> beta, int dim) {
    Matrix D = displacement_operator(beta, dim);
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v(0) = 1.0;
    Eigen::VectorXcd c = D * v;
    return c * c.adjoint();
}

}  // namespace

TEST_CASE("laguerre displacement matrix matches the matrix exponential") {
    for (std::complex<double> beta : {std::complex<double>(0.7, -0.4),
                                      std::complex<double>(-1.3, 0.9),
                                      std::complex<double>(2.1, 1.5)}) {
        // the closed form is exact per element; exponentiate the generator in a
        // much larger space so its truncation error is negligible in the corner
        Matrix fast = displacement_matrix_laguerre(beta, 24);
        Matrix ref = displacement_operator(beta, 96);
        CHECK((fast.topLeftCorner(16, 16) - ref.topLeftCorner(16, 16)).cwiseAbs().maxCoeff() <
              1e-10);
    }
}

TEST_CASE("vacuum Wigner function is the standard Gaussian") {
    Matrix rho = Matrix::Zero(20, 20);
    rho(0, 0) = 1.0;
    WignerGridSpec spec;
    spec.x_min = -4.0;
    spec.x_max = 4.0;
    spec.p_min = -4.0;
    spec.p_max = 4.0;
    spec.nx = 81;
    spec.np = 81;
    WignerGrid g = wigner(rho, spec);
    CHECK(g.W(40, 40) == doctest::Approx(1.0 / M_PI).epsilon(1e-10));
    // W(x, p) = exp(-(x^2 + p^2)) / pi
    for (auto [i, j] : {std::pair{50, 40}, {30, 60}, {55, 55}}) {
        double x = spec.x(i), p = spec.p(j);
        CHECK(g.W(i, j) == doctest::Approx(std::exp(-(x * x + p * p)) / M_PI).epsilon(1e-8));
    }
    CHECK(g.mass == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(!g.coverage_warning);
}

TEST_CASE("displacement covariance: coherent state peaks at sqrt(2) beta") {
    std::complex<double> beta(0.9, -0.5);
    Matrix rho = coherent_density(beta, 26);
    WignerGridSpec spec;
    spec.x_min = -5.0;
    spec.x_max = 5.0;
    spec.p_min = -5.0;
    spec.p_max = 5.0;
    spec.nx = 101;
    spec.np = 101;
    WignerGrid g = wigner(rho, spec);
    double x0 = std::sqrt(2.0) * beta.real(), p0 = std::sqrt(2.0) * beta.imag();
    for (auto [i, j] : {std::pair{60, 40}, {45, 52}, {70, 35}}) {
        double x = spec.x(i), p = spec.p(j);
        double want = std::exp(-((x - x0) * (x - x0) + (p - p0) * (p - p0))) / M_PI;
        CHECK(g.W(i, j) == doctest::Approx(want).epsilon(2e-6));
    }
    CHECK(g.mass == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("normalization holds for a mixed thermal state") {
    int dim = 24;
    double nth = 1.2, z = nth / (nth + 1.0);
    Matrix rho = Matrix::Zero(dim, dim);
    double norm = 0.0;
    for (int n = 0; n < dim; ++n) norm += std::pow(z, n);
    for (int n = 0; n < dim; ++n) rho(n, n) = std::pow(z, n) / norm;
    WignerGridSpec spec;
    spec.x_min = -7.0;
    spec.x_max = 7.0;
    spec.p_min = -7.0;
    spec.p_max = 7.0;
    spec.nx = 95;
    spec.np = 95;
    WignerGrid g = wigner(rho, spec);
    CHECK(g.mass == doctest::Approx(1.0).epsilon(1e-3));
    // thermal Gaussian value at the origin: 1 / (pi (2 nth + 1))
    CHECK(g.W(47, 47) == doctest::Approx(1.0 / (M_PI * (2.0 * nth + 1.0))).epsilon(1e-3));
}

TEST_CASE("marginal over p recovers the position distribution of vacuum") {
    Matrix rho = Matrix::Zero(20, 20);
    rho(0, 0) = 1.0;
    WignerGridSpec spec;
    spec.x_min = -4.5;
    spec.x_max = 4.5;
    spec.p_min = -4.5;
    spec.p_max = 4.5;
    spec.nx = 91;
    spec.np = 91;
    WignerGrid g = wigner(rho, spec);
    for (int i : {45, 55, 30}) {
        double marg = 0.0;
        for (int j = 0; j < spec.np; ++j) marg += g.W(i, j) * spec.dp();
        double x = spec.x(i);
        CHECK(marg == doctest::Approx(std::exp(-x * x) / std::sqrt(M_PI)).epsilon(1e-6));
    }
}

TEST_CASE("a too-small grid raises the coverage warning") {
    Matrix rho = coherent_density(std::complex<double>(2.0, 0.0), 26);
    WignerGridSpec spec;
    spec.x_min = -1.0;
    spec.x_max = 1.0;
    spec.p_min = -1.0;
    spec.p_max = 1.0;
    spec.nx = 21;
    spec.np = 21;
    WignerGrid g = wigner(rho, spec);
    CHECK(g.coverage_warning);
}

TEST_CASE("ring profile separates rings from lobes") {
    WignerGridSpec spec;
    spec.x_min = -6.0;
    spec.x_max = 6.0;
    spec.p_min = -6.0;
    spec.p_max = 6.0;
    spec.nx = 121;
    spec.np = 121;
    SUBCASE("uniform ring mixture: flat angular profile") {
        int dim = 30, M = 24;
        Matrix rho = Matrix::Zero(dim, dim);
        for (int k = 0; k < M; ++k) {
            Matrix c = coherent_density(2.0 * std::exp(I * (kTwoPi * k / M)), dim);
            rho += c / double(M);
        }
        WignerGrid g = wigner(rho, spec);
        RingProfile rp = ring_profile(g);
        CHECK(rp.r_peak == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(0.1));
        CHECK(rp.angular_rel_std < 0.05);
    }
    SUBCASE("single coherent state: one dominant lobe") {
        Matrix rho = coherent_density(std::complex<double>(2.0, 0.0), 30);
        WignerGrid g = wigner(rho, spec);
        RingProfile rp = ring_profile(g);
        CHECK(rp.n_lobes == 1);
        CHECK(rp.angular_rel_std > 0.5);
        CHECK(std::abs(std::remainder(rp.peak_angle, kTwoPi)) < 0.2);
    }
}
