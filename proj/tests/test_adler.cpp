#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "omsync/adler.hpp"

using namespace omsync;

namespace {

// Brute-force time average of sin(dphi) for dphi' = det + A sin(dphi),
// independent of the closed-form expression under test. Locked points are
// integrated to their fixed point; running points are averaged over one slip
// cycle by a change of variables, dt = dphi / (det + A sin dphi), with the
// average taken as a ratio of Simpson quadratures over [0, 2pi).
double mean_sin_oracle(double det, double A) {
    if (std::abs(det) <= A) {
        double phi = 0.1, t = 0.0;
        const double dt = 1e-3;
        auto f = [&](double x) { return det + A * std::sin(x); };
        while (t < 50000.0) {
            double k1 = f(phi);
            double k2 = f(phi + 0.5 * dt * k1);
            double k3 = f(phi + 0.5 * dt * k2);
            double k4 = f(phi + dt * k3);
            phi += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            t += dt;
        }
        return std::sin(phi);
    }
    const int n = 200001;  // odd for Simpson
    double h = kTwoPi / (n - 1);
    double num = 0.0, den = 0.0;
    for (int k = 0; k < n; ++k) {
        double phi = k * h;
        double w = (k == 0 || k == n - 1) ? 1.0 : (k % 2 == 1 ? 4.0 : 2.0);
        double inv = 1.0 / (det + A * std::sin(phi));
        num += w * std::sin(phi) * inv;
        den += w * inv;
    }
    return num / den;
}

}  // namespace

TEST_CASE("phase equation right-hand side") {
    CHECK(adler_rhs(0.0, 0.3, 0.1) == 0.3);
    CHECK(adler_rhs(std::numbers::pi / 2.0, 0.0, 0.2) == doctest::Approx(0.2));
    CHECK(adler_rhs(-std::numbers::pi / 2.0, 0.05, 0.2) == doctest::Approx(-0.15));
}

TEST_CASE("locking range brackets the effective frequency") {
    AdlerModel m;
    m.omega_m_eff = 0.993;
    m.A_eff = 0.004;
    auto [lo, hi] = locking_range(m);
    CHECK(lo == doctest::Approx(0.989));
    CHECK(hi == doctest::Approx(0.997));
}

TEST_CASE("mean sine closed form: pinned values") {
    // locked: the stable fixed point has sin = -det / A
    CHECK(adler_mean_sin(0.05, 0.1) == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(adler_mean_sin(-0.1, 0.1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(adler_mean_sin(0.0, 0.1) == 0.0);
    // unlocked, frozen from the running-phase average
    CHECK(adler_mean_sin(0.2, 0.1) == doctest::Approx(-0.26794919243112264).epsilon(1e-14));
    CHECK(adler_mean_sin(-0.2, 0.1) == doctest::Approx(0.26794919243112264).epsilon(1e-14));
    // far outside the tongue the sine average decays like -A / (2 det)
    CHECK(adler_mean_sin(5.0, 0.1) == doctest::Approx(-0.1 / 10.0).epsilon(1e-4));
}

TEST_CASE("mean sine closed form against the brute-force phase equation") {
    const double A = 0.12;
    for (double det : {-0.5, -0.3, -0.2, -0.15, -0.09, -0.04, 0.0,
                       0.04, 0.09, 0.15, 0.2, 0.3, 0.5}) {
        double oracle = mean_sin_oracle(det, A);
        CHECK(adler_mean_sin(det, A) == doctest::Approx(oracle).epsilon(1e-6));
    }
    // a second amplitude, locked and unlocked points
    for (double det : {-0.07, -0.02, 0.02, 0.07}) {
        double oracle = mean_sin_oracle(det, 0.04);
        CHECK(adler_mean_sin(det, 0.04) == doctest::Approx(oracle).epsilon(1e-6));
    }
}

TEST_CASE("degenerate inputs are rejected") {
    CHECK_THROWS_AS(adler_mean_sin(0.0, 0.0), std::domain_error);
    CHECK_THROWS_AS(adler_mean_sin(0.1, -0.5), std::domain_error);
    CHECK(adler_mean_sin(0.3, 0.0) == 0.0);
}

TEST_CASE("mean slip rate") {
    CHECK(adler_mean_dphi_dot(0.05, 0.1) == 0.0);
    CHECK(adler_mean_dphi_dot(0.2, 0.1) ==
          doctest::Approx(std::sqrt(0.03)).epsilon(1e-15));
    CHECK(adler_mean_dphi_dot(-0.2, 0.1) ==
          doctest::Approx(-std::sqrt(0.03)).epsilon(1e-15));
}

TEST_CASE("assembled model for the classical optical regime") {
    SystemParams p;
    p.g0 = 0.015;
    p.gamma_c = 0.5;
    p.gamma_m = 0.0001;
    p.A_L = 1.0;
    p.Delta = 1.0;
    DriveSpec d{DriveKind::Optical, 0.15, 0.997};
    AdlerModel m = build_adler_model(p, d);
    CHECK(m.r_star > 10.0);
    CHECK(m.omega_m_eff == doctest::Approx(1.0).epsilon(0.05));
    CHECK(m.omega_m_eff == doctest::Approx(1.0 + m.delta_omega).epsilon(1e-15));
    CHECK(m.A_eff > 0.0);
    CHECK(m.A_eff < 0.1);
    // A_eff scales linearly with the drive amplitude
    DriveSpec d2 = d;
    d2.A_e = 0.30;
    AdlerModel m2 = build_adler_model(p, d2);
    CHECK(m2.A_eff == doctest::Approx(2.0 * m.A_eff).epsilon(1e-12));
    CHECK(m2.r_star == doctest::Approx(m.r_star).epsilon(1e-12));
}

TEST_CASE("assembled model for a mechanical drive") {
    SystemParams p;
    p.g0 = 0.01;
    p.gamma_c = 0.3;
    p.gamma_m = 0.0001;
    p.A_L = 1.0;
    p.Delta = 1.0;
    DriveSpec d{DriveKind::Mechanical, 0.005, 1.0};
    AdlerModel m = build_adler_model(p, d);
    CHECK(m.A_eff == doctest::Approx(d.A_e / m.r_star).epsilon(1e-12));
    CHECK(m.drive_kind == DriveKind::Mechanical);
}
