// adler.hpp — reduced phase model of the driven limit cycle:
// d(dphi)/dt = (omega_e - omega_m_eff) + A_eff sin(dphi).

#pragma once

#include <cmath>
#include <stdexcept>

#include "omsync/params.hpp"
#include "omsync/sideband.hpp"

namespace omsync {

struct AdlerModel {
    double r_star = 0.0;       // free-running limit-cycle radius
    double delta_omega = 0.0;  // amplitude-dependent frequency shift
    double omega_m_eff = 0.0;  // omega_m + delta_omega
    double A_eff = 0.0;        // effective drive strength (>= 0)
    DriveKind drive_kind = DriveKind::Optical;
};

inline double adler_rhs(double dphi, double detuning, double A_eff) {
    return detuning + A_eff * std::sin(dphi);
}

inline std::pair<double, double> locking_range(const AdlerModel& m) {
    return {m.omega_m_eff - m.A_eff, m.omega_m_eff + m.A_eff};
}

// Long-time average of sin(dphi) under the Adler equation.
// Locked (|det| <= A): the fixed point gives sin(dphi) = -det/A.
// Running (|det| > A): averaging sin over one beat period of
// dphi(t) gives (sgn(det) sqrt(det^2 - A^2) - det) / A.
inline double adler_mean_sin(double detuning, double A_eff) {
    if (!(A_eff >= 0.0)) throw std::domain_error("adler_mean_sin: A_eff must be >= 0");
    if (A_eff == 0.0) {
        if (detuning == 0.0)
            throw std::domain_error("adler_mean_sin: undefined for A_eff = 0, detuning = 0");
        return 0.0;
    }
    double ad = std::abs(detuning);
    if (ad <= A_eff) return -detuning / A_eff;
    double s = detuning > 0.0 ? 1.0 : -1.0;
    return (s * std::sqrt(detuning * detuning - A_eff * A_eff) - detuning) / A_eff;
}

// Long-time average of the phase slip rate: zero inside the locking range,
// +-sqrt(det^2 - A^2) outside.
inline double adler_mean_dphi_dot(double detuning, double A_eff) {
    double ad = std::abs(detuning);
    // tolerant boundary: grid arithmetic can land an ulp outside the range
    if (ad <= A_eff * (1.0 + 1e-9)) return 0.0;
    double s = detuning > 0.0 ? 1.0 : -1.0;
    return s * std::sqrt(detuning * detuning - A_eff * A_eff);
}

struct AdlerBuildOptions {
    LimitCycleRadiusOptions cycle;
    bool full_series = false;
};

// Assembles the phase model for given system parameters and drive kind:
// r* from the bare radius drift, delta_omega and A_eff evaluated at r*.
inline AdlerModel build_adler_model(const SystemParams& p, const DriveSpec& drive,
                                    const AdlerBuildOptions& opt = {}) {
    AdlerModel m;
    m.drive_kind = drive.kind;
    m.r_star = limit_cycle_radius(p, opt.cycle);
    SidebandSolution sb = solve_sidebands(m.r_star, 0.0, p, std::nullopt, opt.cycle.sideband);
    m.delta_omega = frequency_shift(m.r_star, p, sb);
    m.omega_m_eff = kOmegaM + m.delta_omega;
    m.A_eff = effective_drive_strength(m.r_star, p, drive, sb, opt.full_series);
    return m;
}

}  // namespace omsync
