// classical.hpp — mean-field equations of motion for the cavity amplitude
// alpha and mechanical amplitude beta, limit-cycle detection, and phase
// difference extraction.
//
//   alpha' = i Delta alpha + i g0 (beta + beta*) alpha - gamma_c/2 alpha
//            + A_L (+ A_e e^{-i omega_e t} for an optical drive)
//   beta'  = i g0 |alpha|^2 - i omega_m beta - gamma_m/2 beta
//            (+ A_e e^{-i omega_e t} for a mechanical drive)

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsync/params.hpp"

namespace omsync {

using complexd = std::complex<double>;

struct ClassicalState {
    complexd alpha;
    complexd beta;
    double t = 0.0;
};

struct IntegrationError : std::runtime_error {
    double t_blowup = 0.0;
    IntegrationError(const std::string& what, double t) : std::runtime_error(what), t_blowup(t) {}
};

struct LimitCycleError : std::runtime_error {
    explicit LimitCycleError(const std::string& what) : std::runtime_error(what) {}
};

inline std::pair<complexd, complexd> derivatives(const ClassicalState& s,
                                                 const SystemParams& p,
                                                 const std::optional<DriveSpec>& drive) {
    const complexd I(0.0, 1.0);
    complexd da = I * p.Delta * s.alpha + I * p.g0 * 2.0 * s.beta.real() * s.alpha -
                  0.5 * p.gamma_c * s.alpha + p.A_L;
    complexd db = I * p.g0 * std::norm(s.alpha) - I * kOmegaM * s.beta - 0.5 * p.gamma_m * s.beta;
    if (drive && drive->A_e > 0.0) {
        complexd f = drive->A_e * std::exp(complexd(0.0, -drive->omega_e * s.t));
        if (drive->kind == DriveKind::Optical) da += f;
        else db += f;
    }
    return {da, db};
}

struct Trajectory {
    std::vector<double> t;
    std::vector<complexd> alpha;
    std::vector<complexd> beta;
    ClassicalState end;  // exact final state (not stride-quantized)
};

namespace detail {

inline void rk4_step(ClassicalState& s, double dt, const SystemParams& p,
                     const std::optional<DriveSpec>& drive) {
    auto [ka1, kb1] = derivatives(s, p, drive);
    ClassicalState s2{s.alpha + 0.5 * dt * ka1, s.beta + 0.5 * dt * kb1, s.t + 0.5 * dt};
    auto [ka2, kb2] = derivatives(s2, p, drive);
    ClassicalState s3{s.alpha + 0.5 * dt * ka2, s.beta + 0.5 * dt * kb2, s.t + 0.5 * dt};
    auto [ka3, kb3] = derivatives(s3, p, drive);
    ClassicalState s4{s.alpha + dt * ka3, s.beta + dt * kb3, s.t + dt};
    auto [ka4, kb4] = derivatives(s4, p, drive);
    s.alpha += dt / 6.0 * (ka1 + 2.0 * ka2 + 2.0 * ka3 + ka4);
    s.beta += dt / 6.0 * (kb1 + 2.0 * kb2 + 2.0 * kb3 + kb4);
    s.t += dt;
}

}  // namespace detail

// Fixed-step RK4 from state0.t to state0.t + t_span, sampling every
// `stride` steps (the initial state is always sample 0).
inline Trajectory integrate(const ClassicalState& state0, const SystemParams& p,
                            const std::optional<DriveSpec>& drive, double t_span,
                            double dt, int stride = 1, double blowup_bound = 1e6) {
    if (!(t_span > 0.0)) throw std::invalid_argument("integrate: t_span must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be positive");
    if (stride < 1) stride = 1;
    long n_steps = static_cast<long>(std::ceil(t_span / dt - 1e-9));
    Trajectory traj;
    traj.t.reserve(n_steps / stride + 2);
    traj.alpha.reserve(n_steps / stride + 2);
    traj.beta.reserve(n_steps / stride + 2);
    ClassicalState s = state0;
    auto record = [&]() {
        traj.t.push_back(s.t);
        traj.alpha.push_back(s.alpha);
        traj.beta.push_back(s.beta);
    };
    record();
    for (long k = 1; k <= n_steps; ++k) {
        detail::rk4_step(s, dt, p, drive);
        if (!(std::abs(s.alpha) < blowup_bound && std::abs(s.beta) < blowup_bound) ||
            !std::isfinite(s.alpha.real()) || !std::isfinite(s.beta.real()))
            throw IntegrationError("instability: amplitude exceeded " +
                                       std::to_string(blowup_bound) + " at t = " +
                                       std::to_string(s.t), s.t);
        if (k % stride == 0) record();
    }
    traj.end = s;
    return traj;
}

struct LimitCycleInfo {
    double r = 0.0;            // cycle-averaged radius |beta - beta_c|
    complexd beta_c;           // cycle center
    double omega_m_eff = 0.0;  // observed oscillation frequency
    double settle_time = 0.0;
    ClassicalState end;        // converged state, reusable as a warm start
};

struct LimitCycleOptions {
    double dt = kTwoPi / 200.0;
    double t_max = 2000.0 * kTwoPi;
    double seed = 0.1;
    int chunk_periods = 10;       // settle-check window
    double settle_rel_tol = 1e-3;
    int measure_periods = 256;    // final measurement window
    double decay_threshold = 1e-3;
};

namespace detail {

// Mean phase advance per unit time of arg(beta - beta_c), least-squares
// slope of the unwrapped phase. The sign is flipped so that free evolution
// (beta ~ e^{-i omega t}) reports a positive frequency.
inline double phase_slope(const std::vector<double>& t, const std::vector<complexd>& beta,
                          complexd beta_c) {
    size_t n = t.size();
    double prev = std::arg(beta[0] - beta_c);
    double acc = prev;
    double sum_t = 0, sum_tt = 0, sum_p = 0, sum_tp = 0;
    for (size_t k = 0; k < n; ++k) {
        double a = std::arg(beta[k] - beta_c);
        double d = a - prev;
        while (d > std::numbers::pi) d -= kTwoPi;
        while (d < -std::numbers::pi) d += kTwoPi;
        if (k > 0) acc += d;
        prev = a;
        sum_t += t[k];
        sum_tt += t[k] * t[k];
        sum_p += acc;
        sum_tp += t[k] * acc;
    }
    double denom = n * sum_tt - sum_t * sum_t;
    double slope = (n * sum_tp - sum_t * sum_p) / denom;
    return -slope;
}

}  // namespace detail

// Integrates the free-running system from (alpha, beta) = (0, seed) until the
// cycle-averaged radius is stationary to settle_rel_tol between consecutive
// chunk windows, then measures (r, beta_c, omega) over a longer window.
inline LimitCycleInfo find_limit_cycle(const SystemParams& p,
                                       const LimitCycleOptions& opt = {}) {
    ClassicalState s{complexd(0.0, 0.0), complexd(opt.seed, 0.0), 0.0};
    double chunk_span = opt.chunk_periods * kTwoPi;
    int stride = 4;
    double prev_r = -1.0;
    double settle_time = -1.0;
    while (s.t < opt.t_max) {
        Trajectory traj = integrate(s, p, std::nullopt, chunk_span, opt.dt, stride);
        s = traj.end;
        complexd bc = 0.0;
        for (const auto& b : traj.beta) bc += b;
        bc /= static_cast<double>(traj.beta.size());
        double r = 0.0;
        for (const auto& b : traj.beta) r += std::abs(b - bc);
        r /= static_cast<double>(traj.beta.size());
        if (r < opt.decay_threshold)
            throw LimitCycleError("no limit cycle: radius decayed below " +
                                  std::to_string(opt.decay_threshold));
        if (prev_r > 0.0 && std::abs(r - prev_r) / r < opt.settle_rel_tol) {
            settle_time = s.t;
            break;
        }
        prev_r = r;
    }
    if (settle_time < 0.0)
        throw LimitCycleError("no limit cycle: not settled within t_max = " +
                              std::to_string(opt.t_max));

    // measurement pass: beta_c over the window, frequency from the phase
    // slope, then beta_c re-averaged over a whole number of effective periods
    Trajectory m = integrate(s, p, std::nullopt, opt.measure_periods * kTwoPi, opt.dt, stride);
    complexd bc = 0.0;
    for (const auto& b : m.beta) bc += b;
    bc /= static_cast<double>(m.beta.size());
    double omega = detail::phase_slope(m.t, m.beta, bc);
    double period_eff = kTwoPi / omega;
    size_t per_period = std::max<size_t>(1, static_cast<size_t>(period_eff / (opt.dt * stride)));
    size_t n_use = (m.beta.size() / per_period) * per_period;
    if (n_use >= per_period) {
        bc = 0.0;
        for (size_t k = 0; k < n_use; ++k) bc += m.beta[k];
        bc /= static_cast<double>(n_use);
        omega = detail::phase_slope(m.t, m.beta, bc);
    }
    LimitCycleInfo info;
    info.beta_c = bc;
    info.omega_m_eff = omega;
    double r = 0.0;
    for (const auto& b : m.beta) r += std::abs(b - bc);
    info.r = r / static_cast<double>(m.beta.size());
    info.settle_time = settle_time;
    info.end = m.end;
    return info;
}

// dphi(t) = unwrap(arg(beta(t) - beta_c)) + omega_e t, continuous in t.
inline std::vector<double> phase_difference_series(const Trajectory& traj, complexd beta_c,
                                                   double omega_e) {
    std::vector<double> dphi(traj.t.size());
    double prev = std::arg(traj.beta[0] - beta_c);
    double acc = prev;
    for (size_t k = 0; k < traj.t.size(); ++k) {
        double a = std::arg(traj.beta[k] - beta_c);
        double d = a - prev;
        double wrapped = d;
        while (wrapped > std::numbers::pi) wrapped -= kTwoPi;
        while (wrapped < -std::numbers::pi) wrapped += kTwoPi;
        if (k > 0) {
            if (std::abs(wrapped) > 0.9 * std::numbers::pi)
                throw std::runtime_error(
                    "phase_difference_series: sampling too coarse to unwrap (adjacent "
                    "phase jump > pi at t = " + std::to_string(traj.t[k]) + ")");
            acc += wrapped;
        }
        prev = a;
        dphi[k] = acc + omega_e * traj.t[k];
    }
    return dphi;
}

// Time-average of sin(dphi + offset) over the final window_frac of the
// trajectory. `offset` aligns the raw phase difference with the shifted
// phase variable of the reduced model (0 for the raw observable).
inline double mean_sin_dphi(const Trajectory& traj, complexd beta_c, double omega_e,
                            double window_frac = 0.5, double offset = 0.0) {
    std::vector<double> dphi = phase_difference_series(traj, beta_c, omega_e);
    size_t start = static_cast<size_t>(dphi.size() * (1.0 - window_frac));
    double acc = 0.0;
    for (size_t k = start; k < dphi.size(); ++k) acc += std::sin(dphi[k] + offset);
    return acc / static_cast<double>(dphi.size() - start);
}

// Average d(dphi)/dt over the final window_frac (secant slope).
inline double mean_dphi_dot(const Trajectory& traj, complexd beta_c, double omega_e,
                            double window_frac = 0.5) {
    std::vector<double> dphi = phase_difference_series(traj, beta_c, omega_e);
    size_t start = static_cast<size_t>(dphi.size() * (1.0 - window_frac));
    return (dphi.back() - dphi[start]) / (traj.t.back() - traj.t[start]);
}

// |r_driven - r_free| / r_free; the harness warns when this exceeds 0.10.
inline double amplitude_perturbation_check(const SystemParams& p, const DriveSpec& drive,
                                           const LimitCycleOptions& opt = {},
                                           double drive_periods = 200.0) {
    LimitCycleInfo free_cycle = find_limit_cycle(p, opt);
    Trajectory traj = integrate(free_cycle.end, p, drive, drive_periods * kTwoPi, opt.dt, 4);
    size_t start = traj.beta.size() / 2;
    complexd bc = 0.0;
    for (size_t k = start; k < traj.beta.size(); ++k) bc += traj.beta[k];
    bc /= static_cast<double>(traj.beta.size() - start);
    double r_driven = 0.0;
    for (size_t k = start; k < traj.beta.size(); ++k) r_driven += std::abs(traj.beta[k] - bc);
    r_driven /= static_cast<double>(traj.beta.size() - start);
    return std::abs(r_driven - free_cycle.r) / free_cycle.r;
}

}  // namespace omsync
