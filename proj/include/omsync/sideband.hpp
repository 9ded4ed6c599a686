// sideband.hpp — laser-theory coefficient engine for the optomechanical
// limit cycle: sideband amplitudes, self-consistent effective detuning,
// drift and diffusion coefficients, limit-cycle radius, frequency shift and
// effective drive strengths.
//
// Conventions: beta = r e^{i phi}, J_n is always evaluated at -eta*r with
// eta = 2 g0 / omega_m, h_n = gamma_c/2 + i(n*omega_m - Delta_eff), and
// epsilon = omega_e - omega_m.

#pragma once

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsync/bessel.hpp"
#include "omsync/params.hpp"

namespace omsync {

using complexd = std::complex<double>;

enum class Branch { LargeAmplitude, SmallAmplitude };

struct SidebandError : std::runtime_error {
    std::vector<double> iterates;  // Delta_eff history on non-convergence
    SidebandError(const std::string& what, std::vector<double> hist = {})
        : std::runtime_error(what), iterates(std::move(hist)) {}
};

struct SidebandSolution {
    double r = 0.0;
    double phi = 0.0;
    double delta_eff = 0.0;  // Delta_K on the small-amplitude branch
    Branch branch = Branch::LargeAmplitude;
    int n_max = 0;
    BesselTable J;                   // J_n(-eta r)
    std::vector<complexd> alpha_l;   // laser sidebands, index n + n_max
    std::vector<complexd> alpha_e;   // reference-drive sidebands (empty if no drive)
    double gamma_c = 0.0;

    complexd h(int n) const {
        return complexd(gamma_c / 2.0, n * kOmegaM - delta_eff);
    }
    complexd alpha_l_at(int n) const {
        if (n < -n_max || n > n_max) return 0.0;
        return alpha_l[n + n_max];
    }
    complexd alpha_e_at(int n) const {
        if (alpha_e.empty() || n < -n_max || n > n_max) return 0.0;
        return alpha_e[n + n_max];
    }
};

struct DriftCoefficients {
    double mu_r = 0.0;
    double mu_phi = 0.0;
};

struct DiffusionCoefficients {
    double d_rr = 0.0;
    double d_rphi = 0.0;
    double d_phiphi = 0.0;
};

// E(t) = (A_L + A_e e^{i omega_e t}) sum_n J_n(-eta r) e^{i n (omega_m t - phi)}
inline complexd generalized_drive_field(double r, double phi, double t,
                                        const SystemParams& p,
                                        const std::optional<DriveSpec>& drive,
                                        int n_max = 0) {
    double x = -p.eta() * r;
    if (n_max <= 0) n_max = adaptive_bessel_order(x);
    BesselTable J(n_max, x);
    complexd phase_sum = 0.0;
    for (int n = -n_max; n <= n_max; ++n)
        phase_sum += J.at(n) * std::exp(complexd(0.0, n * (kOmegaM * t - phi)));
    complexd amp = p.A_L;
    if (drive && drive->kind == DriveKind::Optical)
        amp += drive->A_e * std::exp(complexd(0.0, drive->omega_e * t));
    return amp * phase_sum;
}

namespace detail {

// Right side of the effective-detuning self-consistency relation. The
// drive cross terms collapse to a real cos(phi) series.
inline double detuning_functional(double delta_eff, double r, double phi,
                                  const SystemParams& p, double A_e_op,
                                  const BesselTable& J, bool keep_cross_terms) {
    double K = p.kerr();
    if (K == 0.0) return p.Delta;
    double sum = 0.0;
    auto habs2 = [&](int n) {
        double re = p.gamma_c / 2.0;
        double im = n * kOmegaM - delta_eff;
        return re * re + im * im;
    };
    for (int n = -J.n_max; n <= J.n_max; ++n) {
        double jn = J.at(n);
        sum += p.A_L * p.A_L * jn * jn / habs2(n);
        if (A_e_op > 0.0) {
            sum += A_e_op * A_e_op * jn * jn / habs2(n + 1);
            if (keep_cross_terms)
                sum += 2.0 * p.A_L * A_e_op * std::cos(phi) * jn * J.at(n - 1) / habs2(n);
        }
    }
    return p.Delta + 2.0 * K * sum;
}

}  // namespace detail

struct SidebandOptions {
    Branch branch = Branch::LargeAmplitude;
    int n_max = 0;  // 0 = adaptive
    double tol = 1e-10;
    int max_iter = 500;
    double damping = 0.5;
    bool keep_cross_terms = true;
};

inline SidebandSolution solve_sidebands(double r, double phi, const SystemParams& p,
                                        const std::optional<DriveSpec>& drive,
                                        const SidebandOptions& opt = {}) {
    if (!(r >= 0.0)) throw std::domain_error("solve_sidebands: r must be >= 0");
    double A_e_op = (drive && drive->kind == DriveKind::Optical) ? drive->A_e : 0.0;

    SidebandSolution s;
    s.r = r;
    s.phi = phi;
    s.branch = opt.branch;
    s.gamma_c = p.gamma_c;
    double x = -p.eta() * r;
    s.n_max = opt.n_max > 0 ? opt.n_max : adaptive_bessel_order(x);
    s.J = BesselTable(s.n_max, x);

    if (opt.branch == Branch::SmallAmplitude) {
        s.delta_eff = p.Delta + p.kerr();
    } else {
        double d = p.Delta;
        std::vector<double> history{d};
        bool converged = false;
        for (int it = 0; it < opt.max_iter; ++it) {
            double f = detail::detuning_functional(d, r, phi, p, A_e_op, s.J, opt.keep_cross_terms);
            double next = (1.0 - opt.damping) * d + opt.damping * f;
            history.push_back(next);
            if (std::abs(next - d) < opt.tol) {
                d = next;
                converged = true;
                break;
            }
            d = next;
        }
        if (!converged)
            throw SidebandError("solve_sidebands: effective detuning did not converge after " +
                                    std::to_string(opt.max_iter) + " iterations",
                                history);
        s.delta_eff = d;
    }

    s.alpha_l.resize(2 * s.n_max + 1);
    if (A_e_op > 0.0) s.alpha_e.resize(2 * s.n_max + 1);
    for (int n = -s.n_max; n <= s.n_max; ++n) {
        complexd ph = std::exp(complexd(0.0, -n * phi));
        s.alpha_l[n + s.n_max] = p.A_L / s.h(n) * s.J.at(n) * ph;
        if (A_e_op > 0.0)
            s.alpha_e[n + s.n_max] = A_e_op / s.h(n + 1) * s.J.at(n) * ph;
    }
    return s;
}

// Drift coefficients for the optical reference drive. The bare (A_e = 0)
// part is independent of phi and t; the drive part depends on them only
// through phi + epsilon*t.
inline DriftCoefficients drift_optical(double r, double phi, double t,
                                       const SystemParams& p,
                                       const std::optional<DriveSpec>& drive,
                                       const SidebandSolution& sb) {
    if (!(r > 0.0)) throw std::domain_error("drift_optical: r must be > 0");
    double A_e = (drive && drive->kind == DriveKind::Optical) ? drive->A_e : 0.0;
    double eps = drive ? drive->epsilon() : 0.0;
    const BesselTable& J = sb.J;
    int N = sb.n_max;

    complexd em = std::exp(complexd(0.0, -(phi + eps * t)));
    complexd ep = std::exp(complexd(0.0, phi + eps * t));
    double sum_re = 0.0, sum_im = 0.0;
    for (int n = -N; n <= N + 2; ++n) {
        complexd den = sb.h(n) * std::conj(sb.h(n - 1));
        complexd bare = J.at(n) * J.at(n - 1) / den;
        complexd drv = 0.0;
        if (A_e > 0.0)
            drv = A_e * (em * J.at(n) * J.at(n - 2) + ep * J.at(n - 1) * J.at(n - 1)) / den;
        complexd term = p.A_L * bare + drv;
        sum_re += term.real();
        sum_im += term.imag();
    }
    DriftCoefficients d;
    d.mu_phi = p.g0 * p.A_L / r * sum_re;
    d.mu_r = -p.gamma_m / 2.0 * r + p.g0 * p.A_L * sum_im;
    return d;
}

// Drift coefficients for the mechanical reference drive: bare laser theory
// plus the direct -A_e/r sin, +A_e cos drive terms.
inline DriftCoefficients drift_mechanical(double r, double phi, double t,
                                          const SystemParams& p,
                                          const std::optional<DriveSpec>& drive,
                                          const SidebandSolution& sb) {
    if (!(r > 0.0)) throw std::domain_error("drift_mechanical: r must be > 0");
    const BesselTable& J = sb.J;
    int N = sb.n_max;
    double sum_re = 0.0, sum_im = 0.0;
    for (int n = -N; n <= N + 2; ++n) {
        complexd term = J.at(n) * J.at(n - 1) / (sb.h(n) * std::conj(sb.h(n - 1)));
        sum_re += term.real();
        sum_im += term.imag();
    }
    DriftCoefficients d;
    d.mu_phi = p.g0 * p.A_L * p.A_L / r * sum_re;
    d.mu_r = -p.gamma_m / 2.0 * r + p.g0 * p.A_L * p.A_L * sum_im;
    if (drive && drive->kind == DriveKind::Mechanical && drive->A_e > 0.0) {
        double arg = (drive->omega_e - kOmegaM) * t + phi;
        d.mu_phi += -drive->A_e / r * std::sin(arg);
        d.mu_r += drive->A_e * std::cos(arg);
    }
    return d;
}

// Diffusion coefficients (optical case; the mechanical drive does not enter
// the diffusion, so the mechanical case is this with A_e = 0). The tilde'd
// denominators are read as plain h_{n+1}, and the mixed cosine in D_rr is
// read as cos(phi + eps t), by symmetry with D_phiphi.
inline DiffusionCoefficients diffusion_optical(double r, double phi, double t,
                                               const SystemParams& p,
                                               const std::optional<DriveSpec>& drive,
                                               const SidebandSolution& sb) {
    if (!(r > 0.0)) throw std::domain_error("diffusion_optical: r must be > 0");
    double A_e = (drive && drive->kind == DriveKind::Optical) ? drive->A_e : 0.0;
    double eps = drive ? drive->epsilon() : 0.0;
    const BesselTable& J = sb.J;
    int N = sb.n_max;

    double thermal = p.gamma_m * (p.n_th + 0.5) / 4.0;
    DiffusionCoefficients out;
    out.d_phiphi = thermal / (r * r);
    out.d_rr = thermal;
    out.d_rphi = 0.0;
    if (p.A_L == 0.0 || p.g0 == 0.0) return out;

    double cos_drive = std::cos(phi + eps * t);
    complexd e1 = std::exp(complexd(0.0, phi + eps * t));
    complexd e3 = std::exp(complexd(0.0, -3.0 * phi - eps * t));
    double s_phi = 0.0, s_rphi = 0.0, s_rr = 0.0;
    for (int n = -N - 2; n <= N; ++n) {
        double habs2 = std::norm(sb.h(n + 1));
        double pref = p.gamma_c * p.g0 * p.g0 * p.A_L / (8.0 * habs2);
        double jn2 = J.at(n) * J.at(n) / std::norm(sb.h(n));
        double jn2p = J.at(n + 2) * J.at(n + 2) / std::norm(sb.h(n + 2));
        complexd den = sb.h(n) * std::conj(sb.h(n + 2));
        complexd cross = J.at(n + 2) * J.at(n) / den;
        complexd c1 = e1 * J.at(n + 2) * J.at(n - 1) / den;
        complexd c3 = e3 * J.at(n) * J.at(n + 1) / den;
        double drive_cos = 2.0 * A_e * J.at(n) / std::norm(sb.h(n)) * (J.at(n + 1) + J.at(n - 1)) * cos_drive;

        s_phi += pref * (p.A_L * (jn2 + jn2p) + 2.0 * p.A_L * cross.real() + drive_cos +
                         2.0 * A_e * c1.real() + 2.0 * A_e * c3.real());
        s_rphi += 4.0 * pref * (p.A_L * cross.imag() + A_e * c1.imag() + A_e * c3.imag());
        s_rr += pref * (p.A_L * (jn2 + jn2p) - 2.0 * p.A_L * cross.real() + drive_cos -
                        2.0 * A_e * c1.real() - 2.0 * A_e * c3.real());
    }
    out.d_phiphi += s_phi / (r * r);
    out.d_rphi = -s_rphi / r;
    out.d_rr += s_rr;
    return out;
}

inline DiffusionCoefficients diffusion_mechanical(double r, double phi, double t,
                                                  const SystemParams& p,
                                                  const SidebandSolution& sb) {
    return diffusion_optical(r, phi, t, p, std::nullopt, sb);
}

// delta_omega such that the A_e-independent part of mu_phi equals -delta_omega.
inline double frequency_shift(double r, const SystemParams& p, const SidebandSolution& sb) {
    if (!(r > 0.0)) throw std::domain_error("frequency_shift: r must be > 0");
    double sum = 0.0;
    for (int n = -sb.n_max; n <= sb.n_max + 2; ++n) {
        complexd term = sb.J.at(n) * sb.J.at(n - 1) / (sb.h(n) * std::conj(sb.h(n - 1)));
        sum += term.real();
    }
    return -p.g0 * p.A_L * p.A_L / r * sum;
}

struct LimitCycleRadiusOptions {
    int grid_points = 2000;
    double r_max = 0.0;  // 0 = 20 / eta
    double bisect_tol = 1e-10;
    SidebandOptions sideband;
};

namespace detail {

inline double bare_mu_r(double r, const SystemParams& p, const SidebandOptions& sopt) {
    SidebandSolution sb = solve_sidebands(r, 0.0, p, std::nullopt, sopt);
    return drift_mechanical(r, 0.0, 0.0, p, std::nullopt, sb).mu_r;
}

}  // namespace detail

// Smallest r > 0 with mu_r(r) = 0 and mu_r decreasing through it, with the
// effective detuning re-solved at each radius.
inline double limit_cycle_radius(const SystemParams& p,
                                 const LimitCycleRadiusOptions& opt = {}) {
    if (p.A_L == 0.0 || p.g0 == 0.0)
        throw SidebandError("no limit cycle: mu_r < 0 for all r > 0");
    double r_max = opt.r_max > 0.0 ? opt.r_max : 20.0 / p.eta();
    double dr = r_max / opt.grid_points;
    double prev_r = dr;
    double prev_mu = detail::bare_mu_r(prev_r, p, opt.sideband);
    for (int k = 2; k <= opt.grid_points; ++k) {
        double r = k * dr;
        double mu = detail::bare_mu_r(r, p, opt.sideband);
        if (prev_mu > 0.0 && mu <= 0.0) {
            double lo = prev_r, hi = r;
            while (hi - lo > opt.bisect_tol) {
                double mid = 0.5 * (lo + hi);
                if (detail::bare_mu_r(mid, p, opt.sideband) > 0.0) lo = mid;
                else hi = mid;
            }
            return 0.5 * (lo + hi);
        }
        prev_r = r;
        prev_mu = mu;
    }
    throw SidebandError("no limit cycle: no stable root of mu_r on (0, " +
                        std::to_string(r_max) + "]");
}

// Effective drive strength entering the Adler equation. The optical
// truncated form keeps the near-resonant n = 1, 2 terms; the full-series
// form keeps the whole Bessel series. The mechanical form is A_e / r.
inline double effective_drive_strength(double r, const SystemParams& p,
                                       const DriveSpec& drive,
                                       const SidebandSolution& sb,
                                       bool full_series = false) {
    if (!(r > 0.0)) throw std::domain_error("effective_drive_strength: r must be > 0");
    if (drive.kind == DriveKind::Mechanical) return drive.A_e / r;
    if (drive.A_e == 0.0) return 0.0;
    if (full_series) {
        // drive part of mu_phi written as Re[e^{i(phi+eps t)} (conj(X) + Y)]
        complexd X = 0.0, Y = 0.0;
        for (int n = -sb.n_max; n <= sb.n_max + 2; ++n) {
            complexd den = sb.h(n) * std::conj(sb.h(n - 1));
            X += sb.J.at(n) * sb.J.at(n - 2) / den;
            Y += sb.J.at(n - 1) * sb.J.at(n - 1) / den;
        }
        return p.g0 * p.A_L * drive.A_e / r * std::abs(std::conj(X) + Y);
    }
    double w = kOmegaM;
    double J0 = sb.J.at(0), J1 = sb.J.at(1), J2 = sb.J.at(2);
    double pref = p.g0 * p.A_L * drive.A_e /
                  (r * w * w * (1.0 + p.gamma_c * p.gamma_c / (4.0 * w * w)));
    double t1 = (J2 + J0) * (J2 + J0) * J0 * J0;
    double t2 = J2 * J0 - 2.0 * J1 * J1 - J0 * J0;
    double root = std::sqrt(t1 + 4.0 * w * w / (p.gamma_c * p.gamma_c) * t2 * t2);
    return pref * root;
}

// Constant phase offset between the raw phase difference
// arg(beta - beta_c) + omega_e t and the shifted phase variable of the
// reduced model: the drive part of mu_phi is Re[e^{i(phi + eps t)} Z] =
// |Z| sin(phi + eps t + arg Z + pi/2).
inline double adler_phase_offset(double r, const SystemParams& p, const DriveSpec& drive,
                                 const SidebandSolution& sb) {
    if (drive.kind == DriveKind::Mechanical) return std::numbers::pi;
    complexd X = 0.0, Y = 0.0;
    for (int n = -sb.n_max; n <= sb.n_max + 2; ++n) {
        complexd den = sb.h(n) * std::conj(sb.h(n - 1));
        X += sb.J.at(n) * sb.J.at(n - 2) / den;
        Y += sb.J.at(n - 1) * sb.J.at(n - 1) / den;
    }
    (void)r;
    (void)p;
    return std::arg(std::conj(X) + Y) + std::numbers::pi / 2.0;
}

// The adiabatic expansion assumes |epsilon| << omega_m.
inline std::optional<std::string> epsilon_warning(const DriveSpec& drive) {
    if (std::abs(drive.epsilon()) > 0.2)
        return "drive detuning |epsilon| = " + std::to_string(std::abs(drive.epsilon())) +
               " exceeds 0.2 omega_m; the sideband expansion assumes epsilon << omega_m";
    return std::nullopt;
}

}  // namespace omsync
