// sweep.hpp — parameter sweeps: frequency scans of the synchronization
// measure or classical phase dynamics, Arnold-tongue grids, and the
// classical-versus-Adler comparison. Work items are dispatched to a bounded
// worker pool and assembled deterministically by grid index; a failure at
// one grid point is recorded in its status field instead of aborting the
// sweep.

#pragma once

#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "omsync/adler.hpp"
#include "omsync/classical.hpp"
#include "omsync/params.hpp"
#include "omsync/quantum.hpp"

namespace omsync {

struct SweepOptions {
    int threads = 0;         // 0 = hardware concurrency
    bool warm_start = false; // chain quantum points sequentially from the previous state
};

namespace detail {

// Runs f(i) for i in [0, n) on a bounded pool. Each item writes only its own
// result slot, so assembly order never depends on scheduling.
inline void run_indexed(int n, int threads, const std::function<void(int)>& f) {
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    if (threads < 1) threads = 1;
    threads = std::min(threads, n);
    if (threads <= 1) {
        for (int i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) f(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Classical / Adler scans
// ---------------------------------------------------------------------------

struct ClassicalScanPoint {
    int index = 0;
    double omega_e = 0.0;
    double A_e = 0.0;
    std::string status = "ok";
    double dphi_dot = 0.0;
    double mean_sin = 0.0;
    bool locked = false;
};

struct ClassicalScanOptions {
    double dt = kTwoPi / 200.0;
    double t_run = 3000.0 * kTwoPi;  // driven run length after the free cycle
    double window_frac = 0.5;
    double lock_frac = 0.2;          // |mean dphi_dot| < lock_frac * A_eff
    LimitCycleOptions cycle;
};

// Mean-field scan over drive frequencies at fixed amplitude. The free-running
// limit cycle is found once and every driven run starts from its end state.
inline std::vector<ClassicalScanPoint> classical_frequency_scan(
    const SystemParams& p, DriveSpec drive, const std::vector<double>& omegas,
    const AdlerModel& model, const ClassicalScanOptions& opt = {},
    const SweepOptions& sweep = {}) {
    LimitCycleInfo cyc = find_limit_cycle(p, opt.cycle);
    double offset = 0.0;
    {
        SidebandSolution sb =
            solve_sidebands(cyc.r, 0.0, p, std::nullopt, SidebandOptions{});
        offset = adler_phase_offset(cyc.r, p, drive, sb);
    }
    int n = static_cast<int>(omegas.size());
    std::vector<ClassicalScanPoint> out(n);
    detail::run_indexed(n, sweep.threads, [&](int i) {
        ClassicalScanPoint& pt = out[i];
        pt.index = i;
        pt.omega_e = omegas[i];
        pt.A_e = drive.A_e;
        DriveSpec d = drive;
        d.omega_e = omegas[i];
        try {
            Trajectory traj = integrate(cyc.end, p, d, opt.t_run, opt.dt, 8);
            pt.dphi_dot = mean_dphi_dot(traj, cyc.beta_c, d.omega_e, opt.window_frac);
            pt.mean_sin = mean_sin_dphi(traj, cyc.beta_c, d.omega_e, opt.window_frac, offset);
            pt.locked = std::abs(pt.dphi_dot) < opt.lock_frac * model.A_eff;
        } catch (const std::exception& e) {
            pt.status = e.what();
        }
    });
    return out;
}

struct AdlerScanPoint {
    int index = 0;
    double omega_e = 0.0;
    double detuning = 0.0;
    double dphi_dot = 0.0;
    double mean_sin = 0.0;
    bool locked = false;
};

inline std::vector<AdlerScanPoint> adler_frequency_scan(const AdlerModel& model,
                                                        const std::vector<double>& omegas) {
    std::vector<AdlerScanPoint> out(omegas.size());
    for (size_t i = 0; i < omegas.size(); ++i) {
        AdlerScanPoint& pt = out[i];
        pt.index = static_cast<int>(i);
        pt.omega_e = omegas[i];
        pt.detuning = omegas[i] - model.omega_m_eff;
        pt.dphi_dot = adler_mean_dphi_dot(pt.detuning, model.A_eff);
        pt.mean_sin = adler_mean_sin(pt.detuning, model.A_eff);
        // tolerant boundary: grid arithmetic can land an ulp outside the range
        pt.locked = std::abs(pt.detuning) <= model.A_eff * (1.0 + 1e-9);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Arnold tongue
// ---------------------------------------------------------------------------

struct TonguePoint {
    int index = 0;
    double A_e = 0.0;
    double omega_e = 0.0;
    std::string status = "ok";
    bool locked = false;
    double dphi_dot = 0.0;
    double A_eff = 0.0;
};

// Locked/unlocked classification over an (A_e, omega_e) grid. engine is
// "classical" (mean-field runs) or "adler" (analytic locking range).
inline std::vector<TonguePoint> arnold_tongue(const SystemParams& p, DriveKind kind,
                                              const std::vector<double>& amplitudes,
                                              const std::vector<double>& omegas,
                                              const std::string& engine,
                                              const ClassicalScanOptions& opt = {},
                                              const SweepOptions& sweep = {},
                                              bool full_series = false) {
    if (engine != "classical" && engine != "adler")
        throw std::invalid_argument("arnold_tongue: unknown engine '" + engine + "'");
    int na = static_cast<int>(amplitudes.size());
    int nw = static_cast<int>(omegas.size());
    std::vector<TonguePoint> out(static_cast<size_t>(na) * nw);
    std::optional<LimitCycleInfo> cyc;
    if (engine == "classical") cyc = find_limit_cycle(p, opt.cycle);
    for (int ia = 0; ia < na; ++ia) {
        DriveSpec drive{kind, amplitudes[ia], kOmegaM};
        AdlerBuildOptions abo;
        abo.full_series = full_series;
        AdlerModel model = build_adler_model(p, drive, abo);
        double offset = 0.0;
        if (engine == "classical") {
            SidebandSolution sb =
                solve_sidebands(model.r_star, 0.0, p, std::nullopt, SidebandOptions{});
            offset = adler_phase_offset(model.r_star, p, drive, sb);
        }
        (void)offset;
        detail::run_indexed(nw, sweep.threads, [&](int iw) {
            TonguePoint& pt = out[static_cast<size_t>(ia) * nw + iw];
            pt.index = ia * nw + iw;
            pt.A_e = amplitudes[ia];
            pt.omega_e = omegas[iw];
            pt.A_eff = model.A_eff;
            try {
                if (engine == "adler") {
                    double det = pt.omega_e - model.omega_m_eff;
                    pt.dphi_dot = adler_mean_dphi_dot(det, model.A_eff);
                    pt.locked = std::abs(det) <= model.A_eff * (1.0 + 1e-9);
                } else {
                    DriveSpec d = drive;
                    d.omega_e = pt.omega_e;
                    Trajectory traj = integrate(cyc->end, p, d, opt.t_run, opt.dt, 8);
                    pt.dphi_dot = mean_dphi_dot(traj, cyc->beta_c, d.omega_e, opt.window_frac);
                    pt.locked = std::abs(pt.dphi_dot) < opt.lock_frac * model.A_eff;
                }
            } catch (const std::exception& e) {
                pt.status = e.what();
            }
        });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Quantum frequency scan
// ---------------------------------------------------------------------------

struct QuantumScanPoint {
    int index = 0;
    double omega_e = 0.0;
    double A_e = 0.0;
    std::string status = "ok";
    double S_bar = 0.0;
    double spread = 0.0;
    int periods_used = 0;
    double top_cavity = 0.0;
    double top_mech = 0.0;
};

struct QuantumScanOptions {
    FockConfig fock;
    PeriodicStateOptions periodic;
    SteadyStateOptions steady;
    double drive_phase = 0.0;
};

// Scan of the time-averaged synchronization measure over drive frequencies.
// beta_c comes from the classical limit cycle of the same parameters. With
// warm_start the scan runs sequentially, seeding each point with the
// previous periodic state.
inline std::vector<QuantumScanPoint> quantum_frequency_scan(
    const SystemParams& p, DriveSpec drive, const std::vector<double>& omegas,
    std::complex<double> beta_c, const QuantumScanOptions& opt = {},
    const SweepOptions& sweep = {}) {
    Matrix rho_ss = steady_state(p, opt.fock, opt.steady);
    int n = static_cast<int>(omegas.size());
    std::vector<QuantumScanPoint> out(n);
    Matrix warm = rho_ss;
    auto work = [&](int i, const Matrix& start) -> const Matrix* {
        QuantumScanPoint& pt = out[i];
        pt.index = i;
        pt.omega_e = omegas[i];
        pt.A_e = drive.A_e;
        try {
            QuantumDrive qd = QuantumDrive::from(drive, opt.drive_phase);
            qd.omega_e = omegas[i];
            PeriodicState ps = periodic_state(p, qd, opt.fock, start, opt.periodic);
            std::vector<Matrix> mech;
            mech.reserve(ps.samples.size());
            TruncationReport worst;
            for (const auto& s : ps.samples) {
                mech.push_back(partial_trace_mech(s, opt.fock));
                TruncationReport tr = truncation_populations(s, opt.fock);
                worst.top_cavity = std::max(worst.top_cavity, tr.top_cavity);
                worst.top_mech = std::max(worst.top_mech, tr.top_mech);
            }
            SyncResult sr = time_averaged_S(mech, beta_c, ps.tau);
            pt.S_bar = sr.S_bar;
            pt.spread = sr.spread;
            pt.periods_used = ps.periods_used;
            pt.top_cavity = worst.top_cavity;
            pt.top_mech = worst.top_mech;
            if (sweep.warm_start) {
                warm = ps.samples.front();
                return &warm;
            }
        } catch (const std::exception& e) {
            pt.status = e.what();
        }
        return nullptr;
    };
    if (sweep.warm_start || sweep.threads == 1) {
        for (int i = 0; i < n; ++i) work(i, sweep.warm_start ? warm : rho_ss);
    } else {
        detail::run_indexed(n, sweep.threads, [&](int i) { work(i, rho_ss); });
    }
    return out;
}

// ---------------------------------------------------------------------------
// Classical vs Adler comparison
// ---------------------------------------------------------------------------

struct ComparisonPoint {
    int index = 0;
    double omega_e = 0.0;
    std::string status = "ok";
    double classical_dphi_dot = 0.0;
    double adler_dphi_dot = 0.0;
    double classical_mean_sin = 0.0;
    double adler_mean_sin_v = 0.0;
};

inline std::vector<ComparisonPoint> classical_adler_comparison(
    const SystemParams& p, DriveSpec drive, const std::vector<double>& omegas,
    bool full_series = false, const ClassicalScanOptions& opt = {},
    const SweepOptions& sweep = {}) {
    AdlerBuildOptions abo;
    abo.full_series = full_series;
    AdlerModel model = build_adler_model(p, drive, abo);
    std::vector<ClassicalScanPoint> cls =
        classical_frequency_scan(p, drive, omegas, model, opt, sweep);
    std::vector<AdlerScanPoint> adl = adler_frequency_scan(model, omegas);
    std::vector<ComparisonPoint> out(omegas.size());
    for (size_t i = 0; i < omegas.size(); ++i) {
        out[i].index = static_cast<int>(i);
        out[i].omega_e = omegas[i];
        out[i].status = cls[i].status;
        out[i].classical_dphi_dot = cls[i].dphi_dot;
        out[i].adler_dphi_dot = adl[i].dphi_dot;
        out[i].classical_mean_sin = cls[i].mean_sin;
        out[i].adler_mean_sin_v = adl[i].mean_sin;
    }
    return out;
}

// Evenly spaced grid helper, inclusive of both endpoints.
inline std::vector<double> linspace(double lo, double hi, int n) {
    if (n < 1) throw std::invalid_argument("linspace: n must be >= 1");
    std::vector<double> v(n);
    if (n == 1) {
        v[0] = lo;
        return v;
    }
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

}  // namespace omsync
