// omsync — command-line front end: mean-field trajectories, the reduced
// phase model, Lindblad evolution and synchronization observables, and
// parameter sweeps. Every run writes its resolved configuration to a JSON
// manifest next to the data files.

#include <CLI11.hpp>

#include <complex>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "omsync/adler.hpp"
#include "omsync/classical.hpp"
#include "omsync/io.hpp"
#include "omsync/params.hpp"
#include "omsync/quantum.hpp"
#include "omsync/sweep.hpp"
#include "omsync/wigner.hpp"

namespace {

using namespace omsync;

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    std::string out_dir = ".";
    std::string prefix;
    bool dry_run = false;
    int threads = -1;  // -1 = take from config
};

void add_common(CLI::App* cmd, CommonArgs& a, const std::string& default_prefix) {
    a.prefix = default_prefix;
    cmd->add_option("-c,--config", a.config_path, "configuration file (key = value lines)")
        ->required();
    cmd->add_option("--set", a.overrides,
                    "override a config key, e.g. --set drive.A_e=0.01 (repeatable)");
    cmd->add_option("-o,--output", a.out_dir, "output directory");
    cmd->add_option("--prefix", a.prefix, "output file prefix");
    cmd->add_flag("--dry-run", a.dry_run, "parse and validate, print the resolved config, exit");
    cmd->add_option("--threads", a.threads, "worker threads (0 = all cores)");
}

Config resolve_config(const CommonArgs& a) {
    ConfigMap m = parse_config_file(a.config_path);
    for (const auto& ov : a.overrides) {
        size_t eq = ov.find('=');
        if (eq == std::string::npos || eq == 0)
            throw ConfigError("--set expects key=value, got '" + ov + "'");
        m.set(ov.substr(0, eq), ov.substr(eq + 1));
    }
    Config c = config_from_map(m);
    if (a.threads >= 0) c.opts.threads = a.threads;
    return c;
}

std::string out_path(const CommonArgs& a, const std::string& suffix) {
    return a.out_dir + "/" + a.prefix + suffix;
}

// true if the run should stop after printing the resolved config
bool handle_dry_run(const CommonArgs& a, const Config& c) {
    if (!a.dry_run) return false;
    std::cout << serialize(c).serialize();
    return true;
}

DriveSpec require_drive(const Config& c) {
    if (!c.drive || c.drive->A_e <= 0.0)
        throw ConfigError("this command needs a drive (drive.kind, drive.A_e, drive.omega_e)");
    return *c.drive;
}

LimitCycleOptions cycle_options(const Config& c) {
    LimitCycleOptions o;
    o.dt = c.opts.sim_dt;
    o.t_max = c.opts.sim_t_max;
    o.seed = c.opts.sim_seed;
    return o;
}

SidebandOptions sideband_options(const Config& c) {
    SidebandOptions o;
    o.branch = c.opts.adler_branch == "small" ? Branch::SmallAmplitude : Branch::LargeAmplitude;
    o.n_max = c.opts.adler_n_max;
    o.tol = c.opts.adler_tol;
    o.keep_cross_terms = c.opts.adler_keep_cross_terms;
    return o;
}

AdlerBuildOptions adler_options(const Config& c) {
    AdlerBuildOptions o;
    o.cycle.sideband = sideband_options(c);
    o.full_series = c.opts.adler_full_series;
    return o;
}

FockConfig fock_config(const Config& c) {
    FockConfig f;
    f.n_cav = c.opts.q_n_cav;
    f.n_mech = c.opts.q_n_mech;
    return f;
}

std::vector<double> omega_grid(double lo, double hi, int n) {
    return linspace(lo, hi, n);
}

// ---------------------------------------------------------------------------

int cmd_classical(const CommonArgs& a) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    LimitCycleInfo cyc = find_limit_cycle(c.sys, cycle_options(c));
    std::cout << "limit cycle: r = " << format_double(cyc.r)
              << ", beta_c = " << format_double(cyc.beta_c.real()) << " + "
              << format_double(cyc.beta_c.imag()) << "i"
              << ", omega_m_eff = " << format_double(cyc.omega_m_eff) << "\n";
    std::optional<DriveSpec> drive = c.drive && c.drive->A_e > 0.0 ? c.drive : std::nullopt;
    if (drive) {
        if (auto w = epsilon_warning(*drive)) std::cerr << "warning: " << *w << "\n";
    }
    Trajectory traj = integrate(cyc.end, c.sys, drive, c.opts.sim_t_end, c.opts.sim_dt,
                                c.opts.sim_sample_stride, c.opts.sim_blowup_bound);
    CsvWriter csv(out_path(a, "_trajectory.csv"),
                  {"t", "re_alpha", "im_alpha", "re_beta", "im_beta", "r", "dphi"});
    double omega_ref = drive ? drive->omega_e : cyc.omega_m_eff;
    std::vector<double> dphi = phase_difference_series(traj, cyc.beta_c, omega_ref);
    for (size_t k = 0; k < traj.t.size(); ++k)
        csv.row({traj.t[k], traj.alpha[k].real(), traj.alpha[k].imag(), traj.beta[k].real(),
                 traj.beta[k].imag(), std::abs(traj.beta[k] - cyc.beta_c), dphi[k]});
    csv.close();
    nlohmann::json extra;
    extra["r_star"] = cyc.r;
    extra["omega_m_eff"] = cyc.omega_m_eff;
    if (drive) {
        extra["mean_dphi_dot"] = mean_dphi_dot(traj, cyc.beta_c, drive->omega_e);
        std::cout << "mean dphi/dt = " << format_double(extra["mean_dphi_dot"].get<double>())
                  << "\n";
    }
    write_manifest(out_path(a, "_manifest.json"), c, "classical", extra);
    return 0;
}

int cmd_adler(const CommonArgs& a, double omega_lo, double omega_hi, int omega_n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    DriveSpec drive = require_drive(c);
    AdlerModel m = build_adler_model(c.sys, drive, adler_options(c));
    auto [lo, hi] = locking_range(m);
    std::cout << "r* = " << format_double(m.r_star)
              << ", delta_omega = " << format_double(m.delta_omega)
              << ", omega_m_eff = " << format_double(m.omega_m_eff)
              << ", A_eff = " << format_double(m.A_eff) << "\n"
              << "locking range: [" << format_double(lo) << ", " << format_double(hi) << "]\n";
    nlohmann::json extra;
    extra["r_star"] = m.r_star;
    extra["delta_omega"] = m.delta_omega;
    extra["omega_m_eff"] = m.omega_m_eff;
    extra["A_eff"] = m.A_eff;
    if (omega_n > 0) {
        std::vector<AdlerScanPoint> pts = adler_frequency_scan(m, omega_grid(omega_lo, omega_hi, omega_n));
        CsvWriter csv(out_path(a, "_adler.csv"),
                      {"omega_e", "detuning", "dphi_dot", "mean_sin", "locked"});
        for (const auto& pt : pts)
            csv.row({pt.omega_e, pt.detuning, pt.dphi_dot, pt.mean_sin, pt.locked ? 1.0 : 0.0});
        csv.close();
    }
    write_manifest(out_path(a, "_manifest.json"), c, "adler", extra);
    return 0;
}

int cmd_quantum(const CommonArgs& a, const std::string& observable,
                const std::string& load_path, const std::string& save_path,
                double wigner_half_width, int wigner_n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    FockConfig fock = fock_config(c);
    SteadyStateOptions sopt;
    sopt.dt = c.opts.q_dt;
    sopt.t_max = c.opts.q_t_max;

    Matrix start;
    if (!load_path.empty()) {
        StateSnapshot snap = load_state(load_path);
        start = snap.cfg.dim() == fock.dim() ? snap.rho : embed_state(snap.rho, snap.cfg, fock);
    } else {
        start = steady_state(c.sys, fock, sopt);
    }

    std::complex<double> beta_c = 0.0;
    double r_star = 0.0;
    try {
        LimitCycleInfo cyc = find_limit_cycle(c.sys, cycle_options(c));
        beta_c = cyc.beta_c;
        r_star = cyc.r;
    } catch (const LimitCycleError&) {
        // below threshold: measure relative to the origin
    }

    std::vector<Matrix> mech;
    double tau = 0.0;
    int periods = 0;
    if (c.drive && c.drive->A_e > 0.0) {
        PeriodicStateOptions popt;
        popt.dt = c.opts.q_dt;
        popt.strobe_tol = c.opts.q_strobe_tol;
        popt.max_periods = c.opts.q_max_periods;
        popt.samples_per_period = c.opts.q_samples_per_period;
        PeriodicState ps =
            periodic_state(c.sys, QuantumDrive::from(*c.drive), fock, start, popt);
        tau = ps.tau;
        periods = ps.periods_used;
        if (!save_path.empty()) save_state(save_path, ps.samples.front(), fock, 0.0);
        TruncationReport worst;
        for (const auto& s : ps.samples) {
            mech.push_back(partial_trace_mech(s, fock));
            TruncationReport tr = truncation_populations(s, fock);
            worst.top_cavity = std::max(worst.top_cavity, tr.top_cavity);
            worst.top_mech = std::max(worst.top_mech, tr.top_mech);
        }
        if (worst.top_cavity > 1e-4 || worst.top_mech > 1e-4)
            std::cerr << "warning: top-level populations " << worst.top_cavity << " (cavity), "
                      << worst.top_mech << " (mech) suggest the truncation is too small\n";
    } else {
        if (!save_path.empty()) save_state(save_path, start, fock, 0.0);
        mech.push_back(partial_trace_mech(start, fock));
    }

    nlohmann::json extra;
    extra["beta_c_re"] = beta_c.real();
    extra["beta_c_im"] = beta_c.imag();
    extra["r_star"] = r_star;
    if (observable == "S" || observable == "Sbar") {
        SyncResult sr = mech.size() > 1
                            ? time_averaged_S(mech, beta_c, tau)
                            : SyncResult{{sync_measure(mech[0], beta_c).S},
                                         sync_measure(mech[0], beta_c).S,
                                         0.0,
                                         beta_c,
                                         0.0};
        extra["S_bar"] = sr.S_bar;
        extra["spread"] = sr.spread;
        extra["periods_used"] = periods;
        std::cout << "S_bar = " << format_double(sr.S_bar)
                  << " (spread " << format_double(sr.spread) << ")\n";
        if (observable == "S") {
            CsvWriter csv(out_path(a, "_S.csv"), {"sample", "t_frac", "S"});
            for (size_t k = 0; k < sr.S_samples.size(); ++k)
                csv.row({static_cast<double>(k),
                         static_cast<double>(k) / static_cast<double>(sr.S_samples.size()),
                         sr.S_samples[k]});
            csv.close();
        }
    } else if (observable == "populations") {
        CsvWriter csv(out_path(a, "_populations.csv"), {"n", "p"});
        const Matrix& m0 = mech.front();
        for (int n = 0; n < m0.rows(); ++n) csv.row({static_cast<double>(n), m0(n, n).real()});
        csv.close();
    } else if (observable == "wigner") {
        WignerGridSpec spec;
        spec.x_min = -wigner_half_width;
        spec.x_max = wigner_half_width;
        spec.p_min = -wigner_half_width;
        spec.p_max = wigner_half_width;
        spec.nx = wigner_n;
        spec.np = wigner_n;
        WignerGrid g = wigner(mech.front(), spec);
        if (g.coverage_warning)
            std::cerr << "warning: wigner grid captures only " << g.mass
                      << " of the probability mass\n";
        CsvWriter csv(out_path(a, "_wigner.csv"), {"x", "p", "W"});
        for (int i = 0; i < spec.nx; ++i)
            for (int j = 0; j < spec.np; ++j) csv.row({spec.x(i), spec.p(j), g.W(i, j)});
        csv.close();
        extra["wigner_mass"] = g.mass;
    } else {
        throw ConfigError("unknown observable '" + observable + "'");
    }
    write_manifest(out_path(a, "_manifest.json"), c, "quantum", extra);
    return 0;
}

int cmd_scan(const CommonArgs& a, const std::string& engine, double omega_lo, double omega_hi,
             int omega_n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    DriveSpec drive = require_drive(c);
    std::vector<double> omegas = omega_grid(omega_lo, omega_hi, omega_n);
    SweepOptions sweep{c.opts.threads, c.opts.sweep_warm_start};
    nlohmann::json extra;
    extra["engine"] = engine;
    if (engine == "adler") {
        AdlerModel m = build_adler_model(c.sys, drive, adler_options(c));
        auto pts = adler_frequency_scan(m, omegas);
        CsvWriter csv(out_path(a, "_scan.csv"),
                      {"omega_e", "detuning", "dphi_dot", "mean_sin", "locked"});
        for (const auto& pt : pts)
            csv.row({pt.omega_e, pt.detuning, pt.dphi_dot, pt.mean_sin, pt.locked ? 1.0 : 0.0});
        csv.close();
    } else if (engine == "classical") {
        AdlerModel m = build_adler_model(c.sys, drive, adler_options(c));
        ClassicalScanOptions opt;
        opt.dt = c.opts.sim_dt;
        opt.t_run = c.opts.sim_t_end;
        opt.cycle = cycle_options(c);
        auto pts = classical_frequency_scan(c.sys, drive, omegas, m, opt, sweep);
        CsvWriter csv(out_path(a, "_scan.csv"),
                      {"omega_e", "dphi_dot", "mean_sin", "locked", "status"});
        for (const auto& pt : pts)
            csv.raw_row({format_double(pt.omega_e), format_double(pt.dphi_dot),
                         format_double(pt.mean_sin), pt.locked ? "1" : "0",
                         pt.status == "ok" ? "ok" : "error"});
        csv.close();
    } else if (engine == "quantum") {
        LimitCycleInfo cyc = find_limit_cycle(c.sys, cycle_options(c));
        QuantumScanOptions opt;
        opt.fock = fock_config(c);
        opt.periodic.dt = c.opts.q_dt;
        opt.periodic.strobe_tol = c.opts.q_strobe_tol;
        opt.periodic.max_periods = c.opts.q_max_periods;
        opt.periodic.samples_per_period = c.opts.q_samples_per_period;
        opt.steady.dt = c.opts.q_dt;
        opt.steady.t_max = c.opts.q_t_max;
        auto pts = quantum_frequency_scan(c.sys, drive, omegas, cyc.beta_c, opt, sweep);
        CsvWriter csv(out_path(a, "_scan.csv"),
                      {"omega_e", "S_bar", "spread", "periods", "top_cav", "top_mech", "status"});
        for (const auto& pt : pts)
            csv.raw_row({format_double(pt.omega_e), format_double(pt.S_bar),
                         format_double(pt.spread), std::to_string(pt.periods_used),
                         format_double(pt.top_cavity), format_double(pt.top_mech),
                         pt.status == "ok" ? "ok" : "error"});
        csv.close();
        extra["beta_c_re"] = cyc.beta_c.real();
        extra["beta_c_im"] = cyc.beta_c.imag();
    } else {
        throw ConfigError("unknown scan engine '" + engine + "'");
    }
    write_manifest(out_path(a, "_manifest.json"), c, "scan", extra);
    return 0;
}

int cmd_tongue(const CommonArgs& a, const std::string& engine, double amp_lo, double amp_hi,
               int amp_n, double omega_lo, double omega_hi, int omega_n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    DriveKind kind = c.drive ? c.drive->kind : DriveKind::Optical;
    if (engine == "quantum") {
        // S_bar over the (A_e, omega_e) grid, one frequency scan per amplitude
        LimitCycleInfo cyc = find_limit_cycle(c.sys, cycle_options(c));
        QuantumScanOptions qopt;
        qopt.fock = fock_config(c);
        qopt.periodic.dt = c.opts.q_dt;
        qopt.periodic.strobe_tol = c.opts.q_strobe_tol;
        qopt.periodic.max_periods = c.opts.q_max_periods;
        qopt.periodic.samples_per_period = c.opts.q_samples_per_period;
        qopt.steady.dt = c.opts.q_dt;
        qopt.steady.t_max = c.opts.q_t_max;
        SweepOptions qsweep{c.opts.threads, c.opts.sweep_warm_start};
        std::vector<double> omegas = linspace(omega_lo, omega_hi, omega_n);
        CsvWriter csv(out_path(a, "_tongue.csv"),
                      {"A_e", "omega_e", "S_bar", "spread", "status"});
        for (double amp : linspace(amp_lo, amp_hi, amp_n)) {
            DriveSpec d{kind, amp, kOmegaM};
            auto pts = quantum_frequency_scan(c.sys, d, omegas, cyc.beta_c, qopt, qsweep);
            for (const auto& pt : pts)
                csv.raw_row({format_double(amp), format_double(pt.omega_e),
                             format_double(pt.S_bar), format_double(pt.spread),
                             pt.status == "ok" ? "ok" : "error"});
        }
        csv.close();
        nlohmann::json extra;
        extra["engine"] = engine;
        write_manifest(out_path(a, "_manifest.json"), c, "tongue", extra);
        return 0;
    }
    SweepOptions sweep{c.opts.threads, false};
    ClassicalScanOptions opt;
    opt.dt = c.opts.sim_dt;
    opt.t_run = c.opts.sim_t_end;
    opt.cycle = cycle_options(c);
    auto pts = arnold_tongue(c.sys, kind, linspace(amp_lo, amp_hi, amp_n),
                             linspace(omega_lo, omega_hi, omega_n), engine, opt, sweep,
                             c.opts.adler_full_series);
    CsvWriter csv(out_path(a, "_tongue.csv"),
                  {"A_e", "omega_e", "locked", "dphi_dot", "A_eff", "status"});
    for (const auto& pt : pts)
        csv.raw_row({format_double(pt.A_e), format_double(pt.omega_e), pt.locked ? "1" : "0",
                     format_double(pt.dphi_dot), format_double(pt.A_eff),
                     pt.status == "ok" ? "ok" : "error"});
    csv.close();
    nlohmann::json extra;
    extra["engine"] = engine;
    write_manifest(out_path(a, "_manifest.json"), c, "tongue", extra);
    return 0;
}

int cmd_compare(const CommonArgs& a, double omega_lo, double omega_hi, int omega_n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    DriveSpec drive = require_drive(c);
    SweepOptions sweep{c.opts.threads, false};
    ClassicalScanOptions opt;
    opt.dt = c.opts.sim_dt;
    opt.t_run = c.opts.sim_t_end;
    opt.cycle = cycle_options(c);
    auto pts = classical_adler_comparison(c.sys, drive, omega_grid(omega_lo, omega_hi, omega_n),
                                          c.opts.adler_full_series, opt, sweep);
    CsvWriter csv(out_path(a, "_compare.csv"),
                  {"omega_e", "classical_dphi_dot", "adler_dphi_dot", "classical_mean_sin",
                   "adler_mean_sin", "status"});
    for (const auto& pt : pts)
        csv.raw_row({format_double(pt.omega_e), format_double(pt.classical_dphi_dot),
                     format_double(pt.adler_dphi_dot), format_double(pt.classical_mean_sin),
                     format_double(pt.adler_mean_sin_v), pt.status == "ok" ? "ok" : "error"});
    csv.close();
    write_manifest(out_path(a, "_manifest.json"), c, "compare", nlohmann::json::object());
    return 0;
}

int cmd_wigner(const CommonArgs& a, const std::string& state_path, double half_width, int n) {
    Config c = resolve_config(a);
    if (handle_dry_run(a, c)) return 0;
    StateSnapshot snap = load_state(state_path);
    Matrix mech = partial_trace_mech(snap.rho, snap.cfg);
    WignerGridSpec spec;
    spec.x_min = -half_width;
    spec.x_max = half_width;
    spec.p_min = -half_width;
    spec.p_max = half_width;
    spec.nx = n;
    spec.np = n;
    WignerGrid g = wigner(mech, spec);
    if (g.coverage_warning)
        std::cerr << "warning: wigner grid captures only " << g.mass
                  << " of the probability mass\n";
    CsvWriter csv(out_path(a, "_wigner.csv"), {"x", "p", "W"});
    for (int i = 0; i < spec.nx; ++i)
        for (int j = 0; j < spec.np; ++j) csv.row({spec.x(i), spec.p(j), g.W(i, j)});
    csv.close();
    nlohmann::json extra;
    extra["wigner_mass"] = g.mass;
    extra["state"] = state_path;
    write_manifest(out_path(a, "_manifest.json"), c, "wigner", extra);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"optomechanical self-oscillator synchronization toolkit"};
    app.require_subcommand(1);

    CommonArgs a_classical, a_adler, a_quantum, a_scan, a_tongue, a_compare, a_wigner;
    double omega_lo = 0.95, omega_hi = 1.05;
    int omega_n = 0;
    std::string observable = "Sbar";
    std::string load_path, save_path, engine = "classical", state_path;
    double amp_lo = 0.0, amp_hi = 0.0, half_width = 8.0;
    int amp_n = 1, wigner_n = 101;

    auto* classical = app.add_subcommand("classical", "mean-field trajectory from the limit cycle");
    add_common(classical, a_classical, "classical");

    auto* adler = app.add_subcommand("adler", "reduced phase model coefficients and scan");
    add_common(adler, a_adler, "adler");
    adler->add_option("--omega-min", omega_lo, "scan start frequency");
    adler->add_option("--omega-max", omega_hi, "scan end frequency");
    adler->add_option("--omega-points", omega_n, "scan points (0 = summary only)");

    auto* quantum = app.add_subcommand("quantum", "Lindblad steady/periodic state observables");
    add_common(quantum, a_quantum, "quantum");
    quantum->add_option("--observable", observable, "S | Sbar | wigner | populations");
    quantum->add_option("--load-state", load_path, "start from a saved state snapshot");
    quantum->add_option("--save-state", save_path, "save the converged state snapshot");
    quantum->add_option("--half-width", half_width, "wigner grid half width");
    quantum->add_option("--grid-points", wigner_n, "wigner grid points per axis");

    auto* scan = app.add_subcommand("scan", "frequency scan with a chosen engine");
    add_common(scan, a_scan, "scan");
    scan->add_option("--engine", engine, "classical | adler | quantum");
    scan->add_option("--omega-min", omega_lo)->required();
    scan->add_option("--omega-max", omega_hi)->required();
    scan->add_option("--omega-points", omega_n)->required();

    auto* tongue = app.add_subcommand("tongue", "locked/unlocked grid over (A_e, omega_e)");
    add_common(tongue, a_tongue, "tongue");
    tongue->add_option("--engine", engine, "classical | adler");
    tongue->add_option("--amp-min", amp_lo)->required();
    tongue->add_option("--amp-max", amp_hi)->required();
    tongue->add_option("--amp-points", amp_n)->required();
    tongue->add_option("--omega-min", omega_lo)->required();
    tongue->add_option("--omega-max", omega_hi)->required();
    tongue->add_option("--omega-points", omega_n)->required();

    auto* compare = app.add_subcommand("compare", "classical mean-field versus the phase model");
    add_common(compare, a_compare, "compare");
    compare->add_option("--omega-min", omega_lo)->required();
    compare->add_option("--omega-max", omega_hi)->required();
    compare->add_option("--omega-points", omega_n)->required();

    auto* wig = app.add_subcommand("wigner", "Wigner function of a saved state");
    add_common(wig, a_wigner, "wigner");
    wig->add_option("--state", state_path, "state snapshot file")->required();
    wig->add_option("--half-width", half_width, "grid half width");
    wig->add_option("--grid-points", wigner_n, "grid points per axis");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (classical->parsed()) return cmd_classical(a_classical);
        if (adler->parsed()) return cmd_adler(a_adler, omega_lo, omega_hi, omega_n);
        if (quantum->parsed())
            return cmd_quantum(a_quantum, observable, load_path, save_path, half_width, wigner_n);
        if (scan->parsed()) return cmd_scan(a_scan, engine, omega_lo, omega_hi, omega_n);
        if (tongue->parsed())
            return cmd_tongue(a_tongue, engine, amp_lo, amp_hi, amp_n, omega_lo, omega_hi, omega_n);
        if (compare->parsed()) return cmd_compare(a_compare, omega_lo, omega_hi, omega_n);
        if (wig->parsed()) return cmd_wigner(a_wigner, state_path, half_width, wigner_n);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
