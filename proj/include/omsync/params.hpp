// params.hpp — optomechanical parameter model and run options.
//
// All rates and frequencies are expressed in units of the mechanical
// frequency omega_m (hbar = 1), which is therefore fixed to 1 and not a
// free parameter. eta = 2 g0 and K = g0^2 are pure derived quantities.

#pragma once

#include <charconv>
#include <cmath>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "omsync/config.hpp"

namespace omsync {

inline constexpr double kOmegaM = 1.0;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct SystemParams {
    double g0 = 0.0;       // single-photon coupling
    double gamma_c = 0.0;  // cavity amplitude damping
    double gamma_m = 0.0;  // mechanical amplitude damping
    double A_L = 0.0;      // main laser amplitude
    double Delta = 0.0;    // laser-cavity detuning omega_L - omega_c
    double n_th = 0.0;     // mean thermal phonon number

    double omega_m() const { return kOmegaM; }
    double eta() const { return 2.0 * g0 / kOmegaM; }
    double kerr() const { return g0 * g0 / kOmegaM; }
};

enum class DriveKind { Optical, Mechanical };

inline std::string to_string(DriveKind k) {
    return k == DriveKind::Optical ? "optical" : "mechanical";
}

struct DriveSpec {
    DriveKind kind = DriveKind::Optical;
    double A_e = 0.0;      // drive amplitude
    double omega_e = 1.0;  // drive frequency (optical: in the omega_L frame)

    // detuning from the bare mechanical frequency
    double epsilon() const { return omega_e - kOmegaM; }
};

// Returns every violated invariant, not just the first.
inline std::vector<std::string> validate(const SystemParams& p) {
    std::vector<std::string> v;
    auto bad = [&](bool cond, const std::string& msg) {
        if (cond) v.push_back(msg);
    };
    bad(!(p.gamma_c > 0.0), "gamma_c must be positive (got " + std::to_string(p.gamma_c) + ")");
    bad(!(p.gamma_m >= 0.0), "gamma_m must be >= 0 (got " + std::to_string(p.gamma_m) + ")");
    bad(!(p.n_th >= 0.0), "n_th must be >= 0 (got " + std::to_string(p.n_th) + ")");
    bad(!(p.g0 >= 0.0), "g0 must be >= 0 (got " + std::to_string(p.g0) + ")");
    bad(!(p.A_L >= 0.0), "A_L must be >= 0 (got " + std::to_string(p.A_L) + ")");
    bad(!std::isfinite(p.g0) || !std::isfinite(p.gamma_c) || !std::isfinite(p.gamma_m) ||
            !std::isfinite(p.A_L) || !std::isfinite(p.Delta) || !std::isfinite(p.n_th),
        "all parameters must be finite");
    return v;
}

inline std::vector<std::string> validate(const DriveSpec& d) {
    std::vector<std::string> v;
    if (!(d.A_e >= 0.0)) v.push_back("drive.A_e must be >= 0 (got " + std::to_string(d.A_e) + ")");
    if (!(d.omega_e > 0.0)) v.push_back("drive.omega_e must be positive (got " + std::to_string(d.omega_e) + ")");
    return v;
}

// Module-level numeric knobs with their documented defaults.
struct RunOptions {
    // classical-sim
    double sim_dt = kTwoPi / 200.0;
    double sim_t_end = 2000.0 * kTwoPi;
    int sim_sample_stride = 16;
    double sim_blowup_bound = 1e6;
    double sim_t_max = 2000.0 * kTwoPi;  // limit-cycle search budget
    double sim_seed = 0.1;               // initial |beta|
    // sideband-adler
    int adler_n_max = 0;  // 0 = adaptive
    double adler_tol = 1e-10;
    std::string adler_branch = "large";  // large | small
    bool adler_keep_cross_terms = true;
    bool adler_full_series = false;  // full-series effective drive strength
    // quantum-sim
    int q_n_cav = 8;
    int q_n_mech = 24;
    double q_dt = kTwoPi / 400.0;
    double q_strobe_tol = 1e-5;
    int q_samples_per_period = 32;
    double q_t_max = 3000.0 * kTwoPi;
    int q_max_periods = 500;
    // sweep-harness
    bool sweep_warm_start = false;
    int threads = 0;  // 0 = hardware concurrency
};

struct Config {
    SystemParams sys;
    std::optional<DriveSpec> drive;
    RunOptions opts;
};

namespace detail {

inline const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys = {
        "g0", "gamma_c", "gamma_m", "A_L", "Delta", "n_th",
        "drive.kind", "drive.A_e", "drive.omega_e",
        "sim.dt", "sim.t_end", "sim.sample_stride", "sim.blowup_bound",
        "sim.t_max", "sim.seed",
        "adler.n_max", "adler.tol", "adler.branch", "adler.keep_cross_terms",
        "adler.full_series",
        "q.n_cav", "q.n_mech", "q.dt", "q.strobe_tol", "q.samples_per_period",
        "q.t_max", "q.max_periods",
        "sweep.warm_start", "threads",
    };
    return keys;
}

}  // namespace detail

inline Config config_from_map(const ConfigMap& cfg) {
    const auto& known = detail::known_keys();
    for (const auto& k : cfg.keys()) {
        bool ok = false;
        for (const auto& kk : known)
            if (k == kk) { ok = true; break; }
        if (!ok) throw ConfigError("unknown config key: " + k);
    }

    Config c;
    c.sys.g0 = cfg.get_double("g0", 0.0);
    c.sys.gamma_c = cfg.get_double("gamma_c", 0.0);
    c.sys.gamma_m = cfg.get_double("gamma_m", 0.0);
    c.sys.A_L = cfg.get_double("A_L", 0.0);
    c.sys.Delta = cfg.get_double("Delta", 0.0);
    c.sys.n_th = cfg.get_double("n_th", 0.0);

    if (cfg.has("drive.kind") || cfg.has("drive.A_e") || cfg.has("drive.omega_e")) {
        DriveSpec d;
        std::string kind = cfg.get_string("drive.kind", "optical");
        if (kind == "optical") d.kind = DriveKind::Optical;
        else if (kind == "mechanical") d.kind = DriveKind::Mechanical;
        else throw ConfigError("drive.kind must be 'optical' or 'mechanical', got '" + kind + "'");
        d.A_e = cfg.get_double("drive.A_e", 0.0);
        d.omega_e = cfg.get_double("drive.omega_e", 1.0);
        c.drive = d;
    }

    RunOptions& o = c.opts;
    o.sim_dt = cfg.get_double("sim.dt", o.sim_dt);
    o.sim_t_end = cfg.get_double("sim.t_end", o.sim_t_end);
    o.sim_sample_stride = cfg.get_int("sim.sample_stride", o.sim_sample_stride);
    o.sim_blowup_bound = cfg.get_double("sim.blowup_bound", o.sim_blowup_bound);
    o.sim_t_max = cfg.get_double("sim.t_max", o.sim_t_max);
    o.sim_seed = cfg.get_double("sim.seed", o.sim_seed);
    o.adler_n_max = cfg.get_int("adler.n_max", o.adler_n_max);
    o.adler_tol = cfg.get_double("adler.tol", o.adler_tol);
    o.adler_branch = cfg.get_string("adler.branch", o.adler_branch);
    if (o.adler_branch != "large" && o.adler_branch != "small")
        throw ConfigError("adler.branch must be 'large' or 'small', got '" + o.adler_branch + "'");
    o.adler_keep_cross_terms = cfg.get_bool("adler.keep_cross_terms", o.adler_keep_cross_terms);
    o.adler_full_series = cfg.get_bool("adler.full_series", o.adler_full_series);
    o.q_n_cav = cfg.get_int("q.n_cav", o.q_n_cav);
    o.q_n_mech = cfg.get_int("q.n_mech", o.q_n_mech);
    o.q_dt = cfg.get_double("q.dt", o.q_dt);
    o.q_strobe_tol = cfg.get_double("q.strobe_tol", o.q_strobe_tol);
    o.q_samples_per_period = cfg.get_int("q.samples_per_period", o.q_samples_per_period);
    o.q_t_max = cfg.get_double("q.t_max", o.q_t_max);
    o.q_max_periods = cfg.get_int("q.max_periods", o.q_max_periods);
    o.sweep_warm_start = cfg.get_bool("sweep.warm_start", o.sweep_warm_start);
    o.threads = cfg.get_int("threads", o.threads);

    auto violations = validate(c.sys);
    if (c.drive) {
        auto dv = validate(*c.drive);
        violations.insert(violations.end(), dv.begin(), dv.end());
    }
    if (!violations.empty()) {
        std::string msg = "invalid configuration:";
        for (const auto& m : violations) msg += "\n  " + m;
        throw ConfigError(msg);
    }
    return c;
}

inline Config load_config(const std::string& path) {
    return config_from_map(parse_config_file(path));
}

namespace detail {
inline std::string fmt(double v) {
    // shortest representation that round-trips exactly
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}
}  // namespace detail

inline ConfigMap serialize(const Config& c) {
    ConfigMap m;
    m.set("g0", detail::fmt(c.sys.g0));
    m.set("gamma_c", detail::fmt(c.sys.gamma_c));
    m.set("gamma_m", detail::fmt(c.sys.gamma_m));
    m.set("A_L", detail::fmt(c.sys.A_L));
    m.set("Delta", detail::fmt(c.sys.Delta));
    m.set("n_th", detail::fmt(c.sys.n_th));
    if (c.drive) {
        m.set("drive.kind", to_string(c.drive->kind));
        m.set("drive.A_e", detail::fmt(c.drive->A_e));
        m.set("drive.omega_e", detail::fmt(c.drive->omega_e));
    }
    const RunOptions& o = c.opts;
    m.set("sim.dt", detail::fmt(o.sim_dt));
    m.set("sim.t_end", detail::fmt(o.sim_t_end));
    m.set("sim.sample_stride", std::to_string(o.sim_sample_stride));
    m.set("sim.blowup_bound", detail::fmt(o.sim_blowup_bound));
    m.set("sim.t_max", detail::fmt(o.sim_t_max));
    m.set("sim.seed", detail::fmt(o.sim_seed));
    m.set("adler.n_max", std::to_string(o.adler_n_max));
    m.set("adler.tol", detail::fmt(o.adler_tol));
    m.set("adler.branch", o.adler_branch);
    m.set("adler.keep_cross_terms", o.adler_keep_cross_terms ? "true" : "false");
    m.set("adler.full_series", o.adler_full_series ? "true" : "false");
    m.set("q.n_cav", std::to_string(o.q_n_cav));
    m.set("q.n_mech", std::to_string(o.q_n_mech));
    m.set("q.dt", detail::fmt(o.q_dt));
    m.set("q.strobe_tol", detail::fmt(o.q_strobe_tol));
    m.set("q.samples_per_period", std::to_string(o.q_samples_per_period));
    m.set("q.t_max", detail::fmt(o.q_t_max));
    m.set("q.max_periods", std::to_string(o.q_max_periods));
    m.set("sweep.warm_start", o.sweep_warm_start ? "true" : "false");
    m.set("threads", std::to_string(o.threads));
    return m;
}

}  // namespace omsync
