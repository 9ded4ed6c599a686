// quantum.hpp — truncated-Fock-space Lindblad dynamics for the driven
// optomechanical system: operator construction, RK4 propagation, steady and
// stroboscopically periodic states, partial trace, and the phase-space
// synchronization measure S.
//
// Joint-space ordering: index i = ic * n_mech + im (cavity major).
//
// Two right-hand-side routes exist on purpose: a generic operator-built
// form (lindblad_rhs) and a fused stencil kernel (LindbladPropagator) that
// exploits the shift structure of a and b. The tests pin them against each
// other; all long evolutions use the kernel.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsync/params.hpp"

namespace omsync {

using Matrix = Eigen::MatrixXcd;
using SparseMat = Eigen::SparseMatrix<std::complex<double>>;

struct QuantumError : std::runtime_error {
    explicit QuantumError(const std::string& what) : std::runtime_error(what) {}
};

struct FockConfig {
    int n_cav = 8;
    int n_mech = 24;
    int dim_cap = 4096;

    int dim() const { return n_cav * n_mech; }
    void check() const {
        if (n_cav < 2 || n_mech < 2)
            throw QuantumError("FockConfig: truncation dimensions must be >= 2");
        if (dim() > dim_cap)
            throw QuantumError("FockConfig: joint dimension " + std::to_string(dim()) +
                               " exceeds cap " + std::to_string(dim_cap));
    }
};

struct QuantumOps {
    FockConfig cfg;
    SparseMat a, a_dag, b, b_dag, n_a, n_b;
};

inline QuantumOps build_operators(const FockConfig& cfg) {
    cfg.check();
    int nc = cfg.n_cav, nm = cfg.n_mech, D = cfg.dim();
    std::vector<Eigen::Triplet<std::complex<double>>> ta, tb, tna, tnb;
    auto idx = [nm](int ic, int im) { return ic * nm + im; };
    for (int ic = 0; ic < nc; ++ic) {
        for (int im = 0; im < nm; ++im) {
            int i = idx(ic, im);
            if (ic + 1 < nc) ta.emplace_back(i, idx(ic + 1, im), std::sqrt(ic + 1.0));
            if (im + 1 < nm) tb.emplace_back(i, idx(ic, im + 1), std::sqrt(im + 1.0));
            if (ic > 0) tna.emplace_back(i, i, static_cast<double>(ic));
            if (im > 0) tnb.emplace_back(i, i, static_cast<double>(im));
        }
    }
    QuantumOps ops;
    ops.cfg = cfg;
    ops.a.resize(D, D);
    ops.a.setFromTriplets(ta.begin(), ta.end());
    ops.b.resize(D, D);
    ops.b.setFromTriplets(tb.begin(), tb.end());
    ops.a_dag = ops.a.adjoint();
    ops.b_dag = ops.b.adjoint();
    ops.n_a.resize(D, D);
    ops.n_a.setFromTriplets(tna.begin(), tna.end());
    ops.n_b.resize(D, D);
    ops.n_b.setFromTriplets(tnb.begin(), tnb.end());
    return ops;
}

// Optional complex drive amplitude: A_e * e^{i theta}. theta = 0 reproduces
// the real-amplitude drive Hamiltonians.
struct QuantumDrive {
    DriveKind kind = DriveKind::Optical;
    std::complex<double> amplitude{0.0, 0.0};
    double omega_e = 1.0;

    static QuantumDrive from(const DriveSpec& d, double phase = 0.0) {
        QuantumDrive q;
        q.kind = d.kind;
        q.amplitude = d.A_e * std::exp(std::complex<double>(0.0, phase));
        q.omega_e = d.omega_e;
        return q;
    }
};

// H = omega_m b'b - Delta a'a - g0 a'a (b + b') - i A_L (a - a') + drive term.
inline Matrix hamiltonian(double t, const SystemParams& p,
                          const std::optional<QuantumDrive>& drive, const QuantumOps& ops) {
    const std::complex<double> I(0.0, 1.0);
    Matrix H = Matrix(kOmegaM * ops.n_b) - p.Delta * Matrix(ops.n_a) -
               p.g0 * Matrix(SparseMat(ops.n_a * (ops.b + ops.b_dag))) -
               I * p.A_L * Matrix(ops.a - ops.a_dag);
    if (drive) {
        std::complex<double> f = drive->amplitude * std::exp(I * drive->omega_e * t);
        const SparseMat& low = drive->kind == DriveKind::Optical ? ops.a : ops.b;
        const SparseMat& high = drive->kind == DriveKind::Optical ? ops.a_dag : ops.b_dag;
        H += -I * f * Matrix(low) + I * std::conj(f) * Matrix(high);
    }
    return H;
}

// Generic reference RHS: -i[H, rho] + gm(nth+1)D[b] + gm nth D[b'] + gc D[a].
inline Matrix lindblad_rhs(const Matrix& rho, double t, const SystemParams& p,
                           const std::optional<QuantumDrive>& drive, const QuantumOps& ops) {
    const std::complex<double> I(0.0, 1.0);
    Matrix H = hamiltonian(t, p, drive, ops);
    Matrix out = -I * (H * rho - rho * H);
    auto dissip = [&](const SparseMat& x, const SparseMat& xdx, double rate) {
        if (rate <= 0.0) return;
        Matrix xr = x * rho;
        out += rate * (Matrix(xr * SparseMat(x.adjoint())) - 0.5 * (xdx * rho + rho * xdx));
    };
    SparseMat bdb = SparseMat(ops.b_dag * ops.b);
    SparseMat bbd = SparseMat(ops.b * ops.b_dag);
    SparseMat ada = SparseMat(ops.a_dag * ops.a);
    dissip(ops.b, bdb, p.gamma_m * (p.n_th + 1.0));
    dissip(ops.b_dag, bbd, p.gamma_m * p.n_th);
    dissip(ops.a, ada, p.gamma_c);
    return out;
}

// ---------------------------------------------------------------------------
// Fused stencil propagator
// ---------------------------------------------------------------------------

class LindbladPropagator {
public:
    LindbladPropagator(const SystemParams& p, const std::optional<QuantumDrive>& drive,
                       const FockConfig& cfg, double dt)
        : p_(p), drive_(drive), cfg_(cfg), dt_(dt) {
        cfg.check();
        nc_ = cfg.n_cav;
        nm_ = cfg.n_mech;
        D_ = cfg.dim();
        sq_.resize(std::max(nc_, nm_) + 1);
        for (size_t k = 0; k < sq_.size(); ++k) sq_[k] = std::sqrt(static_cast<double>(k));
        // d[i] = g[i] + i E[i]: damping + coherent diagonal per joint index
        diag_.resize(D_);
        double gmd = p.gamma_m * (p.n_th + 1.0), gmu = p.gamma_m * p.n_th;
        for (int i = 0; i < D_; ++i) {
            int ic = i / nm_, im = i % nm_;
            double E = kOmegaM * im - p.Delta * ic;
            // truncated b b' has a zero diagonal at the top mechanical level
            double g = 0.5 * (p.gamma_c * ic + gmd * im + (im + 1 < nm_ ? gmu * (im + 1) : 0.0));
            diag_[i] = std::complex<double>(g, E);
        }
        k1_.resize(D_, D_);
        k2_.resize(D_, D_);
        k3_.resize(D_, D_);
        k4_.resize(D_, D_);
        tmp_.resize(D_, D_);
    }

    double dt() const { return dt_; }
    double max_hermiticity_drift() const { return max_herm_drift_; }

    // d rho / dt at time t, written into out.
    void rhs(const Matrix& rho, double t, Matrix& out) const {
        const std::complex<double> I(0.0, 1.0);
        // scalar coefficients of the lowering operators inside H
        std::complex<double> ca(0.0, -p_.A_L);  // -i A_L
        std::complex<double> cb(0.0, 0.0);
        if (drive_ && std::abs(drive_->amplitude) > 0.0) {
            std::complex<double> f =
                -I * drive_->amplitude * std::exp(I * drive_->omega_e * t);
            if (drive_->kind == DriveKind::Optical) ca += f;
            else cb += f;
        }
        const std::complex<double> cad = std::conj(ca), cbd = std::conj(cb);
        const double g0 = p_.g0;
        const double gc = p_.gamma_c;
        const double gmd = p_.gamma_m * (p_.n_th + 1.0), gmu = p_.gamma_m * p_.n_th;
        const int nm = nm_, nc = nc_, D = D_;
        const std::complex<double>* r = rho.data();
        std::complex<double>* o = out.data();
        for (int j = 0; j < D; ++j) {
            const int jc = j / nm, jm = j % nm;
            const std::complex<double> dj = std::conj(diag_[j]);
            const std::complex<double>* c0 = r + static_cast<size_t>(j) * D;
            const std::complex<double>* cp1 = jm + 1 < nm ? c0 + D : nullptr;
            const std::complex<double>* cm1 = jm > 0 ? c0 - D : nullptr;
            const std::complex<double>* cpn = jc + 1 < nc ? c0 + static_cast<size_t>(nm) * D : nullptr;
            const std::complex<double>* cmn = jc > 0 ? c0 - static_cast<size_t>(nm) * D : nullptr;
            std::complex<double>* oc = o + static_cast<size_t>(j) * D;
            const std::complex<double> rj_up = I * (-g0 * jc * sq_[jm + 1]);  // rho(i,j+1)
            const std::complex<double> rj_dn = jm > 0 ? I * (-g0 * jc * sq_[jm]) : 0.0;
            const std::complex<double> rj_an = I * ca * sq_[jc];              // rho(i,j-nm)
            const std::complex<double> rj_ap = I * cad * sq_[jc + 1];         // rho(i,j+nm)
            const std::complex<double> rj_bn = jm > 0 ? I * cb * sq_[jm] : 0.0;
            const std::complex<double> rj_bp = I * cbd * sq_[jm + 1];
            for (int i = 0; i < D; ++i) {
                const int ic = i / nm, im = i % nm;
                std::complex<double> acc = -(diag_[i] + dj) * c0[i];
                // -i H rho
                if (im + 1 < nm)
                    acc += (I * (g0 * ic * sq_[im + 1]) - I * cb * sq_[im + 1]) * c0[i + 1];
                if (im > 0)
                    acc += (I * (g0 * ic * sq_[im]) - I * cbd * sq_[im]) * c0[i - 1];
                if (ic + 1 < nc) acc += (-I * ca * sq_[ic + 1]) * c0[i + nm];
                if (ic > 0) acc += (-I * cad * sq_[ic]) * c0[i - nm];
                // +i rho H
                if (cp1) acc += (rj_up + rj_bp) * cp1[i];
                if (cm1) acc += (rj_dn + rj_bn) * cm1[i];
                if (cmn) acc += rj_an * cmn[i];
                if (cpn) acc += rj_ap * cpn[i];
                // jump terms
                if (cpn && ic + 1 < nc) acc += gc * sq_[ic + 1] * sq_[jc + 1] * cpn[i + nm];
                if (cp1 && im + 1 < nm) acc += gmd * sq_[im + 1] * sq_[jm + 1] * cp1[i + 1];
                if (gmu > 0.0 && cm1 && im > 0) acc += gmu * sq_[im] * sq_[jm] * cm1[i - 1];
                oc[i] = acc;
            }
        }
    }

    // One RK4 step with hermitization and trace renormalization. The
    // pre-correction drift is tracked; a breach beyond tol means the step
    // size is too large for the current spectrum.
    void step(Matrix& rho, double& t, double invariant_tol = 1e-6) {
        rhs(rho, t, k1_);
        tmp_ = rho + (0.5 * dt_) * k1_;
        rhs(tmp_, t + 0.5 * dt_, k2_);
        tmp_ = rho + (0.5 * dt_) * k2_;
        rhs(tmp_, t + 0.5 * dt_, k3_);
        tmp_ = rho + dt_ * k3_;
        rhs(tmp_, t + dt_, k4_);
        rho += (dt_ / 6.0) * (k1_ + 2.0 * k2_ + 2.0 * k3_ + k4_);
        t += dt_;
        double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
        double tr_drift = std::abs(rho.trace() - 1.0);
        max_herm_drift_ = std::max(max_herm_drift_, std::max(herm, tr_drift));
        if (max_herm_drift_ > invariant_tol)
            throw QuantumError("step too large: invariant drift " +
                               std::to_string(max_herm_drift_) + " before correction at t = " +
                               std::to_string(t));
        rho = 0.5 * (rho + rho.adjoint().eval());
        rho /= rho.trace().real();
    }

    void evolve_for(Matrix& rho, double& t, double span) {
        long n = static_cast<long>(std::llround(span / dt_));
        for (long k = 0; k < n; ++k) step(rho, t);
    }

private:
    SystemParams p_;
    std::optional<QuantumDrive> drive_;
    FockConfig cfg_;
    double dt_;
    int nc_ = 0, nm_ = 0, D_ = 0;
    std::vector<double> sq_;
    std::vector<std::complex<double>> diag_;
    mutable Matrix k1_, k2_, k3_, k4_, tmp_;
    double max_herm_drift_ = 0.0;
};

inline Matrix vacuum_state(const FockConfig& cfg) {
    Matrix rho = Matrix::Zero(cfg.dim(), cfg.dim());
    rho(0, 0) = 1.0;
    return rho;
}

// RK4 propagation from t0 to t1 (t1 - t0 rounded to whole steps).
inline Matrix evolve(const Matrix& rho0, double t0, double t1, double dt,
                     const SystemParams& p, const std::optional<QuantumDrive>& drive,
                     const FockConfig& cfg) {
    Matrix rho = rho0;
    if (t1 <= t0) return rho;
    LindbladPropagator prop(p, drive, cfg, dt);
    double t = t0;
    prop.evolve_for(rho, t, t1 - t0);
    return rho;
}

// ---------------------------------------------------------------------------
// State analysis
// ---------------------------------------------------------------------------

inline double trace_distance(const Matrix& x, const Matrix& y) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(x - y, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline double hermiticity_error(const Matrix& rho) {
    return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

inline double min_eigenvalue(const Matrix& rho) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff();
}

inline Matrix partial_trace_mech(const Matrix& rho, const FockConfig& cfg) {
    int nc = cfg.n_cav, nm = cfg.n_mech;
    Matrix out = Matrix::Zero(nm, nm);
    for (int ic = 0; ic < nc; ++ic)
        out += rho.block(ic * nm, ic * nm, nm, nm);
    return out;
}

// <b> of a mechanical (reduced) state.
inline std::complex<double> expect_b(const Matrix& rho_mech) {
    int nm = static_cast<int>(rho_mech.rows());
    std::complex<double> acc = 0.0;
    // Tr[rho b] = sum_n sqrt(n+1) rho(n+1, n)
    for (int n = 0; n + 1 < nm; ++n) acc += std::sqrt(n + 1.0) * rho_mech(n + 1, n);
    return acc;
}

inline double expect_n(const Matrix& rho_diag_basis) {
    double acc = 0.0;
    for (int n = 0; n < rho_diag_basis.rows(); ++n) acc += n * rho_diag_basis(n, n).real();
    return acc;
}

// <b> of the joint state without forming the reduced matrix.
inline std::complex<double> expect_b_joint(const Matrix& rho, const FockConfig& cfg) {
    return expect_b(partial_trace_mech(rho, cfg));
}

// Populations of the top cavity and mechanical Fock levels
// (truncation-adequacy indicators).
struct TruncationReport {
    double top_cavity = 0.0;
    double top_mech = 0.0;
};

inline TruncationReport truncation_populations(const Matrix& rho, const FockConfig& cfg) {
    int nc = cfg.n_cav, nm = cfg.n_mech;
    TruncationReport r;
    for (int im = 0; im < nm; ++im) r.top_cavity += rho((nc - 1) * nm + im, (nc - 1) * nm + im).real();
    for (int ic = 0; ic < nc; ++ic) r.top_mech += rho(ic * nm + nm - 1, ic * nm + nm - 1).real();
    return r;
}

// Synchronization measure S = |<b~>| / sqrt(<b~' b~>) with b~ = b - beta_c.
struct SValue {
    double S = 0.0;
    bool degenerate = false;  // displaced second moment was zero
};

inline SValue sync_measure(const Matrix& rho_mech, std::complex<double> beta_c) {
    std::complex<double> mb = expect_b(rho_mech);
    double nb = 0.0;
    for (int n = 0; n < rho_mech.rows(); ++n) nb += n * rho_mech(n, n).real();
    double denom2 = nb - 2.0 * std::real(std::conj(beta_c) * mb) + std::norm(beta_c);
    SValue v;
    // relative floor: truncation round-off can leave a tiny positive residual
    if (denom2 <= 1e-12 * std::max(1.0, nb + std::norm(beta_c))) {
        v.degenerate = true;
        return v;
    }
    v.S = std::abs(mb - beta_c) / std::sqrt(denom2);
    return v;
}

struct SyncResult {
    std::vector<double> S_samples;
    double S_bar = 0.0;
    double spread = 0.0;  // max - min over the period
    std::complex<double> beta_c;
    double tau = 0.0;
};

inline SyncResult time_averaged_S(const std::vector<Matrix>& mech_samples,
                                  std::complex<double> beta_c, double tau) {
    if (mech_samples.size() < 8)
        throw QuantumError("time_averaged_S: need at least 8 samples over the period");
    SyncResult r;
    r.beta_c = beta_c;
    r.tau = tau;
    double lo = 1.0, hi = 0.0, acc = 0.0;
    for (const auto& m : mech_samples) {
        double s = sync_measure(m, beta_c).S;
        r.S_samples.push_back(s);
        acc += s;
        lo = std::min(lo, s);
        hi = std::max(hi, s);
    }
    r.S_bar = acc / static_cast<double>(r.S_samples.size());
    r.spread = hi - lo;
    return r;
}

// D(beta) = exp(beta b' - beta* b), dense matrix exponential.
inline Matrix displacement_operator(std::complex<double> beta, int dim) {
    if (std::norm(beta) > 0.5 * dim)
        throw QuantumError("displacement_operator: |beta|^2 = " + std::to_string(std::norm(beta)) +
                           " too large for dimension " + std::to_string(dim));
    Matrix G = Matrix::Zero(dim, dim);
    for (int n = 0; n + 1 < dim; ++n) {
        G(n + 1, n) = beta * std::sqrt(n + 1.0);
        G(n, n + 1) = -std::conj(beta) * std::sqrt(n + 1.0);
    }
    return G.exp();
}

// ---------------------------------------------------------------------------
// Steady and periodic states
// ---------------------------------------------------------------------------

struct SteadyStateOptions {
    double dt = kTwoPi / 400.0;
    double rhs_tol = 1e-7;       // max |d rho/dt| element
    double strobe_tol = 1e-6;    // trace-norm change over check_periods
    int check_periods = 10;
    double t_max = 3000.0 * kTwoPi;
};

// Free-running (drive-less) relaxed state, reached by time evolution from
// rho0 (vacuum by default).
inline Matrix steady_state(const SystemParams& p, const FockConfig& cfg,
                           const SteadyStateOptions& opt = {},
                           const Matrix* rho0 = nullptr) {
    LindbladPropagator prop(p, std::nullopt, cfg, opt.dt);
    Matrix rho = rho0 ? *rho0 : vacuum_state(cfg);
    Matrix prev = rho, deriv(cfg.dim(), cfg.dim());
    double t = 0.0;
    double span = opt.check_periods * kTwoPi;
    while (t < opt.t_max) {
        prev = rho;
        prop.evolve_for(rho, t, span);
        prop.rhs(rho, t, deriv);
        if (deriv.cwiseAbs().maxCoeff() < opt.rhs_tol) return rho;
        if (trace_distance(rho, prev) < opt.strobe_tol) return rho;
    }
    throw QuantumError("steady_state: no convergence within t_max = " + std::to_string(opt.t_max));
}

struct PeriodicStateOptions {
    double dt = kTwoPi / 400.0;
    double strobe_tol = 1e-5;
    int max_periods = 500;
    int samples_per_period = 32;
};

struct PeriodicState {
    std::vector<Matrix> samples;  // joint states over one period
    double tau = 0.0;
    int periods_used = 0;
};

// Applies the stroboscopic map rho -> rho(t + tau) from a starting state
// (normally the undriven steady state) until it contracts below strobe_tol,
// then samples one period.
inline PeriodicState periodic_state(const SystemParams& p, const QuantumDrive& drive,
                                    const FockConfig& cfg, const Matrix& rho_start,
                                    const PeriodicStateOptions& opt = {}) {
    if (std::abs(drive.amplitude) == 0.0) {
        PeriodicState out;
        out.tau = kTwoPi / drive.omega_e;
        out.samples.assign(opt.samples_per_period, rho_start);
        return out;
    }
    double tau = kTwoPi / drive.omega_e;
    int M = opt.samples_per_period;
    long steps = std::max<long>(M, static_cast<long>(std::llround(tau / opt.dt)));
    steps = ((steps + M - 1) / M) * M;  // make the sampling stride integral
    double dt_eff = tau / static_cast<double>(steps);
    LindbladPropagator prop(p, drive, cfg, dt_eff);
    Matrix rho = rho_start, prev = rho_start;
    double t = 0.0;
    bool converged = false;
    int used = 0;
    for (int k = 0; k < opt.max_periods; ++k) {
        prev = rho;
        for (long s = 0; s < steps; ++s) prop.step(rho, t);
        ++used;
        if (trace_distance(rho, prev) < opt.strobe_tol) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw QuantumError("periodic_state: stroboscopic map did not converge after " +
                           std::to_string(opt.max_periods) + " periods");
    PeriodicState out;
    out.tau = tau;
    out.periods_used = used;
    long stride = steps / M;
    for (int m = 0; m < M; ++m) {
        out.samples.push_back(rho);
        for (long s = 0; s < stride; ++s) prop.step(rho, t);
    }
    return out;
}

}  // namespace omsync
