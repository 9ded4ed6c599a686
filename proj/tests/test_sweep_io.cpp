#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "omsync/io.hpp"
#include "omsync/sweep.hpp"

using namespace omsync;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& name) : path("/tmp/omsync_test_" + name) {}
    ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("indexed work pool fills every slot regardless of thread count") {
    const int n = 103;
    std::vector<int> one(n, -1), many(n, -1);
    detail::run_indexed(n, 1, [&](int i) { one[i] = 3 * i + 1; });
    detail::run_indexed(n, 7, [&](int i) { many[i] = 3 * i + 1; });
    CHECK(one == many);
    for (int i = 0; i < n; ++i) CHECK(one[i] == 3 * i + 1);
}

TEST_CASE("linspace endpoints and spacing") {
    auto v = linspace(0.9, 1.1, 5);
    CHECK(v.size() == 5);
    CHECK(v.front() == 0.9);
    CHECK(v.back() == 1.1);
    CHECK(v[2] == doctest::Approx(1.0));
    CHECK(linspace(2.0, 3.0, 1) == std::vector<double>{2.0});
    CHECK_THROWS_AS(linspace(0.0, 1.0, 0), std::invalid_argument);
}

TEST_CASE("adler scan marks the locking range") {
    AdlerModel m;
    m.omega_m_eff = 1.0;
    m.A_eff = 0.01;
    m.delta_omega = 0.0;
    auto pts = adler_frequency_scan(m, linspace(0.97, 1.03, 61));
    int locked = 0;
    for (const auto& pt : pts) {
        if (pt.locked) {
            ++locked;
            CHECK(pt.dphi_dot == 0.0);
            CHECK(std::abs(pt.detuning) <= m.A_eff + 1e-12);
        } else {
            CHECK(std::abs(pt.dphi_dot) > 0.0);
        }
    }
    CHECK(locked == 21);  // 0.99 .. 1.01 inclusive at 0.001 spacing
    // indices are the grid order
    for (size_t i = 0; i < pts.size(); ++i) CHECK(pts[i].index == static_cast<int>(i));
}

TEST_CASE("arnold tongue widens linearly in the adler engine") {
    SystemParams p;
    p.g0 = 0.015;
    p.gamma_c = 0.5;
    p.gamma_m = 0.0001;
    p.A_L = 1.0;
    p.Delta = 1.0;
    // A_eff here is O(1e-5), so resolve the tongue on a matching grid
    auto omegas = linspace(0.99992, 1.00012, 81);
    auto pts = arnold_tongue(p, DriveKind::Optical, {0.05, 0.10, 0.20}, omegas, "adler");
    REQUIRE(pts.size() == 3 * omegas.size());
    auto locked_count = [&](int row) {
        int c = 0;
        for (size_t k = 0; k < omegas.size(); ++k)
            if (pts[row * omegas.size() + k].locked) ++c;
        return c;
    };
    int c0 = locked_count(0), c1 = locked_count(1), c2 = locked_count(2);
    CHECK(c0 > 0);
    CHECK(c1 > c0);
    CHECK(c2 > c1);
    // A_eff recorded per row scales with the amplitude
    CHECK(pts[omegas.size()].A_eff == doctest::Approx(2.0 * pts[0].A_eff).epsilon(1e-10));
    CHECK_THROWS_AS(arnold_tongue(p, DriveKind::Optical, {0.1}, omegas, "nonsense"),
                    std::invalid_argument);
}

TEST_CASE("csv output: 12 significant digits, LF endings, fixed width") {
    TempFile f("out.csv");
    write_csv(f.path, {"a", "b"}, {{1.0 / 3.0, 2.0}, {-4.5e-11, 123456789.25}});
    std::string text = slurp(f.path);
    CHECK(text == "a,b\n0.333333333333,2\n-4.5e-11,123456789.25\n");
    CHECK(text.find('\r') == std::string::npos);
}

TEST_CASE("csv rejects ragged rows") {
    TempFile f("ragged.csv");
    CsvWriter w(f.path, {"a", "b", "c"});
    CHECK_THROWS_AS(w.row({1.0, 2.0}), IoError);
}

TEST_CASE("an empty sweep still writes the header") {
    TempFile f("empty.csv");
    write_csv(f.path, {"omega_e", "S_bar"}, {});
    CHECK(slurp(f.path) == "omega_e,S_bar\n");
}

TEST_CASE("manifest carries the full resolved configuration") {
    TempFile f("manifest.json");
    Config c = config_from_map(parse_config_text(
        "g0 = 0.3\ngamma_c = 0.3\ngamma_m = 0.015\nA_L = 0.4\n"
        "drive.kind = optical\ndrive.A_e = 0.08\ndrive.omega_e = 0.98\n"));
    nlohmann::json extra;
    extra["r_star"] = 1.5;
    write_manifest(f.path, c, "scan", extra);
    nlohmann::json j = nlohmann::json::parse(slurp(f.path));
    CHECK(j["command"] == "scan");
    CHECK(j["r_star"] == 1.5);
    CHECK(j["config"]["g0"] == "0.3");
    CHECK(j["config"]["drive.kind"] == "optical");
    CHECK(j["config"]["q.n_mech"] == "24");
}

TEST_CASE("state snapshots round-trip exactly") {
    TempFile f("state.bin");
    FockConfig cfg{3, 5};
    Matrix rho(cfg.dim(), cfg.dim());
    for (int i = 0; i < cfg.dim(); ++i)
        for (int j = 0; j < cfg.dim(); ++j)
            rho(i, j) = std::complex<double>(0.01 * i - 0.02 * j, 0.003 * i * j);
    save_state(f.path, rho, cfg, 12.5);
    StateSnapshot s = load_state(f.path);
    CHECK(s.cfg.n_cav == 3);
    CHECK(s.cfg.n_mech == 5);
    CHECK(s.t == 12.5);
    CHECK((s.rho - rho).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("corrupt snapshots are rejected") {
    TempFile f("bad.bin");
    {
        std::ofstream out(f.path, std::ios::binary);
        out << "not a snapshot";
    }
    CHECK_THROWS_AS(load_state(f.path), IoError);
    CHECK_THROWS_AS(load_state("/nonexistent/path.bin"), IoError);
}

TEST_CASE("embedding into a larger truncation preserves the state content") {
    FockConfig small{3, 4}, big{4, 6};
    Matrix rho = Matrix::Zero(small.dim(), small.dim());
    rho(5, 5) = 0.5;
    rho(5, 2) = std::complex<double>(0.1, -0.2);
    rho(2, 5) = std::conj(rho(5, 2));
    rho(0, 0) = 0.5;
    Matrix out = embed_state(rho, small, big);
    CHECK(out.rows() == big.dim());
    CHECK(std::abs(out.trace() - rho.trace()) < 1e-15);
    // index (ic, im) = (1, 1) -> 5 in small, 1*6+1 = 7 in big
    CHECK(out(7, 7) == rho(5, 5));
    CHECK(out(7, 2) == rho(5, 2));
    Matrix small_mech = partial_trace_mech(rho, small);
    Matrix big_mech = partial_trace_mech(out, big);
    CHECK((big_mech.topLeftCorner(4, 4) - small_mech).cwiseAbs().maxCoeff() < 1e-15);
    CHECK_THROWS_AS(embed_state(rho, small, FockConfig{2, 4}), QuantumError);
}

TEST_CASE("classical scan dispatches identically across thread counts") {
    SystemParams p;
    p.g0 = 0.3;
    p.gamma_c = 0.3;
    p.gamma_m = 0.015;
    p.A_L = 0.4;
    DriveSpec d{DriveKind::Mechanical, 0.01, 1.0};
    AdlerBuildOptions abo;
    AdlerModel m = build_adler_model(p, d, abo);
    ClassicalScanOptions opt;
    opt.t_run = 300.0 * kTwoPi;
    auto omegas = linspace(0.99, 1.01, 3);
    SweepOptions s1{1, false}, s4{4, false};
    auto a = classical_frequency_scan(p, d, omegas, m, opt, s1);
    auto b = classical_frequency_scan(p, d, omegas, m, opt, s4);
    REQUIRE(a.size() == b.size());
    for (size_t k = 0; k < a.size(); ++k) {
        CHECK(a[k].dphi_dot == b[k].dphi_dot);
        CHECK(a[k].mean_sin == b[k].mean_sin);
        CHECK(a[k].status == b[k].status);
    }
}
