// io.hpp — CSV output, run manifests, and binary density-matrix snapshots.
// CSV uses 12 significant digits and LF line endings. Snapshots are a
// length-prefixed JSON header followed by little-endian float64 pairs
// (re, im) in column-major order.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omsync/params.hpp"
#include "omsync/quantum.hpp"

namespace omsync {

struct IoError : std::runtime_error {
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(12) << v;
    return os.str();
}

class CsvWriter {
public:
    CsvWriter(const std::string& path, const std::vector<std::string>& columns)
        : path_(path), ncols_(columns.size()), out_(path, std::ios::binary) {
        if (!out_) throw IoError("cannot open " + path + " for writing");
        for (size_t i = 0; i < columns.size(); ++i)
            out_ << (i ? "," : "") << columns[i];
        out_ << "\n";
    }

    void row(const std::vector<double>& values) {
        if (values.size() != ncols_)
            throw IoError("csv row width mismatch in " + path_);
        for (size_t i = 0; i < values.size(); ++i)
            out_ << (i ? "," : "") << format_double(values[i]);
        out_ << "\n";
    }

    // mixed row: preformatted cells (for status strings etc.)
    void raw_row(const std::vector<std::string>& cells) {
        if (cells.size() != ncols_)
            throw IoError("csv row width mismatch in " + path_);
        for (size_t i = 0; i < cells.size(); ++i)
            out_ << (i ? "," : "") << cells[i];
        out_ << "\n";
    }

    void close() {
        out_.flush();
        if (!out_) throw IoError("write failure on " + path_);
        out_.close();
    }

private:
    std::string path_;
    size_t ncols_;
    std::ofstream out_;
};

inline void write_csv(const std::string& path, const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
    CsvWriter w(path, columns);
    for (const auto& r : rows) w.row(r);
    w.close();
}

// Run manifest: resolved config plus invocation metadata, one JSON file
// per output set.
inline void write_manifest(const std::string& path, const Config& cfg,
                           const std::string& command,
                           const nlohmann::json& extra = nlohmann::json::object()) {
    nlohmann::json j;
    j["command"] = command;
    nlohmann::json c;
    ConfigMap m = serialize(cfg);
    for (const auto& k : m.keys()) c[k] = m.raw(k);
    j["config"] = c;
    for (const auto& [k, v] : extra.items()) j[k] = v;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
    if (!out) throw IoError("write failure on " + path);
}

// ---------------------------------------------------------------------------
// Binary snapshots
// ---------------------------------------------------------------------------

inline void save_state(const std::string& path, const Matrix& rho, const FockConfig& cfg,
                       double t) {
    nlohmann::json h;
    h["format"] = "omsync-state-v1";
    h["n_cav"] = cfg.n_cav;
    h["n_mech"] = cfg.n_mech;
    h["dim"] = static_cast<int>(rho.rows());
    h["t"] = t;
    std::string header = h.dump();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path + " for writing");
    std::uint32_t len = static_cast<std::uint32_t>(header.size());
    out.write(reinterpret_cast<const char*>(&len), 4);
    out.write(header.data(), header.size());
    std::vector<double> buf(2 * rho.size());
    const std::complex<double>* d = rho.data();
    for (Eigen::Index k = 0; k < rho.size(); ++k) {
        buf[2 * k] = d[k].real();
        buf[2 * k + 1] = d[k].imag();
    }
    out.write(reinterpret_cast<const char*>(buf.data()), buf.size() * sizeof(double));
    if (!out) throw IoError("write failure on " + path);
}

struct StateSnapshot {
    Matrix rho;
    FockConfig cfg;
    double t = 0.0;
};

inline StateSnapshot load_state(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::uint32_t len = 0;
    in.read(reinterpret_cast<char*>(&len), 4);
    if (!in || len == 0 || len > (1u << 20)) throw IoError("bad snapshot header in " + path);
    std::string header(len, '\0');
    in.read(header.data(), len);
    nlohmann::json h = nlohmann::json::parse(header, nullptr, false);
    if (h.is_discarded() || h.value("format", "") != "omsync-state-v1")
        throw IoError("unrecognized snapshot format in " + path);
    StateSnapshot s;
    s.cfg.n_cav = h.at("n_cav").get<int>();
    s.cfg.n_mech = h.at("n_mech").get<int>();
    s.t = h.at("t").get<double>();
    int dim = h.at("dim").get<int>();
    if (dim != s.cfg.dim()) throw IoError("snapshot dimension mismatch in " + path);
    s.rho.resize(dim, dim);
    std::vector<double> buf(2 * static_cast<size_t>(dim) * dim);
    in.read(reinterpret_cast<char*>(buf.data()), buf.size() * sizeof(double));
    if (!in) throw IoError("truncated snapshot payload in " + path);
    std::complex<double>* d = s.rho.data();
    for (size_t k = 0; k < buf.size() / 2; ++k)
        d[k] = std::complex<double>(buf[2 * k], buf[2 * k + 1]);
    return s;
}

// Embed a state into a larger truncation (extra levels zero-filled);
// used to warm-start runs at doubled dimensions.
inline Matrix embed_state(const Matrix& rho, const FockConfig& from, const FockConfig& to) {
    if (to.n_cav < from.n_cav || to.n_mech < from.n_mech)
        throw QuantumError("embed_state: target truncation is smaller than source");
    Matrix out = Matrix::Zero(to.dim(), to.dim());
    for (int ic = 0; ic < from.n_cav; ++ic)
        for (int jc = 0; jc < from.n_cav; ++jc)
            out.block(ic * to.n_mech, jc * to.n_mech, from.n_mech, from.n_mech) =
                rho.block(ic * from.n_mech, jc * from.n_mech, from.n_mech, from.n_mech);
    return out;
}

}  // namespace omsync
