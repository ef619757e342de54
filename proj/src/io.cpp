#include "symtfa/io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

#include "symtfa/errors.hpp"

namespace symtfa::io {

namespace fs = std::filesystem;

namespace {

Rational entry_value(const json& e) {
    if (e.is_string()) return parse_rational(e.get<std::string>());
    if (e.is_number_integer()) return Rational(e.get<long>());
    if (e.is_number_float()) {
        // Decimal text of the JSON number, not its binary approximation.
        return parse_rational(e.dump());
    }
    throw ConfigError("matrix entries must be strings or numbers");
}

std::string format_g(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

cplx complex_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("complex values are [re, im] pairs");
    return {j[0].get<double>(), j[1].get<double>()};
}

void put_le(std::string& out, const void* p, size_t n) {
    const char* c = static_cast<const char*>(p);
    if constexpr (std::endian::native == std::endian::little) {
        out.append(c, n);
    } else {
        for (size_t i = n; i-- > 0;) out.push_back(c[i]);
    }
}

void get_le(const std::string& in, size_t off, void* p, size_t n) {
    if (off + n > in.size()) throw ConfigError("binary array truncated");
    char* c = static_cast<char*>(p);
    if constexpr (std::endian::native == std::endian::little) {
        std::memcpy(c, in.data() + off, n);
    } else {
        for (size_t i = 0; i < n; ++i) c[i] = in[off + n - 1 - i];
    }
}

fs::path temp_sibling(const fs::path& path) {
    fs::path t = path;
    t += ".tmp";
    return t;
}

void write_file(const fs::path& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.close();
    if (!out) throw ConfigError("failed writing " + path.string());
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

RationalMatrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("matrix file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "d" && it.key() != "entries") throw ConfigError("unknown matrix field '" + it.key() + "'");
    if (!j.contains("d") || !j["d"].is_number_integer()) throw ConfigError("matrix needs integer field 'd'");
    if (!j.contains("entries") || !j["entries"].is_array()) throw ConfigError("matrix needs array field 'entries'");
    const long d = j["d"].get<long>();
    if (d < 1 || d > 64) throw ConfigError("matrix half-dimension 'd' out of range");
    const size_t size = static_cast<size_t>(2 * d);
    if (j["entries"].size() != size * size)
        throw ConfigError("matrix with d = " + std::to_string(d) + " needs " + std::to_string(size * size) +
                          " entries");
    std::vector<Rational> v;
    v.reserve(size * size);
    try {
        for (const auto& e : j["entries"]) v.push_back(entry_value(e));
    } catch (const ParameterError& e) {
        throw ConfigError(e.what());
    }
    return RationalMatrix(static_cast<int>(size), static_cast<int>(size), std::move(v));
}

json matrix_to_json(const RationalMatrix& m) {
    json entries = json::array();
    for (const auto& e : m.entries()) entries.push_back(format_rational(e));
    return {{"d", m.rows() / 2}, {"entries", entries}};
}

RationalMatrix read_matrix_file(const fs::path& path) {
    json j;
    try {
        j = json::parse(read_file(path));
    } catch (const json::parse_error& e) {
        throw ConfigError("malformed matrix JSON in " + path.string() + ": " + e.what());
    }
    return matrix_from_json(j);
}

GaussianState gaussian_from_json(const json& j) {
    if (!j.is_object()) throw ConfigError("Gaussian state must be a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "c" && it.key() != "M" && it.key() != "b")
            throw ConfigError("unknown Gaussian field '" + it.key() + "'");
    if (!j.contains("M") || !j["M"].is_array() || j["M"].empty()) throw ConfigError("Gaussian needs 'M'");
    const auto n = static_cast<Eigen::Index>(j["M"].size());
    Eigen::MatrixXcd M(n, n);
    for (Eigen::Index r = 0; r < n; ++r) {
        const json& row = j["M"][r];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) throw ConfigError("'M' must be square");
        for (Eigen::Index c = 0; c < n; ++c) M(r, c) = complex_from_json(row[c]);
    }
    Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n);
    if (j.contains("b")) {
        if (!j["b"].is_array() || static_cast<Eigen::Index>(j["b"].size()) != n)
            throw ConfigError("'b' must match the size of 'M'");
        for (Eigen::Index i = 0; i < n; ++i) b(i) = complex_from_json(j["b"][i]);
    }
    cplx c = j.contains("c") ? complex_from_json(j["c"]) : cplx(1.0, 0.0);
    return GaussianState(c, M, b);
}

json gaussian_to_json(const GaussianState& s) {
    json M = json::array();
    for (Eigen::Index r = 0; r < s.M().rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < s.M().cols(); ++c) row.push_back(complex_number(s.M()(r, c)));
        M.push_back(row);
    }
    json b = json::array();
    for (Eigen::Index i = 0; i < s.b().size(); ++i) b.push_back(complex_number(s.b()(i)));
    return {{"c", complex_number(s.c())}, {"M", M}, {"b", b}};
}

double round12(double v) {
    if (!std::isfinite(v) || v == 0.0) return v == 0.0 ? 0.0 : v;
    return std::stod(format_g(v, 12));
}

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return round12(v);
}

json complex_number(cplx v) { return json::array({number(v.real()), number(v.imag())}); }

json matrix_numbers(const Eigen::MatrixXd& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(number(m(r, c)));
        out.push_back(row);
    }
    return out;
}

std::string render_json(const json& report) { return report.dump(2) + "\n"; }

std::string render_table(const json& report) {
    size_t width = 0;
    for (auto it = report.begin(); it != report.end(); ++it) width = std::max(width, it.key().size());
    std::ostringstream os;
    for (auto it = report.begin(); it != report.end(); ++it) {
        const json& v = it.value();
        std::string text = v.is_string() ? v.get<std::string>() : v.dump();
        os << it.key() << std::string(width - it.key().size() + 2, ' ') << text << "\n";
    }
    return os.str();
}

ArrayFormat parse_format(const std::string& s) {
    if (s == "csv") return ArrayFormat::Csv;
    if (s == "bin") return ArrayFormat::Binary;
    throw ConfigError("format must be 'csv' or 'bin', got '" + s + "'");
}

void write_atomic(const fs::path& path, const std::string& bytes) {
    fs::path tmp = temp_sibling(path);
    try {
        write_file(tmp, bytes);
        fs::rename(tmp, path);
    } catch (...) {
        std::error_code ec;
        fs::remove(tmp, ec);
        throw;
    }
}

std::string grid_csv(const PhaseSpaceGrid& w) {
    std::string out = "x,xi,re,im\n";
    out.reserve(out.size() + w.values.size() * 80);
    char buf[160];
    for (int m = 0; m < w.n(); ++m)
        for (int k = 0; k < w.n(); ++k) {
            cplx v = w(m, k);
            std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", w.x(m), w.xi(k), v.real(), v.imag());
            out += buf;
        }
    return out;
}

std::string grid_binary(const PhaseSpaceGrid& w) {
    std::string out = "ATFA";
    out.reserve(8 + w.values.size() * 16);
    std::uint32_t version = kBinaryVersion;
    put_le(out, &version, sizeof version);
    for (const cplx& v : w.values) {
        double re = v.real(), im = v.imag();
        put_le(out, &re, sizeof re);
        put_le(out, &im, sizeof im);
    }
    return out;
}

json grid_sidecar(const PhaseSpaceGrid& w) {
    return {{"N", w.n()},
            {"dx", w.grid.dx},
            {"dxi", w.grid.dxi()},
            {"layout", "row-major-x-major"},
            {"version", kBinaryVersion}};
}

void commit(const std::vector<PendingFile>& files) {
    std::vector<fs::path> staged, done;
    try {
        for (const auto& f : files) {
            staged.push_back(temp_sibling(f.path));
            write_file(staged.back(), f.bytes);
        }
        for (size_t i = 0; i < files.size(); ++i) {
            fs::rename(staged[i], files[i].path);
            done.push_back(files[i].path);
        }
    } catch (...) {
        std::error_code ec;
        for (const auto& p : staged) fs::remove(p, ec);
        for (const auto& p : done) fs::remove(p, ec);
        throw;
    }
}

std::vector<PendingFile> grid_files(const PhaseSpaceGrid& w, const fs::path& path, ArrayFormat format) {
    if (format == ArrayFormat::Csv) return {{path, grid_csv(w)}};
    fs::path side = path;
    side += ".json";
    return {{path, grid_binary(w)}, {side, grid_sidecar(w).dump(2) + "\n"}};
}

std::vector<fs::path> export_grid(const PhaseSpaceGrid& w, const fs::path& path, ArrayFormat format) {
    auto files = grid_files(w, path, format);
    commit(files);
    std::vector<fs::path> out;
    for (const auto& f : files) out.push_back(f.path);
    return out;
}

PhaseSpaceGrid read_grid_binary(const fs::path& path) {
    fs::path side = path;
    side += ".json";
    json meta;
    try {
        meta = json::parse(read_file(side));
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed sidecar: ") + e.what());
    }
    std::string bytes = read_file(path);
    if (bytes.size() < 8 || bytes.compare(0, 4, "ATFA") != 0) throw ConfigError("missing ATFA magic");
    std::uint32_t version = 0;
    get_le(bytes, 4, &version, sizeof version);
    if (version != kBinaryVersion) throw ConfigError("unsupported binary version");
    PhaseSpaceGrid w(Grid1D(meta.at("N").get<int>(), meta.at("dx").get<double>()));
    size_t off = 8;
    for (auto& v : w.values) {
        double re = 0, im = 0;
        get_le(bytes, off, &re, sizeof re);
        get_le(bytes, off + 8, &im, sizeof im);
        v = {re, im};
        off += 16;
    }
    if (off != bytes.size()) throw ConfigError("binary array has trailing bytes");
    return w;
}

}  // namespace symtfa::io
