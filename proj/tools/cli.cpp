#include "symtfa/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>

#include "symtfa/errors.hpp"
#include "symtfa/io.hpp"
#include "symtfa/norms.hpp"
#include "symtfa/schrodinger.hpp"
#include "symtfa/signals.hpp"
#include "symtfa/tfa.hpp"

namespace symtfa::cli {

namespace fs = std::filesystem;
using io::ConfigError;
using nlohmann::json;

namespace {

constexpr double kPi = 3.14159265358979323846;

const std::vector<std::string> kCommands{"classify", "wigner",  "stft",  "tauwigner", "awigner",  "cohen-kernel",
                                         "modnorm",  "equiv",   "moyal", "propagate", "fpcheck"};

void only_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError("'" + where + "' must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (std::none_of(allowed.begin(), allowed.end(), [&](const char* k) { return it.key() == k; }))
            throw ConfigError("unknown field '" + (where.empty() ? "" : where + ".") + it.key() + "'");
}

std::string get_string(const json& j, const std::string& name) {
    if (!j.is_string()) throw ConfigError("'" + name + "' must be a string");
    return j.get<std::string>();
}

double get_number(const json& j, const std::string& name) {
    if (!j.is_number()) throw ConfigError("'" + name + "' must be a number");
    return j.get<double>();
}

int get_int(const json& j, const std::string& name) {
    if (!j.is_number_integer()) throw ConfigError("'" + name + "' must be an integer");
    return j.get<int>();
}

double parse_exponent(const std::string& text, const std::string& name) {
    if (text == "inf" || text == "infinity") return kInf;
    try {
        size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("'" + name + "' must be a number or \"inf\", got '" + text + "'");
    }
}

double exponent_field(const json& j, const std::string& name) {
    if (j.is_string()) return parse_exponent(j.get<std::string>(), name);
    return get_number(j, name);
}

void read_signal(const json& j, const std::string& name, std::string& desc, json& state) {
    if (j.is_string()) {
        desc = j.get<std::string>();
        state = nullptr;
    } else if (j.is_object()) {
        state = j;
        desc = "state";
    } else {
        throw ConfigError("signal '" + name + "' must be a descriptor string or a Gaussian object");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    size_t start = 0;
    for (;;) {
        size_t pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string::npos) return parts;
        start = pos + 1;
    }
}

double desc_number(const std::string& s, const std::string& desc) {
    try {
        return parse_rational(s).get_d();
    } catch (const std::exception&) {
        throw ConfigError("bad number '" + s + "' in signal descriptor '" + desc + "'");
    }
}

// "gaussian", "gaussian:x0:w0:a", "chirp:c", "hermite:k", "zero".
std::optional<GaussianState> descriptor_state(const std::string& desc, const json& state) {
    if (!state.is_null()) {
        GaussianState s = io::gaussian_from_json(state);
        if (s.n() != 1) throw DimensionError("signals live on the real line; Gaussian state must have n = 1");
        return s;
    }
    auto parts = split(desc, ':');
    const std::string& kind = parts[0];
    if (kind == "gaussian") {
        if (parts.size() == 1) return GaussianState::unit(1);
        if (parts.size() != 4) throw ConfigError("expected gaussian:x0:w0:a, got '" + desc + "'");
        double x0 = desc_number(parts[1], desc), w0 = desc_number(parts[2], desc), a = desc_number(parts[3], desc);
        if (!(a > 0)) throw ParameterError("Gaussian width parameter a must be positive");
        cplx c = std::pow(2 * a, 0.25) * std::exp(-kPi * a * x0 * x0);
        return GaussianState(c, Eigen::MatrixXcd::Constant(1, 1, a), Eigen::VectorXcd::Constant(1, cplx(a * x0, w0)));
    }
    if (kind == "chirp") {
        if (parts.size() != 2) throw ConfigError("expected chirp:c, got '" + desc + "'");
        double c = desc_number(parts[1], desc);
        return GaussianState(std::pow(2.0, 0.25), Eigen::MatrixXcd::Constant(1, 1, cplx(1.0, -c)),
                             Eigen::VectorXcd::Zero(1));
    }
    if (kind == "hermite" || kind == "zero") return std::nullopt;
    throw ConfigError("unknown signal descriptor '" + desc + "'");
}

GridSignal make_signal(const std::string& desc, const json& state, const Grid1D& grid) {
    if (auto s = descriptor_state(desc, state)) {
        GridSignal out = gaussian_signal(grid, *s);
        return out;
    }
    auto parts = split(desc, ':');
    if (parts[0] == "zero") return GridSignal::zero(grid);
    if (parts.size() != 2) throw ConfigError("expected hermite:k, got '" + desc + "'");
    int k = 0;
    try {
        k = std::stoi(parts[1]);
    } catch (const std::exception&) {
        throw ConfigError("bad Hermite index in '" + desc + "'");
    }
    if (k < 0 || k > 60) throw ParameterError("Hermite index must lie in 0..60");
    return hermite_signal(grid, k);
}

GaussianState require_gaussian(const std::string& desc, const json& state) {
    auto s = descriptor_state(desc, state);
    if (!s) throw UnsupportedError("this command needs a Gaussian datum, got '" + desc + "'");
    return *s;
}

SymplecticMatrix parse_matrix(const std::string& desc) {
    if (desc.rfind("tau:", 0) == 0) {
        try {
            return tau_matrix(parse_rational(desc.substr(4)));
        } catch (const ParameterError&) {
            throw ConfigError("bad tau value in '" + desc + "'");
        }
    }
    if (desc == "stft") return stft_matrix();
    if (desc == "ft2") return ft2_matrix();
    if (!fs::exists(desc)) throw ConfigError("matrix '" + desc + "' is neither tau:<r>, stft, ft2 nor a file");
    RationalMatrix m = io::read_matrix_file(desc);
    if (!is_symplectic(m)) throw NotSymplecticError("not symplectic: A^T J A != J for " + desc);
    return SymplecticMatrix::certify(m);
}

CovariantForm require_covariant(const SymplecticMatrix& a) {
    if (a.size() % 4 != 0) throw DimensionError("covariance needs a matrix of size 4d");
    auto cls = classify_covariant(a);
    if (auto* rej = std::get_if<CovariantRejection>(&cls)) throw PreconditionError("not covariant: " + rej->message());
    return std::get<CovariantForm>(cls);
}

CovariantForm resolve_covariant(const RunConfig& cfg) {
    const json& r = cfg.representation;
    if (r.is_null()) return require_covariant(parse_matrix(cfg.matrix));
    auto scalar = [](const json& v, const std::string& name) {
        if (v.is_string()) return parse_rational(v.get<std::string>());
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_number()) return parse_rational(v.dump());
        throw ConfigError("'" + name + "' must be a number or rational string");
    };
    if (r.contains("tau")) return tau_form(scalar(r["tau"], "representation.tau"));
    auto entry = [&](const char* k) {
        return RationalMatrix(1, 1, {r.contains(k) ? scalar(r[k], std::string("representation.") + k) : Rational(0)});
    };
    return CovariantForm(entry("A11"), entry("A13"), entry("A21"));
}

QuadraticHamiltonian make_hamiltonian(const json& h) {
    if (h.is_string()) {
        if (h.get<std::string>() == "free") return QuadraticHamiltonian::free_particle();
        if (h.get<std::string>() == "harmonic") return QuadraticHamiltonian::harmonic();
        throw ConfigError("hamiltonian must be \"free\", \"harmonic\" or {A, B, C}");
    }
    auto v = [&](const char* k) {
        return Eigen::MatrixXd::Constant(1, 1, h.contains(k) ? get_number(h[k], std::string("hamiltonian.") + k) : 0.0);
    };
    return QuadraticHamiltonian(v("A"), v("B"), v("C"));
}

json exact_matrix(const RationalMatrix& m) {
    json out = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(format_rational(m(r, c)));
        out.push_back(row);
    }
    return out;
}

json spec_json(const MixedNormSpec& s) {
    return {{"p", io::number(s.p)}, {"q", io::number(s.q)}, {"s", io::number(s.s)}};
}

json grid_json(const Grid1D& g) { return {{"N", g.n}, {"dx", io::number(g.dx)}, {"dxi", io::number(g.dxi())}}; }

struct Outcome {
    json report;
    std::vector<io::PendingFile> files;
};

Outcome classify(const RunConfig& cfg) {
    SymplecticMatrix a = parse_matrix(cfg.matrix);
    json r{{"command", "classify"}, {"matrix", cfg.matrix}, {"size", a.size()}, {"symplectic", true}};
    r["factorization"] = json::array();
    for (const auto& gen : factorize(a).factors) r["factorization"].push_back(gen.describe());
    if (a.size() % 4 != 0) {
        r["covariant"] = false;
        r["violations"] = json::array({"size is not a multiple of 4"});
        r["shift_invertible"] = false;
        return {r, {}};
    }
    ShiftMatrixE e = matrix_E(a);
    r["shift_invertible"] = e.invertible;
    r["E_A"] = io::matrix_numbers(e.e.to_double());
    r["E_A_exact"] = exact_matrix(e.e);
    r["det_E_A"] = format_rational(e.e.determinant());
    if (auto L = f2_dilation_factor(a)) {
        r["f2_family"] = true;
        r["L"] = exact_matrix(*L);
    } else {
        r["f2_family"] = false;
    }
    auto cls = classify_covariant(a);
    if (auto* rej = std::get_if<CovariantRejection>(&cls)) {
        r["covariant"] = false;
        r["violations"] = json::array();
        for (const auto& v : rej->violations) r["violations"].push_back(v.constraint);
        return {r, {}};
    }
    const CovariantForm& c = std::get<CovariantForm>(cls);
    r["covariant"] = true;
    r["A11"] = exact_matrix(c.a11());
    r["A13"] = exact_matrix(c.a13());
    r["A21"] = exact_matrix(c.a21());
    RationalMatrix b = matrix_B(c).b;
    r["B_A"] = io::matrix_numbers(b.to_double());
    r["B_A_exact"] = exact_matrix(b);
    r["EB_identity"] = check_EB_identity(c);
    r["conserv_condition"] = conserv_condition(c);
    return {r, {}};
}

Outcome grid_command(const RunConfig& cfg, const Grid1D& grid) {
    if (cfg.out.empty()) throw ConfigError("command '" + cfg.command + "' needs an output path (--out)");
    io::ArrayFormat format = io::parse_format(cfg.format);
    PhaseSpaceGrid w;
    json r{{"command", cfg.command}, {"grid", grid_json(grid)}};
    if (cfg.command == "cohen-kernel") {
        KernelSampling mode;
        if (cfg.kernel == "bandlimited") mode = KernelSampling::BandLimited;
        else if (cfg.kernel == "closed") mode = KernelSampling::ClosedForm;
        else throw ConfigError("kernel must be 'bandlimited' or 'closed'");
        CovariantForm c = resolve_covariant(cfg);
        w = cohen_kernel(c, grid, mode);
        r["kernel"] = cfg.kernel;
        r["matrix"] = cfg.matrix;
    } else {
        GridSignal f = make_signal(cfg.f, cfg.f_state, grid), g = make_signal(cfg.g, cfg.g_state, grid);
        r["f"] = cfg.f;
        r["g"] = cfg.g;
        if (cfg.command == "wigner") {
            w = wigner(f, g);
        } else if (cfg.command == "stft") {
            w = stft(f, g);
        } else if (cfg.command == "tauwigner") {
            if (!cfg.tau) throw ConfigError("tauwigner needs a tau value (--tau)");
            w = tau_wigner(f, g, *cfg.tau);
            r["tau"] = io::number(*cfg.tau);
        } else {
            w = awigner_grid(parse_matrix(cfg.matrix), f, g);
            r["matrix"] = cfg.matrix;
        }
    }
    int bm = 0, bk = 0;
    for (int m = 0; m < w.n(); ++m)
        for (int k = 0; k < w.n(); ++k)
            if (std::abs(w(m, k)) > std::abs(w(bm, bk))) bm = m, bk = k;
    r["max_modulus"] = io::number(std::abs(w(bm, bk)));
    r["argmax"] = json::array({io::number(w.x(bm)), io::number(w.xi(bk))});
    r["origin_value"] = io::complex_number(w(grid.n / 2, grid.n / 2));
    r["warnings"] = w.warnings;
    Outcome o{r, io::grid_files(w, cfg.out, format)};
    json outputs = json::array();
    for (const auto& f : o.files) outputs.push_back(f.path.string());
    o.report["outputs"] = outputs;
    o.report["format"] = cfg.format;
    return o;
}

Outcome modnorm(const RunConfig& cfg, const Grid1D& grid) {
    MixedNormSpec spec(cfg.p, cfg.q, cfg.s);
    GridSignal f = make_signal(cfg.f, cfg.f_state, grid), g = make_signal(cfg.g, cfg.g_state, grid);
    json r{{"command", "modnorm"}, {"grid", grid_json(grid)}, {"spec", spec_json(spec)}, {"f", cfg.f}, {"g", cfg.g}};
    r["mod_norm"] = io::number(mod_norm(f, g, spec));
    r["l2_norm"] = io::number(f.l2_norm());
    return {r, {}};
}

Outcome equiv(const RunConfig& cfg, const Grid1D& grid) {
    MixedNormSpec spec(cfg.p, cfg.q, cfg.s);
    GridSignal base = make_signal(cfg.f, cfg.f_state, grid), g = make_signal(cfg.g, cfg.g_state, grid);
    std::vector<TFShift> offsets;
    std::string fam;
    if (!cfg.offsets.empty()) {
        for (auto [a, b] : cfg.offsets) offsets.push_back({a, b});
        fam = "pi(w) " + cfg.f + ", listed offsets";
    } else {
        if (cfg.radius < 0 || cfg.radius > 8) throw ParameterError("family radius must lie in 0..8");
        offsets = square_lattice(cfg.radius);
        fam = "pi(w) " + cfg.f + ", w in {-" + std::to_string(cfg.radius) + ".." + std::to_string(cfg.radius) + "}^2";
    }
    SymplecticMatrix a = parse_matrix(cfg.matrix);
    EquivalenceReport rep = equivalence_ratio(a, shifted_family(base, offsets, fam), g, spec);
    auto list = [](const std::vector<double>& v) {
        json out = json::array();
        for (double x : v) out.push_back(io::number(x));
        return out;
    };
    json r{{"command", "equiv"}, {"grid", grid_json(grid)}, {"matrix", cfg.matrix}, {"spec", spec_json(spec)},
           {"family", rep.family}, {"window", cfg.g}};
    json offs = json::array();
    for (const auto& w : offsets) offs.push_back(json::array({io::number(w.z1), io::number(w.z2)}));
    r["offsets"] = offs;
    r["numerators"] = list(rep.numerators);
    r["denominators"] = list(rep.denominators);
    r["ratios"] = list(rep.ratios);
    r["min"] = io::number(rep.min);
    r["max"] = io::number(rep.max);
    r["ratio"] = io::number(rep.ratio);
    return {r, {}};
}

Outcome moyal(const RunConfig& cfg, const Grid1D& grid) {
    SymplecticMatrix a = parse_matrix(cfg.matrix);
    std::string f2d = cfg.f2.empty() ? cfg.f : cfg.f2, g2d = cfg.g2.empty() ? cfg.g : cfg.g2;
    GridSignal f1 = make_signal(cfg.f, cfg.f_state, grid), g1 = make_signal(cfg.g, cfg.g_state, grid);
    GridSignal f2 = make_signal(f2d, cfg.f2.empty() ? cfg.f_state : json(), grid);
    GridSignal g2 = make_signal(g2d, cfg.g2.empty() ? cfg.g_state : json(), grid);
    cplx lhs = moyal_pairing(awigner_grid(a, f1, g1), awigner_grid(a, f2, g2));
    cplx rhs = inner(f1, f2) * std::conj(inner(g1, g2));
    json r{{"command", "moyal"}, {"grid", grid_json(grid)}, {"matrix", cfg.matrix},
           {"signals", json::array({cfg.f, cfg.g, f2d, g2d})}};
    r["pairing"] = io::complex_number(lhs);
    r["expected"] = io::complex_number(rhs);
    r["error"] = io::number(std::abs(lhs - rhs));
    return {r, {}};
}

Outcome propagate(const RunConfig& cfg, const Grid1D& grid) {
    CovariantForm c = resolve_covariant(cfg);
    QuadraticHamiltonian h = make_hamiltonian(cfg.hamiltonian);
    auto state = descriptor_state(cfg.f, cfg.f_state);
    json r{{"command", "propagate"}, {"grid", grid_json(grid)}, {"u0", cfg.f}, {"hamiltonian", cfg.hamiltonian}};
    r["A11"] = exact_matrix(c.a11());
    json ts = json::array(), res = json::array();
    std::string csv = "t,residual\n";
    char buf[96];
    for (double t : cfg.t) {
        PropagationResult p = state ? propagate_awigner(c, *state, grid, h, t)
                                    : propagate_awigner(c, make_signal(cfg.f, cfg.f_state, grid), h, t);
        ts.push_back(io::number(t));
        res.push_back(io::number(p.residual));
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", t, p.residual);
        csv += buf;
    }
    r["t"] = ts;
    r["residuals"] = res;
    Outcome o{r, {}};
    if (!cfg.out.empty()) {
        o.files.push_back({cfg.out, csv});
        o.report["outputs"] = json::array({cfg.out});
    }
    return o;
}

Outcome fpcheck(const RunConfig& cfg, const Grid1D& grid) {
    GaussianState u0 = require_gaussian(cfg.f, cfg.f_state);
    auto fp = QuadraticHamiltonian::free_particle();
    GaussianState w0 = awigner_gaussian(tau_matrix(Rational(1, 2)), u0, u0);
    GridSignal s0 = gaussian_signal(grid, u0);
    json rows = json::array();
    bool pass = true;
    for (double t : cfg.t) {
        GridSignal sampled = free_particle_solve(GridSignal::from_samples(grid, s0.samples()), t);
        double drift = std::abs(sampled.l2_norm() - s0.l2_norm());
        GridSignal ut = free_particle_solve(u0, grid, t);
        PhaseSpaceGrid w = wigner(ut, ut);
        // The closed-form Wigner carries the metaplectic unimodular constant; align it once.
        PhaseSpaceGrid sheared(grid);
        for (int m = 0; m < grid.n; ++m)
            for (int k = 0; k < grid.n; ++k) sheared(m, k) = w0(w.x(m) - 4 * kPi * t * w.xi(k), w.xi(k));
        cplx phase = best_phase(w.values, sheared.values);
        double transport = 0.0;
        for (size_t i = 0; i < w.values.size(); ++i)
            transport = std::max(transport, std::abs(w.values[i] - phase * sheared.values[i]));
        double chirp = propagate_awigner(tau_form(Rational(3, 10)), u0, grid, fp, t).residual;
        bool ok = drift <= 1e-10 && transport <= 1e-5 && chirp <= 1e-3;
        pass = pass && ok;
        rows.push_back({{"t", io::number(t)},
                        {"l2_drift", io::number(drift)},
                        {"wigner_transport_error", io::number(transport)},
                        {"tau_0.3_residual", io::number(chirp)},
                        {"pass", ok}});
    }
    json r{{"command", "fpcheck"}, {"grid", grid_json(grid)}, {"u0", cfg.f}, {"rows", rows}, {"pass", pass}};
    r["thresholds"] = {{"l2_drift", 1e-10}, {"wigner_transport_error", 1e-5}, {"tau_0.3_residual", 1e-3}};
    return {r, {}};
}

}  // namespace

RunConfig config_from_json(const json& j) {
    only_keys(j, "", {"command", "matrix", "signals", "u0", "grid", "norm", "tau", "t", "family", "kernel",
                      "hamiltonian", "representation", "output"});
    RunConfig c;
    if (j.contains("command")) c.command = get_string(j["command"], "command");
    if (j.contains("matrix")) c.matrix = get_string(j["matrix"], "matrix");
    if (j.contains("signals")) {
        const json& s = j["signals"];
        only_keys(s, "signals", {"f", "g", "f2", "g2"});
        if (s.contains("f")) read_signal(s["f"], "f", c.f, c.f_state);
        if (s.contains("g")) read_signal(s["g"], "g", c.g, c.g_state);
        if (s.contains("f2")) c.f2 = get_string(s["f2"], "signals.f2");
        if (s.contains("g2")) c.g2 = get_string(s["g2"], "signals.g2");
    }
    if (j.contains("u0")) read_signal(j["u0"], "u0", c.f, c.f_state);
    if (j.contains("grid")) {
        only_keys(j["grid"], "grid", {"N", "dx"});
        if (j["grid"].contains("N")) c.grid_n = get_int(j["grid"]["N"], "grid.N");
        if (j["grid"].contains("dx")) c.grid_dx = get_number(j["grid"]["dx"], "grid.dx");
    }
    if (j.contains("norm")) {
        only_keys(j["norm"], "norm", {"p", "q", "s"});
        if (j["norm"].contains("p")) c.p = exponent_field(j["norm"]["p"], "norm.p");
        if (j["norm"].contains("q")) c.q = exponent_field(j["norm"]["q"], "norm.q");
        if (j["norm"].contains("s")) c.s = get_number(j["norm"]["s"], "norm.s");
    }
    if (j.contains("tau")) c.tau = get_number(j["tau"], "tau");
    if (j.contains("t")) {
        c.t.clear();
        if (j["t"].is_array()) {
            for (const auto& v : j["t"]) c.t.push_back(get_number(v, "t"));
        } else {
            c.t.push_back(get_number(j["t"], "t"));
        }
    }
    if (j.contains("family")) {
        only_keys(j["family"], "family", {"radius", "offsets"});
        if (j["family"].contains("radius")) c.radius = get_int(j["family"]["radius"], "family.radius");
        if (j["family"].contains("offsets")) {
            const json& o = j["family"]["offsets"];
            if (!o.is_array()) throw ConfigError("'family.offsets' must be an array of [z1, z2]");
            for (const auto& w : o) {
                if (!w.is_array() || w.size() != 2) throw ConfigError("'family.offsets' entries are [z1, z2]");
                c.offsets.emplace_back(get_number(w[0], "family.offsets"), get_number(w[1], "family.offsets"));
            }
        }
    }
    if (j.contains("kernel")) c.kernel = get_string(j["kernel"], "kernel");
    if (j.contains("hamiltonian")) {
        const json& h = j["hamiltonian"];
        if (h.is_object()) only_keys(h, "hamiltonian", {"A", "B", "C"});
        else if (!h.is_string()) throw ConfigError("'hamiltonian' must be a name or {A, B, C}");
        c.hamiltonian = h;
    }
    if (j.contains("representation")) {
        only_keys(j["representation"], "representation", {"tau", "A11", "A13", "A21"});
        c.representation = j["representation"];
    }
    if (j.contains("output")) {
        only_keys(j["output"], "output", {"path", "format", "report"});
        if (j["output"].contains("path")) c.out = get_string(j["output"]["path"], "output.path");
        if (j["output"].contains("format")) c.format = get_string(j["output"]["format"], "output.format");
        if (j["output"].contains("report")) c.report = get_string(j["output"]["report"], "output.report");
    }
    return c;
}

int run_config(const RunConfig& cfg, std::ostream& out) {
    if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end())
        throw ConfigError("unknown or missing command '" + cfg.command + "'");
    io::parse_format(cfg.format);
    Outcome o;
    if (cfg.command == "classify") {
        o = classify(cfg);
    } else {
        Grid1D grid;
        try {
            grid = Grid1D(cfg.grid_n, cfg.grid_dx);
        } catch (const ParameterError& e) {
            throw ConfigError(e.what());
        }
        if (cfg.command == "modnorm") o = modnorm(cfg, grid);
        else if (cfg.command == "equiv") o = equiv(cfg, grid);
        else if (cfg.command == "moyal") o = moyal(cfg, grid);
        else if (cfg.command == "propagate") o = propagate(cfg, grid);
        else if (cfg.command == "fpcheck") o = fpcheck(cfg, grid);
        else o = grid_command(cfg, grid);
    }
    // Report-only commands send their JSON to --out; array commands use --report.
    bool report_only = o.files.empty() && cfg.command != "propagate";
    std::string report_path = report_only ? cfg.out : cfg.report;
    if (!report_path.empty()) o.files.push_back({report_path, io::render_json(o.report)});
    io::commit(o.files);
    out << (cfg.json_stdout ? io::render_json(o.report) : io::render_table(o.report));
    return kSuccess;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Symplectic time-frequency analysis toolkit"};
    std::string command, config_path, matrix, f, g, f2, g2, p, q, out_path, format, report, kernel;
    int grid_n = 0, radius = 0;
    double grid_dx = 0, s = 0, tau = 0;
    std::vector<double> times;
    bool json_stdout = false;
    app.add_option("command", command, "classify | wigner | stft | tauwigner | awigner | cohen-kernel | modnorm | "
                                       "equiv | moyal | propagate | fpcheck");
    auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
    auto* o_matrix = app.add_option("--matrix", matrix, "tau:<r> | stft | ft2 | path to a rational matrix JSON");
    auto* o_f = app.add_option("--f", f, "first signal (gaussian, gaussian:x0:w0:a, chirp:c, hermite:k, zero)");
    auto* o_g = app.add_option("--g", g, "second signal or window");
    auto* o_f2 = app.add_option("--f2", f2, "third signal (moyal)");
    auto* o_g2 = app.add_option("--g2", g2, "fourth signal (moyal)");
    auto* o_n = app.add_option("--grid-n", grid_n, "samples per axis (power of two, >= 8)");
    auto* o_dx = app.add_option("--grid-dx", grid_dx, "sample spacing");
    auto* o_p = app.add_option("--p", p, "inner exponent (number or inf)");
    auto* o_q = app.add_option("--q", q, "outer exponent (number or inf)");
    auto* o_s = app.add_option("--s", s, "weight exponent");
    auto* o_tau = app.add_option("--tau", tau, "tau for tauwigner");
    auto* o_t = app.add_option("--t", times, "propagation times");
    auto* o_radius = app.add_option("--radius", radius, "lattice radius of the equivalence family");
    auto* o_kernel = app.add_option("--kernel", kernel, "bandlimited | closed");
    auto* o_out = app.add_option("--out", out_path, "output path");
    auto* o_format = app.add_option("--format", format, "csv | bin");
    auto* o_report = app.add_option("--report", report, "JSON report path for array commands");
    app.add_flag("--json", json_stdout, "print the JSON report instead of the table");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kConfigError;
    }

    try {
        RunConfig cfg;
        if (o_config->count()) {
            json j;
            try {
                std::ifstream in(config_path);
                if (!in) throw ConfigError("cannot read config " + config_path);
                j = json::parse(in);
            } catch (const json::parse_error& e) {
                throw ConfigError(std::string("malformed config JSON: ") + e.what());
            }
            cfg = config_from_json(j);
        }
        if (!command.empty()) cfg.command = command;
        if (o_matrix->count()) cfg.matrix = matrix;
        if (o_f->count()) cfg.f = f, cfg.f_state = nullptr;
        if (o_g->count()) cfg.g = g, cfg.g_state = nullptr;
        if (o_f2->count()) cfg.f2 = f2;
        if (o_g2->count()) cfg.g2 = g2;
        if (o_n->count()) cfg.grid_n = grid_n;
        if (o_dx->count()) cfg.grid_dx = grid_dx;
        if (o_p->count()) cfg.p = parse_exponent(p, "p");
        if (o_q->count()) cfg.q = parse_exponent(q, "q");
        if (o_s->count()) cfg.s = s;
        if (o_tau->count()) cfg.tau = tau;
        if (o_t->count()) cfg.t = times;
        if (o_radius->count()) cfg.radius = radius;
        if (o_kernel->count()) cfg.kernel = kernel;
        if (o_out->count()) cfg.out = out_path;
        if (o_format->count()) cfg.format = format;
        if (o_report->count()) cfg.report = report;
        cfg.json_stdout = json_stdout;
        return run_config(cfg, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const nlohmann::json::exception& e) {
        err << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const PreconditionError& e) {
        err << "precondition violated: " << e.what() << "\n";
        return kPrecondition;
    } catch (const NumericalDomainError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kNumerical;
    } catch (const std::exception& e) {
        err << "internal failure: " << e.what() << "\n";
        return kNumerical;
    }
}

}  // namespace symtfa::cli
