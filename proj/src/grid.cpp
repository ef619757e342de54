#include "symtfa/grid.hpp"

#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"

namespace symtfa {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

Grid1D::Grid1D(int n_, double dx_) : n(n_), dx(dx_) {
    if (n < 8 || (n & (n - 1)) != 0)
        throw ParameterError("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(dx > 0.0) || !std::isfinite(dx)) throw ParameterError("grid spacing must be positive");
}

bool Grid1D::self_dual(double rel_tol) const { return std::abs(dx - dxi()) <= rel_tol * dx; }

void require_same_grid(const Grid1D& a, const Grid1D& b) {
    if (a != b) throw GridMismatchError("signals live on different grids");
}

cplx trig_interpolate(const std::vector<cplx>& spec, const Grid1D& g, double x) {
    const int n = g.n;
    const double dxi = g.dxi();
    const double xi0 = g.xi(0);
    // Nyquist term split evenly between +xi0 and -xi0 keeps the interpolant real for real data.
    cplx acc = spec[0] * std::cos(2.0 * kPi * x * xi0);
    cplx step = std::polar(1.0, 2.0 * kPi * x * dxi);
    cplx ph = std::polar(1.0, 2.0 * kPi * x * xi0) * step;
    for (int k = 1; k < n; ++k) {
        acc += spec[k] * ph;
        ph *= step;
        if ((k & 63) == 0) ph = std::polar(1.0, 2.0 * kPi * x * g.xi(k + 1));
    }
    return acc * dxi;
}

GridSignal GridSignal::analytic(const Grid1D& grid, Evaluator f, std::string descriptor) {
    if (!f) throw ParameterError("analytic signal needs an evaluator");
    GridSignal s;
    s.grid_ = grid;
    s.samples_.resize(grid.n);
    for (int i = 0; i < grid.n; ++i) s.samples_[i] = f(grid.x(i));
    s.analytic_ = std::move(f);
    s.descriptor_ = std::move(descriptor);
    return s;
}

GridSignal GridSignal::from_samples(const Grid1D& grid, std::vector<cplx> samples,
                                    std::string descriptor) {
    if (samples.size() != static_cast<size_t>(grid.n))
        throw DimensionError("sample count does not match grid size");
    GridSignal s;
    s.grid_ = grid;
    s.samples_ = std::move(samples);
    s.descriptor_ = std::move(descriptor);
    s.spectrum_ = std::make_shared<const std::vector<cplx>>(ct_forward(s.samples_, grid.dx));
    return s;
}

GridSignal GridSignal::zero(const Grid1D& grid) {
    return analytic(grid, [](double) { return cplx(0.0, 0.0); }, "zero");
}

cplx GridSignal::at(double x) const {
    if (analytic_) return analytic_(x);
    const double h = grid_.half_extent();
    if (x < -h || x >= h) return cplx(0.0, 0.0);
    double pos = x / grid_.dx;
    double r = std::round(pos);
    if (std::abs(pos - r) < 1e-12) return samples_[static_cast<int>(r) + grid_.n / 2];
    return trig_interpolate(*spectrum_, grid_, x);
}

double GridSignal::l2_norm() const {
    double acc = 0.0;
    for (const auto& v : samples_) acc += std::norm(v);
    return std::sqrt(acc * grid_.dx);
}

bool GridSignal::is_zero() const {
    for (const auto& v : samples_)
        if (v != cplx(0.0, 0.0)) return false;
    return true;
}

GridSignal GridSignal::conj() const {
    std::vector<cplx> s(samples_.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = std::conj(samples_[i]);
    if (analytic_) {
        Evaluator f = analytic_;
        return analytic(grid_, [f](double x) { return std::conj(f(x)); }, "conj(" + descriptor_ + ")");
    }
    return from_samples(grid_, std::move(s), "conj(" + descriptor_ + ")");
}

GridSignal GridSignal::scaled(cplx lambda) const {
    if (analytic_) {
        Evaluator f = analytic_;
        return analytic(grid_, [f, lambda](double x) { return lambda * f(x); }, descriptor_);
    }
    std::vector<cplx> s(samples_);
    for (auto& v : s) v *= lambda;
    return from_samples(grid_, std::move(s), descriptor_);
}

GridSignal GridSignal::operator+(const GridSignal& o) const {
    require_same_grid(grid_, o.grid_);
    std::string desc = descriptor_ + "+" + o.descriptor_;
    if (analytic_ && o.analytic_) {
        Evaluator f = analytic_, g = o.analytic_;
        return analytic(grid_, [f, g](double x) { return f(x) + g(x); }, desc);
    }
    std::vector<cplx> s(samples_.size());
    for (size_t i = 0; i < s.size(); ++i) s[i] = samples_[i] + o.samples_[i];
    return from_samples(grid_, std::move(s), desc);
}

double PhaseSpaceGrid::max_abs() const {
    double m = 0.0;
    for (const auto& v : values) m = std::max(m, std::abs(v));
    return m;
}

double PhaseSpaceGrid::l2_norm() const {
    double acc = 0.0;
    for (const auto& v : values) acc += std::norm(v);
    return std::sqrt(acc * grid.dx * grid.dxi());
}

double max_abs_diff(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    require_same_grid(a.grid, b.grid);
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
    return m;
}

double max_abs_diff_moduli(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    require_same_grid(a.grid, b.grid);
    double m = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i)
        m = std::max(m, std::abs(std::abs(a.values[i]) - std::abs(b.values[i])));
    return m;
}

double relative_l2_diff(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    require_same_grid(a.grid, b.grid);
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < a.values.size(); ++i) {
        num += std::norm(a.values[i] - b.values[i]);
        den += std::norm(b.values[i]);
    }
    if (den == 0.0) return num == 0.0 ? 0.0 : INFINITY;
    return std::sqrt(num / den);
}

cplx best_phase(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < a.size() && i < b.size(); ++i) acc += a[i] * std::conj(b[i]);
    double m = std::abs(acc);
    return m > 0.0 ? acc / m : cplx(1.0, 0.0);
}

}  // namespace symtfa
