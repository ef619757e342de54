#pragma once

#include <complex>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace symtfa {

using cplx = std::complex<double>;

// Centered grid x_n = (n - N/2) dx with dual grid xi_k = (k - N/2) dxi, dxi = 1/(N dx).
struct Grid1D {
    int n = 256;
    double dx = 1.0 / 16.0;

    Grid1D() = default;
    Grid1D(int n, double dx);

    double dxi() const { return 1.0 / (n * dx); }
    double x(int i) const { return (i - n / 2) * dx; }
    double xi(int k) const { return (k - n / 2) * dxi(); }
    double half_extent() const { return 0.5 * n * dx; }
    bool self_dual(double rel_tol = 1e-12) const;
    bool operator==(const Grid1D& o) const { return n == o.n && dx == o.dx; }
    bool operator!=(const Grid1D& o) const { return !(*this == o); }
};

using Evaluator = std::function<cplx(double)>;

class GridSignal {
public:
    GridSignal() = default;

    // Samples the evaluator on the grid and keeps it for off-grid evaluation.
    static GridSignal analytic(const Grid1D& grid, Evaluator f, std::string descriptor = {});
    static GridSignal from_samples(const Grid1D& grid, std::vector<cplx> samples,
                                   std::string descriptor = {});
    static GridSignal zero(const Grid1D& grid);

    const Grid1D& grid() const { return grid_; }
    const std::vector<cplx>& samples() const { return samples_; }
    cplx operator[](int i) const { return samples_[i]; }
    bool has_analytic() const { return static_cast<bool>(analytic_); }
    const Evaluator& evaluator() const { return analytic_; }
    const std::string& descriptor() const { return descriptor_; }

    // Analytic value when available, otherwise periodic band-limited
    // interpolation inside the grid extent and zero outside it.
    cplx at(double x) const;

    double l2_norm() const;
    bool is_zero() const;

    GridSignal conj() const;
    GridSignal scaled(cplx lambda) const;
    GridSignal operator+(const GridSignal& o) const;

private:
    Grid1D grid_;
    std::vector<cplx> samples_;
    Evaluator analytic_;
    std::string descriptor_;
    std::shared_ptr<const std::vector<cplx>> spectrum_;  // ct_forward of samples, for interpolation
};

struct TFShift {
    double z1 = 0.0;
    double z2 = 0.0;
};

// Row index m is x_m, column index k is xi_k.
struct PhaseSpaceGrid {
    Grid1D grid;
    std::vector<cplx> values;
    std::vector<std::string> warnings;

    PhaseSpaceGrid() = default;
    explicit PhaseSpaceGrid(const Grid1D& g)
        : grid(g), values(static_cast<size_t>(g.n) * g.n, cplx(0.0, 0.0)) {}

    int n() const { return grid.n; }
    cplx& operator()(int m, int k) { return values[static_cast<size_t>(m) * grid.n + k]; }
    cplx operator()(int m, int k) const { return values[static_cast<size_t>(m) * grid.n + k]; }
    double x(int m) const { return grid.x(m); }
    double xi(int k) const { return grid.xi(k); }

    double max_abs() const;
    double l2_norm() const;  // Riemann L2 norm with cell dx * dxi
};

void require_same_grid(const Grid1D& a, const Grid1D& b);

double max_abs_diff(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);
double max_abs_diff_moduli(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);
double relative_l2_diff(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b);
// Unimodular c minimizing ||a - c b||; 1 when b is orthogonal to a.
cplx best_phase(const std::vector<cplx>& a, const std::vector<cplx>& b);

// Band-limited trigonometric interpolation of centered-grid samples.
cplx trig_interpolate(const std::vector<cplx>& spectrum, const Grid1D& grid, double x);

}  // namespace symtfa
