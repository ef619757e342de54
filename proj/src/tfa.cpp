#include "symtfa/tfa.hpp"

#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"
#include "symtfa/resample.hpp"

namespace symtfa {

namespace {

constexpr double kPi = 3.14159265358979323846;

void set_row(PhaseSpaceGrid& w, int m, const std::vector<cplx>& row) {
    std::copy(row.begin(), row.end(), w.values.begin() + static_cast<std::ptrdiff_t>(m) * w.n());
}

bool integer_matrix(const Eigen::Matrix2d& L) {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(L(i, j) - std::round(L(i, j))) > 1e-12) return false;
    return true;
}

Eigen::Matrix2d to_2x2(const RationalMatrix& m) {
    if (m.rows() != 2 || m.cols() != 2) throw DimensionError("grid backend handles d = 1 only");
    return m.to_double();
}

}  // namespace

PhaseSpaceGrid stft(const GridSignal& f, const GridSignal& g) {
    require_same_grid(f.grid(), g.grid());
    const Grid1D& gr = f.grid();
    const int n = gr.n;
    PhaseSpaceGrid out(gr);
    std::vector<cplx> h(n);
    for (int m = 0; m < n; ++m) {
        const double x = gr.x(m);
        for (int i = 0; i < n; ++i) {
            int idx = i - m + n / 2;  // y_i - x_m lands on node idx
            cplx gv = (idx >= 0 && idx < n) ? g[idx] : g.at(gr.x(i) - x);
            h[i] = f[i] * std::conj(gv);
        }
        set_row(out, m, ct_forward(h, gr.dx));
    }
    return out;
}

PhaseSpaceGrid tau_wigner(const GridSignal& f, const GridSignal& g, double tau) {
    require_same_grid(f.grid(), g.grid());
    const Grid1D& gr = f.grid();
    const int n = gr.n;
    PhaseSpaceGrid out(gr);
    std::vector<cplx> h(n);
    for (int m = 0; m < n; ++m) {
        const double x = gr.x(m);
        for (int i = 0; i < n; ++i) {
            const double t = gr.x(i);
            h[i] = f.at(x + tau * t) * std::conj(g.at(x - (1.0 - tau) * t));
        }
        set_row(out, m, ct_forward(h, gr.dx));
    }
    if (!(f.has_analytic() && g.has_analytic()) && tau != 0.0 && tau != 1.0)
        out.warnings.push_back("off-grid samples from band-limited interpolation");
    return out;
}

PhaseSpaceGrid awigner_f2(const Eigen::Matrix2d& L, const GridSignal& f, const GridSignal& g) {
    require_same_grid(f.grid(), g.grid());
    const double det = L.determinant();
    if (std::abs(det) < 1e-14) throw ParameterError("L must be invertible");
    const Grid1D& gr = f.grid();
    const int n = gr.n;
    const double amp = std::sqrt(std::abs(det));
    PhaseSpaceGrid out(gr);
    std::vector<cplx> h(n);
    for (int m = 0; m < n; ++m) {
        const double x = gr.x(m);
        for (int i = 0; i < n; ++i) {
            const double y = gr.x(i);
            h[i] = amp * f.at(L(0, 0) * x + L(0, 1) * y) * std::conj(g.at(L(1, 0) * x + L(1, 1) * y));
        }
        set_row(out, m, ct_forward(h, gr.dx));
    }
    if (!(f.has_analytic() && g.has_analytic()) && !integer_matrix(L))
        out.warnings.push_back("L is not lattice-compatible: off-grid samples from band-limited interpolation");
    return out;
}

PhaseSpaceGrid awigner_grid(const CovariantForm& c, const GridSignal& f, const GridSignal& g) {
    return awigner_f2(to_2x2(L_from_covariant(c)), f, g);
}

PhaseSpaceGrid awigner_grid(const SymplecticMatrix& a, const GridSignal& f, const GridSignal& g) {
    if (a.size() != 4) throw DimensionError("grid backend handles A in Sp(2) only (d = 1)");
    auto L = f2_dilation_factor(a);
    if (!L) throw UnsupportedError("grid backend needs A = A_FT2 D_L; this matrix is outside that family");
    return awigner_f2(to_2x2(*L), f, g);
}

PhaseSpaceGrid awigner_via_stft(const CovariantForm& c, const GridSignal& f, const GridSignal& g) {
    require_same_grid(f.grid(), g.grid());
    if (c.d() != 1) throw DimensionError("grid backend handles d = 1 only");
    if (!c.f2_family())
        throw UnsupportedError("rescaled-window STFT formula needs A13 = A21 = 0");
    const double a = c.a11()(0, 0).get_d();
    if (c.a11()(0, 0) == 0 || c.a11()(0, 0) == 1)
        throw NotShiftInvertibleError(
            "not shift-invertible: det E_A = 0 (A11 or I - A11 singular), see shift-invertibility definition");
    const Grid1D& gr = f.grid();
    const int n = gr.n;
    const double b = 1.0 - a;

    // Quadrature step fine enough that frequencies xi/(1-a) do not alias.
    double shrink = std::min({1.0, std::abs(b), std::abs(b / a)});
    const int msub = static_cast<int>(std::ceil(2.0 / shrink));
    const double ds = gr.dx / msub;
    const int ns = n * msub;
    std::vector<double> s(ns);
    std::vector<cplx> fs(ns);
    for (int j = 0; j < ns; ++j) {
        s[j] = -gr.half_extent() + j * ds;
        fs[j] = (j % msub == 0) ? f[j / msub] : f.at(s[j]);
    }

    PhaseSpaceGrid out(gr);
    std::vector<cplx> base(ns), cur(ns), step(ns);
    const double dnu = gr.dxi() / b;
    for (int m = 0; m < n; ++m) {
        const double x = gr.x(m);
        const double u = x / a;
        for (int j = 0; j < ns; ++j) {
            base[j] = fs[j] * std::conj(g.at(-a * (s[j] - u) / b));  // f(s) conj(g~(s - u))
            step[j] = std::polar(1.0, -2.0 * kPi * s[j] * dnu);
        }
        for (int k = 0; k < n; ++k) {
            if ((k & 31) == 0) {
                const double nu = gr.xi(k) / b;
                for (int j = 0; j < ns; ++j) cur[j] = base[j] * std::polar(1.0, -2.0 * kPi * s[j] * nu);
            }
            cplx acc(0.0, 0.0);
            for (int j = 0; j < ns; ++j) {
                acc += cur[j];
                cur[j] *= step[j];
            }
            const double xi = gr.xi(k);
            out(m, k) = acc * ds * std::polar(1.0, 2.0 * kPi * x * xi / b) / std::abs(b);
        }
    }
    return out;
}

int signature(const Eigen::Matrix2d& B) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(0.5 * (B + B.transpose()));
    const double tol = 1e-14 * std::max(1.0, B.cwiseAbs().maxCoeff());
    int sig = 0;
    for (int i = 0; i < 2; ++i) {
        if (es.eigenvalues()(i) > tol) ++sig;
        if (es.eigenvalues()(i) < -tol) --sig;
    }
    return sig;
}

PhaseSpaceGrid cohen_kernel(const Eigen::Matrix2d& B, const Grid1D& grid, KernelSampling mode) {
    const int n = grid.n;
    PhaseSpaceGrid out(grid);
    if (B.cwiseAbs().maxCoeff() == 0.0) {
        out(n / 2, n / 2) = 1.0 / (grid.dx * grid.dxi());
        return out;
    }
    if (mode == KernelSampling::ClosedForm) {
        const double det = B.determinant();
        if (std::abs(det) < 1e-14) throw ParameterError("closed-form kernel needs an invertible B");
        Eigen::Matrix2d Bi = B.inverse();
        cplx pre = std::polar(std::pow(std::abs(det), -0.5), -kPi * signature(B) / 4.0);
        for (int m = 0; m < n; ++m)
            for (int k = 0; k < n; ++k) {
                Eigen::Vector2d z(grid.x(m), grid.xi(k));
                out(m, k) = pre * std::polar(1.0, kPi * z.dot(Bi * z));
            }
        out.warnings.push_back("closed-form chirp kernel sampled pointwise; not band-limited on this grid");
        return out;
    }
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Eigen::Vector2d zeta(grid.xi(p), grid.x(q));
            out(p, q) = std::polar(1.0, -kPi * zeta.dot(B * zeta));
        }
    ct_inverse_axis(out.values, n, 0, grid.dxi());
    ct_inverse_axis(out.values, n, 1, grid.dx);
    return out;
}

PhaseSpaceGrid cohen_kernel(const CovariantForm& c, const Grid1D& grid, KernelSampling mode) {
    if (c.d() != 1) throw DimensionError("grid backend handles d = 1 only");
    return cohen_kernel(Eigen::Matrix2d(matrix_B(c).b.to_double()), grid, mode);
}

std::vector<cplx> fourier_2d(const PhaseSpaceGrid& w) {
    std::vector<cplx> a = w.values;
    ct_forward_axis(a, w.n(), 0, w.grid.dx);
    ct_forward_axis(a, w.n(), 1, w.grid.dxi());
    return a;
}

namespace {
PhaseSpaceGrid inverse_fourier_2d(const Grid1D& grid, std::vector<cplx> a) {
    ct_inverse_axis(a, grid.n, 0, grid.dxi());
    ct_inverse_axis(a, grid.n, 1, grid.dx);
    PhaseSpaceGrid out(grid);
    out.values = std::move(a);
    return out;
}
}  // namespace

PhaseSpaceGrid cohen_convolve(const PhaseSpaceGrid& w, const PhaseSpaceGrid& sigma) {
    require_same_grid(w.grid, sigma.grid);
    std::vector<cplx> a = fourier_2d(w);
    std::vector<cplx> b = fourier_2d(sigma);
    for (size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    PhaseSpaceGrid out = inverse_fourier_2d(w.grid, std::move(a));
    out.warnings = w.warnings;
    return out;
}

PhaseSpaceGrid cohen_multiply(const PhaseSpaceGrid& w, const Eigen::Matrix2d& B) {
    if (B.cwiseAbs().maxCoeff() == 0.0) return w;
    const Grid1D& grid = w.grid;
    const int n = grid.n;
    std::vector<cplx> a = fourier_2d(w);
    for (int p = 0; p < n; ++p)
        for (int q = 0; q < n; ++q) {
            Eigen::Vector2d zeta(grid.xi(p), grid.x(q));
            a[static_cast<size_t>(p) * n + q] *= std::polar(1.0, -kPi * zeta.dot(B * zeta));
        }
    PhaseSpaceGrid out = inverse_fourier_2d(grid, std::move(a));
    out.warnings = w.warnings;
    return out;
}

PhaseSpaceGrid symplectic_fourier(const PhaseSpaceGrid& w) {
    const int n = w.n();
    std::vector<cplx> a = fourier_2d(w);
    PhaseSpaceGrid out(w.grid);
    for (int m = 0; m < n; ++m)
        for (int k = 0; k < n; ++k) out(m, k) = a[static_cast<size_t>(k) * n + (n - m) % n];
    return out;
}

PhaseSpaceGrid ambiguity(const GridSignal& f) {
    const Grid1D& gr = f.grid();
    const int n = gr.n;
    PhaseSpaceGrid out(gr);
    std::vector<cplx> h(n);
    for (int m = 0; m < n; ++m) {
        const double x = gr.x(m);
        for (int i = 0; i < n; ++i) {
            const double y = gr.x(i);
            h[i] = f.at(y + 0.5 * x) * std::conj(f.at(y - 0.5 * x));
        }
        set_row(out, m, ct_forward(h, gr.dx));
    }
    return out;
}

PhaseSpaceGrid ambiguity_via_wigner(const GridSignal& f) { return symplectic_fourier(wigner(f, f)); }

cplx moyal_pairing(const PhaseSpaceGrid& w1, const PhaseSpaceGrid& w2) {
    require_same_grid(w1.grid, w2.grid);
    cplx acc(0.0, 0.0);
    for (size_t i = 0; i < w1.values.size(); ++i) acc += w1.values[i] * std::conj(w2.values[i]);
    return acc * w1.grid.dx * w1.grid.dxi();
}

Representation tau_representation(double tau) {
    return [tau](const GridSignal& f, const GridSignal& g) { return tau_wigner(f, g, tau); };
}

Representation matrix_representation(const SymplecticMatrix& a) {
    if (a.size() != 4) throw DimensionError("grid backend handles A in Sp(2) only (d = 1)");
    auto L = f2_dilation_factor(a);
    if (!L) throw UnsupportedError("grid backend needs A = A_FT2 D_L; this matrix is outside that family");
    Eigen::Matrix2d Ld = L->to_double();
    return [Ld](const GridSignal& f, const GridSignal& g) { return awigner_f2(Ld, f, g); };
}

double polarization_check(const GridSignal& f, const GridSignal& g, const Representation& rep) {
    PhaseSpaceGrid lhs = rep(f + g, f + g);
    PhaseSpaceGrid a = rep(f, f), b = rep(g, g), c = rep(f, g), d = rep(g, f);
    double r = 0.0;
    for (size_t i = 0; i < lhs.values.size(); ++i)
        r = std::max(r, std::abs(lhs.values[i] - a.values[i] - b.values[i] - c.values[i] - d.values[i]));
    return r;
}

PhaseSpaceGrid sample_phase_space(const Grid1D& grid, const std::function<cplx(double, double)>& F) {
    PhaseSpaceGrid out(grid);
    for (int m = 0; m < grid.n; ++m)
        for (int k = 0; k < grid.n; ++k) out(m, k) = F(grid.x(m), grid.xi(k));
    return out;
}

PhaseSpaceGrid sample_phase_space(const Grid1D& grid, const GaussianState& s) {
    if (s.n() != 2) throw DimensionError("phase-space sampling needs a two-variable state");
    return sample_phase_space(grid, [&s](double x, double xi) { return s(x, xi); });
}

GridSignal invert_awigner(const Eigen::Matrix2d& L, const PhaseSpaceGrid& w, const GridSignal& g1,
                          const GridSignal& g2) {
    require_same_grid(w.grid, g1.grid());
    require_same_grid(w.grid, g2.grid());
    const Grid1D& gr = w.grid;
    const int n = gr.n;
    cplx norm = inner(g2, g1);
    if (std::abs(norm) < 1e-300) throw ParameterError("<g2, g1> must be nonzero");
    std::vector<cplx> h = w.values;
    ct_inverse_axis(h, n, 1, gr.dxi());  // xi -> y, spacing dx
    compose_linear(h, n, gr.dx, gr.dx, L.inverse());
    const double amp = 1.0 / std::sqrt(std::abs(L.determinant()));
    std::vector<cplx> f(n);
    for (int m = 0; m < n; ++m) {
        cplx acc(0.0, 0.0);
        for (int i = 0; i < n; ++i) acc += h[static_cast<size_t>(m) * n + i] * g2[i];
        f[m] = acc * amp * gr.dx / norm;
    }
    return GridSignal::from_samples(gr, std::move(f), "reconstruction");
}

GridSignal metaplectic_grid(const SymplecticMatrix& a, const GridSignal& f) {
    if (a.dim_n() != 1) throw DimensionError("grid metaplectic action handles Sp(1) only");
    GeneratorWord word = factorize(a);
    const Grid1D& gr = f.grid();
    GridSignal cur = f;
    for (auto it = word.factors.rbegin(); it != word.factors.rend(); ++it) {
        switch (it->kind) {
            case Generator::Kind::Fourier: {
                if (!gr.self_dual(1e-12))
                    throw PreconditionError("Fourier generator on the grid needs dx == dxi (N dx^2 == 1)");
                cur = GridSignal::from_samples(gr, ct_forward(cur.samples(), gr.dx), "F(" + cur.descriptor() + ")");
                break;
            }
            case Generator::Kind::Chirp: {
                const double c = it->param(0, 0).get_d();
                if (cur.has_analytic()) {
                    Evaluator e = cur.evaluator();
                    cur = GridSignal::analytic(
                        gr, [e, c](double t) { return std::polar(1.0, kPi * c * t * t) * e(t); }, cur.descriptor());
                } else {
                    std::vector<cplx> s = cur.samples();
                    for (int i = 0; i < gr.n; ++i) s[i] *= std::polar(1.0, kPi * c * gr.x(i) * gr.x(i));
                    cur = GridSignal::from_samples(gr, std::move(s), cur.descriptor());
                }
                break;
            }
            case Generator::Kind::Dilation: {
                const double L = it->param(0, 0).get_d();
                const double amp = std::sqrt(std::abs(L));
                if (cur.has_analytic()) {
                    Evaluator e = cur.evaluator();
                    cur = GridSignal::analytic(gr, [e, L, amp](double t) { return amp * e(L * t); }, cur.descriptor());
                } else {
                    std::vector<cplx> s(gr.n);
                    for (int i = 0; i < gr.n; ++i) s[i] = amp * cur.at(L * gr.x(i));
                    cur = GridSignal::from_samples(gr, std::move(s), cur.descriptor());
                }
                break;
            }
        }
    }
    return cur;
}

cplx inner(const GridSignal& f, const GridSignal& g) {
    require_same_grid(f.grid(), g.grid());
    cplx acc(0.0, 0.0);
    for (int i = 0; i < f.grid().n; ++i) acc += f[i] * std::conj(g[i]);
    return acc * f.grid().dx;
}

}  // namespace symtfa
