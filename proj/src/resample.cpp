#include "symtfa/resample.hpp"

#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"

namespace symtfa {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::vector<cplx> get_line(const std::vector<cplx>& v, int n, int axis, int r) {
    std::vector<cplx> line(n);
    for (int i = 0; i < n; ++i)
        line[i] = axis == 1 ? v[static_cast<size_t>(r) * n + i] : v[static_cast<size_t>(i) * n + r];
    return line;
}

void put_line(std::vector<cplx>& v, int n, int axis, int r, const std::vector<cplx>& line) {
    for (int i = 0; i < n; ++i)
        (axis == 1 ? v[static_cast<size_t>(r) * n + i] : v[static_cast<size_t>(i) * n + r]) = line[i];
}

}  // namespace

void shift_lines(std::vector<cplx>& v, int n, int axis, double h, const std::vector<double>& s) {
    const double hd = 1.0 / (n * h);
    for (int r = 0; r < n; ++r) {
        if (s[r] == 0.0) continue;
        std::vector<cplx> spec = ct_forward(get_line(v, n, axis, r), h);
        for (int k = 0; k < n; ++k) {
            double zeta = (k - n / 2) * hd;
            spec[k] *= k == 0 ? cplx(std::cos(2.0 * kPi * zeta * s[r]), 0.0)
                              : std::polar(1.0, 2.0 * kPi * zeta * s[r]);
        }
        put_line(v, n, axis, r, ct_inverse(spec, hd));
    }
}

void scale_lines(std::vector<cplx>& v, int n, int axis, double h, double c) {
    if (c == 1.0) return;
    Grid1D g(n, h);
    const double half = g.half_extent();
    for (int r = 0; r < n; ++r) {
        std::vector<cplx> line = get_line(v, n, axis, r);
        std::vector<cplx> spec = ct_forward(line, h);
        std::vector<cplx> out(n);
        for (int i = 0; i < n; ++i) {
            double y = c * g.x(i);
            if (y < -half || y >= half) {
                out[i] = 0.0;
                continue;
            }
            double pos = y / h;
            double rp = std::round(pos);
            out[i] = std::abs(pos - rp) < 1e-12 ? line[static_cast<int>(rp) + n / 2]
                                                 : trig_interpolate(spec, g, y);
        }
        put_line(v, n, axis, r, out);
    }
}

void compose_linear(std::vector<cplx>& v, int n, double h_row, double h_col, const Eigen::Matrix2d& M) {
    const double det = M.determinant();
    if (std::abs(det) < 1e-14) throw ParameterError("resampling map is singular");
    Eigen::Matrix2d M1 = M;
    M1.col(1) /= det;  // det M1 == 1, M = M1 diag(1, det)
    const double a = M1(0, 0), b = M1(0, 1), c = M1(1, 0), d = M1(1, 1);
    Grid1D gr(n, h_row), gc(n, h_col);

    auto lower_shear = [&](double p) {  // R(x, xi) -> R(x, xi + p x)
        if (p == 0.0) return;
        std::vector<double> s(n);
        for (int m = 0; m < n; ++m) s[m] = p * gr.x(m);
        shift_lines(v, n, 1, h_col, s);
    };
    auto upper_shear = [&](double q) {  // R(x, xi) -> R(x + q xi, xi)
        if (q == 0.0) return;
        std::vector<double> s(n);
        for (int k = 0; k < n; ++k) s[k] = q * gc.x(k);
        shift_lines(v, n, 0, h_row, s);
    };

    if (std::abs(b) > 1e-14) {
        lower_shear((d - 1.0) / b);
        upper_shear(b);
        lower_shear((a - 1.0) / b);
    } else {
        lower_shear(c / a);
        scale_lines(v, n, 0, h_row, a);
        scale_lines(v, n, 1, h_col, 1.0 / a);
    }
    scale_lines(v, n, 1, h_col, det);
}

PhaseSpaceGrid compose_linear(const PhaseSpaceGrid& w, const Eigen::Matrix2d& M) {
    PhaseSpaceGrid out = w;
    compose_linear(out.values, w.n(), w.grid.dx, w.grid.dxi(), M);
    return out;
}

PhaseSpaceGrid translate(const PhaseSpaceGrid& w, double a_x, double a_xi) {
    PhaseSpaceGrid out = w;
    const int n = w.n();
    shift_lines(out.values, n, 0, w.grid.dx, std::vector<double>(n, -a_x));
    shift_lines(out.values, n, 1, w.grid.dxi(), std::vector<double>(n, -a_xi));
    return out;
}

}  // namespace symtfa
