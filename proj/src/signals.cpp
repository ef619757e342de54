#include "symtfa/signals.hpp"

#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"

namespace symtfa {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

double hermite_function(int k, double t) {
    if (k < 0) throw ParameterError("Hermite index must be non-negative");
    const double u = std::sqrt(2.0 * kPi) * t;
    double prev = 0.0;
    double cur = std::pow(kPi, -0.25) * std::exp(-0.5 * u * u);
    for (int j = 0; j < k; ++j) {
        double next = std::sqrt(2.0 / (j + 1)) * u * cur - std::sqrt(double(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return std::pow(2.0 * kPi, 0.25) * cur;
}

GridSignal hermite_signal(const Grid1D& grid, int k) {
    if (k < 0) throw ParameterError("Hermite index must be non-negative");
    return GridSignal::analytic(grid, [k](double t) { return cplx(hermite_function(k, t), 0.0); },
                                "hermite:" + std::to_string(k));
}

GridSignal gaussian_signal(const Grid1D& grid, const GaussianState& s) {
    if (s.n() != 1) throw DimensionError("grid signals are one-dimensional");
    return GridSignal::analytic(grid, [s](double t) { return s(t); }, "gaussian");
}

GridSignal standard_gaussian(const Grid1D& grid) {
    return GridSignal::analytic(grid, [](double t) { return cplx(std::pow(2.0, 0.25) * std::exp(-kPi * t * t), 0.0); },
                                "gauss");
}

GridSignal tf_shift(const GridSignal& f, const TFShift& w) {
    if (w.z1 == 0.0 && w.z2 == 0.0) return f;
    const Grid1D& g = f.grid();
    std::string desc = f.descriptor() + "@(" + std::to_string(w.z1) + "," + std::to_string(w.z2) + ")";
    if (f.has_analytic()) {
        Evaluator e = f.evaluator();
        return GridSignal::analytic(
            g, [e, w](double t) { return std::polar(1.0, 2.0 * kPi * w.z2 * t) * e(t - w.z1); }, desc);
    }
    const int n = g.n;
    std::vector<cplx> s(n, cplx(0.0, 0.0));
    double steps = w.z1 / g.dx;
    if (std::abs(steps - std::round(steps)) < 1e-12) {
        long sh = std::lround(steps);
        for (int i = 0; i < n; ++i) {
            long src = i - sh;
            if (src >= 0 && src < n) s[i] = f[static_cast<int>(src)];
        }
    } else {
        std::vector<cplx> spec = ct_forward(f.samples(), g.dx);
        for (int k = 0; k < n; ++k) {
            double xi = g.xi(k);
            spec[k] *= k == 0 ? cplx(std::cos(2.0 * kPi * xi * w.z1), 0.0)
                              : std::polar(1.0, -2.0 * kPi * xi * w.z1);
        }
        s = ct_inverse(spec, g.dxi());
    }
    for (int i = 0; i < n; ++i) s[i] *= std::polar(1.0, 2.0 * kPi * w.z2 * g.x(i));
    return GridSignal::from_samples(g, std::move(s), desc);
}

}  // namespace symtfa
