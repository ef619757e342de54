#include "symtfa/norms.hpp"

#include <algorithm>
#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"
#include "symtfa/signals.hpp"

namespace symtfa {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_exponent(double e, const char* name) {
    if (!(e > 0.0)) throw ParameterError(std::string(name) + " must be positive or infinite");
}

// (sum a_i^p * cell)^{1/p}, or max for p = inf.
class LpAccumulator {
public:
    LpAccumulator(double p, double cell) : p_(p), cell_(cell) {}
    void add(double a) {
        if (std::isinf(p_))
            acc_ = std::max(acc_, a);
        else if (a > 0.0)
            acc_ += std::pow(a, p_);
    }
    double value() const { return std::isinf(p_) ? acc_ : std::pow(acc_ * cell_, 1.0 / p_); }

private:
    double p_, cell_;
    double acc_ = 0.0;
};

}  // namespace

MixedNormSpec::MixedNormSpec(double p_, double q_, double s_) : p(p_), q(q_), s(s_) {
    check_exponent(p, "p");
    check_exponent(q, "q");
    if (!std::isfinite(s)) throw ParameterError("s must be finite");
}

double weight_vs(double x, double xi, double s) { return std::pow(1.0 + x * x + xi * xi, 0.5 * s); }

double mixed_norm(const PhaseSpaceGrid& w, const MixedNormSpec& spec) {
    check_exponent(spec.p, "p");
    check_exponent(spec.q, "q");
    const Grid1D& g = w.grid;
    const int n = g.n;
    LpAccumulator outer(spec.q, g.dxi());
    for (int k = 0; k < n; ++k) {
        LpAccumulator inner(spec.p, g.dx);
        for (int m = 0; m < n; ++m) {
            double v = std::abs(w(m, k));
            if (!std::isfinite(v)) throw NumericalDomainError("non-finite value in mixed norm");
            if (spec.s != 0.0) v *= weight_vs(g.x(m), g.xi(k), spec.s);
            inner.add(v);
        }
        outer.add(inner.value());
    }
    return outer.value();
}

double mod_norm(const GridSignal& f, const GridSignal& g, const MixedNormSpec& spec) {
    if (g.is_zero()) throw ParameterError("window must be nonzero");
    return mixed_norm(stft(f, g), spec);
}

SignalFamily shifted_family(const GridSignal& base, const std::vector<TFShift>& offsets,
                            const std::string& descriptor) {
    SignalFamily fam{descriptor, {}, offsets};
    fam.members.reserve(offsets.size());
    for (const auto& w : offsets) fam.members.push_back(tf_shift(base, w));
    return fam;
}

std::vector<TFShift> square_lattice(int r) {
    std::vector<TFShift> out;
    for (int i = -r; i <= r; ++i)
        for (int j = -r; j <= r; ++j) out.push_back({double(i), double(j)});
    return out;
}

EquivalenceReport equivalence_ratio(const Representation& rep, const SignalFamily& family,
                                    const GridSignal& g, const MixedNormSpec& spec) {
    if (family.members.empty()) throw ParameterError("signal family is empty");
    EquivalenceReport r;
    r.spec = spec;
    r.family = family.descriptor;
    for (const auto& f : family.members) {
        double num = mixed_norm(rep(f, g), spec);
        double den = mod_norm(f, g, spec);
        if (!(den > 0.0)) throw NumericalDomainError("zero modulation norm in family member");
        r.numerators.push_back(num);
        r.denominators.push_back(den);
        r.ratios.push_back(num / den);
    }
    r.min = *std::min_element(r.ratios.begin(), r.ratios.end());
    r.max = *std::max_element(r.ratios.begin(), r.ratios.end());
    r.ratio = r.min > 0.0 ? r.max / r.min : kInf;
    return r;
}

EquivalenceReport equivalence_ratio(const SymplecticMatrix& a, const SignalFamily& family,
                                    const GridSignal& g, const MixedNormSpec& spec) {
    return equivalence_ratio(matrix_representation(a), family, g, spec);
}

double metaplectic_norm_invariance(const SymplecticMatrix& a, const GridSignal& f, const GridSignal& g,
                                   const MixedNormSpec& spec) {
    if (spec.p != spec.q) throw ParameterError("norm invariance is stated for p == q");
    double den = mod_norm(f, g, spec);
    if (!(den > 0.0)) throw ParameterError("signal has zero modulation norm");
    return mod_norm(metaplectic_grid(a, f), g, spec) / den;
}

double mpq_norm_2d(const PhaseSpaceGrid& F, const MixedNormSpec& spec, int max_n) {
    const Grid1D& g = F.grid;
    const int n = g.n;
    if (n > max_n) throw ParameterError("mpq_norm_2d refuses N > " + std::to_string(max_n) + " (cost N^4)");
    const double h1 = g.dx, h2 = g.dxi();
    // Dual spacings of the 2-D transform: axis 0 -> 1/(n h1), axis 1 -> 1/(n h2).
    const double cell_z = h1 * h2;
    const double cell_zeta = 1.0 / (n * h1) / (n * h2);
    const size_t nn = static_cast<size_t>(n) * n;

    // inner[zeta] accumulates over z; spectra are computed per window position z.
    std::vector<double> inner(nn, 0.0);
    const bool pinf = std::isinf(spec.p);
    std::vector<cplx> buf(nn);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double z1 = g.x(a), z2 = g.xi(b);
            for (int m = 0; m < n; ++m)
                for (int k = 0; k < n; ++k) {
                    double u1 = g.x(m) - z1, u2 = g.xi(k) - z2;
                    double win = std::sqrt(2.0) * std::exp(-kPi * (u1 * u1 + u2 * u2));
                    buf[static_cast<size_t>(m) * n + k] = F(m, k) * win;
                }
            ct_forward_axis(buf, n, 0, h1);
            ct_forward_axis(buf, n, 1, h2);
            const double wz = spec.s != 0.0 ? weight_vs(z1, z2, spec.s) : 1.0;
            for (size_t i = 0; i < nn; ++i) {
                double v = std::abs(buf[i]) * wz;
                if (pinf)
                    inner[i] = std::max(inner[i], v);
                else if (v > 0.0)
                    inner[i] += std::pow(v, spec.p);
            }
        }
    LpAccumulator outer(spec.q, cell_zeta);
    for (size_t i = 0; i < nn; ++i) outer.add(pinf ? inner[i] : std::pow(inner[i] * cell_z, 1.0 / spec.p));
    return outer.value();
}

}  // namespace symtfa
