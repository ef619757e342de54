#include <cmath>
#include <functional>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "symtfa/errors.hpp"
#include "symtfa/resample.hpp"
#include "symtfa/signals.hpp"
#include "symtfa/tfa.hpp"

using namespace symtfa;
using RM = RationalMatrix;

namespace {

constexpr double kPi = 3.14159265358979323846;
const Grid1D kGrid(256, 1.0 / 16.0);

double max_err(const PhaseSpaceGrid& w, const std::function<cplx(double, double)>& oracle) {
    double e = 0.0;
    for (int m = 0; m < w.n(); ++m)
        for (int k = 0; k < w.n(); ++k) e = std::max(e, std::abs(w(m, k) - oracle(w.x(m), w.xi(k))));
    return e;
}

double max_err_modulus(const PhaseSpaceGrid& w, const std::function<double(double, double)>& oracle) {
    double e = 0.0;
    for (int m = 0; m < w.n(); ++m)
        for (int k = 0; k < w.n(); ++k) e = std::max(e, std::abs(std::abs(w(m, k)) - oracle(w.x(m), w.xi(k))));
    return e;
}

// out(m, k) = in(m - s1, k - s2), zero outside.
PhaseSpaceGrid index_shift(const PhaseSpaceGrid& w, int s1, int s2) {
    PhaseSpaceGrid out(w.grid);
    for (int m = 0; m < w.n(); ++m)
        for (int k = 0; k < w.n(); ++k) {
            int a = m - s1, b = k - s2;
            if (a >= 0 && a < w.n() && b >= 0 && b < w.n()) out(m, k) = w(a, b);
        }
    return out;
}

double phase_aligned(const PhaseSpaceGrid& a, const PhaseSpaceGrid& b) {
    return testutil::phase_aligned_max_diff(a.values, b.values);
}

GridSignal shifted_gaussian(const Grid1D& g, double x0, double w0, double width = 1.0) {
    return GridSignal::analytic(g, [=](double t) {
        return std::pow(2.0 * width, 0.25) * std::exp(-kPi * width * (t - x0) * (t - x0)) *
               std::polar(1.0, 2 * kPi * w0 * t);
    });
}

GridSignal random_smooth(std::mt19937& rng, const Grid1D& g) {
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    std::vector<cplx> s(g.n);
    for (int j = 0; j < 3; ++j) {
        double x0 = u(rng), w0 = u(rng), width = 1.0 + 0.3 * u(rng);
        cplx a(u(rng), u(rng));
        for (int i = 0; i < g.n; ++i) {
            double t = g.x(i);
            s[i] += a * std::exp(-kPi * width * (t - x0) * (t - x0)) * std::polar(1.0, 2 * kPi * w0 * t);
        }
    }
    return GridSignal::from_samples(g, std::move(s));
}

}  // namespace

TEST_CASE("grid construction") {
    CHECK_THROWS_AS(Grid1D(100, 0.1), ParameterError);
    CHECK_THROWS_AS(Grid1D(4, 0.1), ParameterError);
    CHECK_THROWS_AS(Grid1D(64, -1.0), ParameterError);
    CHECK(kGrid.self_dual());
    CHECK(kGrid.x(128) == 0.0);
    GridSignal f = standard_gaussian(kGrid);
    for (int i = 0; i < kGrid.n; i += 17)
        CHECK(std::abs(f[i] - std::pow(2.0, 0.25) * std::exp(-kPi * kGrid.x(i) * kGrid.x(i))) < 1e-12);
    GridSignal sampled = GridSignal::from_samples(kGrid, f.samples());
    CHECK(std::abs(sampled.at(0.3 + 1.0 / 37) - f.at(0.3 + 1.0 / 37)) < 1e-10);
    CHECK(sampled.at(100.0) == cplx(0.0, 0.0));
}

TEST_CASE("Hermite functions") {
    // Orthonormality by quadrature.
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            double s = 0.0;
            for (int i = -800; i <= 800; ++i) s += hermite_function(a, i / 64.0) * hermite_function(b, i / 64.0);
            CHECK(std::abs(s / 64.0 - (a == b ? 1.0 : 0.0)) < 1e-12);
        }
}

TEST_CASE("STFT") {
    GridSignal f = standard_gaussian(kGrid);
    PhaseSpaceGrid v = stft(f, f);
    CHECK(max_err_modulus(v, [](double x, double xi) { return std::exp(-kPi * (x * x + xi * xi) / 2); }) < 1e-6);

    // Translation of the modulus, grid-aligned shift.
    GridSignal g = shifted_gaussian(kGrid, 0.2, -0.1, 1.3);
    PhaseSpaceGrid base = stft(f, g);
    TFShift w{8 * kGrid.dx, -5 * kGrid.dxi()};
    PhaseSpaceGrid moved = stft(tf_shift(f, w), g);
    PhaseSpaceGrid expect = index_shift(base, 8, -5);
    CHECK(max_abs_diff_moduli(moved, expect) < 1e-6);

    PhaseSpaceGrid z = stft(GridSignal::zero(kGrid), g);
    CHECK(z.max_abs() == 0.0);

    // A modulated bump peaks exactly at its frequency column.
    GridSignal mod = shifted_gaussian(kGrid, 0.0, 3.0);
    PhaseSpaceGrid vm = stft(mod, f);
    int best = 0;
    for (int k = 0; k < kGrid.n; ++k)
        if (std::abs(vm(128, k)) > std::abs(vm(128, best))) best = k;
    CHECK(kGrid.xi(best) == doctest::Approx(3.0));

    CHECK_THROWS_AS(stft(f, standard_gaussian(Grid1D(128, 1.0 / 8))), GridMismatchError);
}

TEST_CASE("tau-Wigner") {
    GridSignal f = standard_gaussian(kGrid);
    CHECK(max_err(wigner(f, f), [](double x, double xi) { return 2.0 * std::exp(-2 * kPi * (x * x + xi * xi)); }) < 1e-6);
    // Rihaczek: |f(x)| |f^(xi)|, f^ = f for the standard Gaussian.
    CHECK(max_err_modulus(tau_wigner(f, f, 0.0), [](double x, double xi) {
              return std::sqrt(2.0) * std::exp(-kPi * (x * x + xi * xi));
          }) < 1e-6);
    CHECK(tau_wigner(GridSignal::zero(kGrid), f, 0.3).max_abs() == 0.0);

    // Brute-force quadrature at a few nodes for an asymmetric pair.
    GridSignal a = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), b = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    PhaseSpaceGrid w = tau_wigner(a, b, 0.3);
    for (auto [m, k] : std::vector<std::pair<int, int>>{{128, 128}, {120, 140}, {140, 110}, {100, 133}}) {
        double x = kGrid.x(m), xi = kGrid.xi(k);
        cplx q(0.0, 0.0);
        for (int j = -1600; j <= 1600; ++j) {
            double t = j / 128.0;
            q += a.at(x + 0.3 * t) * std::conj(b.at(x - 0.7 * t)) * std::polar(1.0, -2 * kPi * t * xi);
        }
        CHECK(std::abs(w(m, k) - q / 128.0) < 1e-10);
    }
}

TEST_CASE("A-Wigner via partial Fourier transform") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    CovariantForm c03 = tau_form(Rational(3, 10));
    CHECK(max_abs_diff(awigner_grid(c03, f, g), tau_wigner(f, g, 0.3)) < 1e-8);

    GridSignal phi = standard_gaussian(kGrid);
    CHECK(max_err(awigner_grid(tau_form(Rational(1, 2)), phi, phi),
                  [](double x, double xi) { return 2.0 * std::exp(-2 * kPi * (x * x + xi * xi)); }) < 1e-6);

    // Cross-check against the Gaussian backend.
    std::mt19937 rng(5);
    for (int i = 0; i < 4; ++i) {
        Rational a11 = testutil::frac(std::uniform_int_distribution<int>(-4, 4)(rng), 5);
        CovariantForm c(RM(1, 1, {a11}), RM(1, 1, {0}), RM(1, 1, {0}));
        GaussianState fs = testutil::random_gaussian(rng), gs = testutil::random_gaussian(rng);
        PhaseSpaceGrid grid = awigner_grid(c, gaussian_signal(kGrid, fs), gaussian_signal(kGrid, gs));
        PhaseSpaceGrid ref = sample_phase_space(kGrid, awigner_gaussian(c.rebuild(), fs, gs));
        CHECK(phase_aligned(grid, ref) < 1e-6);
    }
    // A_ST lies in the same family.
    CHECK(max_abs_diff_moduli(awigner_grid(stft_matrix(), f, g), stft(f, g)) < 1e-8);
    CHECK_THROWS_AS(awigner_grid(chirp_matrix(RM(2, 2, {1, 0, 0, 0})), f, g), UnsupportedError);
}

TEST_CASE("A-Wigner via rescaled-window STFT") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    CovariantForm c03 = tau_form(Rational(3, 10));
    CHECK(max_abs_diff_moduli(awigner_via_stft(c03, f, g), awigner_grid(c03, f, g)) < 1e-6);
    GridSignal phi = standard_gaussian(kGrid);
    CHECK(max_err_modulus(awigner_via_stft(tau_form(Rational(1, 2)), phi, phi),
                          [](double x, double xi) { return 2.0 * std::exp(-2 * kPi * (x * x + xi * xi)); }) < 1e-6);
    CHECK_THROWS_AS(awigner_via_stft(tau_form(Rational(0)), phi, phi), NotShiftInvertibleError);
    CHECK_THROWS_AS(awigner_via_stft(tau_form(Rational(1)), phi, phi), NotShiftInvertibleError);
}

TEST_CASE("Cohen kernels") {
    PhaseSpaceGrid s0 = cohen_kernel(tau_form(Rational(0)), kGrid, KernelSampling::ClosedForm);
    CHECK(max_err_modulus(s0, [](double, double) { return 2.0; }) < 1e-12);
    for (int m = 0; m < kGrid.n; m += 31)
        for (int k = 0; k < kGrid.n; k += 29) {
            double x = kGrid.x(m), xi = kGrid.xi(k);
            CHECK(std::abs(s0(m, k) - 2.0 * std::polar(1.0, -4 * kPi * x * xi)) < 1e-9 * (1 + std::abs(x * xi)));
        }

    PhaseSpaceGrid delta = cohen_kernel(tau_form(Rational(1, 2)), kGrid);
    CHECK(std::abs(delta(128, 128) - 1.0 / (kGrid.dx * kGrid.dxi())) < 1e-9);
    double rest = 0.0;
    for (int m = 0; m < kGrid.n; ++m)
        for (int k = 0; k < kGrid.n; ++k)
            if (m != 128 || k != 128) rest = std::max(rest, std::abs(delta(m, k)));
    CHECK(rest == 0.0);

    CHECK(signature(matrix_B(tau_form(Rational(3, 10))).b.to_double()) == 0);
    CHECK(signature(Eigen::Matrix2d::Identity()) == 2);
    CHECK(signature(-Eigen::Matrix2d::Identity()) == -2);
}

TEST_CASE("Cohen convolution") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    PhaseSpaceGrid w = wigner(f, g);
    PhaseSpaceGrid delta = cohen_kernel(tau_form(Rational(1, 2)), kGrid);
    CHECK(max_abs_diff(cohen_convolve(w, delta), w) < 1e-12);

    PhaseSpaceGrid w2 = stft(f, g);
    PhaseSpaceGrid sum = w;
    for (size_t i = 0; i < sum.values.size(); ++i) sum.values[i] += w2.values[i];
    PhaseSpaceGrid s = cohen_kernel(tau_form(Rational(1, 4)), kGrid);
    PhaseSpaceGrid lhs = cohen_convolve(sum, s), a = cohen_convolve(w, s), b = cohen_convolve(w2, s);
    for (size_t i = 0; i < a.values.size(); ++i) a.values[i] += b.values[i];
    CHECK(max_abs_diff(lhs, a) < 1e-12);

    Grid1D big(512, 1.0 / std::sqrt(512.0));
    GridSignal fb = shifted_gaussian(big, 0.3, 0.5, 1.2), gb = shifted_gaussian(big, -0.4, 0.1, 0.8);
    PhaseSpaceGrid wb = wigner(fb, gb), tb = tau_wigner(fb, gb, 0.25);
    CovariantForm c = tau_form(Rational(1, 4));
    CHECK(relative_l2_diff(cohen_convolve(wb, cohen_kernel(c, big)), tb) <= 1e-3);
    CHECK(relative_l2_diff(cohen_multiply(wb, matrix_B(c).b.to_double()), tb) <= 1e-3);
}

TEST_CASE("ambiguity") {
    GridSignal f = standard_gaussian(kGrid);
    PhaseSpaceGrid amb = ambiguity(f);
    CHECK(max_err_modulus(amb, [](double x, double xi) { return std::exp(-kPi * (x * x + xi * xi) / 2); }) < 1e-6);
    GridSignal h = shifted_gaussian(kGrid, 0.3, 0.5, 1.2);
    PhaseSpaceGrid ah = ambiguity(h);
    CHECK(std::abs(ah(128, 128) - h.l2_norm() * h.l2_norm()) < 1e-8);
    CHECK(max_abs_diff(ah, ambiguity_via_wigner(h)) < 1e-6);
}

TEST_CASE("time-frequency shifts and covariance") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    GridSignal same = tf_shift(f, {0.0, 0.0});
    for (int i = 0; i < kGrid.n; ++i) CHECK(std::abs(same[i] - f[i]) < 1e-15);

    // Semi-covariance: E_tau = diag(1 - tau, tau).
    double tau = 0.25;
    TFShift w{8 * kGrid.dx, 12 * kGrid.dxi()};
    PhaseSpaceGrid moved = tau_wigner(tf_shift(f, w), g, tau);
    CHECK(max_abs_diff_moduli(moved, index_shift(tau_wigner(f, g, tau), 6, 3)) < 1e-6);

    // Full covariance.
    TFShift z{5 * kGrid.dx, -7 * kGrid.dxi()};
    PhaseSpaceGrid cov = tau_wigner(tf_shift(f, z), tf_shift(g, z), 0.3);
    CHECK(max_abs_diff(cov, index_shift(tau_wigner(f, g, 0.3), 5, -7)) < 1e-6);
    CHECK(max_abs_diff(translate(tau_wigner(f, g, 0.3), z.z1, z.z2), cov) < 1e-6);

    // Band-limited shift of sampled data.
    GridSignal fs = GridSignal::from_samples(kGrid, f.samples());
    GridSignal frac = tf_shift(fs, {0.123, 0.0});
    for (int i = 0; i < kGrid.n; i += 9) CHECK(std::abs(frac[i] - f.at(kGrid.x(i) - 0.123)) < 1e-9);
}

TEST_CASE("Moyal pairing") {
    GridSignal phi = standard_gaussian(kGrid);
    PhaseSpaceGrid w = wigner(phi, phi);
    CHECK(std::abs(moyal_pairing(w, w) - 1.0) < 1e-6);
    GridSignal h0 = hermite_signal(kGrid, 0), h1 = hermite_signal(kGrid, 1);
    CovariantForm c = tau_form(Rational(3, 10));
    CHECK(std::abs(moyal_pairing(awigner_grid(c, h0, h0), awigner_grid(c, h1, h1))) < 1e-6);
    CHECK(moyal_pairing(PhaseSpaceGrid(kGrid), w) == cplx(0.0, 0.0));
}

TEST_CASE("polarization") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    CHECK(polarization_check(f, g, tau_representation(0.5)) <= 1e-8);
    CHECK(polarization_check(f, GridSignal::zero(kGrid), tau_representation(0.5)) == 0.0);
    std::mt19937 rng(3);
    Grid1D small(64, 1.0 / 8.0);
    GridSignal a = random_smooth(rng, small), b = random_smooth(rng, small);
    CHECK(polarization_check(a, b, tau_representation(0.3)) <= 1e-6);
    CHECK(polarization_check(a, b, matrix_representation(tau_matrix(Rational(3, 10)))) <= 1e-6);
}

TEST_CASE("structural identities on the grid") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2), g = shifted_gaussian(kGrid, -0.4, 0.1, 0.8);
    SymplecticMatrix a = tau_matrix(Rational(3, 10));
    // Interchange.
    DerivedMatrices dm = derived_matrices(a);
    CHECK(max_abs_diff_moduli(awigner_grid(a, g, f), awigner_grid(dm.interchange, f.conj(), g.conj())) < 1e-6);

    // Conjugate symmetry with the reflected dilation.
    Eigen::Matrix2d L = L_from_covariant(tau_form(Rational(3, 10))).to_double();
    Eigen::Matrix2d Lt;
    Lt << L(1, 0), -L(1, 1), L(0, 0), -L(0, 1);
    PhaseSpaceGrid lhs = awigner_f2(L, g, f), rhs = awigner_f2(Lt, f, g);
    double e = 0.0;
    for (size_t i = 0; i < lhs.values.size(); ++i) e = std::max(e, std::abs(lhs.values[i] - std::conj(rhs.values[i])));
    CHECK(e < 1e-6);
}

TEST_CASE("inversion and STFT recovery") {
    GridSignal f = shifted_gaussian(kGrid, 0.3, 0.5, 1.2);
    GridSignal g1 = shifted_gaussian(kGrid, -0.4, 0.1, 0.8), g2 = standard_gaussian(kGrid);
    CovariantForm c = tau_form(Rational(3, 10));
    Eigen::Matrix2d L = L_from_covariant(c).to_double();
    GridSignal rec = invert_awigner(L, awigner_grid(c, f, g1), g1, g2);
    cplx ph = best_phase(rec.samples(), f.samples());
    double num = 0.0, den = 0.0;
    for (int i = 0; i < kGrid.n; ++i) {
        num += std::norm(rec[i] - ph * f[i]);
        den += std::norm(f[i]);
    }
    CHECK(std::sqrt(num / den) < 1e-5);

    GridSignal g3 = shifted_gaussian(kGrid, 0.1, -0.2, 1.1);
    PhaseSpaceGrid v = stft(f, g3);
    PhaseSpaceGrid wa = awigner_grid(c, f, g1);
    cplx norm = inner(g2, g1);
    std::vector<cplx> got, want;
    for (auto [m, k] : std::vector<std::pair<int, int>>{{128, 128}, {136, 120}, {120, 140}, {132, 131}}) {
        GridSignal shifted = tf_shift(g3, {kGrid.x(m), kGrid.xi(k)});
        got.push_back(moyal_pairing(wa, awigner_grid(c, shifted, g2)) / norm);
        want.push_back(v(m, k));
    }
    CHECK(testutil::phase_aligned_max_diff(got, want) < 1e-5);
}

TEST_CASE("metaplectic action on the grid") {
    GridSignal h1 = hermite_signal(kGrid, 1);
    GridSignal fh = metaplectic_grid(fourier_matrix(1), h1);
    for (int i = 0; i < kGrid.n; i += 7) CHECK(std::abs(fh[i] - cplx(0, -1) * h1[i]) < 1e-10);

    std::mt19937 rng(17);
    for (int i = 0; i < 4; ++i) {
        SymplecticMatrix s = testutil::mild_random_word(rng, 1, 3);
        GaussianState st = testutil::random_gaussian(rng);
        GridSignal out = metaplectic_grid(s, gaussian_signal(kGrid, st));
        GridSignal ref = gaussian_signal(kGrid, apply_metaplectic(s, st));
        CHECK(testutil::phase_aligned_max_diff(out.samples(), ref.samples()) < 1e-8);
    }
    CHECK_THROWS_AS(metaplectic_grid(fourier_matrix(1), standard_gaussian(Grid1D(256, 0.1))), PreconditionError);
}
