#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "symtfa/errors.hpp"
#include "symtfa/schrodinger.hpp"
#include "symtfa/signals.hpp"

using namespace symtfa;
using RM = RationalMatrix;

namespace {

constexpr double kPi = 3.14159265358979323846;

Eigen::MatrixXd m1(double v) { return Eigen::MatrixXd::Constant(1, 1, v); }

QuadraticHamiltonian random_h(std::mt19937& rng, int d) {
    std::normal_distribution<double> n01;
    Eigen::MatrixXd a(d, d), b(d, d), c(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            a(i, j) = n01(rng);
            b(i, j) = n01(rng);
            c(i, j) = n01(rng);
        }
    return QuadraticHamiltonian(a + a.transpose(), b, c + c.transpose());
}

// u(t, x) for u0 = 2^{1/4} e^{-pi x^2} under the multiplier e^{-4 pi^2 i t xi^2}.
cplx evolved_gaussian(double x, double t) {
    cplx a(1.0, 4 * kPi * t);
    return std::pow(2.0, 0.25) / std::sqrt(a) * std::exp(-kPi * x * x / a);
}

}  // namespace

TEST_CASE("Hamiltonian matrix") {
    Eigen::MatrixXd d = hamiltonian_matrix(QuadraticHamiltonian::free_particle());
    CHECK(d(0, 0) == 0.0);
    CHECK(d(0, 1) == doctest::Approx(4 * kPi));
    CHECK(d(1, 0) == 0.0);
    CHECK(d(1, 1) == 0.0);
    Eigen::MatrixXd h = hamiltonian_matrix(QuadraticHamiltonian::harmonic());
    CHECK((h - symplectic_J_double(1)).norm() == 0.0);
    std::mt19937 rng(4);
    Eigen::MatrixXd j = symplectic_J_double(2);
    for (int i = 0; i < 10; ++i) {
        Eigen::MatrixXd dd = hamiltonian_matrix(random_h(rng, 2));
        CHECK((dd.transpose() * j + j * dd).cwiseAbs().maxCoeff() < 1e-12);
        CHECK(in_symplectic_algebra(dd));
    }
    CHECK_THROWS_AS(QuadraticHamiltonian(Eigen::MatrixXd::Zero(1, 1), m1(0), Eigen::MatrixXd::Zero(2, 2)),
                    DimensionError);
    Eigen::MatrixXd asym(2, 2);
    asym << 0, 1, 0, 0;
    CHECK_THROWS_AS(QuadraticHamiltonian(asym, Eigen::MatrixXd::Zero(2, 2), Eigen::MatrixXd::Zero(2, 2)),
                    ParameterError);
}

TEST_CASE("Hamiltonian flow") {
    auto fp = QuadraticHamiltonian::free_particle();
    CHECK((flow(fp, 0.0).chi - Eigen::MatrixXd::Identity(2, 2)).norm() == 0.0);
    Eigen::MatrixXd shear = flow(fp, 0.3).chi;
    CHECK(std::abs(shear(0, 1) - 4 * kPi * 0.3) < 1e-12);
    CHECK(std::abs(shear(0, 0) - 1.0) < 1e-15);
    CHECK(std::abs(shear(1, 0)) < 1e-15);
    Eigen::MatrixXd rot = flow(QuadraticHamiltonian::harmonic(), kPi / 2).chi;
    CHECK((rot - symplectic_J_double(1)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(is_symplectic(rot, 1e-12));

    std::mt19937 rng(9);
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    for (int i = 0; i < 50; ++i) {
        auto h = random_h(rng, 1 + i % 2);
        double t = ut(rng), s = ut(rng);
        Eigen::MatrixXd a = flow(h, t).chi, b = flow(h, s).chi, ab = flow(h, t + s).chi;
        CHECK(is_symplectic(a, 1e-10));
        double scale = std::max(1.0, ab.cwiseAbs().maxCoeff());
        CHECK((ab - a * b).cwiseAbs().maxCoeff() <= 1e-9 * scale);
    }
}

TEST_CASE("shift-invertibility is preserved by the flow") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> ut(-1.0, 1.0);
    int singular = 0;
    for (int i = 0; i < 20; ++i) {
        CovariantForm c = i % 4 == 0 ? tau_form(Rational(i % 8 == 0 ? 0 : 1)) : testutil::random_covariant(rng, 1);
        ShiftMatrixE e = matrix_E(c);
        RM chi = RM::from_double(flow(random_h(rng, 1), ut(rng)).chi);
        ShiftMatrixE et = conjugate_by_flow(e, chi);
        CHECK(et.invertible == e.invertible);
        CHECK(et.e.determinant() == e.e.determinant());
        if (!e.invertible) ++singular;
    }
    CHECK(singular >= 5);
}

TEST_CASE("free particle solver") {
    Grid1D grid(512, 1.0 / std::sqrt(512.0));
    GaussianState g0 = GaussianState::unit(1);
    GridSignal u0 = gaussian_signal(grid, g0);
    GridSignal same = free_particle_solve(u0, 0.0);
    for (int i = 0; i < grid.n; ++i) CHECK(std::abs(same[i] - u0[i]) < 1e-14);

    GridSignal ut = free_particle_solve(GridSignal::from_samples(grid, u0.samples()), 0.1);
    CHECK(std::abs(ut.l2_norm() - u0.l2_norm()) < 1e-10);
    double e = 0.0;
    for (int i = 0; i < grid.n; ++i) e = std::max(e, std::abs(ut[i] - evolved_gaussian(grid.x(i), 0.1)));
    CHECK(e <= 1e-8);

    GaussianState gt = free_particle_gaussian(g0, 0.1);
    for (double x : {-1.0, 0.0, 0.37, 2.0}) CHECK(std::abs(gt(x) - evolved_gaussian(x, 0.1)) < 1e-12);
    GridSignal analytic = free_particle_solve(g0, grid, 0.1);
    CHECK(analytic.has_analytic());
    CHECK(std::abs(analytic.at(0.123) - evolved_gaussian(0.123, 0.1)) < 1e-12);

    CHECK_THROWS_AS(solve_spectral(QuadraticHamiltonian::harmonic(), u0, 0.1), UnsupportedError);
}

TEST_CASE("Wigner transport for the free particle") {
    Grid1D grid(512, 1.0 / std::sqrt(512.0));
    for (double t : {0.05, 0.1}) {
        PhaseSpaceGrid w = wigner(free_particle_solve(GaussianState::unit(1), grid, t),
                                  free_particle_solve(GaussianState::unit(1), grid, t));
        double e = 0.0;
        for (int m = 0; m < grid.n; ++m)
            for (int k = 0; k < grid.n; ++k) {
                double x = w.x(m) - 4 * kPi * t * w.xi(k), xi = w.xi(k);
                e = std::max(e, std::abs(w(m, k) - 2.0 * std::exp(-2 * kPi * (x * x + xi * xi))));
            }
        CHECK(e <= 1e-5);
    }
}

TEST_CASE("Cohen transport") {
    Grid1D grid(256, 1.0 / 16.0);
    auto fp = QuadraticHamiltonian::free_particle();
    GridSignal u0 = standard_gaussian(grid);
    PhaseSpaceGrid w0 = wigner(u0, u0);
    PhaseSpaceGrid still = transport_cohen(Eigen::Matrix2d::Zero(), u0, fp, 0.0);
    CHECK(max_abs_diff(still, w0) < 1e-12);

    double t = 0.05;
    PhaseSpaceGrid moved = transport_cohen(Eigen::Matrix2d::Zero(), u0, fp, t);
    double e = 0.0;
    for (int m = 0; m < grid.n; ++m)
        for (int k = 0; k < grid.n; ++k) {
            double x = moved.x(m) - 4 * kPi * t * moved.xi(k), xi = moved.xi(k);
            e = std::max(e, std::abs(moved(m, k) - 2.0 * std::exp(-2 * kPi * (x * x + xi * xi))));
        }
    CHECK(e < 1e-6);

    // sigma_tau transported versus the tau-Wigner of the solved state.
    Grid1D big(512, 1.0 / std::sqrt(512.0));
    GaussianState g0 = GaussianState::unit(1);
    GridSignal b0 = gaussian_signal(big, g0);
    GridSignal bt = free_particle_solve(g0, big, t);
    Eigen::Matrix2d B = matrix_B(tau_form(Rational(3, 10))).b.to_double();
    CHECK(relative_l2_diff(transport_cohen(B, b0, fp, t), tau_wigner(bt, bt, 0.3)) <= 1e-3);
}

TEST_CASE("A-Wigner propagation") {
    Grid1D big(512, 1.0 / std::sqrt(512.0));
    auto fp = QuadraticHamiltonian::free_particle();
    GaussianState g0 = GaussianState::unit(1);
    CHECK(propagate_awigner(tau_form(Rational(1, 2)), g0, big, fp, 0.05).residual <= 1e-4);
    CHECK(propagate_awigner(tau_form(Rational(3, 10)), g0, big, fp, 0.05).residual <= 1e-3);
    Grid1D small(128, 1.0 / std::sqrt(128.0));
    for (Rational tau : {Rational(1, 2), Rational(3, 10), Rational(0)})
        CHECK(propagate_awigner(tau_form(tau), g0, small, fp, 0.0).residual <= 1e-10);
}

TEST_CASE("conservation condition") {
    CHECK(conserv_condition(tau_form(Rational(1, 2))));
    CHECK_FALSE(conserv_condition(tau_form(Rational(3, 10))));
    CHECK_FALSE(conserv_condition(tau_form(Rational(0))));
    RM k(2, 2, {0, 3, -3, 0});
    CovariantForm anti(RM::scalar(2, Rational(1, 2)) + k, RM::identity(2), RM::zero(2, 2));
    CHECK(conserv_condition(anti));
    CHECK_FALSE(conserv_condition(CovariantForm(RM::zero(1, 1), RM::zero(1, 1), RM::zero(1, 1))));
}

TEST_CASE("flow-conjugated A-Wigner quadrature") {
    Grid1D grid(256, 1.0 / 16.0);
    GridSignal u0 = standard_gaussian(grid);
    auto F = [&](double a, double b) { return u0.at(a) * std::conj(u0.at(b)); };
    std::vector<std::pair<double, double>> pts;
    std::vector<std::pair<int, int>> idx{{128, 128}, {120, 136}, {140, 124}, {131, 119}};
    for (auto [m, k] : idx) pts.emplace_back(grid.x(m), grid.xi(k));

    PhaseSpaceGrid w3 = tau_wigner(u0, u0, 0.3), w5 = wigner(u0, u0);
    auto at0 = mu_At_quadrature(0.3, 0.0, F, pts);
    auto half = mu_At_quadrature(0.5, 0.37, F, pts);
    for (size_t i = 0; i < idx.size(); ++i) {
        CHECK(std::abs(at0[i] - w3(idx[i].first, idx[i].second)) < 1e-6);
        CHECK(std::abs(half[i] - w5(idx[i].first, idx[i].second)) < 1e-6);
    }

    double t = 0.05;
    Eigen::MatrixXd chi = flow(QuadraticHamiltonian::free_particle(), t).chi;
    Eigen::Matrix2d bt = conjugate_kernel(matrix_B(tau_form(Rational(3, 10))).b.to_double(), chi);
    PhaseSpaceGrid cohen = cohen_multiply(w5, bt);
    auto q = mu_At_quadrature(0.3, t, F, pts);
    double e = 0.0;
    for (size_t i = 0; i < idx.size(); ++i) e = std::max(e, std::abs(q[i] - cohen(idx[i].first, idx[i].second)));
    CHECK(e <= 1e-3);

    auto flat = [](double, double) { return cplx(1.0, 0.0); };
    CHECK_THROWS_AS(mu_At_quadrature(0.3, t, flat, pts), NumericalDomainError);
}
