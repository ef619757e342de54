#include "symtfa/schrodinger.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

#include "symtfa/errors.hpp"
#include "symtfa/fft.hpp"
#include "symtfa/resample.hpp"
#include "symtfa/signals.hpp"

namespace symtfa {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool symmetric(const Eigen::MatrixXd& m) {
    return (m - m.transpose()).cwiseAbs().maxCoeff() <= 1e-14 * std::max(1.0, m.cwiseAbs().maxCoeff());
}

void require_d1(const QuadraticHamiltonian& h) {
    if (h.d() != 1) throw DimensionError("grid propagation handles d = 1 only");
}

}  // namespace

QuadraticHamiltonian::QuadraticHamiltonian(Eigen::MatrixXd A_, Eigen::MatrixXd B_, Eigen::MatrixXd C_)
    : A(std::move(A_)), B(std::move(B_)), C(std::move(C_)) {
    const auto d = A.rows();
    if (d == 0 || A.cols() != d || B.rows() != d || B.cols() != d || C.rows() != d || C.cols() != d)
        throw DimensionError("Hamiltonian blocks must all be d x d");
    if (!symmetric(A)) throw ParameterError("A must be symmetric");
    if (!symmetric(C)) throw ParameterError("C must be symmetric");
}

QuadraticHamiltonian QuadraticHamiltonian::free_particle(int d) {
    return {Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Zero(d, d), 4.0 * kPi * Eigen::MatrixXd::Identity(d, d)};
}

QuadraticHamiltonian QuadraticHamiltonian::harmonic(int d) {
    return {Eigen::MatrixXd::Identity(d, d), Eigen::MatrixXd::Zero(d, d), Eigen::MatrixXd::Identity(d, d)};
}

bool QuadraticHamiltonian::spectral_family() const {
    return A.cwiseAbs().maxCoeff() == 0.0 && B.cwiseAbs().maxCoeff() == 0.0;
}

Eigen::MatrixXd hamiltonian_matrix(const QuadraticHamiltonian& h) {
    const int d = h.d();
    Eigen::MatrixXd D(2 * d, 2 * d);
    D << h.B, h.C, -h.A, -h.B.transpose();
    return D;
}

bool in_symplectic_algebra(const Eigen::MatrixXd& D, double tol) {
    Eigen::MatrixXd J = symplectic_J_double(static_cast<int>(D.rows()) / 2);
    return (D.transpose() * J + J * D).cwiseAbs().maxCoeff() <= tol * std::max(1.0, D.cwiseAbs().maxCoeff());
}

HamiltonianFlow flow(const QuadraticHamiltonian& h, double t) {
    HamiltonianFlow f;
    f.D = hamiltonian_matrix(h);
    f.t = t;
    f.chi = (t * f.D).exp();
    return f;
}

Eigen::MatrixXd transported_kernel(const Eigen::MatrixXd& B, const Eigen::MatrixXd& chi) {
    // The literal conjugation (chi^{-1})^T B chi^{-1} taken at chi^T.
    return conjugate_kernel(B, Eigen::MatrixXd(chi.transpose()));
}

Eigen::MatrixXd transported_shift(const Eigen::MatrixXd& E, const Eigen::MatrixXd& chi) {
    return conjugate_shift(E, Eigen::MatrixXd(chi.transpose()));
}

GridSignal solve_spectral(const QuadraticHamiltonian& h, const GridSignal& u0, double t) {
    require_d1(h);
    if (!h.spectral_family())
        throw UnsupportedError("direct solver covers H = 1/2 xi.C xi only; use the transport law");
    const Grid1D& g = u0.grid();
    const double c = h.C(0, 0);
    std::vector<cplx> spec = ct_forward(u0.samples(), g.dx);
    for (int k = 0; k < g.n; ++k) {
        const double xi = g.xi(k);
        spec[k] *= std::polar(1.0, -kPi * c * t * xi * xi);
    }
    return GridSignal::from_samples(g, ct_inverse(spec, g.dxi()), u0.descriptor() + "(t)");
}

GridSignal free_particle_solve(const GridSignal& u0, double t) {
    if (t == 0.0) return u0;
    return solve_spectral(QuadraticHamiltonian::free_particle(1), u0, t);
}

GaussianState free_particle_gaussian(const GaussianState& u0, double t) {
    if (u0.n() != 1) throw DimensionError("closed-form evolution implemented for d = 1");
    if (t == 0.0) return u0;
    // u(t) = F^{-1} (e^{-4 pi^2 i t xi^2} F u0) and F^{-1} = D_{-1} F.
    RationalMatrix chirp(1, 1, {rational_from_double(-4.0 * kPi * t)});
    GaussianState s = fourier_gaussian(u0);
    s = apply_generator(Generator::chirp(chirp), s);
    s = fourier_gaussian(s);
    return apply_generator(Generator::dilation(RationalMatrix(1, 1, {Rational(-1)})), s);
}

GridSignal free_particle_solve(const GaussianState& u0, const Grid1D& grid, double t) {
    return gaussian_signal(grid, free_particle_gaussian(u0, t));
}

PhaseSpaceGrid transport_cohen(const Eigen::Matrix2d& B, const GridSignal& u0,
                               const QuadraticHamiltonian& h, double t) {
    require_d1(h);
    HamiltonianFlow fl = flow(h, t);
    Eigen::Matrix2d Bt = transported_kernel(B, fl.chi);
    PhaseSpaceGrid q = cohen_multiply(wigner(u0, u0), Bt);
    return compose_linear(q, Eigen::Matrix2d(fl.chi.inverse()));
}

PhaseSpaceGrid transport_cohen(const PhaseSpaceGrid& sigma, const GridSignal& u0,
                               const QuadraticHamiltonian& h, double t) {
    require_d1(h);
    require_same_grid(sigma.grid, u0.grid());
    HamiltonianFlow fl = flow(h, t);
    PhaseSpaceGrid sigma_t = compose_linear(sigma, Eigen::Matrix2d(fl.chi));
    PhaseSpaceGrid q = cohen_convolve(wigner(u0, u0), sigma_t);
    PhaseSpaceGrid out = compose_linear(q, Eigen::Matrix2d(fl.chi.inverse()));
    out.warnings.push_back("kernel resampled on the grid before convolution");
    return out;
}

namespace {

PropagationResult propagate_impl(const CovariantForm& c, const GridSignal& u0, const GridSignal& ut,
                                 const QuadraticHamiltonian& h, double t) {
    if (c.d() != 1) throw DimensionError("grid propagation handles d = 1 only");
    Eigen::Matrix2d B = matrix_B(c).b.to_double();
    PropagationResult r;
    r.lhs = c.f2_family() ? awigner_grid(c, ut, ut) : cohen_multiply(wigner(ut, ut), B);
    r.rhs = transport_cohen(B, u0, h, t);
    r.residual = relative_l2_diff(r.lhs, r.rhs);
    return r;
}

}  // namespace

PropagationResult propagate_awigner(const CovariantForm& c, const GridSignal& u0,
                                    const QuadraticHamiltonian& h, double t) {
    return propagate_impl(c, u0, t == 0.0 ? u0 : solve_spectral(h, u0, t), h, t);
}

PropagationResult propagate_awigner(const CovariantForm& c, const GaussianState& u0, const Grid1D& grid,
                                    const QuadraticHamiltonian& h, double t) {
    require_d1(h);
    GridSignal s0 = gaussian_signal(grid, u0);
    if (!h.spectral_family())
        throw UnsupportedError("direct solver covers H = 1/2 xi.C xi only; use the transport law");
    // Closed form for H = 1/2 c xi^2 is the free-particle evolution at time c t / (4 pi).
    GridSignal ut = gaussian_signal(grid, free_particle_gaussian(u0, h.C(0, 0) * t / (4.0 * kPi)));
    return propagate_impl(c, s0, ut, h, t);
}

bool conserv_condition(const CovariantForm& c) {
    return c.a11() + c.a11().transpose() == RationalMatrix::identity(c.d());
}

std::vector<cplx> mu_At_quadrature(double tau, double t, const std::function<cplx(double, double)>& F,
                                   const std::vector<std::pair<double, double>>& points, double y_max,
                                   double dy) {
    if (!(dy > 0.0) || !(y_max > dy)) throw ParameterError("quadrature needs 0 < dy < y_max");
    const int ny = static_cast<int>(std::ceil(y_max / dy));
    const double chirp = 2.0 * kPi * t * (1.0 - 2.0 * tau);
    std::vector<cplx> out;
    out.reserve(points.size());
    for (const auto& [x, xi] : points) {
        cplx acc(0.0, 0.0);
        double peak = 0.0;
        double edge = 0.0;
        for (int j = -ny; j <= ny; ++j) {
            const double y = j * dy;
            cplx v = F(x + tau * y, x - (1.0 - tau) * y);
            double a = std::abs(v);
            peak = std::max(peak, a);
            if (std::abs(j) == ny) edge = std::max(edge, a);
            acc += v * std::polar(1.0, -2.0 * kPi * (y * xi + chirp * y * y));
        }
        if (!std::isfinite(peak) || edge > 1e-12 * std::max(peak, 1e-300))
            throw NumericalDomainError("quadrature refused: integrand has not decayed at |y| = y_max");
        out.push_back(acc * dy);
    }
    return out;
}

}  // namespace symtfa
