#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "symtfa/grid.hpp"
#include "symtfa/metaplectic.hpp"
#include "symtfa/symplectic.hpp"
#include "symtfa/tfa.hpp"

namespace symtfa {

// H(x, xi) = 1/2 x.Ax + xi.Bx + 1/2 xi.C xi.
struct QuadraticHamiltonian {
    Eigen::MatrixXd A, B, C;

    QuadraticHamiltonian(Eigen::MatrixXd A, Eigen::MatrixXd B, Eigen::MatrixXd C);
    // A = B = 0, C = 4 pi I: the flow is the shear (y, eta) -> (y + 4 pi t eta, eta).
    static QuadraticHamiltonian free_particle(int d = 1);
    static QuadraticHamiltonian harmonic(int d = 1);

    int d() const { return static_cast<int>(A.rows()); }
    bool spectral_family() const;  // A = 0 and B = 0
};

// D = [[B, C], [-A, -B^T]].
Eigen::MatrixXd hamiltonian_matrix(const QuadraticHamiltonian& h);
bool in_symplectic_algebra(const Eigen::MatrixXd& D, double tol = 1e-12);

struct HamiltonianFlow {
    Eigen::MatrixXd D;
    double t = 0.0;
    Eigen::MatrixXd chi;
};

HamiltonianFlow flow(const QuadraticHamiltonian& h, double t);

// Kernel matrix of sigma_t(z) = sigma(chi z) for sigma = F^{-1} e^{-pi i zeta.B zeta}:
// chi^{-1} B chi^{-T}.
Eigen::MatrixXd transported_kernel(const Eigen::MatrixXd& B, const Eigen::MatrixXd& chi);
// Shift matrix carried along the same flow: chi^{-1} E chi.
Eigen::MatrixXd transported_shift(const Eigen::MatrixXd& E, const Eigen::MatrixXd& chi);

// Spectral solver for H = 1/2 xi.C xi (d = 1): u^(t, xi) = e^{-i pi C t xi^2} u0^(xi).
GridSignal solve_spectral(const QuadraticHamiltonian& h, const GridSignal& u0, double t);
GridSignal free_particle_solve(const GridSignal& u0, double t);
// Closed-form evolution of a Gaussian datum, attached as the analytic evaluator.
GaussianState free_particle_gaussian(const GaussianState& u0, double t);
GridSignal free_particle_solve(const GaussianState& u0, const Grid1D& grid, double t);

// Predicted Q_sigma(u(t)) = (W u0 * sigma_t)(chi_t^{-1} z).
PhaseSpaceGrid transport_cohen(const Eigen::Matrix2d& B, const GridSignal& u0,
                               const QuadraticHamiltonian& h, double t);
PhaseSpaceGrid transport_cohen(const PhaseSpaceGrid& sigma, const GridSignal& u0,
                               const QuadraticHamiltonian& h, double t);

struct PropagationResult {
    PhaseSpaceGrid lhs;  // W_A(u(t)) from the directly solved u(t)
    PhaseSpaceGrid rhs;  // Cohen distribution of u0 with the flow-conjugated kernel, composed with chi^{-1}
    double residual = 0.0;
};

PropagationResult propagate_awigner(const CovariantForm& c, const GridSignal& u0,
                                    const QuadraticHamiltonian& h, double t);
PropagationResult propagate_awigner(const CovariantForm& c, const GaussianState& u0, const Grid1D& grid,
                                    const QuadraticHamiltonian& h, double t);

// A11 + A11^T == I exactly.
bool conserv_condition(const CovariantForm& c);

// Direct quadrature of
//   int e^{-2 pi i (y xi + 2 pi t (1 - 2 tau) y^2)} F(x + tau y, x - (1 - tau) y) dy
// at each (x, xi) point. Refuses F that has not decayed at |y| = y_max.
std::vector<cplx> mu_At_quadrature(double tau, double t, const std::function<cplx(double, double)>& F,
                                   const std::vector<std::pair<double, double>>& points,
                                   double y_max = 12.0, double dy = 1.0 / 64.0);

}  // namespace symtfa
