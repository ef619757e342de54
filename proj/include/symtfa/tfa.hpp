#pragma once

#include <Eigen/Dense>
#include <functional>

#include "symtfa/grid.hpp"
#include "symtfa/metaplectic.hpp"
#include "symtfa/symplectic.hpp"

namespace symtfa {

// V_g f(x, xi) = int f(y) conj(g(y - x)) e^{-2 pi i y xi} dy.
PhaseSpaceGrid stft(const GridSignal& f, const GridSignal& g);

// W_tau(f, g)(x, xi) = int e^{-2 pi i t xi} f(x + tau t) conj(g(x - (1 - tau) t)) dt.
PhaseSpaceGrid tau_wigner(const GridSignal& f, const GridSignal& g, double tau);
inline PhaseSpaceGrid wigner(const GridSignal& f, const GridSignal& g) { return tau_wigner(f, g, 0.5); }

// mu(A_FT2 D_L)(f (x) conj g): sqrt|det L| f(L11 x + L12 y) conj(g(L21 x + L22 y)), then F in y.
PhaseSpaceGrid awigner_f2(const Eigen::Matrix2d& L, const GridSignal& f, const GridSignal& g);
PhaseSpaceGrid awigner_grid(const CovariantForm& c, const GridSignal& f, const GridSignal& g);
// Any member of the A_FT2 D_L family (covariant or not, e.g. A_ST).
PhaseSpaceGrid awigner_grid(const SymplecticMatrix& a, const GridSignal& f, const GridSignal& g);

// Right side of the rescaled-window STFT formula; needs A13 = A21 = 0 and A11, I - A11 invertible.
PhaseSpaceGrid awigner_via_stft(const CovariantForm& c, const GridSignal& f, const GridSignal& g);

enum class KernelSampling {
    BandLimited,  // inverse transform of the sampled multiplier e^{-pi i zeta.B zeta}
    ClosedForm,   // e^{-i pi sgn(B)/4} |det B|^{-1/2} e^{pi i z.B^{-1} z} sampled pointwise
};

// sigma = F^{-1}(e^{-pi i zeta.B zeta}); B = 0 gives the discrete delta 1/(dx dxi) at the origin node.
PhaseSpaceGrid cohen_kernel(const Eigen::Matrix2d& B, const Grid1D& grid,
                            KernelSampling mode = KernelSampling::BandLimited);
PhaseSpaceGrid cohen_kernel(const CovariantForm& c, const Grid1D& grid,
                            KernelSampling mode = KernelSampling::BandLimited);
int signature(const Eigen::Matrix2d& B);

// Continuous convolution w * sigma realized with emulated transforms (cell dx dxi).
PhaseSpaceGrid cohen_convolve(const PhaseSpaceGrid& w, const PhaseSpaceGrid& sigma);
// w * sigma_B without materializing the kernel: multiplier e^{-pi i zeta.B zeta}.
PhaseSpaceGrid cohen_multiply(const PhaseSpaceGrid& w, const Eigen::Matrix2d& B);

// Emulated 2-D Fourier transform of a phase-space array. Output index (p, q)
// is (zeta1, zeta2) = ((p - N/2) dxi, (q - N/2) dx).
std::vector<cplx> fourier_2d(const PhaseSpaceGrid& w);
// F_sigma a(z) = F a(Jz) back on the phase-space grid.
PhaseSpaceGrid symplectic_fourier(const PhaseSpaceGrid& w);

// Amb f(x, xi) = int f(y + x/2) conj(f(y - x/2)) e^{-2 pi i y xi} dy.
PhaseSpaceGrid ambiguity(const GridSignal& f);
PhaseSpaceGrid ambiguity_via_wigner(const GridSignal& f);

cplx moyal_pairing(const PhaseSpaceGrid& w1, const PhaseSpaceGrid& w2);

using Representation = std::function<PhaseSpaceGrid(const GridSignal&, const GridSignal&)>;
Representation tau_representation(double tau);
Representation matrix_representation(const SymplecticMatrix& a);

// Max residual of W(f+g) = W(f) + W(g) + W(f,g) + W(g,f).
double polarization_check(const GridSignal& f, const GridSignal& g, const Representation& rep);

// Samples of a two-variable function on the phase-space grid.
PhaseSpaceGrid sample_phase_space(const Grid1D& grid, const std::function<cplx(double, double)>& F);
PhaseSpaceGrid sample_phase_space(const Grid1D& grid, const GaussianState& s);

// Reconstruction of f from W_A(f, g1) in the A_FT2 D_L family:
// f(x) = <g2, g1>^{-1} int mu(A^{-1}) W_A(f, g1)(x, y) g2(y) dy.
GridSignal invert_awigner(const Eigen::Matrix2d& L, const PhaseSpaceGrid& w, const GridSignal& g1,
                          const GridSignal& g2);

// mu(a) f on the grid for a in Sp(1), applied generator by generator.
// Fourier steps require a self-dual grid (dx == dxi).
GridSignal metaplectic_grid(const SymplecticMatrix& a, const GridSignal& f);

cplx inner(const GridSignal& f, const GridSignal& g);

}  // namespace symtfa
