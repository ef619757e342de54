#pragma once

#include <complex>
#include <vector>

namespace symtfa {

using cplx = std::complex<double>;

// Unnormalized DFT, sign -1 forward and +1 backward. Length must be a power of two.
void dft(const cplx* in, cplx* out, int n, int sign);

// Continuous Fourier transform emulation on centered grids.
// ct_forward: samples f(x_n), x_n = (n - N/2) h  ->  approx of f^(xi_k), xi_k = (k - N/2)/(N h).
// ct_inverse: samples F(xi_k) with dual spacing hd  ->  approx of the inverse transform at x_n.
std::vector<cplx> ct_forward(const std::vector<cplx>& f, double h);
std::vector<cplx> ct_inverse(const std::vector<cplx>& F, double hd);

// Same transforms applied to every row (axis 1) or column (axis 0) of an n x n row-major array.
void ct_forward_axis(std::vector<cplx>& a, int n, int axis, double h);
void ct_inverse_axis(std::vector<cplx>& a, int n, int axis, double hd);

}  // namespace symtfa
