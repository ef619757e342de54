#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "symtfa/grid.hpp"

namespace symtfa {

// Operations on an n x n row-major field whose row coordinate has spacing
// h_row and column coordinate spacing h_col, both on centered grids.
// Shifts are band-limited (FFT phase ramps); rescaling uses trigonometric
// interpolation with zero outside the extent.

// out(.., y) = in(.., y + s[line]) along the given axis (1 = along a row, 0 = along a column).
void shift_lines(std::vector<cplx>& v, int n, int axis, double h, const std::vector<double>& s);
// out(y) = in(c y) along the given axis.
void scale_lines(std::vector<cplx>& v, int n, int axis, double h, double c);

// out(z) = in(M z) for invertible M.
void compose_linear(std::vector<cplx>& v, int n, double h_row, double h_col, const Eigen::Matrix2d& M);

PhaseSpaceGrid compose_linear(const PhaseSpaceGrid& w, const Eigen::Matrix2d& M);
// out(z) = w(z - a).
PhaseSpaceGrid translate(const PhaseSpaceGrid& w, double a_x, double a_xi);

}  // namespace symtfa
