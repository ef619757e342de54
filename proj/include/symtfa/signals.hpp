#pragma once

#include "symtfa/grid.hpp"
#include "symtfa/metaplectic.hpp"

namespace symtfa {

// L2-normalized Hermite function with h_0(t) = 2^{1/4} e^{-pi t^2} and F h_k = (-i)^k h_k.
double hermite_function(int k, double t);

GridSignal hermite_signal(const Grid1D& grid, int k);
GridSignal gaussian_signal(const Grid1D& grid, const GaussianState& s);
GridSignal standard_gaussian(const Grid1D& grid);

// pi(w) f = M_{z2} T_{z1} f.
GridSignal tf_shift(const GridSignal& f, const TFShift& w);

}  // namespace symtfa
