#pragma once

#include <limits>
#include <string>
#include <vector>

#include "symtfa/grid.hpp"
#include "symtfa/symplectic.hpp"
#include "symtfa/tfa.hpp"

namespace symtfa {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct MixedNormSpec {
    double p = 2.0;
    double q = 2.0;
    double s = 0.0;

    MixedNormSpec() = default;
    MixedNormSpec(double p_, double q_, double s_);
};

// v_s(x, xi) = (1 + x^2 + xi^2)^{s/2}.
double weight_vs(double x, double xi, double s);

// Inner L^p over x weighted by v_s, outer L^q over xi; Riemann cells dx and dxi.
double mixed_norm(const PhaseSpaceGrid& w, const MixedNormSpec& spec);
double mod_norm(const GridSignal& f, const GridSignal& g, const MixedNormSpec& spec);

struct SignalFamily {
    std::string descriptor;
    std::vector<GridSignal> members;
    std::vector<TFShift> offsets;
};

// pi(w) base for every w in the list.
SignalFamily shifted_family(const GridSignal& base, const std::vector<TFShift>& offsets,
                            const std::string& descriptor);
// Integer lattice {-r..r}^2.
std::vector<TFShift> square_lattice(int r);

struct EquivalenceReport {
    MixedNormSpec spec;
    std::string family;
    std::vector<double> numerators;    // ||W_A(f, g)||_{L^{p,q}_{v_s}}
    std::vector<double> denominators;  // ||f||_{M^{p,q}_{v_s}} with window g
    std::vector<double> ratios;
    double min = 0.0;
    double max = 0.0;
    double ratio = 0.0;  // max / min
};

EquivalenceReport equivalence_ratio(const Representation& rep, const SignalFamily& family,
                                    const GridSignal& g, const MixedNormSpec& spec);
EquivalenceReport equivalence_ratio(const SymplecticMatrix& a, const SignalFamily& family,
                                    const GridSignal& g, const MixedNormSpec& spec);

// ||mu(a) f||_{M^p_{v_s}} / ||f||_{M^p_{v_s}}, a in Sp(1), window g.
double metaplectic_norm_invariance(const SymplecticMatrix& a, const GridSignal& f, const GridSignal& g,
                                   const MixedNormSpec& spec);

// M^{p,q}_{v_s (x) 1} norm of a phase-space array seen as a 2-D signal, using the
// window 2^{1/2} e^{-pi |z|^2}. Cost N^4; refuses N > max_n.
double mpq_norm_2d(const PhaseSpaceGrid& F, const MixedNormSpec& spec, int max_n = 32);

}  // namespace symtfa
