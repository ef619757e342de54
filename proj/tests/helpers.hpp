#pragma once

#include <complex>
#include <random>
#include <vector>

#include "symtfa/grid.hpp"
#include "symtfa/metaplectic.hpp"
#include "symtfa/symplectic.hpp"

namespace testutil {

using symtfa::cplx;
using symtfa::Rational;
using symtfa::RationalMatrix;

// mpq_class(num, den) is not canonicalized by GMP.
inline Rational frac(int num, int den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational small_rational(std::mt19937& rng, int num_range = 5, int den_max = 4) {
    std::uniform_int_distribution<int> num(-num_range, num_range), den(1, den_max);
    Rational r(num(rng), den(rng));
    r.canonicalize();
    return r;
}

inline RationalMatrix random_symmetric(std::mt19937& rng, int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m(i, j) = m(j, i) = small_rational(rng);
    return m;
}

inline RationalMatrix random_invertible(std::mt19937& rng, int n) {
    for (;;) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) m(i, j) = small_rational(rng);
        if (m.is_invertible()) return m;
    }
}

inline symtfa::SymplecticMatrix random_generator(std::mt19937& rng, int n) {
    switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: return symtfa::fourier_matrix(n);
        case 1: return symtfa::chirp_matrix(random_symmetric(rng, n));
        default: return symtfa::dilation_matrix(random_invertible(rng, n));
    }
}

inline symtfa::SymplecticMatrix random_word(std::mt19937& rng, int n, int length) {
    symtfa::SymplecticMatrix m = symtfa::fourier_matrix(n);
    for (int i = 0; i < length; ++i) m = m * random_generator(rng, n);
    return m;
}

// Mild entries keep the floating Gaussian backend well conditioned.
inline symtfa::SymplecticMatrix mild_random_word(std::mt19937& rng, int n, int length) {
    std::uniform_int_distribution<int> pick(0, 2), num(-2, 2);
    symtfa::SymplecticMatrix m = symtfa::fourier_matrix(n);
    for (int i = 0; i < length; ++i) {
        int kind = pick(rng);
        if (kind == 0) {
            m = m * symtfa::fourier_matrix(n);
        } else if (kind == 1) {
            RationalMatrix c(n, n);
            for (int a = 0; a < n; ++a)
                for (int b = a; b < n; ++b) c(a, b) = c(b, a) = frac(num(rng), 2);
            m = m * symtfa::chirp_matrix(c);
        } else {
            RationalMatrix l = RationalMatrix::identity(n);
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) l(a, b) += frac(num(rng), 4);
            if (l.is_invertible() && l.inverse().to_double().cwiseAbs().maxCoeff() < 4.0)
                m = m * symtfa::dilation_matrix(l);
        }
    }
    return m;
}

inline symtfa::CovariantForm random_covariant(std::mt19937& rng, int d) {
    RationalMatrix a11(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) a11(i, j) = small_rational(rng);
    return symtfa::CovariantForm(a11, random_symmetric(rng, d), random_symmetric(rng, d));
}

inline symtfa::GaussianState random_gaussian(std::mt19937& rng, int n = 1) {
    std::uniform_real_distribution<double> u(-0.5, 0.5), pos(0.6, 1.6);
    Eigen::MatrixXcd M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            cplx v = i == j ? cplx(pos(rng), u(rng)) : cplx(0.2 * u(rng), 0.2 * u(rng));
            M(i, j) = M(j, i) = v;
        }
    Eigen::VectorXcd b(n);
    for (int i = 0; i < n; ++i) b(i) = cplx(u(rng), u(rng));
    return symtfa::GaussianState(cplx(1.0 + u(rng), u(rng)), M, b);
}

// max |a - c b| after removing the best global unimodular c.
inline double phase_aligned_max_diff(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    cplx c = symtfa::best_phase(a, b);
    double m = 0.0;
    for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - c * b[i]));
    return m;
}

}  // namespace testutil
