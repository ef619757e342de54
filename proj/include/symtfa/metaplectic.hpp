#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

#include "symtfa/symplectic.hpp"

namespace symtfa {

using cplx = std::complex<double>;

// x -> c * exp(-pi x.Mx + 2 pi b.x), M complex symmetric with Re M > 0.
class GaussianState {
public:
    GaussianState(cplx c, Eigen::MatrixXcd M, Eigen::VectorXcd b);

    // c = 2^{n/4}, M = I, b = 0: the L2-normalized standard Gaussian.
    static GaussianState unit(int n = 1);

    int n() const { return static_cast<int>(M_.rows()); }
    cplx c() const { return c_; }
    const Eigen::MatrixXcd& M() const { return M_; }
    const Eigen::VectorXcd& b() const { return b_; }

    cplx operator()(const Eigen::VectorXd& x) const;
    cplx operator()(double x) const;  // n == 1
    cplx operator()(double x, double y) const;  // n == 2

    GaussianState conj() const;
    // pi(z) s = M_{z2} T_{z1} s.
    GaussianState tf_shift(const Eigen::VectorXd& z1, const Eigen::VectorXd& z2) const;
    GaussianState scaled(cplx lambda) const { return GaussianState(c_ * lambda, M_, b_); }

private:
    cplx c_;
    Eigen::MatrixXcd M_;
    Eigen::VectorXcd b_;
};

struct Generator {
    enum class Kind { Fourier, Chirp, Dilation };
    Kind kind = Kind::Fourier;
    int n = 1;
    RationalMatrix param;  // C for Chirp, L for Dilation, empty for Fourier

    static Generator fourier(int n);
    static Generator chirp(const RationalMatrix& C);
    static Generator dilation(const RationalMatrix& L);

    RationalMatrix matrix() const;
    std::string describe() const;
};

// Factors stored in product order: matrix == factors[0] * factors[1] * ...
struct GeneratorWord {
    int n = 1;
    std::vector<Generator> factors;

    RationalMatrix product() const;
};

GeneratorWord factorize(const SymplecticMatrix& a);

GaussianState apply_generator(const Generator& g, const GaussianState& s);
GaussianState apply_word(const GeneratorWord& w, const GaussianState& s);
GaussianState apply_metaplectic(const SymplecticMatrix& a, const GaussianState& s);
GaussianState fourier_gaussian(const GaussianState& s);

// (f (x) conj g)(x, y) = f(x) conj(g(y)).
GaussianState tensor_conj(const GaussianState& f, const GaussianState& g);
GaussianState awigner_gaussian(const SymplecticMatrix& a, const GaussianState& f,
                               const GaussianState& g);

cplx gaussian_inner(const GaussianState& s1, const GaussianState& s2);

// det(M)^{-1/2} with the principal branch per eigenvalue; Re M > 0 assumed.
cplx det_inv_sqrt(const Eigen::MatrixXcd& M);

}  // namespace symtfa
