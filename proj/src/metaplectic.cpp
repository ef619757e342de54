#include "symtfa/metaplectic.hpp"

#include <cmath>
#include <random>

#include "symtfa/errors.hpp"

namespace symtfa {

namespace {

using RM = RationalMatrix;
constexpr double kPi = 3.14159265358979323846;

bool real_part_positive_definite(const Eigen::MatrixXcd& M) {
    Eigen::MatrixXd re = M.real();
    re = 0.5 * (re + re.transpose());
    Eigen::LLT<Eigen::MatrixXd> llt(re);
    return llt.info() == Eigen::Success;
}

GeneratorWord free_decomposition(const RM& s) {
    const int n = s.rows() / 2;
    RM A = s.block(0, 0, n, n), B = s.block(0, n, n, n), D = s.block(n, n, n, n);
    RM Binv = B.inverse();
    RM P = D * Binv;
    RM Q = Binv * A;
    GeneratorWord w{n, {}};
    if (!P.is_zero()) w.factors.push_back(Generator::chirp(P));
    if (Binv != RM::identity(n)) w.factors.push_back(Generator::dilation(Binv));
    w.factors.push_back(Generator::fourier(n));
    if (!Q.is_zero()) w.factors.push_back(Generator::chirp(Q));
    return w;
}

// A_FT2 = V_C J^{-1} V_C J V_C with C = diag(0, -I), and J^{-1} = D_{-I} J.
std::vector<Generator> ft2_factors(int d) {
    const int n = 2 * d;
    RM C = RM::block_diag(RM::zero(d, d), -RM::identity(d));
    return {Generator::chirp(C),   Generator::dilation(-RM::identity(n)),
            Generator::fourier(n), Generator::chirp(C),
            Generator::fourier(n), Generator::chirp(C)};
}

GeneratorWord factorize_unchecked(const SymplecticMatrix& a) {
    const int n = a.dim_n();
    const RM& m = a.matrix();
    RM A = m.block(0, 0, n, n), B = m.block(0, n, n, n);
    RM C = m.block(n, 0, n, n), D = m.block(n, n, n, n);
    RM Id = RM::identity(n);

    if (m == RM::identity(2 * n)) return {n, {}};
    if (m == symplectic_J(n)) return {n, {Generator::fourier(n)}};
    if (B.is_zero() && C.is_zero()) return {n, {Generator::dilation(A.inverse())}};
    if (B.is_zero() && A == Id && D == Id) return {n, {Generator::chirp(C)}};

    if (n % 2 == 0) {
        if (auto L = f2_dilation_factor(a)) {
            GeneratorWord w{n, ft2_factors(n / 2)};
            if (*L != Id) w.factors.push_back(Generator::dilation(*L));
            return w;
        }
    }
    if (B.is_invertible()) return free_decomposition(m);

    // S = S' J^{-1} V_{-Q} with S' = S V_Q J, whose upper-right block A + BQ is invertible.
    auto try_shift = [&](const RM& Q) -> std::optional<GeneratorWord> {
        if (!(A + B * Q).is_invertible()) return std::nullopt;
        RM sprime = m * chirp_matrix(Q).matrix() * symplectic_J(n);
        GeneratorWord w = free_decomposition(sprime);
        w.factors.push_back(Generator::fourier(n));
        w.factors.push_back(Generator::dilation(-Id));
        if (!Q.is_zero()) w.factors.push_back(Generator::chirp(-Q));
        return w;
    };
    for (int k = 0; k <= n + 1; ++k)
        if (auto w = try_shift(RM::scalar(n, Rational(k)))) return *w;
    std::mt19937 rng(12345u);
    std::uniform_int_distribution<int> dist(-3, 3);
    for (int attempt = 0; attempt < 10000; ++attempt) {
        RM Q(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) Q(i, j) = Q(j, i) = dist(rng);
        if (auto w = try_shift(Q)) return *w;
    }
    throw NumericalDomainError("factorize: no invertible shifted block found");
}

}  // namespace

GaussianState::GaussianState(cplx c, Eigen::MatrixXcd M, Eigen::VectorXcd b)
    : c_(c), M_(std::move(M)), b_(std::move(b)) {
    const auto n = M_.rows();
    if (n == 0 || M_.cols() != n || b_.size() != n)
        throw DimensionError("Gaussian state needs square M and matching b");
    double scale = std::max(1.0, M_.cwiseAbs().maxCoeff());
    if ((M_ - M_.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw ParameterError("Gaussian quadratic form must be symmetric");
    M_ = 0.5 * (M_ + M_.transpose());
    if (!real_part_positive_definite(M_))
        throw ParameterError("Gaussian quadratic form needs positive-definite real part");
    if (!std::isfinite(c_.real()) || !std::isfinite(c_.imag()) || !b_.allFinite())
        throw NumericalDomainError("Gaussian state has non-finite parameters");
}

GaussianState GaussianState::unit(int n) {
    return GaussianState(std::pow(2.0, 0.25 * n), Eigen::MatrixXcd::Identity(n, n),
                         Eigen::VectorXcd::Zero(n));
}

cplx GaussianState::operator()(const Eigen::VectorXd& x) const {
    if (x.size() != n()) throw DimensionError("evaluation point has wrong dimension");
    Eigen::VectorXcd xc = x.cast<cplx>();
    cplx q = (xc.transpose() * M_ * xc)(0, 0);
    cplx l = (b_.transpose() * xc)(0, 0);
    return c_ * std::exp(-kPi * q + 2.0 * kPi * l);
}

cplx GaussianState::operator()(double x) const {
    if (n() != 1) throw DimensionError("scalar evaluation needs n == 1");
    return c_ * std::exp(-kPi * M_(0, 0) * x * x + 2.0 * kPi * b_(0) * x);
}

cplx GaussianState::operator()(double x, double y) const {
    if (n() != 2) throw DimensionError("planar evaluation needs n == 2");
    cplx q = M_(0, 0) * x * x + 2.0 * M_(0, 1) * x * y + M_(1, 1) * y * y;
    cplx l = b_(0) * x + b_(1) * y;
    return c_ * std::exp(-kPi * q + 2.0 * kPi * l);
}

GaussianState GaussianState::conj() const {
    return GaussianState(std::conj(c_), M_.conjugate(), b_.conjugate());
}

GaussianState GaussianState::tf_shift(const Eigen::VectorXd& z1, const Eigen::VectorXd& z2) const {
    if (z1.size() != n() || z2.size() != n()) throw DimensionError("shift has wrong dimension");
    Eigen::VectorXcd a = z1.cast<cplx>();
    Eigen::VectorXcd nb = b_ + M_ * a + cplx(0, 1) * z2.cast<cplx>();
    cplx q = (a.transpose() * M_ * a)(0, 0);
    cplx l = (b_.transpose() * a)(0, 0);
    return GaussianState(c_ * std::exp(-kPi * q - 2.0 * kPi * l), M_, nb);
}

Generator Generator::fourier(int n) { return {Kind::Fourier, n, RM()}; }

Generator Generator::chirp(const RM& C) {
    if (!C.is_square() || !C.is_symmetric()) throw ParameterError("chirp generator needs symmetric C");
    return {Kind::Chirp, C.rows(), C};
}

Generator Generator::dilation(const RM& L) {
    if (!L.is_square() || !L.is_invertible()) throw ParameterError("dilation generator needs invertible L");
    return {Kind::Dilation, L.rows(), L};
}

RM Generator::matrix() const {
    switch (kind) {
        case Kind::Fourier: return symplectic_J(n);
        case Kind::Chirp: return chirp_matrix(param).matrix();
        case Kind::Dilation: return dilation_matrix(param).matrix();
    }
    return RM();
}

std::string Generator::describe() const {
    switch (kind) {
        case Kind::Fourier: return "Fourier";
        case Kind::Chirp: return "Chirp(" + param.to_string() + ")";
        case Kind::Dilation: return "Dilation(" + param.to_string() + ")";
    }
    return "?";
}

RM GeneratorWord::product() const {
    RM p = RM::identity(2 * n);
    for (const auto& g : factors) p = p * g.matrix();
    return p;
}

GeneratorWord factorize(const SymplecticMatrix& a) {
    GeneratorWord w = factorize_unchecked(a);
    if (w.product() != a.matrix()) throw std::logic_error("factorize: word product mismatch");
    return w;
}

cplx det_inv_sqrt(const Eigen::MatrixXcd& M) {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(M, false);
    if (es.info() != Eigen::Success) throw NumericalDomainError("eigenvalue solver failed");
    cplx r(1.0, 0.0);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) r /= std::sqrt(es.eigenvalues()(i));
    return r;
}

GaussianState apply_generator(const Generator& g, const GaussianState& s) {
    if (g.n != s.n()) throw DimensionError("generator and state dimensions differ");
    switch (g.kind) {
        case Generator::Kind::Chirp: {
            Eigen::MatrixXcd C = g.param.to_double().cast<cplx>();
            return GaussianState(s.c(), s.M() - cplx(0, 1) * C, s.b());
        }
        case Generator::Kind::Dilation: {
            Eigen::MatrixXd L = g.param.to_double();
            Eigen::MatrixXcd Lc = L.cast<cplx>();
            double amp = std::sqrt(std::abs(g.param.determinant().get_d()));
            return GaussianState(s.c() * amp, Lc.transpose() * s.M() * Lc, Lc.transpose() * s.b());
        }
        case Generator::Kind::Fourier: {
            Eigen::MatrixXcd Minv = s.M().inverse();
            if (!Minv.allFinite() || !real_part_positive_definite(Minv))
                throw NumericalDomainError("Fourier step: inverse quadratic form lost definiteness");
            cplx q = (s.b().transpose() * Minv * s.b())(0, 0);
            cplx c = s.c() * det_inv_sqrt(s.M()) * std::exp(kPi * q);
            return GaussianState(c, Minv, cplx(0, -1) * (Minv * s.b()));
        }
    }
    throw std::logic_error("unknown generator");
}

GaussianState apply_word(const GeneratorWord& w, const GaussianState& s) {
    GaussianState cur = s;
    for (auto it = w.factors.rbegin(); it != w.factors.rend(); ++it) cur = apply_generator(*it, cur);
    return cur;
}

GaussianState apply_metaplectic(const SymplecticMatrix& a, const GaussianState& s) {
    if (a.dim_n() != s.n()) throw DimensionError("metaplectic operator and state dimensions differ");
    return apply_word(factorize(a), s);
}

GaussianState fourier_gaussian(const GaussianState& s) {
    return apply_generator(Generator::fourier(s.n()), s);
}

GaussianState tensor_conj(const GaussianState& f, const GaussianState& g) {
    const int nf = f.n(), ng = g.n();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(nf + ng, nf + ng);
    M.topLeftCorner(nf, nf) = f.M();
    M.bottomRightCorner(ng, ng) = g.M().conjugate();
    Eigen::VectorXcd b(nf + ng);
    b << f.b(), g.b().conjugate();
    return GaussianState(f.c() * std::conj(g.c()), M, b);
}

GaussianState awigner_gaussian(const SymplecticMatrix& a, const GaussianState& f,
                               const GaussianState& g) {
    if (f.n() != g.n()) throw DimensionError("f and g must share a dimension");
    if (a.dim_n() != 2 * f.n()) throw DimensionError("A must lie in Sp(2d) for d = dim f");
    return apply_metaplectic(a, tensor_conj(f, g));
}

cplx gaussian_inner(const GaussianState& s1, const GaussianState& s2) {
    if (s1.n() != s2.n()) throw DimensionError("inner product of states with different dimension");
    Eigen::MatrixXcd M = s1.M() + s2.M().conjugate();
    Eigen::VectorXcd b = s1.b() + s2.b().conjugate();
    if (!real_part_positive_definite(M)) throw NumericalDomainError("combined form not integrable");
    Eigen::VectorXcd mb = M.inverse() * b;
    cplx q = (b.transpose() * mb)(0, 0);
    return s1.c() * std::conj(s2.c()) * det_inv_sqrt(M) * std::exp(kPi * q);
}

}  // namespace symtfa
