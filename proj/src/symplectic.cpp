#include "symtfa/symplectic.hpp"

#include <functional>
#include <sstream>

#include "symtfa/errors.hpp"

namespace symtfa {

namespace {

using RM = RationalMatrix;

void require_even_square(int rows, int cols) {
    if (rows != cols) throw DimensionError("matrix is not square");
    if (rows == 0 || rows % 2 != 0)
        throw DimensionError("symplectic test needs an even side length, got " + std::to_string(rows));
}

RM I(int d) { return RM::identity(d); }
RM Z(int d) { return RM::zero(d, d); }

RM assemble4(const std::array<RM, 16>& b, int d) {
    RM m(4 * d, 4 * d);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) m.set_block(i * d, j * d, b[i * 4 + j]);
    return m;
}

struct Constraint {
    const char* block;
    const char* text;
};

// Check order for the covariant pattern: fixed rows first, then the free rows.
constexpr Constraint kCovariantChecks[] = {
    {"A31", "A31 == 0"},          {"A32", "A32 == 0"},
    {"A33", "A33 == I"},          {"A34", "A34 == I"},
    {"A41", "A41 == -I"},         {"A42", "A42 == I"},
    {"A43", "A43 == 0"},          {"A44", "A44 == 0"},
    {"A12", "A12 == I - A11"},    {"A14", "A14 == A13"},
    {"A13", "A13 == A13^T"},      {"A22", "A22 == -A21"},
    {"A21", "A21 == A21^T"},      {"A23", "A23 == I - A11^T"},
    {"A24", "A24 == -A11^T"},
};

// Expected block value per constraint, given the blocks of the candidate.
template <typename Mat>
std::array<std::pair<Mat, Mat>, 15> covariant_pairs(const std::function<Mat(int, int)>& blk,
                                                    const Mat& id, const Mat& zero) {
    Mat a11 = blk(1, 1), a13 = blk(1, 3), a21 = blk(2, 1);
    return {{
        {blk(3, 1), zero},        {blk(3, 2), zero},
        {blk(3, 3), id},          {blk(3, 4), id},
        {blk(4, 1), -id},         {blk(4, 2), id},
        {blk(4, 3), zero},        {blk(4, 4), zero},
        {blk(1, 2), id - a11},    {blk(1, 4), a13},
        {a13, a13.transpose()},   {blk(2, 2), -a21},
        {a21, a21.transpose()},   {blk(2, 3), id - a11.transpose()},
        {blk(2, 4), -a11.transpose()},
    }};
}

}  // namespace

RM symplectic_J(int n) {
    RM j(2 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1;
        j(n + i, i) = -1;
    }
    return j;
}

Eigen::MatrixXd symplectic_J_double(int n) { return symplectic_J(n).to_double(); }

bool is_symplectic(const RM& m) {
    require_even_square(m.rows(), m.cols());
    RM j = symplectic_J(m.rows() / 2);
    return m.transpose() * j * m == j;
}

bool is_symplectic(const Eigen::MatrixXd& m, double tol) {
    require_even_square(static_cast<int>(m.rows()), static_cast<int>(m.cols()));
    Eigen::MatrixXd j = symplectic_J_double(static_cast<int>(m.rows()) / 2);
    return (m.transpose() * j * m - j).cwiseAbs().maxCoeff() <= tol;
}

SymplecticMatrix SymplecticMatrix::certify(RM m) {
    if (!is_symplectic(m)) throw NotSymplecticError("matrix fails A^T J A == J");
    return SymplecticMatrix(std::move(m));
}

std::optional<SymplecticMatrix> SymplecticMatrix::try_certify(const RM& m) {
    if (!is_symplectic(m)) return std::nullopt;
    return SymplecticMatrix(m);
}

SymplecticMatrix SymplecticMatrix::operator*(const SymplecticMatrix& o) const {
    if (size() != o.size()) throw DimensionError("symplectic product size mismatch");
    return SymplecticMatrix(m_ * o.m_);
}

SymplecticMatrix SymplecticMatrix::inverse() const {
    RM j = symplectic_J(dim_n());
    return SymplecticMatrix(-(j * m_.transpose() * j));
}

SymplecticMatrix SymplecticMatrix::transpose() const { return SymplecticMatrix(m_.transpose()); }

RM BlockForm::assemble() const { return assemble4(blocks, d); }

BlockForm block_decompose(const RM& a) {
    if (!a.is_square() || a.rows() == 0 || a.rows() % 4 != 0)
        throw DimensionError("block decomposition needs a 4d x 4d matrix");
    BlockForm bf;
    bf.d = a.rows() / 4;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) bf.blocks[i * 4 + j] = a.block(i * bf.d, j * bf.d, bf.d, bf.d);
    return bf;
}

CovariantForm::CovariantForm(RM a11, RM a13, RM a21)
    : a11_(std::move(a11)), a13_(std::move(a13)), a21_(std::move(a21)) {
    const int d = a11_.rows();
    auto square_d = [d](const RM& m) { return m.rows() == d && m.cols() == d; };
    if (d == 0 || !square_d(a11_) || !square_d(a13_) || !square_d(a21_))
        throw DimensionError("covariant blocks must all be d x d");
    if (!a13_.is_symmetric()) throw ParameterError("A13 must be symmetric");
    if (!a21_.is_symmetric()) throw ParameterError("A21 must be symmetric");
}

RM CovariantForm::rebuild_matrix() const {
    const int d = this->d();
    std::array<RM, 16> b{a11_,       I(d) - a11_, a13_, a13_,
                         a21_,       -a21_,       I(d) - a11_.transpose(), -a11_.transpose(),
                         Z(d),       Z(d),        I(d), I(d),
                         -I(d),      I(d),        Z(d), Z(d)};
    return assemble4(b, d);
}

SymplecticMatrix CovariantForm::rebuild() const { return SymplecticMatrix::certify(rebuild_matrix()); }

std::string CovariantRejection::message() const {
    std::ostringstream os;
    os << "not covariant: " << first().constraint << " violated";
    if (violations.size() > 1) os << " (" << violations.size() << " block constraints fail)";
    return os.str();
}

CovariantClassification classify_covariant(const SymplecticMatrix& a) {
    if (a.size() % 4 != 0) throw DimensionError("covariance needs a matrix in Sp(2d)");
    BlockForm bf = block_decompose(a);
    const int d = bf.d;
    std::function<RM(int, int)> blk = [&bf](int i, int j) { return bf.at(i, j); };
    auto pairs = covariant_pairs<RM>(blk, I(d), Z(d));
    CovariantRejection rej;
    for (size_t k = 0; k < pairs.size(); ++k)
        if (pairs[k].first != pairs[k].second)
            rej.violations.push_back({kCovariantChecks[k].block, kCovariantChecks[k].text});
    if (!rej.violations.empty()) return rej;
    return CovariantForm(bf.at(1, 1), bf.at(1, 3), bf.at(2, 1));
}

CovariantClassificationF classify_covariant(const Eigen::MatrixXd& a, double tol) {
    if (a.rows() != a.cols() || a.rows() == 0 || a.rows() % 4 != 0)
        throw DimensionError("covariance needs a matrix in Sp(2d)");
    const int d = static_cast<int>(a.rows()) / 4;
    using M = Eigen::MatrixXd;
    std::function<M(int, int)> blk = [&a, d](int i, int j) {
        return M(a.block((i - 1) * d, (j - 1) * d, d, d));
    };
    auto pairs = covariant_pairs<M>(blk, M::Identity(d, d), M::Zero(d, d));
    CovariantRejection rej;
    for (size_t k = 0; k < pairs.size(); ++k)
        if ((pairs[k].first - pairs[k].second).cwiseAbs().maxCoeff() > tol)
            rej.violations.push_back({kCovariantChecks[k].block, kCovariantChecks[k].text});
    if (!rej.violations.empty()) return rej;
    return CovariantFormF{blk(1, 1), blk(1, 3), blk(2, 1)};
}

CohenMatrixB matrix_B(const CovariantForm& c) {
    const int d = c.d();
    RM half = RM::scalar(d, Rational(1, 2));
    return {RM::assemble2x2(c.a13(), half - c.a11(), half - c.a11().transpose(), -c.a21())};
}

ShiftMatrixE matrix_E(const SymplecticMatrix& a) {
    BlockForm bf = block_decompose(a);
    RM e = RM::assemble2x2(bf.at(1, 1), bf.at(1, 3), bf.at(2, 1), bf.at(2, 3));
    bool inv = e.determinant() != 0;
    return {std::move(e), inv};
}

ShiftMatrixE matrix_E(const CovariantForm& c) {
    const int d = c.d();
    RM e = RM::assemble2x2(c.a11(), c.a13(), c.a21(), I(d) - c.a11().transpose());
    bool inv = e.determinant() != 0;
    return {std::move(e), inv};
}

bool check_EB_identity(const CovariantForm& c) {
    RM e = matrix_E(c).e;
    RM j = symplectic_J(c.d());
    return e * (-j) + j * Rational(1, 2) == matrix_B(c).b;  // J^{-1} = -J
}

SymplecticMatrix tau_matrix(const Rational& tau, int d) { return tau_form(tau, d).rebuild(); }

CovariantForm tau_form(const Rational& tau, int d) {
    return CovariantForm(RM::scalar(d, 1 - tau), Z(d), Z(d));
}

SymplecticMatrix stft_matrix(int d) {
    std::array<RM, 16> b{I(d),  -I(d), Z(d), Z(d),  Z(d), Z(d), I(d), I(d),
                         Z(d),  Z(d),  Z(d), -I(d), -I(d), Z(d), Z(d), Z(d)};
    return SymplecticMatrix::certify(assemble4(b, d));
}

SymplecticMatrix ft2_matrix(int d) {
    std::array<RM, 16> b{I(d), Z(d),  Z(d), Z(d), Z(d), Z(d), Z(d), I(d),
                         Z(d), Z(d),  I(d), Z(d), Z(d), -I(d), Z(d), Z(d)};
    return SymplecticMatrix::certify(assemble4(b, d));
}

SymplecticMatrix fourier_matrix(int n) { return SymplecticMatrix::certify(symplectic_J(n)); }

SymplecticMatrix dilation_matrix(const RM& L) {
    if (!L.is_square() || L.rows() == 0) throw DimensionError("dilation needs a square L");
    if (!L.is_invertible()) throw ParameterError("dilation needs an invertible L");
    return SymplecticMatrix::certify(RM::block_diag(L.inverse(), L.transpose()));
}

SymplecticMatrix chirp_matrix(const RM& C) {
    if (!C.is_square() || C.rows() == 0) throw DimensionError("chirp needs a square C");
    if (!C.is_symmetric()) throw ParameterError("chirp needs a symmetric C");
    const int n = C.rows();
    return SymplecticMatrix::certify(RM::assemble2x2(I(n), Z(n), C, I(n)));
}

SymplecticMatrix make_standard(const StandardSpec& s) {
    using K = StandardSpec::Kind;
    if (s.d < 1) throw DimensionError("dimension must be positive");
    switch (s.kind) {
        case K::Tau: return tau_matrix(s.tau, s.d);
        case K::Stft: return stft_matrix(s.d);
        case K::Ft2: return ft2_matrix(s.d);
        case K::Dilation: return dilation_matrix(s.param);
        case K::Chirp: return chirp_matrix(s.param);
        case K::Fourier: return fourier_matrix(s.d);
    }
    throw ParameterError("unknown standard matrix kind");
}

RM L_from_covariant(const CovariantForm& c) {
    if (!c.f2_family())
        throw PreconditionError("not in the F2 T_L family: A13 and A21 must vanish");
    const int d = c.d();
    return RM::assemble2x2(I(d), I(d) - c.a11(), I(d), -c.a11());
}

std::optional<RM> f2_dilation_factor(const SymplecticMatrix& a) {
    if (a.size() % 4 != 0) return std::nullopt;
    const int d = a.size() / 4;
    // A_FT2 is a signed permutation, so its inverse is its transpose.
    RM p = ft2_matrix(d).matrix().transpose() * a.matrix();
    const int h = 2 * d;
    if (!p.block(0, h, h, h).is_zero() || !p.block(h, 0, h, h).is_zero()) return std::nullopt;
    RM p11 = p.block(0, 0, h, h);
    if (!p11.is_invertible()) return std::nullopt;
    RM L = p11.inverse();
    if (p.block(h, h, h, h) != L.transpose()) return std::nullopt;
    return L;
}

DerivedMatrices derived_matrices(const SymplecticMatrix& a) {
    if (a.size() % 4 != 0) throw DimensionError("derived matrices need a matrix in Sp(2d)");
    const int d = a.size() / 4;
    RM swap = RM::assemble2x2(Z(d), I(d), I(d), Z(d));
    RM flip = RM::block_diag(I(d), -I(d));
    SymplecticMatrix interchange =
        SymplecticMatrix::certify(a.matrix() * RM::block_diag(swap, swap));
    SymplecticMatrix ft_args =
        SymplecticMatrix::certify(a.matrix() * symplectic_J(2 * d) * RM::block_diag(flip, flip));
    SymplecticMatrix ft_wa =
        SymplecticMatrix::certify(a.matrix().transpose().inverse() * symplectic_J(2 * d));
    return {interchange, ft_args, ft_wa};
}

RM conjugate_kernel(const RM& b, const SymplecticMatrix& chi) {
    if (b.rows() != chi.size() || !b.is_square()) throw DimensionError("kernel/flow size mismatch");
    RM ci = chi.inverse().matrix();
    return ci.transpose() * b * ci;
}

ShiftMatrixE conjugate_by_flow(const ShiftMatrixE& e, const SymplecticMatrix& chi) {
    return conjugate_by_flow(e, chi.matrix());
}

ShiftMatrixE conjugate_by_flow(const ShiftMatrixE& e, const RM& chi) {
    if (!chi.is_square() || e.e.rows() != chi.rows()) throw DimensionError("shift matrix/flow size mismatch");
    RM cit = chi.inverse().transpose();
    RM et = cit * e.e * chi.transpose();
    bool inv = et.determinant() != 0;
    return {std::move(et), inv};
}

FlowConjugation conjugate_by_flow(const CovariantForm& c, const SymplecticMatrix& chi) {
    return {conjugate_kernel(matrix_B(c).b, chi), conjugate_by_flow(matrix_E(c), chi)};
}

Eigen::MatrixXd conjugate_kernel(const Eigen::MatrixXd& b, const Eigen::MatrixXd& chi) {
    Eigen::MatrixXd ci = chi.inverse();
    return ci.transpose() * b * ci;
}

Eigen::MatrixXd conjugate_shift(const Eigen::MatrixXd& e, const Eigen::MatrixXd& chi) {
    return chi.inverse().transpose() * e * chi.transpose();
}

}  // namespace symtfa
