#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "symtfa/rational_matrix.hpp"

namespace symtfa {

// Standard symplectic form [[0, I],[-I, 0]] of size 2n.
RationalMatrix symplectic_J(int n);
Eigen::MatrixXd symplectic_J_double(int n);

// Throw DimensionError for non-square or odd-sized input.
bool is_symplectic(const RationalMatrix& m);
bool is_symplectic(const Eigen::MatrixXd& m, double tol = 1e-10);

class SymplecticMatrix {
public:
    // Throws NotSymplecticError unless m^T J m == J exactly.
    static SymplecticMatrix certify(RationalMatrix m);
    static std::optional<SymplecticMatrix> try_certify(const RationalMatrix& m);

    int dim_n() const { return m_.rows() / 2; }
    int size() const { return m_.rows(); }
    const RationalMatrix& matrix() const { return m_; }
    Eigen::MatrixXd to_double() const { return m_.to_double(); }

    SymplecticMatrix operator*(const SymplecticMatrix& o) const;
    SymplecticMatrix inverse() const;  // -J m^T J
    SymplecticMatrix transpose() const;
    bool operator==(const SymplecticMatrix& o) const { return m_ == o.m_; }

private:
    explicit SymplecticMatrix(RationalMatrix m) : m_(std::move(m)) {}
    RationalMatrix m_;
};

// Sixteen d x d blocks of a 4d x 4d matrix; at(i, j) is 1-based like A_ij.
struct BlockForm {
    int d = 0;
    std::array<RationalMatrix, 16> blocks;

    const RationalMatrix& at(int i, int j) const { return blocks[(i - 1) * 4 + (j - 1)]; }
    RationalMatrix assemble() const;
};

BlockForm block_decompose(const RationalMatrix& a);
inline BlockForm block_decompose(const SymplecticMatrix& a) { return block_decompose(a.matrix()); }

// Free blocks of a covariant matrix: rows 1-2 are
//   [A11, I-A11, A13, A13] and [A21, -A21, I-A11^T, -A11^T],
// rows 3-4 are fixed to [0, 0, I, I] and [-I, I, 0, 0].
class CovariantForm {
public:
    CovariantForm(RationalMatrix a11, RationalMatrix a13, RationalMatrix a21);

    int d() const { return a11_.rows(); }
    const RationalMatrix& a11() const { return a11_; }
    const RationalMatrix& a13() const { return a13_; }
    const RationalMatrix& a21() const { return a21_; }
    bool f2_family() const { return a13_.is_zero() && a21_.is_zero(); }

    RationalMatrix rebuild_matrix() const;
    SymplecticMatrix rebuild() const;
    bool operator==(const CovariantForm& o) const {
        return a11_ == o.a11_ && a13_ == o.a13_ && a21_ == o.a21_;
    }

private:
    RationalMatrix a11_, a13_, a21_;
};

struct BlockViolation {
    std::string block;       // e.g. "A24"
    std::string constraint;  // e.g. "A24 == -A11^T"
};

struct CovariantRejection {
    std::vector<BlockViolation> violations;  // in check order, never empty
    const BlockViolation& first() const { return violations.front(); }
    std::string message() const;
};

using CovariantClassification = std::variant<CovariantForm, CovariantRejection>;

CovariantClassification classify_covariant(const SymplecticMatrix& a);

struct CovariantFormF {
    Eigen::MatrixXd a11, a13, a21;
};
using CovariantClassificationF = std::variant<CovariantFormF, CovariantRejection>;
CovariantClassificationF classify_covariant(const Eigen::MatrixXd& a, double tol = 1e-10);

struct CohenMatrixB {
    RationalMatrix b;
};

struct ShiftMatrixE {
    RationalMatrix e;
    bool invertible = false;
};

CohenMatrixB matrix_B(const CovariantForm& c);
ShiftMatrixE matrix_E(const SymplecticMatrix& a);
ShiftMatrixE matrix_E(const CovariantForm& c);
// E J^{-1} + J/2 == B, exactly.
bool check_EB_identity(const CovariantForm& c);

struct StandardSpec {
    enum class Kind { Tau, Stft, Ft2, Dilation, Chirp, Fourier };
    Kind kind = Kind::Fourier;
    int d = 1;
    Rational tau{};
    RationalMatrix param;  // L for Dilation, C for Chirp
};

SymplecticMatrix make_standard(const StandardSpec& spec);
SymplecticMatrix tau_matrix(const Rational& tau, int d = 1);
SymplecticMatrix stft_matrix(int d = 1);
SymplecticMatrix ft2_matrix(int d = 1);
SymplecticMatrix fourier_matrix(int n = 1);
// D_L = diag(L^{-1}, L^T).
SymplecticMatrix dilation_matrix(const RationalMatrix& L);
// V_C = [[I, 0],[C, I]], the matrix of multiplication by e^{i pi Cx.x}.
SymplecticMatrix chirp_matrix(const RationalMatrix& C);

CovariantForm tau_form(const Rational& tau, int d = 1);

// L = [[I, I-A11],[I, -A11]]; PreconditionError unless A13 = A21 = 0.
RationalMatrix L_from_covariant(const CovariantForm& c);

// If a = A_FT2 * D_L returns L. Works for covariant and non-covariant members.
std::optional<RationalMatrix> f2_dilation_factor(const SymplecticMatrix& a);

struct DerivedMatrices {
    SymplecticMatrix interchange;   // W_A(g, f) = W_{interchange}(conj f, conj g) up to phase
    SymplecticMatrix ft_arguments;  // W_A(Ff, Fg) = W_{ft_arguments}(f, g)
    SymplecticMatrix ft_of_wa;      // F(W_A(f, g)) = W_{ft_of_wa}(f, g)
};
DerivedMatrices derived_matrices(const SymplecticMatrix& a);

struct FlowConjugation {
    RationalMatrix b_t;
    ShiftMatrixE e_t;
};

// B_t = (chi^{-1})^T B chi^{-1}, E_t = (chi^{-1})^T E chi^T.
FlowConjugation conjugate_by_flow(const CovariantForm& c, const SymplecticMatrix& chi);
ShiftMatrixE conjugate_by_flow(const ShiftMatrixE& e, const SymplecticMatrix& chi);
// Same similarity for a flow known only to rounding (the exact rational image of a
// floating matrix exponential); chi only needs to be invertible.
ShiftMatrixE conjugate_by_flow(const ShiftMatrixE& e, const RationalMatrix& chi);
RationalMatrix conjugate_kernel(const RationalMatrix& b, const SymplecticMatrix& chi);
Eigen::MatrixXd conjugate_kernel(const Eigen::MatrixXd& b, const Eigen::MatrixXd& chi);
Eigen::MatrixXd conjugate_shift(const Eigen::MatrixXd& e, const Eigen::MatrixXd& chi);

}  // namespace symtfa
