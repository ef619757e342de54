#pragma once

#include <gmpxx.h>

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace symtfa {

using Rational = mpq_class;

// Parses "p/q", integers and plain decimals ("-0.3", "1.25e-2") exactly.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& r);
// Exact binary value of a double.
Rational rational_from_double(double v);

class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols);
    RationalMatrix(int rows, int cols, std::vector<Rational> row_major);

    static RationalMatrix zero(int rows, int cols) { return RationalMatrix(rows, cols); }
    static RationalMatrix identity(int n);
    static RationalMatrix scalar(int n, const Rational& v);
    static RationalMatrix from_double(const Eigen::MatrixXd& m);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Rational& operator()(int i, int j) { return data_[static_cast<size_t>(i) * cols_ + j]; }
    const Rational& operator()(int i, int j) const {
        return data_[static_cast<size_t>(i) * cols_ + j];
    }
    const std::vector<Rational>& entries() const { return data_; }

    RationalMatrix transpose() const;
    RationalMatrix inverse() const;  // throws ParameterError when singular
    Rational determinant() const;
    bool is_invertible() const { return determinant() != 0; }
    bool is_symmetric() const;
    bool is_zero() const;

    RationalMatrix block(int r0, int c0, int nr, int nc) const;
    void set_block(int r0, int c0, const RationalMatrix& b);
    static RationalMatrix assemble2x2(const RationalMatrix& a, const RationalMatrix& b,
                                      const RationalMatrix& c, const RationalMatrix& d);
    static RationalMatrix block_diag(const RationalMatrix& a, const RationalMatrix& b);

    Eigen::MatrixXd to_double() const;
    std::string to_string() const;

    RationalMatrix operator+(const RationalMatrix& o) const;
    RationalMatrix operator-(const RationalMatrix& o) const;
    RationalMatrix operator-() const;
    RationalMatrix operator*(const RationalMatrix& o) const;
    RationalMatrix operator*(const Rational& s) const;
    bool operator==(const RationalMatrix& o) const;
    bool operator!=(const RationalMatrix& o) const { return !(*this == o); }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rational> data_;
};

inline RationalMatrix operator*(const Rational& s, const RationalMatrix& m) { return m * s; }

}  // namespace symtfa
