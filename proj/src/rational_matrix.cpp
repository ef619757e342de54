#include "symtfa/rational_matrix.hpp"

#include <cmath>
#include <sstream>

#include "symtfa/errors.hpp"

namespace symtfa {

Rational parse_rational(const std::string& raw) {
    std::string text;
    for (char ch : raw)
        if (!std::isspace(static_cast<unsigned char>(ch))) text += ch;
    if (text.empty()) throw ParameterError("empty rational literal");

    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rational num = parse_rational(text.substr(0, slash));
        Rational den = parse_rational(text.substr(slash + 1));
        if (den == 0) throw ParameterError("zero denominator in '" + raw + "'");
        Rational r = num / den;
        r.canonicalize();
        return r;
    }

    size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') {
        negative = text[pos] == '-';
        ++pos;
    }
    std::string digits;
    long frac_len = 0;
    bool seen_point = false;
    bool any_digit = false;
    for (; pos < text.size(); ++pos) {
        char ch = text[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            any_digit = true;
            if (seen_point) ++frac_len;
        } else if (ch == '.' && !seen_point) {
            seen_point = true;
        } else {
            break;
        }
    }
    if (!any_digit) throw ParameterError("malformed rational literal '" + raw + "'");
    long exponent = 0;
    if (pos < text.size()) {
        if (text[pos] != 'e' && text[pos] != 'E')
            throw ParameterError("malformed rational literal '" + raw + "'");
        std::string exp_str = text.substr(pos + 1);
        try {
            size_t used = 0;
            exponent = std::stol(exp_str, &used);
            if (used != exp_str.size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ParameterError("malformed exponent in '" + raw + "'");
        }
        if (std::labs(exponent) > 4000) throw ParameterError("exponent out of range in '" + raw + "'");
    }
    mpz_class mantissa(digits, 10);
    long shift = exponent - frac_len;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(shift)));
    Rational r = shift >= 0 ? Rational(mantissa * scale) : Rational(mantissa, scale);
    r.canonicalize();
    return negative ? Rational(-r) : r;
}

std::string format_rational(const Rational& r) { return r.get_str(); }

Rational rational_from_double(double v) {
    if (!std::isfinite(v)) throw ParameterError("non-finite value cannot be made rational");
    Rational r(v);  // exact: GMP converts the binary value
    r.canonicalize();
    return r;
}

RationalMatrix::RationalMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, Rational(0)) {
    if (rows < 0 || cols < 0) throw DimensionError("negative matrix dimension");
}

RationalMatrix::RationalMatrix(int rows, int cols, std::vector<Rational> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != static_cast<size_t>(rows) * cols)
        throw DimensionError("entry count does not match matrix shape");
    for (auto& e : data_) e.canonicalize();
}

RationalMatrix RationalMatrix::identity(int n) { return scalar(n, Rational(1)); }

RationalMatrix RationalMatrix::scalar(int n, const Rational& v) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = v;
    return m;
}

RationalMatrix RationalMatrix::from_double(const Eigen::MatrixXd& src) {
    RationalMatrix m(static_cast<int>(src.rows()), static_cast<int>(src.cols()));
    for (int i = 0; i < m.rows_; ++i)
        for (int j = 0; j < m.cols_; ++j) m(i, j) = rational_from_double(src(i, j));
    return m;
}

RationalMatrix RationalMatrix::transpose() const {
    RationalMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

RationalMatrix RationalMatrix::inverse() const {
    if (!is_square()) throw DimensionError("inverse of a non-square matrix");
    const int n = rows_;
    RationalMatrix a = *this;
    RationalMatrix inv = identity(n);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) throw ParameterError("matrix is singular");
        if (pivot != col) {
            for (int j = 0; j < n; ++j) {
                std::swap(a(pivot, j), a(col, j));
                std::swap(inv(pivot, j), inv(col, j));
            }
        }
        Rational p = a(col, col);
        for (int j = 0; j < n; ++j) {
            a(col, j) /= p;
            inv(col, j) /= p;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col || a(r, col) == 0) continue;
            Rational f = a(r, col);
            for (int j = 0; j < n; ++j) {
                a(r, j) -= f * a(col, j);
                inv(r, j) -= f * inv(col, j);
            }
        }
    }
    return inv;
}

Rational RationalMatrix::determinant() const {
    if (!is_square()) throw DimensionError("determinant of a non-square matrix");
    const int n = rows_;
    RationalMatrix a = *this;
    Rational det(1);
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int r = col; r < n; ++r)
            if (a(r, col) != 0) {
                pivot = r;
                break;
            }
        if (pivot < 0) return Rational(0);
        if (pivot != col) {
            for (int j = 0; j < n; ++j) std::swap(a(pivot, j), a(col, j));
            det = -det;
        }
        det *= a(col, col);
        for (int r = col + 1; r < n; ++r) {
            if (a(r, col) == 0) continue;
            Rational f = a(r, col) / a(col, col);
            for (int j = col; j < n; ++j) a(r, j) -= f * a(col, j);
        }
    }
    return det;
}

bool RationalMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
}

bool RationalMatrix::is_zero() const {
    for (const auto& e : data_)
        if (e != 0) return false;
    return true;
}

RationalMatrix RationalMatrix::block(int r0, int c0, int nr, int nc) const {
    if (r0 < 0 || c0 < 0 || r0 + nr > rows_ || c0 + nc > cols_)
        throw DimensionError("block out of range");
    RationalMatrix b(nr, nc);
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
}

void RationalMatrix::set_block(int r0, int c0, const RationalMatrix& b) {
    if (r0 < 0 || c0 < 0 || r0 + b.rows_ > rows_ || c0 + b.cols_ > cols_)
        throw DimensionError("block out of range");
    for (int i = 0; i < b.rows_; ++i)
        for (int j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
}

RationalMatrix RationalMatrix::assemble2x2(const RationalMatrix& a, const RationalMatrix& b,
                                           const RationalMatrix& c, const RationalMatrix& d) {
    if (a.rows_ != b.rows_ || c.rows_ != d.rows_ || a.cols_ != c.cols_ || b.cols_ != d.cols_)
        throw DimensionError("inconsistent block shapes");
    RationalMatrix m(a.rows_ + c.rows_, a.cols_ + b.cols_);
    m.set_block(0, 0, a);
    m.set_block(0, a.cols_, b);
    m.set_block(a.rows_, 0, c);
    m.set_block(a.rows_, a.cols_, d);
    return m;
}

RationalMatrix RationalMatrix::block_diag(const RationalMatrix& a, const RationalMatrix& b) {
    return assemble2x2(a, zero(a.rows_, b.cols_), zero(b.rows_, a.cols_), b);
}

Eigen::MatrixXd RationalMatrix::to_double() const {
    Eigen::MatrixXd m(rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m(i, j) = (*this)(i, j).get_d();
    return m;
}

std::string RationalMatrix::to_string() const {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < rows_; ++i) {
        os << (i ? ", [" : "[");
        for (int j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
        os << ']';
    }
    os << ']';
    return os.str();
}

RationalMatrix RationalMatrix::operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in +");
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] + o.data_[k];
    return r;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw DimensionError("shape mismatch in -");
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] - o.data_[k];
    return r;
}

RationalMatrix RationalMatrix::operator-() const {
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = -data_[k];
    return r;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw DimensionError("shape mismatch in *");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (int j = 0; j < o.cols_; ++j)
                if (o(k, j) != 0) r(i, j) += a * o(k, j);
        }
    return r;
}

RationalMatrix RationalMatrix::operator*(const Rational& s) const {
    RationalMatrix r(rows_, cols_);
    for (size_t k = 0; k < data_.size(); ++k) r.data_[k] = data_[k] * s;
    return r;
}

bool RationalMatrix::operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

}  // namespace symtfa
