#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace invsub {

// Thrown for mathematically invalid requests (singular inverse, dimension
// mismatch, non-invariant subspace, unsupported spectrum, ...).
class math_error : public std::runtime_error {
public:
    explicit math_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown for malformed textual input (scalar grammar, matrix files, JSON).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

namespace exact {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Gaussian rational a + b*i with exact rational components.
struct Scalar {
    Rational re;
    Rational im;

    Scalar() : re(0), im(0) {}
    Scalar(int v) : re(v), im(0) {}
    Scalar(long long v) : re(v), im(0) {}
    explicit Scalar(Rational r) : re(std::move(r)), im(0) {}
    Scalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

    bool is_zero() const { return re == 0 && im == 0; }
    bool is_real() const { return im == 0; }

    friend bool operator==(const Scalar& a, const Scalar& b) {
        return a.re == b.re && a.im == b.im;
    }
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    Scalar operator-() const { return Scalar(-re, -im); }

    friend Scalar operator+(const Scalar& a, const Scalar& b) {
        return Scalar(a.re + b.re, a.im + b.im);
    }
    friend Scalar operator-(const Scalar& a, const Scalar& b) {
        return Scalar(a.re - b.re, a.im - b.im);
    }
    friend Scalar operator*(const Scalar& a, const Scalar& b) {
        return Scalar(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
    }
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
    Scalar& operator/=(const Scalar& o) { return *this = *this / o; }
};

Scalar conj(const Scalar& s);

// Canonical text form: "p/q" for reals ("/q" omitted when q = 1) and
// "re+im i" / "re-im i" otherwise, e.g. "3", "-1/2", "0+1i", "2-3/4i".
std::string to_string(const Scalar& s);
// Accepts the canonical form plus the usual shorthands: pure imaginaries
// ("i", "-i", "2i", "-3/4i") and unit coefficients ("1+i", "1-i").
Scalar parse_scalar(std::string_view text);

std::string to_string(const Rational& r);

// Dense row-major matrix over Scalar. Zero-row and zero-column shapes are
// valid (kernel bases of injective maps are n x 0).
class Matrix {
public:
    Matrix() : rows_(0), cols_(0) {}
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static Matrix identity(std::size_t n);
    static Matrix zero(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix column(const std::vector<Scalar>& entries);
    static Matrix from_columns(const std::vector<Matrix>& columns, std::size_t rows_if_empty);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Scalar& at(std::size_t i, std::size_t j);
    const Scalar& at(std::size_t i, std::size_t j) const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const;
    void set_block(std::size_t r0, std::size_t c0, const Matrix& sub);
    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }
    Matrix row(std::size_t i) const { return block(i, 0, 1, cols_); }

    friend bool operator==(const Matrix& a, const Matrix& b);
    friend bool operator!=(const Matrix& a, const Matrix& b) { return !(a == b); }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Scalar> data_;
};

Matrix mul(const Matrix& a, const Matrix& b);
Matrix add(const Matrix& a, const Matrix& b);
Matrix sub(const Matrix& a, const Matrix& b);
Matrix scale(const Scalar& c, const Matrix& a);

inline Matrix operator*(const Matrix& a, const Matrix& b) { return mul(a, b); }
inline Matrix operator+(const Matrix& a, const Matrix& b) { return add(a, b); }
inline Matrix operator-(const Matrix& a, const Matrix& b) { return sub(a, b); }
inline Matrix operator*(const Scalar& c, const Matrix& a) { return scale(c, a); }

Matrix transpose(const Matrix& m);
Matrix conj_transpose(const Matrix& m);

struct RrefResult {
    Matrix reduced;
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

// Reduced row echelon form. Pivots are chosen deterministically: leftmost
// nonzero column, then the topmost row with a nonzero entry in it.
RrefResult rref_full(const Matrix& m);
Matrix rref(const Matrix& m);
std::size_t rank(const Matrix& m);

// Columns form the canonical kernel basis: one column per free column of the
// rref, ordered by ascending free-column index, with a unit in that slot.
Matrix kernel_basis(const Matrix& m);

// Exact inverse; throws math_error for non-square or singular input.
Matrix inverse(const Matrix& m);

Matrix augment_h(const Matrix& a, const Matrix& b);
Matrix augment_v(const Matrix& a, const Matrix& b);

// Matrix text format: a JSON array of rows, each row an array of scalar
// strings. to_text emits the canonical layout (one row per line, trailing
// newline); matrix_from_text accepts any JSON whitespace.
std::string to_text(const Matrix& m);
Matrix matrix_from_text(std::string_view text);

} // namespace exact
} // namespace invsub
