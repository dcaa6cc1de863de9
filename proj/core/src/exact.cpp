#include "invsub/exact.hpp"

#include <cassert>
#include <cctype>
#include <sstream>
#include <utility>

#include "json.hpp"

namespace invsub {
namespace exact {

// ---------------------------------------------------------------------------
// Scalar arithmetic
// ---------------------------------------------------------------------------

Scalar operator/(const Scalar& a, const Scalar& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n == 0) {
        throw math_error("scalar division by zero");
    }
    // a / b = a * conj(b) / |b|^2
    return Scalar((a.re * b.re + a.im * b.im) / n,
                  (a.im * b.re - a.re * b.im) / n);
}

Scalar conj(const Scalar& s) { return Scalar(s.re, -s.im); }

std::string to_string(const Rational& r) {
    std::string out = numerator(r).str();
    if (denominator(r) != 1) {
        out += "/";
        out += denominator(r).str();
    }
    return out;
}

std::string to_string(const Scalar& s) {
    if (s.im == 0) {
        return to_string(s.re);
    }
    std::string out = to_string(s.re);
    if (s.im > 0) {
        out += "+";
        out += to_string(s.im);
    } else {
        out += "-";
        out += to_string(Rational(-s.im));
    }
    out += "i";
    return out;
}

namespace {

[[noreturn]] void bad_scalar(std::string_view text) {
    throw parse_error("malformed scalar \"" + std::string(text) + "\"");
}

Int parse_digits(std::string_view text, std::size_t& pos, std::string_view whole) {
    std::size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        ++pos;
    }
    if (pos == start) {
        bad_scalar(whole);
    }
    return Int(std::string(text.substr(start, pos - start)));
}

Rational parse_rational_at(std::string_view text, std::size_t& pos, bool allow_sign,
                           std::string_view whole) {
    bool negative = false;
    if (allow_sign && pos < text.size() && text[pos] == '-') {
        negative = true;
        ++pos;
    }
    Int num = parse_digits(text, pos, whole);
    Int den = 1;
    if (pos < text.size() && text[pos] == '/') {
        ++pos;
        den = parse_digits(text, pos, whole);
        if (den == 0) {
            bad_scalar(whole);
        }
    }
    if (negative) {
        num = -num;
    }
    return Rational(num, den);
}

} // namespace

Scalar parse_scalar(std::string_view text) {
    std::size_t begin = 0;
    std::size_t end = text.size();
    while (begin < end && std::isspace(static_cast<unsigned char>(text[begin]))) ++begin;
    while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
    std::string_view body = text.substr(begin, end - begin);
    if (body.empty()) {
        bad_scalar(text);
    }

    std::size_t pos = 0;
    bool first_negative = false;
    if (body[pos] == '-') {
        first_negative = true;
        ++pos;
    }
    // First component: "i", "bi", or a plain rational.
    if (pos < body.size() && body[pos] == 'i') {
        if (pos + 1 != body.size()) {
            bad_scalar(text);
        }
        return Scalar(Rational(0), first_negative ? Rational(-1) : Rational(1));
    }
    Rational first = parse_rational_at(body, pos, false, text);
    if (first_negative) {
        first = -first;
    }
    if (pos < body.size() && body[pos] == 'i') {
        if (pos + 1 != body.size()) {
            bad_scalar(text);
        }
        return Scalar(Rational(0), first);
    }
    if (pos == body.size()) {
        return Scalar(first);
    }
    // Second component: "+i", "-i", "+bi", "-bi".
    if (body[pos] != '+' && body[pos] != '-') {
        bad_scalar(text);
    }
    bool im_negative = body[pos] == '-';
    ++pos;
    Rational im(1);
    if (pos < body.size() && body[pos] != 'i') {
        im = parse_rational_at(body, pos, false, text);
    }
    if (pos + 1 != body.size() || body[pos] != 'i') {
        bad_scalar(text);
    }
    if (im_negative) {
        im = -im;
    }
    return Scalar(first, im);
}

// ---------------------------------------------------------------------------
// Matrix core
// ---------------------------------------------------------------------------

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = Scalar(1);
    }
    return m;
}

Matrix Matrix::column(const std::vector<Scalar>& entries) {
    Matrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        m.at(i, 0) = entries[i];
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Matrix>& columns, std::size_t rows_if_empty) {
    if (columns.empty()) {
        return Matrix(rows_if_empty, 0);
    }
    std::size_t n = columns.front().rows();
    Matrix m(n, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
        if (columns[j].rows() != n || columns[j].cols() != 1) {
            throw math_error("from_columns requires equally sized column vectors");
        }
        for (std::size_t i = 0; i < n; ++i) {
            m.at(i, j) = columns[j].at(i, 0);
        }
    }
    return m;
}

Scalar& Matrix::at(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
}

const Scalar& Matrix::at(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i * cols_ + j];
}

bool Matrix::is_zero() const {
    for (const Scalar& s : data_) {
        if (!s.is_zero()) {
            return false;
        }
    }
    return true;
}

Matrix Matrix::block(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
    assert(r0 + nrows <= rows_ && c0 + ncols <= cols_);
    Matrix out(nrows, ncols);
    for (std::size_t i = 0; i < nrows; ++i) {
        for (std::size_t j = 0; j < ncols; ++j) {
            out.at(i, j) = at(r0 + i, c0 + j);
        }
    }
    return out;
}

void Matrix::set_block(std::size_t r0, std::size_t c0, const Matrix& sub) {
    assert(r0 + sub.rows() <= rows_ && c0 + sub.cols() <= cols_);
    for (std::size_t i = 0; i < sub.rows(); ++i) {
        for (std::size_t j = 0; j < sub.cols(); ++j) {
            at(r0 + i, c0 + j) = sub.at(i, j);
        }
    }
}

bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
}

Matrix mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw math_error("matrix product dimension mismatch: " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " * " +
                         std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    }
    Matrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Scalar& aik = a.at(i, k);
            if (aik.is_zero()) {
                continue;
            }
            for (std::size_t j = 0; j < b.cols(); ++j) {
                const Scalar& bkj = b.at(k, j);
                if (!bkj.is_zero()) {
                    out.at(i, j) += aik * bkj;
                }
            }
        }
    }
    return out;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw math_error("matrix sum dimension mismatch");
    }
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.at(i, j) = a.at(i, j) + b.at(i, j);
        }
    }
    return out;
}

Matrix sub(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw math_error("matrix difference dimension mismatch");
    }
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.at(i, j) = a.at(i, j) - b.at(i, j);
        }
    }
    return out;
}

Matrix scale(const Scalar& c, const Matrix& a) {
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out.at(i, j) = c * a.at(i, j);
        }
    }
    return out;
}

Matrix transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out.at(j, i) = m.at(i, j);
        }
    }
    return out;
}

Matrix conj_transpose(const Matrix& m) {
    Matrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            out.at(j, i) = conj(m.at(i, j));
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Elimination
// ---------------------------------------------------------------------------

RrefResult rref_full(const Matrix& m) {
    RrefResult res;
    res.reduced = m;
    Matrix& r = res.reduced;
    std::size_t pivot_row = 0;
    for (std::size_t col = 0; col < r.cols() && pivot_row < r.rows(); ++col) {
        std::size_t hit = r.rows();
        for (std::size_t i = pivot_row; i < r.rows(); ++i) {
            if (!r.at(i, col).is_zero()) {
                hit = i;
                break;
            }
        }
        if (hit == r.rows()) {
            continue;
        }
        if (hit != pivot_row) {
            for (std::size_t j = 0; j < r.cols(); ++j) {
                std::swap(r.at(hit, j), r.at(pivot_row, j));
            }
        }
        Scalar inv = Scalar(1) / r.at(pivot_row, col);
        for (std::size_t j = col; j < r.cols(); ++j) {
            r.at(pivot_row, j) = inv * r.at(pivot_row, j);
        }
        for (std::size_t i = 0; i < r.rows(); ++i) {
            if (i == pivot_row || r.at(i, col).is_zero()) {
                continue;
            }
            Scalar f = r.at(i, col);
            for (std::size_t j = col; j < r.cols(); ++j) {
                r.at(i, j) = r.at(i, j) - f * r.at(pivot_row, j);
            }
        }
        res.pivot_cols.push_back(col);
        ++pivot_row;
    }
    res.rank = pivot_row;
    return res;
}

Matrix rref(const Matrix& m) { return rref_full(m).reduced; }

std::size_t rank(const Matrix& m) { return rref_full(m).rank; }

Matrix kernel_basis(const Matrix& m) {
    RrefResult res = rref_full(m);
    std::vector<std::size_t> pivot_of_col(m.cols(), static_cast<std::size_t>(-1));
    for (std::size_t p = 0; p < res.pivot_cols.size(); ++p) {
        pivot_of_col[res.pivot_cols[p]] = p;
    }
    std::vector<std::size_t> free_cols;
    for (std::size_t c = 0; c < m.cols(); ++c) {
        if (pivot_of_col[c] == static_cast<std::size_t>(-1)) {
            free_cols.push_back(c);
        }
    }
    Matrix out(m.cols(), free_cols.size());
    for (std::size_t k = 0; k < free_cols.size(); ++k) {
        std::size_t f = free_cols[k];
        out.at(f, k) = Scalar(1);
        for (std::size_t p = 0; p < res.pivot_cols.size(); ++p) {
            out.at(res.pivot_cols[p], k) = -res.reduced.at(p, f);
        }
    }
    return out;
}

Matrix inverse(const Matrix& m) {
    if (!m.is_square()) {
        throw math_error("inverse requires a square matrix");
    }
    std::size_t n = m.rows();
    RrefResult res = rref_full(augment_h(m, Matrix::identity(n)));
    if (res.rank < n || (n > 0 && res.pivot_cols[n - 1] >= n)) {
        throw math_error("matrix is singular");
    }
    return res.reduced.block(0, n, n, n);
}

Matrix augment_h(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows()) {
        throw math_error("horizontal augmentation requires equal row counts");
    }
    Matrix out(a.rows(), a.cols() + b.cols());
    out.set_block(0, 0, a);
    out.set_block(0, a.cols(), b);
    return out;
}

Matrix augment_v(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.cols()) {
        throw math_error("vertical augmentation requires equal column counts");
    }
    Matrix out(a.rows() + b.rows(), a.cols());
    out.set_block(0, 0, a);
    out.set_block(a.rows(), 0, b);
    return out;
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

std::string to_text(const Matrix& m) {
    if (m.rows() == 0) {
        return "[]\n";
    }
    std::ostringstream out;
    out << "[";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i > 0) {
            out << ",\n ";
        }
        out << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j > 0) {
                out << ",";
            }
            out << '"' << to_string(m.at(i, j)) << '"';
        }
        out << "]";
    }
    out << "]\n";
    return out.str();
}

Matrix matrix_from_text(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw parse_error(std::string("matrix text is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw parse_error("matrix text must be a JSON array of rows");
    }
    std::size_t rows = doc.size();
    if (rows == 0) {
        return Matrix(0, 0);
    }
    if (!doc[0].is_array()) {
        throw parse_error("matrix row 1 is not an array");
    }
    std::size_t cols = doc[0].size();
    Matrix out(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = doc[i];
        if (!row.is_array() || row.size() != cols) {
            throw parse_error("matrix row " + std::to_string(i + 1) +
                              " has inconsistent shape");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (!row[j].is_string()) {
                throw parse_error("matrix entry (" + std::to_string(i + 1) + "," +
                                  std::to_string(j + 1) + ") must be a scalar string");
            }
            out.at(i, j) = parse_scalar(row[j].get<std::string>());
        }
    }
    return out;
}

} // namespace exact
} // namespace invsub
