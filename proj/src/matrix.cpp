#include "qmi/matrix.hpp"

#include <cmath>
#include <utility>

namespace qmi {

namespace {
void check_shape(std::size_t rows, std::size_t cols) {
    if (rows == 0 || cols == 0)
        throw InvalidMatrixError("matrix dimensions must be at least 1x1");
}
} // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex(0.0, 0.0)) {
    check_shape(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    check_shape(rows, cols);
    if (entries_.size() != rows_ * cols_)
        throw InvalidMatrixError("entry count does not match rows*cols");
    check_finite();
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    check_shape(rows_, cols_);
    entries_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
        if (r.size() != cols_)
            throw InvalidMatrixError("ragged initializer list");
        entries_.insert(entries_.end(), r.begin(), r.end());
    }
    check_finite();
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<Complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i)
        m(i, i) = d[i];
    m.check_finite();
    return m;
}

void ComplexMatrix::check_finite() const {
    for (const auto& e : entries_)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
            throw InvalidMatrixError("matrix entry is NaN or Inf");
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix addition shape mismatch");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m.entries_[k] = entries_[k] + o.entries_[k];
    m.check_finite();
    return m;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatchError("matrix subtraction shape mismatch");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m.entries_[k] = entries_[k] - o.entries_[k];
    m.check_finite();
    return m;
}

ComplexMatrix ComplexMatrix::operator-() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m.entries_[k] = -entries_[k];
    return m;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& o) const {
    if (cols_ != o.rows_)
        throw DimensionMismatchError("matrix product shape mismatch");
    ComplexMatrix m(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Complex aik = (*this)(i, k);
            if (aik == Complex(0.0, 0.0))
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                m(i, j) += aik * o(k, j);
        }
    }
    m.check_finite();
    return m;
}

ComplexMatrix ComplexMatrix::operator*(Complex s) const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        m.entries_[k] = entries_[k] * s;
    m.check_finite();
    return m;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& e : entries_)
        s += std::norm(e);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double s = 0.0;
    for (const auto& e : entries_)
        s = std::max(s, std::abs(e));
    return s;
}

Complex ComplexMatrix::trace() const {
    if (!is_square())
        throw DimensionMismatchError("trace of non-square matrix");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        t += (*this)(i, i);
    return t;
}

ComplexMatrix ComplexMatrix::hermitian_part() const {
    if (!is_square())
        throw DimensionMismatchError("hermitian part of non-square matrix");
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            const Complex v = 0.5 * ((*this)(i, j) + std::conj((*this)(j, i)));
            m(i, j) = v;
            m(j, i) = std::conj(v);
        }
        m(i, i) = Complex(m(i, i).real(), 0.0);
    }
    return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_)
        throw DimensionMismatchError("block exceeds matrix bounds");
    ComplexMatrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
        for (std::size_t j = 0; j < nc; ++j)
            m(i, j) = (*this)(r0 + i, c0 + j);
    return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m) {
    if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_)
        throw DimensionMismatchError("block exceeds matrix bounds");
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            (*this)(r0 + i, c0 + j) = m(i, j);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return false;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (std::abs(a(i, j) - b(i, j)) > tol)
                return false;
    return true;
}

} // namespace qmi
