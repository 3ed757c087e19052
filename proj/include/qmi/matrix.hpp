#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "qmi/errors.hpp"

namespace qmi {

using Complex = std::complex<double>;

/// Dense complex matrix, row-major, value semantics. Entries are validated
/// to be finite on every construction; empty (0x0) matrices are rejected.
class ComplexMatrix {
public:
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix diagonal(const std::vector<Complex>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    const std::vector<Complex>& entries() const { return entries_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;

    ComplexMatrix operator+(const ComplexMatrix& o) const;
    ComplexMatrix operator-(const ComplexMatrix& o) const;
    ComplexMatrix operator-() const;
    ComplexMatrix operator*(const ComplexMatrix& o) const;
    ComplexMatrix operator*(Complex s) const;
    friend ComplexMatrix operator*(Complex s, const ComplexMatrix& m) { return m * s; }

    double frobenius_norm() const;
    double max_abs() const;
    Complex trace() const;

    /// (A + A*)/2 — kills rounding drift on values that are Hermitian by
    /// construction.
    ComplexMatrix hermitian_part() const;

    ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
    void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m);

    /// Validates all entries finite; called by constructors.
    void check_finite() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Complex> entries_;
};

/// Entry-wise comparison: max |a_ij - b_ij| <= tol.
bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol);

} // namespace qmi
