#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qtpm/errors.hpp"

namespace qtpm::la {

using complex = std::complex<double>;

// Dense complex matrix, row-major. Entries are validated to be finite on
// every construction path; all operations return new values.
class ComplexMatrix {
public:
    ComplexMatrix() : rows_(0), cols_(0) {}
    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, complex(0.0, 0.0)) {}
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    static ComplexMatrix diagonal(const std::vector<double>& d);
    static ComplexMatrix diagonal(const std::vector<complex>& d);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    const complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    const std::vector<complex>& entries() const { return data_; }

    ComplexMatrix dagger() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    complex trace() const;
    double frobenius_norm() const;
    double max_abs() const;
    // max-abs entry of (*this - other); requires equal dims
    double max_abs_diff(const ComplexMatrix& other) const;
    // max-abs entry of (A - A.dagger()); 0 for exactly Hermitian input
    double hermiticity_defect() const;
    bool is_hermitian(double tol = 1e-12) const { return is_square() && hermiticity_defect() <= tol; }
    // max-abs entry of (A.dagger()*A - I)
    double unitarity_defect() const;

    std::vector<double> real_diagonal() const;

    // after in-place edits, re-checks that all entries are finite
    void validate_finite() const;

    friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend ComplexMatrix operator*(complex s, const ComplexMatrix& a);
    friend ComplexMatrix operator*(double s, const ComplexMatrix& a);

private:
    std::size_t rows_, cols_;
    std::vector<complex> data_;
};

} // namespace qtpm::la
