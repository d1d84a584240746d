#include "qtpm/matrix.hpp"

#include <cmath>
#include <utility>

namespace qtpm::la {

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_)
        throw DimensionMismatch("entry count " + std::to_string(data_.size()) + " != " +
                                std::to_string(rows_) + "x" + std::to_string(cols_));
    validate_finite();
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<double>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    m.validate_finite();
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<complex>& d) {
    ComplexMatrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    m.validate_finite();
    return m;
}

void ComplexMatrix::validate_finite() const {
    for (const complex& z : data_)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw NonFiniteEntry("matrix entry is NaN or Inf");
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
    return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix m(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
    return m;
}

complex ComplexMatrix::trace() const {
    if (!is_square()) throw DimensionMismatch("trace of non-square matrix");
    complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::max_abs_diff(const ComplexMatrix& other) const {
    if (rows_ != other.rows_ || cols_ != other.cols_)
        throw DimensionMismatch("max_abs_diff dims");
    double m = 0.0;
    for (std::size_t k = 0; k < data_.size(); ++k) m = std::max(m, std::abs(data_[k] - other.data_[k]));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) throw DimensionMismatch("hermiticity of non-square matrix");
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = i; j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

double ComplexMatrix::unitarity_defect() const {
    ComplexMatrix p = dagger() * (*this);
    for (std::size_t i = 0; i < p.rows(); ++i) p(i, i) -= 1.0;
    return p.max_abs();
}

std::vector<double> ComplexMatrix::real_diagonal() const {
    if (!is_square()) throw DimensionMismatch("diagonal of non-square matrix");
    std::vector<double> d(rows_);
    for (std::size_t i = 0; i < rows_; ++i) d[i] = (*this)(i, i).real();
    return d;
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix addition dims");
    ComplexMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = a.data_[k] + b.data_[k];
    m.validate_finite();
    return m;
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix subtraction dims");
    ComplexMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = a.data_[k] - b.data_[k];
    m.validate_finite();
    return m;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product dims");
    ComplexMatrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
        for (std::size_t k = 0; k < a.cols_; ++k) {
            const complex aik = a(i, k);
            if (aik == 0.0) continue;
            for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += aik * b(k, j);
        }
    m.validate_finite();
    return m;
}

ComplexMatrix operator*(complex s, const ComplexMatrix& a) {
    ComplexMatrix m(a.rows_, a.cols_);
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] = s * a.data_[k];
    m.validate_finite();
    return m;
}

ComplexMatrix operator*(double s, const ComplexMatrix& a) { return complex(s, 0.0) * a; }

} // namespace qtpm::la
