#pragma once

#include <vector>

#include "qtpm/matrix.hpp"

namespace qtpm::la {

// Eigendecomposition of a Hermitian matrix. Eigenvalues ascending,
// eigenvector k in column k of `eigenvectors`.
struct HermitianSpectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;
};

// Cyclic Jacobi on Hermitian input. Converges when the off-diagonal
// Frobenius mass drops below 1e-14 relative to the matrix scale; capped at
// 50 sweeps. Throws NotHermitian / NoConvergence.
HermitianSpectrum hermitian_spectrum(const ComplexMatrix& a);

// A Hamiltonian given by its eigenvalues (order as given, energy units) and
// the unitary whose columns are the corresponding eigenvectors.
class HermitianOperator {
public:
    HermitianOperator(std::vector<double> eigenvalues, ComplexMatrix eigenbasis);

    // Diagonal in the computational basis.
    static HermitianOperator diagonal(std::vector<double> eigenvalues);
    // Eigendecomposes `m`; resulting eigenvalues ascending.
    static HermitianOperator from_matrix(const ComplexMatrix& m);

    std::size_t dim() const { return eigenvalues_.size(); }
    const std::vector<double>& eigenvalues() const { return eigenvalues_; }
    const ComplexMatrix& eigenbasis() const { return basis_; }

    // B diag(E) B-dagger
    ComplexMatrix matrix() const;
    // smallest gap between distinct eigenvalues; +inf for dim 1
    double min_gap() const;

private:
    std::vector<double> eigenvalues_;
    ComplexMatrix basis_;
};

} // namespace qtpm::la
