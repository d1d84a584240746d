#pragma once

#include "qtpm/matrix.hpp"
#include "qtpm/spectrum.hpp"

namespace qtpm::la {

// Hermitian, positive-semidefinite, unit trace. The alias carries no
// enforcement; validate_density checks all three when a boundary needs it.
using DensityMatrix = ComplexMatrix;

// Throws NotAState unless rho is Hermitian (1e-10), PSD (eigenvalues above
// -1e-12) and unit trace (1e-10).
void validate_density(const DensityMatrix& rho);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Traces out the second (pointer) factor of a d_s*d_p joint state.
DensityMatrix partial_trace_pointer(const DensityMatrix& rho_sp, std::size_t d_s, std::size_t d_p);

// Half the sum of absolute eigenvalues of rho - sigma.
double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma);

// Von Neumann entropy in nats. Eigenvalues in [-1e-12, 0] are treated as 0.
double vn_entropy(const DensityMatrix& rho);

// Relative entropy D(rho||sigma) in nats. Throws SupportViolation when rho
// has weight outside the support of sigma (the caller may report infinity).
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

// B diag(e^{z E_k}) B-dagger for h = B diag(E) B-dagger.
ComplexMatrix spectral_exp(const HermitianOperator& h, complex z);

// exp(-iHt)
ComplexMatrix unitary_exp(const HermitianOperator& h, double t);

// exp(-iHt) . state . exp(+iHt)
DensityMatrix evolve(const HermitianOperator& h, double t, const DensityMatrix& state);

} // namespace qtpm::la
