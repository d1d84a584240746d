#include "qtpm/linalg.hpp"

#include <cmath>
#include <string>

#include "qtpm/errors.hpp"

namespace qtpm::la {

void validate_density(const DensityMatrix& rho) {
    if (!rho.is_square()) throw NotAState("density matrix must be square");
    if (rho.hermiticity_defect() > 1e-10) throw NotAState("density matrix not Hermitian");
    const complex tr = rho.trace();
    if (std::abs(tr - complex(1.0, 0.0)) > 1e-10) {
        throw NotAState("density matrix trace deviates from 1 by " + std::to_string(std::abs(tr - complex(1.0, 0.0))));
    }
    const HermitianSpectrum s = hermitian_spectrum(rho);
    if (s.eigenvalues.front() < -1e-12) {
        throw NotAState("density matrix has eigenvalue " + std::to_string(s.eigenvalues.front()));
    }
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t ra = a.rows(), ca = a.cols();
    const std::size_t rb = b.rows(), cb = b.cols();
    ComplexMatrix out = ComplexMatrix::zeros(ra * rb, ca * cb);
    for (std::size_t i = 0; i < ra; ++i) {
        for (std::size_t j = 0; j < ca; ++j) {
            const complex aij = a(i, j);
            if (aij == complex(0.0, 0.0)) continue;
            for (std::size_t k = 0; k < rb; ++k) {
                for (std::size_t l = 0; l < cb; ++l) {
                    out(i * rb + k, j * cb + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

DensityMatrix partial_trace_pointer(const DensityMatrix& rho_sp, std::size_t d_s, std::size_t d_p) {
    if (rho_sp.rows() != d_s * d_p || rho_sp.cols() != d_s * d_p) {
        throw DimensionMismatch("partial_trace_pointer: expected " + std::to_string(d_s * d_p) +
                                "-dimensional joint state, got " + std::to_string(rho_sp.rows()));
    }
    ComplexMatrix out = ComplexMatrix::zeros(d_s, d_s);
    for (std::size_t i = 0; i < d_s; ++i) {
        for (std::size_t j = 0; j < d_s; ++j) {
            complex acc(0.0, 0.0);
            for (std::size_t k = 0; k < d_p; ++k) {
                acc += rho_sp(i * d_p + k, j * d_p + k);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

double trace_distance(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw DimensionMismatch("trace_distance: operand dimensions differ");
    }
    const HermitianSpectrum s = hermitian_spectrum(rho - sigma);
    double acc = 0.0;
    for (double e : s.eigenvalues) acc += std::abs(e);
    return 0.5 * acc;
}

namespace {

// clamps PSD roundoff; anything below -1e-12 is a real violation
double clamp_population(double lambda, const char* who) {
    if (lambda < -1e-12) {
        throw NotAState(std::string(who) + ": negative eigenvalue " + std::to_string(lambda));
    }
    return lambda < 0.0 ? 0.0 : lambda;
}

} // namespace

double vn_entropy(const DensityMatrix& rho) {
    const complex tr = rho.trace();
    if (std::abs(tr - complex(1.0, 0.0)) > 1e-10) {
        throw NotAState("vn_entropy: trace deviates from 1 by " + std::to_string(std::abs(tr - complex(1.0, 0.0))));
    }
    const HermitianSpectrum s = hermitian_spectrum(rho);
    double acc = 0.0;
    for (double lambda : s.eigenvalues) {
        const double p = clamp_population(lambda, "vn_entropy");
        if (p > 0.0) acc -= p * std::log(p);
    }
    return acc < 0.0 ? 0.0 : acc;
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
        throw DimensionMismatch("relative_entropy: operand dimensions differ");
    }
    const std::size_t n = rho.rows();
    const HermitianSpectrum sr = hermitian_spectrum(rho);
    const HermitianSpectrum ss = hermitian_spectrum(sigma);

    std::vector<double> lam(n), mu(n);
    for (std::size_t i = 0; i < n; ++i) {
        lam[i] = clamp_population(sr.eigenvalues[i], "relative_entropy(rho)");
        mu[i] = clamp_population(ss.eigenvalues[i], "relative_entropy(sigma)");
    }

    // overlap[i][j] = |<w_j|v_i>|^2
    std::vector<std::vector<double>> overlap(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            complex ip(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) {
                ip += std::conj(ss.eigenvectors(k, j)) * sr.eigenvectors(k, i);
            }
            overlap[i][j] = std::norm(ip);
        }
    }

    // support check: every populated eigenvector of rho must see sigma
    for (std::size_t i = 0; i < n; ++i) {
        if (lam[i] <= 1e-12) continue;
        double seen = 0.0;
        for (std::size_t j = 0; j < n; ++j) seen += mu[j] * overlap[i][j];
        if (seen <= 1e-14) {
            throw SupportViolation("relative_entropy: rho eigenvector with weight " + std::to_string(lam[i]) +
                                   " lies outside supp(sigma)");
        }
    }

    double entropy_term = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lam[i] > 0.0) entropy_term += lam[i] * std::log(lam[i]);
    }

    double cross_term = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (lam[i] <= 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            const double o = overlap[i][j];
            if (mu[j] <= 1e-300) {
                // null overlap with a null direction carries no weight
                if (o > 1e-14 && lam[i] > 1e-12) {
                    throw SupportViolation("relative_entropy: weight on a zero eigenvalue of sigma");
                }
                continue;
            }
            cross_term += lam[i] * o * std::log(mu[j]);
        }
    }
    return entropy_term - cross_term;
}

ComplexMatrix spectral_exp(const HermitianOperator& h, complex z) {
    const std::size_t n = h.dim();
    const ComplexMatrix& b = h.eigenbasis();
    ComplexMatrix scaled = b;
    for (std::size_t j = 0; j < n; ++j) {
        const complex f = std::exp(z * h.eigenvalues()[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= f;
    }
    return scaled * b.dagger();
}

ComplexMatrix unitary_exp(const HermitianOperator& h, double t) {
    return spectral_exp(h, complex(0.0, -t));
}

DensityMatrix evolve(const HermitianOperator& h, double t, const DensityMatrix& state) {
    if (state.rows() != h.dim() || state.cols() != h.dim()) {
        throw DimensionMismatch("evolve: state dimension does not match the Hamiltonian");
    }
    const ComplexMatrix u = unitary_exp(h, t);
    return u * state * u.dagger();
}

} // namespace qtpm::la
