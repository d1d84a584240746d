#include "qtpm/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "qtpm/errors.hpp"

namespace qtpm::la {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) acc += std::norm(a(i, j));
        }
    }
    return std::sqrt(acc);
}

} // namespace

HermitianSpectrum hermitian_spectrum(const ComplexMatrix& a) {
    if (!a.is_square()) {
        throw DimensionMismatch("hermitian_spectrum: matrix must be square");
    }
    const double defect = a.hermiticity_defect();
    if (defect > 1e-12) {
        throw NotHermitian("hermitian_spectrum: hermiticity defect " + std::to_string(defect));
    }

    const std::size_t n = a.rows();
    ComplexMatrix w = a;
    // symmetrize so roundoff in the input cannot bias the iteration
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            if (i == j) {
                w(i, i) = complex(w(i, i).real(), 0.0);
            } else {
                const complex m = 0.5 * (w(i, j) + std::conj(w(j, i)));
                w(i, j) = m;
                w(j, i) = std::conj(m);
            }
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double tol = 1e-14 * std::max(1.0, a.frobenius_norm());
    constexpr int kMaxSweeps = 50;

    bool converged = offdiag_norm(w) <= tol;
    for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const complex apq = w(p, q);
                const double r = std::abs(apq);
                if (r < 1e-300) continue;

                const complex phase = apq / r; // e^{i phi}
                const double tau = (w(q, q).real() - w(p, p).real()) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                const complex sp = s * phase;            // s e^{i phi}
                const complex spc = s * std::conj(phase); // s e^{-i phi}

                // A <- J^dag A J with J acting on the (p,q) plane
                for (std::size_t i = 0; i < n; ++i) {
                    const complex aip = w(i, p);
                    const complex aiq = w(i, q);
                    w(i, p) = c * aip - spc * aiq;
                    w(i, q) = sp * aip + c * aiq;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    const complex apj = w(p, j);
                    const complex aqj = w(q, j);
                    w(p, j) = c * apj - sp * aqj;
                    w(q, j) = spc * apj + c * aqj;
                }
                w(p, q) = 0.0;
                w(q, p) = 0.0;
                w(p, p) = complex(w(p, p).real(), 0.0);
                w(q, q) = complex(w(q, q).real(), 0.0);

                for (std::size_t i = 0; i < n; ++i) {
                    const complex vip = v(i, p);
                    const complex viq = v(i, q);
                    v(i, p) = c * vip - spc * viq;
                    v(i, q) = sp * vip + c * viq;
                }
            }
        }
        converged = offdiag_norm(w) <= tol;
    }
    if (!converged) {
        throw NoConvergence("hermitian_spectrum: off-diagonal norm still above tolerance after 50 sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return w(i, i).real() < w(j, j).real();
    });

    HermitianSpectrum out;
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix::zeros(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = w(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) {
            out.eigenvectors(i, k) = v(i, order[k]);
        }
    }
    return out;
}

HermitianOperator::HermitianOperator(std::vector<double> eigenvalues, ComplexMatrix eigenbasis)
    : eigenvalues_(std::move(eigenvalues)), basis_(std::move(eigenbasis)) {
    if (!basis_.is_square() || basis_.rows() != eigenvalues_.size()) {
        throw DimensionMismatch("HermitianOperator: eigenvalue count must match basis dimension");
    }
    for (double e : eigenvalues_) {
        if (!std::isfinite(e)) throw NonFiniteEntry("HermitianOperator: non-finite eigenvalue");
    }
    const double defect = basis_.unitarity_defect();
    if (defect > 1e-12) {
        throw NotUnitary("HermitianOperator: eigenbasis unitarity defect " + std::to_string(defect));
    }
}

HermitianOperator HermitianOperator::diagonal(std::vector<double> eigenvalues) {
    const std::size_t n = eigenvalues.size();
    return HermitianOperator(std::move(eigenvalues), ComplexMatrix::identity(n));
}

HermitianOperator HermitianOperator::from_matrix(const ComplexMatrix& m) {
    HermitianSpectrum s = hermitian_spectrum(m);
    return HermitianOperator(std::move(s.eigenvalues), std::move(s.eigenvectors));
}

ComplexMatrix HermitianOperator::matrix() const {
    const std::size_t n = dim();
    ComplexMatrix scaled = basis_;
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            scaled(i, j) *= eigenvalues_[j];
        }
    }
    return scaled * basis_.dagger();
}

double HermitianOperator::min_gap() const {
    if (dim() < 2) return std::numeric_limits<double>::infinity();
    std::vector<double> sorted = eigenvalues_;
    std::sort(sorted.begin(), sorted.end());
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
        gap = std::min(gap, sorted[i + 1] - sorted[i]);
    }
    return gap;
}

} // namespace qtpm::la
