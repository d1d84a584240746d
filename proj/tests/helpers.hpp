#pragma once

#include <cstddef>
#include <vector>

#include "qtpm/measurement.hpp"
#include "qtpm/rng.hpp"

namespace testutil {

// Pointer so cold that every weight outside the top group underflows to an
// exact zero; the readout collapses to the identity channel.
inline qtpm::meas::MeasurementChannel ideal_channel(std::size_t d_s, std::size_t lambda) {
    std::vector<double> e(d_s * lambda);
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<double>(i / lambda);
    qtpm::meas::PointerModel pointer(qtpm::la::HermitianOperator::diagonal(std::move(e)), 1000.0,
                                     d_s);
    return qtpm::meas::build_channel(pointer, qtpm::meas::assignment_min_invasive(d_s));
}

inline qtpm::meas::MeasurementChannel warm_channel(std::size_t d_s, std::size_t lambda,
                                                   double beta_p, bool latin,
                                                   qtpm::rng::Stream& s) {
    std::vector<double> e(d_s * lambda);
    for (auto& v : e) v = s.range(-1.0, 1.0);
    qtpm::meas::PointerModel pointer(qtpm::la::HermitianOperator::diagonal(std::move(e)), beta_p,
                                     d_s);
    const auto assignment = latin ? qtpm::meas::assignment_min_invasive(d_s)
                                  : qtpm::meas::assignment_minimal_energy(d_s);
    return qtpm::meas::build_channel(pointer, assignment);
}

inline qtpm::la::ComplexMatrix random_unitary(std::size_t d, qtpm::rng::Stream& s) {
    qtpm::la::ComplexMatrix a(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        a(i, i) = s.range(-1.0, 1.0);
        for (std::size_t j = i + 1; j < d; ++j) {
            const double re = s.range(-1.0, 1.0);
            const double im = s.range(-1.0, 1.0);
            a(i, j) = qtpm::la::complex(re, im);
            a(j, i) = qtpm::la::complex(re, -im);
        }
    }
    return qtpm::la::spectral_exp(qtpm::la::HermitianOperator::from_matrix(a),
                                  qtpm::la::complex(0.0, -1.0));
}

} // namespace testutil
