#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "qtpm/tpm.hpp"

namespace qtpm::fluct {

using la::complex;
using la::ComplexMatrix;
using la::DensityMatrix;
using la::HermitianOperator;
using meas::MeasurementChannel;
using tpm::Process;

struct CrooksPair {
    std::size_t n;
    std::size_t m;
    double p_f;
    double p_b;
    double sigma;        // log(P_F / P_B), entropy production of the pair
    double gamma;        // log of the conditional-probability mismatch
    double crooks_ratio; // P_B e^{beta(W - dF)} / P_F, 1 when Crooks holds
};

struct CrooksReport {
    std::vector<CrooksPair> pairs;
    double mean_sigma;              // sum P_F log(P_F/P_B)
    double max_relative_violation;  // max |P_B/P_F - 1| over supported pairs
    double modified_residual;       // worst per-pair defect of the corrected relation
};

// One ledger for both dissipation identities. Unused terms stay 0 for the
// simpler identity.
struct DissipationReport {
    double lhs;           // beta (<W> - dF)
    double delta_s0;      // entropy jump of the first measurement
    double rel_ent_final; // D(evolved post-measurement state || final thermal)
    double delta_df;      // correction from the backward initial state
    double rel_ent_fb;    // D(forward state at t || reversed backward state)
    double residual;      // |lhs - rhs|
};

struct SecondLawBound {
    double bound;
    bool holds;
};

struct FannesReport {
    double delta_s0;
    double bound;
    bool holds;
};

// G(u) = Tr[e^{iuHf} U sigma(u) U+]; coincides with the sum of
// p(n,m) e^{iu(E_m - E_n)} over outcome pairs.
complex characteristic_function(const Process& process, double beta,
                                const MeasurementChannel& channel0, complex u);

// <e^{-beta W}> for the non-ideal estimate; real part of G(i beta).
double jarzynski_functional(const Process& process, double beta, const MeasurementChannel& channel0);

// Multiplicative correction to Jarzynski: G(i beta) = chi e^{-beta dF}.
// Equals 1 whenever the channel is doubly stochastic.
double chi(const Process& process, double beta, const MeasurementChannel& channel0);

// <W> >= dF - (1/beta) log chi.
SecondLawBound second_law_bound(const Process& process, double beta, const MeasurementChannel& channel0);

// Pairwise forward/backward comparison: entropy production sigma, the
// conditional mismatch gamma, and how far the plain Crooks ratio drifts
// from 1. The gamma-corrected relation is checked per pair.
CrooksReport crooks_report(const Process& process, double beta, const MeasurementChannel& channel0,
                           const MeasurementChannel& channelf);

// beta(<W>_nonideal - dF) = dS_0 + D(evolved state || final thermal state).
DissipationReport dissipation_identity(const Process& process, double beta,
                                       const MeasurementChannel& channel0);

// Same identity with perfect measurements: dS_0 = 0 and the work term is
// the ideal mean work.
DissipationReport ideal_dissipation_identity(const Process& process, double beta);

// dS_0 against the readout-fidelity bound
// (1 - c_max) log(d_S - 1) + H2(c_max).
FannesReport fannes_bound(const MeasurementChannel& channel0, const Process& process, double beta);

// Time-resolved identity: beta(<W>_nonideal - dF) = dS_0 + dD_f +
// D(forward state at t || conjugated backward state at t_f - t). Needs the
// process to carry a time family.
DissipationReport kpv_extended(const Process& process, double beta, const MeasurementChannel& channel0,
                               const MeasurementChannel& channelf, double t);

} // namespace qtpm::fluct
