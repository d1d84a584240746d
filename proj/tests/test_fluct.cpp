#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "qtpm/fluct.hpp"
#include "qtpm/scenarios.hpp"
#include "qtpm/thermo.hpp"

using qtpm::la::complex;
using qtpm::la::HermitianOperator;
using qtpm::tpm::Process;
using namespace qtpm::fluct;

namespace {

constexpr double kPi = 3.14159265358979323846;

Process random_driven_process(std::size_t d, qtpm::rng::Stream& s) {
    std::vector<double> e0(d), ef(d);
    for (std::size_t i = 0; i < d; ++i) e0[i] = -0.5 + static_cast<double>(i) * s.range(0.3, 0.7);
    for (std::size_t i = 0; i < d; ++i) ef[i] = -0.4 + static_cast<double>(i) * s.range(0.3, 0.7);
    return Process(HermitianOperator::diagonal(std::move(e0)),
                   HermitianOperator::diagonal(std::move(ef)), testutil::random_unitary(d, s));
}

} // namespace

TEST_CASE("characteristic function normalizes at zero") {
    qtpm::rng::Stream s(101);
    for (std::size_t d : {std::size_t{2}, std::size_t{3}}) {
        const auto process = random_driven_process(d, s);
        const auto channel = testutil::warm_channel(d, 3, 1.2, d == 2, s);
        const auto g0 = characteristic_function(process, 0.9, channel, complex(0.0, 0.0));
        CHECK(std::abs(g0 - complex(1.0, 0.0)) <= 1e-13);
    }
}

TEST_CASE("the exponential average factorizes through chi") {
    qtpm::rng::Stream s(102);
    for (bool latin : {false, true}) {
        const auto process = random_driven_process(3, s);
        const auto channel = testutil::warm_channel(3, 2, 0.8, latin, s);
        const double beta = 1.1;
        const auto g = characteristic_function(process, beta, channel, complex(0.0, beta));
        const double df =
            qtpm::thermo::free_energy_difference(process.h0(), process.hf(), beta);
        const double rhs = chi(process, beta, channel) * std::exp(-beta * df);
        CHECK(std::abs(g - complex(rhs, 0.0)) <= 1e-12);
        CHECK(std::abs(g.imag()) <= 1e-14);
    }
}

TEST_CASE("doubly stochastic readouts keep the jarzynski average exact") {
    qtpm::rng::Stream s(103);
    for (std::size_t d : {std::size_t{2}, std::size_t{3}, std::size_t{4}}) {
        const auto process = random_driven_process(d, s);
        const auto channel = testutil::warm_channel(d, 2, 1.4, true, s);
        const double beta = 0.7;
        const double lhs = jarzynski_functional(process, beta, channel);
        const double df =
            qtpm::thermo::free_energy_difference(process.h0(), process.hf(), beta);
        CHECK(std::abs(lhs - std::exp(-beta * df)) <= 1e-13);
        CHECK(std::abs(chi(process, beta, channel) - 1.0) <= 1e-12);
    }
}

TEST_CASE("chi stays within its physical range") {
    qtpm::rng::Stream s(104);
    for (int i = 0; i < 8; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const auto process = random_driven_process(d, s);
        const auto channel = testutil::warm_channel(d, 3, s.range(0.2, 2.5), i % 2 == 0, s);
        const double c = chi(process, 0.9, channel);
        CHECK(c >= -1e-12);
        CHECK(c <= static_cast<double>(d) + 1e-12);
    }
}

TEST_CASE("the corrected second law bound holds") {
    qtpm::rng::Stream s(105);
    const auto process = random_driven_process(3, s);
    const auto channel = testutil::warm_channel(3, 2, 1.0, false, s);
    const double beta = 0.8;
    const auto bound = second_law_bound(process, beta, channel);
    CHECK(bound.holds);
    const double df = qtpm::thermo::free_energy_difference(process.h0(), process.hf(), beta);
    const double expected = df - std::log(chi(process, beta, channel)) / beta;
    CHECK(std::abs(bound.bound - expected) <= 1e-12);
}

TEST_CASE("negative beta is rejected") {
    qtpm::rng::Stream s(106);
    const auto process = random_driven_process(2, s);
    const auto channel = testutil::warm_channel(2, 2, 1.0, true, s);
    CHECK_THROWS_AS(jarzynski_functional(process, -1.0, channel), qtpm::InvalidBeta);
}

TEST_CASE("perfect readout satisfies the pairwise ratio exactly") {
    qtpm::rng::Stream s(107);
    const auto process = random_driven_process(3, s);
    const auto channel = testutil::ideal_channel(3, 2);
    const auto report = crooks_report(process, 0.9, channel, channel);
    CHECK(!report.pairs.empty());
    for (const auto& pair : report.pairs) {
        CHECK(std::abs(pair.crooks_ratio - 1.0) <= 1e-12);
        CHECK(std::abs(pair.gamma) <= 1e-12);
    }
    // raw forward/backward mismatch reduces to pure detailed balance here
    const double df = qtpm::thermo::free_energy_difference(process.h0(), process.hf(), 0.9);
    double balance = 0.0;
    for (const auto& pair : report.pairs) {
        const double w = process.hf().eigenvalues()[pair.m] - process.h0().eigenvalues()[pair.n];
        balance = std::max(balance, std::abs(std::exp(-0.9 * (w - df)) - 1.0));
    }
    CHECK(std::abs(report.max_relative_violation - balance) <= 1e-12);
    CHECK(report.modified_residual <= 1e-12);
}

TEST_CASE("warm readout breaks the plain ratio but not the corrected one") {
    const double beta_s = 1.0 / 30.0;
    qtpm::meas::PointerModel pointer(qtpm::scen::qubit_register(3, 0.1), beta_s, 2);
    const auto channel = qtpm::meas::build_channel(pointer, qtpm::meas::assignment_min_invasive(2));
    const auto process = qtpm::scen::rabi_process(1.0, kPi / 3.0, 1.0);
    const auto report = crooks_report(process, beta_s, channel, channel);

    CHECK(report.max_relative_violation == doctest::Approx(0.0339).epsilon(0.01));
    CHECK(report.mean_sigma == doctest::Approx(2.774e-4).epsilon(0.01));
    CHECK(report.mean_sigma >= 0.0);
    CHECK(report.modified_residual <= 1e-12);

    // mean entropy production recounted from the raw tables
    const auto fwd = qtpm::tpm::nonideal_joint(process, beta_s, channel);
    const auto bwd = qtpm::tpm::backward_joint(process, beta_s, channel);
    double acc = 0.0;
    for (std::size_t n = 0; n < 2; ++n)
        for (std::size_t m = 0; m < 2; ++m)
            if (fwd(n, m) >= 1e-15) acc += fwd(n, m) * std::log(fwd(n, m) / bwd(n, m));
    CHECK(std::abs(acc - report.mean_sigma) <= 1e-12);
}

TEST_CASE("dissipation identity closes") {
    qtpm::rng::Stream s(108);
    const auto process = qtpm::scen::rabi_process(1.0, 1.7, 1.0);
    const auto channel = testutil::warm_channel(2, 4, 1.3, false, s);
    const double beta = 0.6;

    const auto report = dissipation_identity(process, beta, channel);
    CHECK(report.residual <= 1e-10);
    CHECK(report.delta_s0 >= -1e-12);
    CHECK(report.rel_ent_final >= -1e-12);

    const double w = qtpm::tpm::mean_work(qtpm::tpm::work_distribution(
        qtpm::tpm::nonideal_joint(process, beta, channel), process.h0(), process.hf()));
    const double df = qtpm::thermo::free_energy_difference(process.h0(), process.hf(), beta);
    CHECK(std::abs(report.lhs - beta * (w - df)) <= 1e-12);

    const auto ideal = ideal_dissipation_identity(process, beta);
    CHECK(ideal.residual <= 1e-10);
    CHECK(ideal.delta_s0 == 0.0);
}

TEST_CASE("time resolved identity closes at every snapshot") {
    qtpm::rng::Stream s(109);
    const auto process = qtpm::scen::rabi_process(1.0, 2.4, 1.0);
    const auto channel0 = testutil::warm_channel(2, 2, 0.9, false, s);
    const auto channelf = testutil::warm_channel(2, 2, 1.6, true, s);
    const double beta = 0.5;
    const double t_f = process.t_f();

    for (double t : {0.0, t_f / 3.0, t_f / 2.0, 2.0 * t_f / 3.0, t_f}) {
        const auto report = kpv_extended(process, beta, channel0, channelf, t);
        CHECK(report.residual <= 1e-10);
    }
    CHECK_THROWS_AS(kpv_extended(process, beta, channel0, channelf, -0.5), qtpm::CheckFailed);
    CHECK_THROWS_AS(kpv_extended(process, beta, channel0, channelf, t_f + 1.0), qtpm::CheckFailed);

    const Process bare(process.h0(), process.hf(), process.u());
    CHECK_THROWS_AS(kpv_extended(bare, beta, channel0, channelf, 0.0), qtpm::MissingTimeFamily);
}

TEST_CASE("entropy jump stays under the readout-fidelity bound") {
    qtpm::rng::Stream s(110);
    for (int i = 0; i < 6; ++i) {
        const std::size_t d = 2 + static_cast<std::size_t>(i % 3);
        const auto process = random_driven_process(d, s);
        const auto channel = testutil::warm_channel(d, 3, s.range(0.3, 2.0), i % 2 == 0, s);
        const auto report = fannes_bound(channel, process, 0.9);
        CHECK(report.holds);
        CHECK(report.delta_s0 <= report.bound + 1e-10);
    }

    // a perfect readout leaves the entropy untouched and the bound collapses
    const auto process = random_driven_process(3, s);
    const auto report = fannes_bound(testutil::ideal_channel(3, 2), process, 0.9);
    CHECK(report.bound <= 1e-14);
    CHECK(std::abs(report.delta_s0) <= 1e-14);
    CHECK(report.holds);
}
