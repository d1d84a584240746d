#include <cmath>

#include "doctest.h"
#include "qtpm/thermo.hpp"

using qtpm::la::HermitianOperator;

TEST_CASE("infinite temperature is maximally mixed") {
    const auto g = qtpm::thermo::gibbs(HermitianOperator::diagonal({-0.5, 0.1, 2.0}), 0.0);
    for (double p : g.populations()) CHECK(p == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(g.partition_function() == doctest::Approx(3.0).epsilon(1e-14));
}

TEST_CASE("qubit populations follow the boltzmann ratio") {
    const double beta = 0.8, gap = 1.3;
    const auto g = qtpm::thermo::gibbs(HermitianOperator::diagonal({-gap / 2.0, gap / 2.0}), beta);
    CHECK(g.populations()[1] / g.populations()[0] == doctest::Approx(std::exp(-beta * gap)).epsilon(1e-14));
    CHECK(g.populations()[0] + g.populations()[1] == doctest::Approx(1.0).epsilon(1e-15));

    const double z = std::exp(beta * gap / 2.0) + std::exp(-beta * gap / 2.0);
    CHECK(g.log_partition_function() == doctest::Approx(std::log(z)).epsilon(1e-14));
    CHECK(g.mean_energy() ==
          doctest::Approx(-(gap / 2.0) * std::tanh(beta * gap / 2.0)).epsilon(1e-13));
}

TEST_CASE("deep cold does not overflow") {
    const auto g = qtpm::thermo::gibbs(HermitianOperator::diagonal({0.0, 1.0}), 1000.0);
    CHECK(g.populations()[0] == 1.0);
    CHECK(g.populations()[1] == 0.0);
    CHECK(g.log_partition_function() == 0.0);
    CHECK(std::isfinite(g.partition_function()));
    CHECK_NOTHROW(qtpm::la::validate_density(g.matrix()));
}

TEST_CASE("log partition function absorbs the spectrum shift") {
    // spectrum offset by c multiplies Z by e^{-beta c}
    const double beta = 0.6;
    const auto a = qtpm::thermo::gibbs(HermitianOperator::diagonal({0.0, 0.7, 1.1}), beta);
    const auto b = qtpm::thermo::gibbs(HermitianOperator::diagonal({5.0, 5.7, 6.1}), beta);
    CHECK(b.log_partition_function() ==
          doctest::Approx(a.log_partition_function() - beta * 5.0).epsilon(1e-13));
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(a.populations()[i] == doctest::Approx(b.populations()[i]).epsilon(1e-14));
}

TEST_CASE("negative or non-finite beta is rejected") {
    CHECK_THROWS_AS(qtpm::thermo::gibbs(HermitianOperator::diagonal({0.0, 1.0}), -0.1),
                    qtpm::InvalidBeta);
    CHECK_THROWS_AS(
        qtpm::thermo::free_energy_difference(HermitianOperator::diagonal({0.0, 1.0}),
                                             HermitianOperator::diagonal({0.0, 2.0}), 0.0),
        qtpm::InvalidBeta);
}

TEST_CASE("free energy difference") {
    const auto h0 = HermitianOperator::diagonal({-0.5, 0.5});
    const auto hf = HermitianOperator::diagonal({-1.0, 1.0});
    CHECK(qtpm::thermo::free_energy_difference(h0, h0, 0.9) == 0.0);

    const double beta = 0.9;
    const double z0 = std::exp(0.45) + std::exp(-0.45);
    const double zf = std::exp(0.9) + std::exp(-0.9);
    CHECK(qtpm::thermo::free_energy_difference(h0, hf, beta) ==
          doctest::Approx(std::log(z0 / zf) / beta).epsilon(1e-14));
}

TEST_CASE("cooling bill vanishes without cooling and grows monotonically") {
    const double beta_s = 1.0 / 30.0;
    CHECK(qtpm::thermo::cooling_cost(3, 0.1, beta_s, beta_s) == 0.0);

    double prev = 0.0;
    for (double ratio : {150.0, 300.0, 450.0, 600.0, 750.0}) {
        const double cost = qtpm::thermo::cooling_cost(3, 0.1, beta_s, ratio * beta_s);
        CHECK(cost > prev);
        prev = cost;
    }
    // deep-cooling anchor for the 3-qubit pointer at one tenth of the gap
    CHECK(prev == doctest::Approx(93.9745).epsilon(1e-4));
    CHECK(prev > 2.0);
}

TEST_CASE("cooling requires the pointer to end up colder") {
    CHECK_THROWS_AS(qtpm::thermo::cooling_cost(3, 0.1, 1.0, 0.5), qtpm::InvalidTemperatureOrder);
}
