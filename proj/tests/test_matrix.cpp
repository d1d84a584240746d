#include <cmath>
#include <limits>

#include "doctest.h"
#include "qtpm/linalg.hpp"
#include "qtpm/spectrum.hpp"

using qtpm::la::complex;
using qtpm::la::ComplexMatrix;
using qtpm::la::HermitianOperator;

namespace {
const double kLog2 = std::log(2.0);
}

TEST_CASE("identity and diagonal constructors") {
    const auto i3 = ComplexMatrix::identity(3);
    CHECK(i3.trace() == complex(3.0, 0.0));
    CHECK(i3(0, 1) == complex(0.0, 0.0));

    const auto d = ComplexMatrix::diagonal(std::vector<double>{1.0, -2.0});
    CHECK(d(1, 1).real() == -2.0);
    CHECK(d.real_diagonal() == std::vector<double>{1.0, -2.0});
}

TEST_CASE("dagger transposes and conjugates") {
    ComplexMatrix a(2, 2);
    a(0, 1) = complex(1.0, 2.0);
    const auto ad = a.dagger();
    CHECK(ad(1, 0) == complex(1.0, -2.0));
    CHECK(ad(0, 1) == complex(0.0, 0.0));
    CHECK(a.max_abs_diff(ad.dagger()) == 0.0);
}

TEST_CASE("non-finite entries are rejected") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(ComplexMatrix(1, 1, {complex(nan, 0.0)}), qtpm::NonFiniteEntry);
}

TEST_CASE("eigensolver handles a two-level flip") {
    ComplexMatrix a(2, 2);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    const auto h = HermitianOperator::from_matrix(a);
    CHECK(h.eigenvalues()[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(h.eigenvalues()[1] == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(h.matrix().max_abs_diff(a) <= 1e-13);
    CHECK(h.eigenbasis().unitarity_defect() <= 1e-13);
    CHECK(h.min_gap() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("eigensolver rejects non-hermitian input") {
    ComplexMatrix a(2, 2);
    a(0, 1) = complex(0.0, 1.0);
    a(1, 0) = complex(0.0, 1.0); // should be -i
    CHECK_THROWS_AS(HermitianOperator::from_matrix(a), qtpm::NotHermitian);
}

TEST_CASE("diagonal operators keep their eigenvalue order") {
    const auto h = HermitianOperator::diagonal({0.5, -0.5});
    CHECK(h.eigenvalues()[0] == 0.5);
    CHECK(h.eigenbasis().max_abs_diff(ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("kron lays out blocks row-major") {
    const auto a = ComplexMatrix::diagonal(std::vector<double>{1.0, 2.0});
    const auto k = qtpm::la::kron(a, ComplexMatrix::identity(2));
    CHECK(k.rows() == 4);
    CHECK(k(0, 0).real() == 1.0);
    CHECK(k(3, 3).real() == 2.0);
    CHECK(k(1, 2) == complex(0.0, 0.0));
}

TEST_CASE("partial trace over the pointer undoes kron") {
    ComplexMatrix rho(2, 2);
    rho(0, 0) = 0.7;
    rho(1, 1) = 0.3;
    rho(0, 1) = complex(0.1, 0.05);
    rho(1, 0) = complex(0.1, -0.05);
    const auto tau = ComplexMatrix::diagonal(std::vector<double>{0.6, 0.25, 0.1, 0.05});
    const auto back = qtpm::la::partial_trace_pointer(qtpm::la::kron(rho, tau), 2, 4);
    CHECK(back.max_abs_diff(rho) <= 1e-15);
}

TEST_CASE("trace distance extremes") {
    const auto p0 = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const auto p1 = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
    CHECK(qtpm::la::trace_distance(p0, p1) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(qtpm::la::trace_distance(p0, p0) <= 1e-15);
}

TEST_CASE("entropies of flat and pure states") {
    const auto flat = ComplexMatrix::diagonal(std::vector<double>{0.25, 0.25, 0.25, 0.25});
    CHECK(qtpm::la::vn_entropy(flat) == doctest::Approx(2.0 * kLog2).epsilon(1e-14));
    const auto pure = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    CHECK(qtpm::la::vn_entropy(pure) <= 1e-14);
}

TEST_CASE("relative entropy is zero on the diagonal and positive off it") {
    const auto rho = ComplexMatrix::diagonal(std::vector<double>{0.8, 0.2});
    const auto sigma = ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5});
    CHECK(qtpm::la::relative_entropy(rho, rho) <= 1e-13);
    const double d = qtpm::la::relative_entropy(rho, sigma);
    const double direct = 0.8 * std::log(0.8 / 0.5) + 0.2 * std::log(0.2 / 0.5);
    CHECK(d == doctest::Approx(direct).epsilon(1e-13));
    CHECK(d > 0.0);
}

TEST_CASE("relative entropy rejects support leaks") {
    const auto rho = ComplexMatrix::diagonal(std::vector<double>{1.0, 0.0});
    const auto sigma = ComplexMatrix::diagonal(std::vector<double>{0.0, 1.0});
    CHECK_THROWS_AS(qtpm::la::relative_entropy(rho, sigma), qtpm::SupportViolation);
}

TEST_CASE("spectral exponential and unitary evolution") {
    const auto h = HermitianOperator::diagonal({0.0, 1.0});
    const auto e = qtpm::la::spectral_exp(h, complex(-2.0, 0.0));
    CHECK(e(0, 0).real() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(e(1, 1).real() == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));

    const auto u = qtpm::la::unitary_exp(h, 0.7);
    CHECK(u.unitarity_defect() <= 1e-14);

    const auto rho = ComplexMatrix::diagonal(std::vector<double>{0.6, 0.4});
    const auto evolved = qtpm::la::evolve(h, 0.7, rho);
    CHECK(evolved.trace().real() == doctest::Approx(1.0).epsilon(1e-14));
    // rho commutes with h, so nothing moves
    CHECK(evolved.max_abs_diff(rho) <= 1e-15);
}

TEST_CASE("density validation") {
    CHECK_NOTHROW(qtpm::la::validate_density(ComplexMatrix::diagonal(std::vector<double>{0.5, 0.5})));
    CHECK_THROWS_AS(qtpm::la::validate_density(ComplexMatrix::diagonal(std::vector<double>{1.0, 1.0})),
                    qtpm::NotAState);
    CHECK_THROWS_AS(qtpm::la::validate_density(ComplexMatrix::diagonal(std::vector<double>{1.5, -0.5})),
                    qtpm::NotAState);
}

TEST_CASE("unitarity defect flags non-unitary matrices") {
    CHECK(ComplexMatrix::identity(3).unitarity_defect() == 0.0);
    const auto half = 0.5 * ComplexMatrix::identity(2);
    CHECK(half.unitarity_defect() == doctest::Approx(0.75).epsilon(1e-15));
}
