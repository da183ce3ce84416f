#include <catch2/catch_amalgamated.hpp>

#include "kdq/linalg.hpp"
#include "oracles.hpp"

using kdq::ComplexMatrix;
using kdq::cplx;

namespace {

ComplexMatrix random_hermitian(std::size_t d, kdq::Rng& rng) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) {
        m(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = rng.cnormal();
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

ComplexMatrix random_ginibre(std::size_t d, kdq::Rng& rng) {
    ComplexMatrix m(d, d);
    for (cplx& z : m.data()) z = rng.cnormal();
    return m;
}

double unitarity_defect(const ComplexMatrix& u) {
    return kdq::max_abs(kdq::adjoint(u) * u - ComplexMatrix::identity(u.rows()));
}

}  // namespace

TEST_CASE("eigendecomposition matches the 2x2 closed form") {
    kdq::Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const double a = 3.0 * rng.normal();
        const double b = 3.0 * rng.normal();
        const cplx h = rng.cnormal();
        const ComplexMatrix m = oracle::mat2(a, h, std::conj(h), b);
        const auto es = kdq::eig_hermitian(m);
        const auto exact = oracle::eig2(a, b, h);
        REQUIRE(es.eigenvalues[0] == Catch::Approx(exact[0]).margin(1e-10));
        REQUIRE(es.eigenvalues[1] == Catch::Approx(exact[1]).margin(1e-10));
    }
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    int trial = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t d = 2 + (rep % 7);  // dims 2..8
        kdq::Rng rng(1000 + rep);
        const ComplexMatrix m = random_hermitian(d, rng);
        const auto es = kdq::eig_hermitian(m);

        REQUIRE(unitarity_defect(es.eigenvectors) < 1e-10);
        REQUIRE(std::is_sorted(es.eigenvalues.begin(), es.eigenvalues.end()));

        ComplexMatrix lam(d, d);
        for (std::size_t k = 0; k < d; ++k) lam(k, k) = es.eigenvalues[k];
        const ComplexMatrix rebuilt =
            es.eigenvectors * lam * kdq::adjoint(es.eigenvectors);
        REQUIRE(kdq::max_abs(rebuilt - m) < 1e-10);
        ++trial;
    }
    REQUIRE(trial == 1000);
}

TEST_CASE("eigendecomposition handles diagonal and degenerate input") {
    ComplexMatrix m(3, 3);
    m(0, 0) = 2.0;
    m(1, 1) = -1.0;
    m(2, 2) = 0.5;
    const auto es = kdq::eig_hermitian(m);
    REQUIRE(es.eigenvalues[0] == Catch::Approx(-1.0).margin(1e-14));
    REQUIRE(es.eigenvalues[1] == Catch::Approx(0.5).margin(1e-14));
    REQUIRE(es.eigenvalues[2] == Catch::Approx(2.0).margin(1e-14));

    const auto id = kdq::eig_hermitian(ComplexMatrix::identity(4));
    for (double lam : id.eigenvalues) REQUIRE(lam == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(unitarity_defect(id.eigenvectors) < 1e-12);
}

TEST_CASE("eigendecomposition rejects malformed input") {
    ComplexMatrix rect(2, 3);
    REQUIRE(oracle::thrown_code([&] { kdq::eig_hermitian(rect); }) == kdq::Err::NotSquare);

    ComplexMatrix nh = oracle::mat2(0, 1, 0, 0);
    REQUIRE(oracle::thrown_code([&] { kdq::eig_hermitian(nh); }) == kdq::Err::NotHermitian);
}

TEST_CASE("trace norm on known matrices") {
    ComplexMatrix d2(2, 2);
    d2(0, 0) = 2.0;
    d2(1, 1) = -5.0;
    REQUIRE(kdq::trace_norm(d2) == Catch::Approx(7.0).margin(1e-10));

    // commutator of sigma_z with |+><+| has singular values {1, 1}
    const ComplexMatrix c = kdq::commutator(oracle::pauli_z(), oracle::plus_projector());
    REQUIRE(kdq::trace_norm(c) == Catch::Approx(2.0).margin(1e-10));
}

TEST_CASE("trace norm matches the 2x2 closed form on random matrices") {
    kdq::Rng rng(21);
    for (int trial = 0; trial < 200; ++trial) {
        ComplexMatrix m = random_ginibre(2, rng);
        REQUIRE(kdq::trace_norm(m) == Catch::Approx(oracle::trace_norm2(m)).margin(1e-9));
    }
}

TEST_CASE("trace norm is unitarily invariant and dominates |trace|") {
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + (rep % 5);  // dims 2..6
        kdq::Rng rng(40 + rep);
        const ComplexMatrix m = random_ginibre(d, rng);
        const ComplexMatrix u = kdq::haar_random_unitary(d, 5000 + rep);
        const ComplexMatrix v = kdq::haar_random_unitary(d, 6000 + rep);
        const double tn = kdq::trace_norm(m);
        REQUIRE(kdq::trace_norm(u * m * v) == Catch::Approx(tn).margin(1e-9));
        REQUIRE(tn >= std::abs(kdq::trace(m)) - 1e-10);
    }
}

TEST_CASE("hermitian trace norm route agrees with the general route") {
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + (rep % 5);
        kdq::Rng rng(70 + rep);
        const ComplexMatrix m = random_hermitian(d, rng);
        REQUIRE(kdq::trace_norm_hermitian(m) ==
                Catch::Approx(kdq::trace_norm(m)).margin(1e-9));
    }
}

TEST_CASE("operator norm basics and ordering against trace norm") {
    REQUIRE(kdq::operator_norm(oracle::pauli_z()) == Catch::Approx(1.0).margin(1e-12));
    REQUIRE(kdq::operator_norm(cplx{3.0, 0.0} * oracle::pauli_x()) ==
            Catch::Approx(3.0).margin(1e-10));

    REQUIRE(oracle::thrown_code([] {
                kdq::operator_norm(oracle::mat2(0, 1, 0, 0));
            }) == kdq::Err::NotHermitian);

    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + (rep % 5);
        kdq::Rng rng(90 + rep);
        const ComplexMatrix m = random_hermitian(d, rng);
        REQUIRE(kdq::operator_norm(m) <= kdq::trace_norm_hermitian(m) + 1e-10);
    }
}

TEST_CASE("haar unitaries are unitary, deterministic per seed, and seed-sensitive") {
    for (std::size_t d = 1; d <= 8; ++d) {
        const ComplexMatrix u = kdq::haar_random_unitary(d, 123);
        REQUIRE(unitarity_defect(u) < 1e-10);
        const ComplexMatrix u2 = kdq::haar_random_unitary(d, 123);
        REQUIRE(kdq::max_abs(u - u2) == 0.0);
        if (d >= 2) {
            const ComplexMatrix w = kdq::haar_random_unitary(d, 124);
            REQUIRE(kdq::max_abs(u - w) > 1e-3);
        }
    }
    REQUIRE(oracle::thrown_code([] { kdq::haar_random_unitary(0, 1); }) ==
            kdq::Err::InvalidDimension);
}

TEST_CASE("random density matrices satisfy state constraints") {
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t d = 2 + (rep % 5);
        const std::size_t rank = 1 + (rep % d);
        const ComplexMatrix rho = kdq::random_density(d, rank, 300 + rep);

        REQUIRE(kdq::trace(rho).real() == Catch::Approx(1.0).margin(1e-12));
        REQUIRE(kdq::hermiticity_defect(rho) == 0.0);

        const auto es = kdq::eig_hermitian(rho);
        REQUIRE(es.eigenvalues.front() >= -1e-12);

        std::size_t numerical_rank = 0;
        for (double lam : es.eigenvalues)
            if (lam > 1e-10) ++numerical_rank;
        REQUIRE(numerical_rank == rank);
    }
}

TEST_CASE("qubit purity equals the Bloch radius identity") {
    // For any 2x2 state, Tr rho^2 = (1 + r^2)/2 with r the Bloch radius.
    for (int rep = 0; rep < 50; ++rep) {
        const ComplexMatrix rho = kdq::random_density(2, 2, 800 + rep);
        const double purity = kdq::trace(rho * rho).real();
        const double x = 2.0 * rho(0, 1).real();
        const double y = -2.0 * rho(0, 1).imag();
        const double z = (rho(0, 0) - rho(1, 1)).real();
        const double r2 = x * x + y * y + z * z;
        REQUIRE(purity == Catch::Approx(0.5 * (1.0 + r2)).margin(1e-12));
    }
}

TEST_CASE("random density rejects malformed requests") {
    REQUIRE(oracle::thrown_code([] { kdq::random_density(0, 1, 1); }) ==
            kdq::Err::InvalidDimension);
    REQUIRE(oracle::thrown_code([] { kdq::random_density(3, 0, 1); }) == kdq::Err::InvalidRank);
    REQUIRE(oracle::thrown_code([] { kdq::random_density(3, 4, 1); }) == kdq::Err::InvalidRank);
}

TEST_CASE("deterministic sampling reproduces across constructions") {
    const ComplexMatrix a = kdq::random_density(4, 3, 42);
    const ComplexMatrix b = kdq::random_density(4, 3, 42);
    REQUIRE(kdq::max_abs(a - b) == 0.0);
}
