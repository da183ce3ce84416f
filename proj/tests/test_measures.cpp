#include <catch2/catch_amalgamated.hpp>

#include "kdq/measures.hpp"
#include "oracles.hpp"

using kdq::ComplexMatrix;
using kdq::cplx;
using kdq::DensityOperator;
using kdq::Observable;
using kdq::PvmBasis;

namespace {

const double isq2 = 1.0 / std::sqrt(2.0);

PvmBasis x_basis() {
    ComplexMatrix u(2, 2);
    u(0, 0) = isq2;
    u(1, 0) = isq2;
    u(0, 1) = isq2;
    u(1, 1) = -isq2;
    return PvmBasis(u);
}

PvmBasis y_basis() {
    ComplexMatrix u(2, 2);
    u(0, 0) = isq2;
    u(1, 0) = cplx{0.0, 1.0} * isq2;
    u(0, 1) = isq2;
    u(1, 1) = cplx{0.0, -1.0} * isq2;
    return PvmBasis(u);
}

DensityOperator plus_state() { return DensityOperator(oracle::plus_projector()); }

DensityOperator eighth_turn_state() {
    const cplx ph{std::cos(oracle::pi / 4), std::sin(oracle::pi / 4)};
    ComplexMatrix m(2, 2);
    m(0, 0) = 0.5;
    m(0, 1) = 0.5 * std::conj(ph);
    m(1, 0) = 0.5 * ph;
    m(1, 1) = 0.5;
    return DensityOperator(m);
}

DensityOperator maximally_mixed(std::size_t d) {
    ComplexMatrix m(d, d);
    for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0 / static_cast<double>(d);
    return DensityOperator(m);
}

struct RandomTriple {
    DensityOperator rho;
    Observable a;
    Observable b;
};

RandomTriple random_triple(std::size_t d, int rep) {
    kdq::Rng rng(777000 + rep);
    return RandomTriple{
        DensityOperator(kdq::random_density(d, 1 + (rep % d), 20000 + rep)),
        Observable(PvmBasis(kdq::haar_random_unitary(d, 21000 + rep)),
                   oracle::random_spectrum(d, rng)),
        Observable(PvmBasis(kdq::haar_random_unitary(d, 22000 + rep)),
                   oracle::random_spectrum(d, rng)),
    };
}

}  // namespace

TEST_CASE("nonreality at hand-worked points") {
    const auto z = PvmBasis::computational(2);
    const auto kd_xy = kdq::kd_distribution(plus_state(), z, y_basis());
    REQUIRE(kdq::nre(kd_xy).value == Catch::Approx(1.0).margin(1e-12));

    const auto kd_real = kdq::kd_distribution(plus_state(), z, x_basis());
    REQUIRE(kdq::nre(kd_real).value == Catch::Approx(0.0).margin(1e-14));

    const auto kd8 = kdq::kd_distribution(eighth_turn_state(), z, x_basis());
    REQUIRE(kdq::nre(kd8).value == Catch::Approx(std::sqrt(2.0) / 2).margin(1e-12));
}

TEST_CASE("nonclassicality at hand-worked points") {
    const auto z = PvmBasis::computational(2);
    const auto kd_y = kdq::kd_distribution(plus_state(), z, y_basis());
    REQUIRE(kdq::ncl(kd_y).value == Catch::Approx(std::sqrt(2.0) - 1.0).margin(1e-12));

    const auto kd8 = kdq::kd_distribution(eighth_turn_state(), z, x_basis());
    const double expect = std::cos(oracle::pi / 8) + std::sin(oracle::pi / 8) - 1.0;
    REQUIRE(kdq::ncl(kd8).value == Catch::Approx(expect).margin(1e-12));
}

TEST_CASE("commuting triples have vanishing nonreality and nonclassicality") {
    for (int rep = 0; rep < 50; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const ComplexMatrix v = kdq::haar_random_unitary(d, 23000 + rep);
        kdq::Rng rng(24000 + rep);
        ComplexMatrix diag(d, d);
        double sum = 0.0;
        std::vector<double> p(d);
        for (double& x : p) {
            x = 0.05 + rng.uniform();
            sum += x;
        }
        for (std::size_t k = 0; k < d; ++k) diag(k, k) = p[k] / sum;
        ComplexMatrix rho_m = v * diag * kdq::adjoint(v);
        const DensityOperator rho(0.5 * (rho_m + kdq::adjoint(rho_m)));
        const PvmBasis basis(v);
        const auto kd = kdq::kd_distribution(rho, basis, basis);
        REQUIRE(std::abs(kdq::nre(kd).value) < 1e-12);
        REQUIRE(kdq::ncl(kd).value >= -1e-10);
        REQUIRE(kdq::ncl(kd).value < 1e-10);
    }
}

TEST_CASE("l1 coherence basics") {
    const auto z = PvmBasis::computational(2);
    REQUIRE(kdq::l1_coherence(plus_state(), z).value == Catch::Approx(1.0).margin(1e-12));
    // in its own eigenbasis every state is incoherent
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const DensityOperator rho(kdq::random_density(d, d, 25000 + rep));
        const auto es = kdq::eig_hermitian(rho.matrix());
        REQUIRE(kdq::l1_coherence(rho, PvmBasis(es.eigenvectors)).value < 1e-10);
    }
    // column phases of the basis are immaterial
    for (int rep = 0; rep < 30; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const DensityOperator rho(kdq::random_density(d, d, 26000 + rep));
        const ComplexMatrix u = kdq::haar_random_unitary(d, 27000 + rep);
        ComplexMatrix phases(d, d);
        kdq::Rng rng(28000 + rep);
        for (std::size_t k = 0; k < d; ++k)
            phases(k, k) = std::polar(1.0, rng.uniform(0.0, 2 * oracle::pi));
        const double c1 = kdq::l1_coherence(rho, PvmBasis(u)).value;
        const double c2 = kdq::l1_coherence(rho, PvmBasis(u * phases)).value;
        REQUIRE(c1 == Catch::Approx(c2).margin(1e-12));
    }
}

TEST_CASE("asymmetry of the commutator at hand-worked points") {
    const auto z_obs = Observable(PvmBasis::computational(2), {1.0, -1.0});
    REQUIRE(kdq::trace_norm_asymmetry(z_obs, plus_state()).value ==
            Catch::Approx(1.0).margin(1e-12));
    REQUIRE(kdq::trace_norm_asymmetry(z_obs, plus_state(), true).value ==
            Catch::Approx(1.0).margin(1e-12));

    const auto big = Observable(PvmBasis::computational(2), {5.0, -5.0});
    REQUIRE(kdq::trace_norm_asymmetry(big, plus_state()).value ==
            Catch::Approx(5.0).margin(1e-12));
    REQUIRE(kdq::trace_norm_asymmetry(big, plus_state(), true).value ==
            Catch::Approx(1.0).margin(1e-12));

    const auto flat = Observable(PvmBasis::computational(2), {0.7, 0.7});
    REQUIRE(oracle::thrown_code([&] { kdq::trace_norm_asymmetry(flat, plus_state()); }) ==
            kdq::Err::ZeroOperator);
}

TEST_CASE("commutator expectation bound at hand-worked points and under rescaling") {
    const auto z_obs = Observable(PvmBasis::computational(2), {1.0, -1.0});
    const auto y_obs = Observable(y_basis(), {1.0, -1.0});
    REQUIRE(kdq::robertson_bound(z_obs, y_obs, plus_state()).value ==
            Catch::Approx(1.0).margin(1e-12));

    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const auto t = random_triple(d, rep);
        const double base = kdq::robertson_bound(t.a, t.b, t.rho).value;

        std::vector<double> sa = t.a.spectrum;
        for (double& v : sa) v *= -2.5;
        std::vector<double> sb = t.b.spectrum;
        for (double& v : sb) v *= 0.3;
        const double scaled =
            kdq::robertson_bound(Observable(t.a.basis, sa), Observable(t.b.basis, sb), t.rho)
                .value;
        REQUIRE(base == Catch::Approx(scaled).margin(1e-12));
    }

    const auto zero = Observable(PvmBasis::computational(2), {0.0, 0.0});
    REQUIRE(oracle::thrown_code([&] { kdq::robertson_bound(zero, y_obs, plus_state()); }) ==
            kdq::Err::ZeroOperator);
}

TEST_CASE("commutator expectation bound equals the explicit commutator route") {
    for (int rep = 0; rep < 60; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const auto t = random_triple(d, rep + 500);
        const double val = kdq::robertson_bound(t.a, t.b, t.rho).value;

        const double na = t.a.sup_norm();
        const double nb = t.b.sup_norm();
        const ComplexMatrix am = cplx{1.0 / na, 0.0} * t.a.matrix();
        const ComplexMatrix bm = cplx{1.0 / nb, 0.0} * t.b.matrix();
        const cplx z = kdq::trace(bm * kdq::commutator(am, t.rho.matrix()));
        REQUIRE(val == Catch::Approx(0.5 * std::abs(z)).margin(1e-12));
    }
}

TEST_CASE("uncertainty-product bound at hand-worked points") {
    const auto z_obs = Observable(PvmBasis::computational(2), {1.0, -1.0});
    const auto y_obs = Observable(y_basis(), {1.0, -1.0});

    // eigenstate of A with B = A: the bound collapses to -1
    ComplexMatrix ground(2, 2);
    ground(0, 0) = 1.0;
    const auto spread = Observable(PvmBasis::computational(2), {0.3, -0.9});
    REQUIRE(kdq::rs_bound(spread, spread, DensityOperator(ground)).value ==
            Catch::Approx(-1.0).margin(1e-12));

    // three mutually unbiased directions: the bound is exactly zero
    REQUIRE(kdq::rs_bound(z_obs, y_obs, plus_state()).value ==
            Catch::Approx(0.0).margin(1e-12));

    // maximally mixed qubit: aligned pair reaches 0, unbiased pair reaches -1
    REQUIRE(kdq::rs_bound(z_obs, z_obs, maximally_mixed(2)).value ==
            Catch::Approx(0.0).margin(1e-12));
    REQUIRE(kdq::rs_bound(z_obs, y_obs, maximally_mixed(2)).value ==
            Catch::Approx(-1.0).margin(1e-12));

    const auto id_obs = Observable(PvmBasis::computational(2), {0.4, 0.4});
    REQUIRE(oracle::thrown_code([&] { kdq::rs_bound(id_obs, y_obs, plus_state()); }) ==
            kdq::Err::DegenerateShiftedOperator);
}

TEST_CASE("uncertainty-product bound is affine invariant and matches the raw form") {
    for (int rep = 0; rep < 80; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const auto t = random_triple(d, rep + 1000);
        const double val = kdq::rs_bound(t.a, t.b, t.rho).value;

        // affine reparameterization of either observable leaves it unchanged
        std::vector<double> sa = t.a.spectrum;
        for (double& v : sa) v = -1.7 * v + 0.4;
        std::vector<double> sb = t.b.spectrum;
        for (double& v : sb) v = 0.6 * v - 2.0;
        const double val2 =
            kdq::rs_bound(Observable(t.a.basis, sa), Observable(t.b.basis, sb), t.rho).value;
        REQUIRE(val == Catch::Approx(val2).margin(1e-12));

        // raw form: scale the unshifted operator by the shifted sup norm and
        // subtract the product of means from the anticommutator expectation
        auto prepare = [&](const Observable& o) {
            double mean = 0.0;
            for (std::size_t k = 0; k < d; ++k)
                mean += o.spectrum[k] * kdq::born_probability(t.rho, o.basis, k);
            double n = 0.0;
            for (double v : o.spectrum) n = std::max(n, std::abs(v - mean));
            return std::pair<ComplexMatrix, double>{cplx{1.0 / n, 0.0} * o.matrix(), mean / n};
        };
        const auto [am, ma] = prepare(t.a);
        const auto [bm, mb] = prepare(t.b);
        const ComplexMatrix rm = t.rho.matrix();
        const cplx comm = kdq::trace(rm * kdq::commutator(am, bm));
        const cplx anti = kdq::trace(rm * kdq::anticommutator(am, bm));
        const double x = std::abs(comm);
        const double y = std::abs(anti - cplx{2.0 * ma * mb, 0.0});
        REQUIRE(val == Catch::Approx(0.5 * std::sqrt(x * x + y * y) - 1.0).margin(1e-11));
    }
}

TEST_CASE("pointwise lower bounds hold on random instances") {
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t d = 2 + (rep % 5);  // dims 2..6
        const auto t = random_triple(d, rep + 2000);
        const auto kd = kdq::kd_distribution(t.rho, t.a.basis, t.b.basis);

        const double v_nre = kdq::nre(kd).value;
        const double v_ncl = kdq::ncl(kd).value;
        REQUIRE(v_nre >= kdq::robertson_bound(t.a, t.b, t.rho).value - 1e-10);
        REQUIRE(v_ncl >= kdq::rs_bound(t.a, t.b, t.rho).value - 1e-10);

        // the commutator expectation also sits below the asymmetry
        REQUIRE(kdq::trace_norm_asymmetry(t.a, t.rho, true).value >=
                kdq::robertson_bound(t.a, t.b, t.rho).value - 1e-10);

        // both table measures sit below the l1 coherence of either margin
        const double ca = kdq::l1_coherence(t.rho, t.a.basis).value;
        REQUIRE(v_nre <= ca + 1e-10);
        REQUIRE(v_ncl <= ca + 1e-10);
    }
}

TEST_CASE("estimation-error term at hand-worked points and its floor") {
    const auto z = PvmBasis::computational(2);
    REQUIRE(kdq::mse_sq_term(plus_state(), z, y_basis()).value ==
            Catch::Approx(0.5).margin(1e-12));
    REQUIRE(kdq::mse_sq_term(plus_state(), z, x_basis()).value ==
            Catch::Approx(0.0).margin(1e-14));

    // weighted Cauchy-Schwarz floor: mse_sq >= nre^2 / d
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + (rep % 4);
        const auto t = random_triple(d, rep + 3000);
        const auto kd = kdq::kd_distribution(t.rho, t.a.basis, t.b.basis);
        const double v_nre = kdq::nre(kd).value;
        const double mse = kdq::mse_sq_term(t.rho, t.a.basis, t.b.basis).value;
        REQUIRE(mse >= v_nre * v_nre / static_cast<double>(d) - 1e-10);
    }
}

TEST_CASE("disturbance term at hand-worked points and the pointwise data bound") {
    const auto z = PvmBasis::computational(2);
    REQUIRE(kdq::disturbance_term(plus_state(), z, x_basis()).value ==
            Catch::Approx(2.0).margin(1e-12));
    REQUIRE(kdq::disturbance_term(plus_state(), z, z).value ==
            Catch::Approx(0.0).margin(1e-14));

    // ncl <= half the disturbance plus the total imaginary correction
    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t d = 2 + (rep % 5);
        const auto t = random_triple(d, rep + 4000);
        const auto kd = kdq::kd_distribution(t.rho, t.a.basis, t.b.basis);
        const auto jt = kdq::johansen_decomposition(t.rho, t.a.basis, t.b.basis);
        double imag_total = 0.0;
        for (double v : jt.imag_mod) imag_total += std::abs(v);
        const double bound =
            0.5 * kdq::disturbance_term(t.rho, t.a.basis, t.b.basis).value + imag_total;
        REQUIRE(kdq::ncl(kd).value <= bound + 1e-10);
    }
}
