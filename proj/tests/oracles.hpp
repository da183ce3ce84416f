#pragma once

// Test-side reference implementations, kept deliberately independent of the
// library code paths: direct 2x2 arithmetic, closed forms, and dense grid
// maximizers.  Tests compare library results against these.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "kdq/common.hpp"
#include "kdq/linalg.hpp"

namespace oracle {

using kdq::cplx;
using kdq::ComplexMatrix;

inline constexpr double pi = 3.14159265358979323846;

// Runs f, which must throw kdq::Error, and returns the error code.
template <typename F>
kdq::Err thrown_code(F&& f) {
    try {
        f();
    } catch (const kdq::Error& e) {
        return e.code();
    }
    throw std::runtime_error("expected kdq::Error, none was thrown");
}

// --- tiny builders ----------------------------------------------------------

inline ComplexMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
    ComplexMatrix m(2, 2);
    m(0, 0) = a;
    m(0, 1) = b;
    m(1, 0) = c;
    m(1, 1) = d;
    return m;
}

inline ComplexMatrix pauli_x() { return mat2(0, 1, 1, 0); }
inline ComplexMatrix pauli_y() { return mat2(0, cplx{0, -1}, cplx{0, 1}, 0); }
inline ComplexMatrix pauli_z() { return mat2(1, 0, 0, -1); }

// |+><+|
inline ComplexMatrix plus_projector() { return mat2(0.5, 0.5, 0.5, 0.5); }

// Bloch vector (x, y, z) -> 1/2 (I + x X + y Y + z Z); |(x,y,z)| <= 1.
inline ComplexMatrix bloch_state(double x, double y, double z) {
    return mat2(0.5 * (1 + z), 0.5 * cplx{x, -y}, 0.5 * cplx{x, y}, 0.5 * (1 - z));
}

// --- 2x2 closed forms -------------------------------------------------------

// Eigenvalues of a 2x2 Hermitian [[a, h], [conj(h), b]]: m -+ sqrt(g^2+|h|^2).
inline std::array<double, 2> eig2(double a, double b, cplx h) {
    const double m = 0.5 * (a + b);
    const double g = 0.5 * (a - b);
    const double r = std::sqrt(g * g + std::norm(h));
    return {m - r, m + r};
}

// Schatten-1 norm of any 2x2 M: sqrt(sum |m_ij|^2 + 2 |det M|).
inline double trace_norm2(const ComplexMatrix& m) {
    double t = 0.0;
    for (const cplx& z : m.data()) t += std::norm(z);
    const cplx det = m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
    return std::sqrt(t + 2.0 * std::abs(det));
}

// --- qubit state in the reference frame of basis_a --------------------------

// A qubit instance reduced to the coordinates of basis_a: the state is fully
// described by its diagonal (r00, r11) and off-diagonal r01 in that frame.
struct Qubit {
    double r00 = 0.0;
    double r11 = 0.0;
    cplx r01{0.0, 0.0};
};

// B-basis columns for polar/azimuthal angles (alpha, beta):
//   |b+> = (cos(alpha/2), e^{i beta} sin(alpha/2)),  |b-> orthogonal.
struct BCols {
    cplx p0, p1;  // |b+>
    cplx m0, m1;  // |b->
};

inline BCols bcols(double alpha, double beta) {
    const double c = std::cos(0.5 * alpha);
    const double s = std::sin(0.5 * alpha);
    const cplx eib{std::cos(beta), std::sin(beta)};
    return {c, eib * s, s, -eib * c};
}

// The four quasiprobability entries Pr(a, b) = <b|a><a|rho|b>, indexed
// [a*2 + b] with b=0 meaning |b+>.
inline std::array<cplx, 4> kd2(const Qubit& q, double alpha, double beta) {
    const BCols b = bcols(alpha, beta);
    const cplx r10 = std::conj(q.r01);
    // rho |b+> and rho |b->
    const cplx v0p = q.r00 * b.p0 + q.r01 * b.p1;
    const cplx v1p = r10 * b.p0 + q.r11 * b.p1;
    const cplx v0m = q.r00 * b.m0 + q.r01 * b.m1;
    const cplx v1m = r10 * b.m0 + q.r11 * b.m1;
    return {
        std::conj(b.p0) * v0p,  // a=0, b=+ : <b+|0><0|rho|b+>
        std::conj(b.m0) * v0m,  // a=0, b=-
        std::conj(b.p1) * v1p,  // a=1, b=+
        std::conj(b.m1) * v1m,  // a=1, b=-
    };
}

// Born probabilities of the b outcomes.
inline std::array<double, 2> bprob2(const Qubit& q, double alpha, double beta) {
    const BCols b = bcols(alpha, beta);
    const cplx r10 = std::conj(q.r01);
    const cplx pp = std::conj(b.p0) * (q.r00 * b.p0 + q.r01 * b.p1) +
                    std::conj(b.p1) * (r10 * b.p0 + q.r11 * b.p1);
    const cplx mm = std::conj(b.m0) * (q.r00 * b.m0 + q.r01 * b.m1) +
                    std::conj(b.m1) * (r10 * b.m0 + q.r11 * b.m1);
    return {pp.real(), mm.real()};
}

// Sum of |imaginary parts| of the table.
inline double nre2(const Qubit& q, double alpha, double beta) {
    const auto t = kd2(q, alpha, beta);
    double s = 0.0;
    for (const cplx& z : t) s += std::abs(z.imag());
    return s;
}

// Sum of |entries| minus one.
inline double ncl2(const Qubit& q, double alpha, double beta) {
    const auto t = kd2(q, alpha, beta);
    double s = 0.0;
    for (const cplx& z : t) s += std::abs(z);
    return s - 1.0;
}

// Row-grouped total RMS of imaginary weak-value parts:
//   sum_a sqrt(sum_b (Im Pr(a,b))^2 / Pr(b)).
inline double eps2(const Qubit& q, double alpha, double beta) {
    const auto t = kd2(q, alpha, beta);
    const auto pb = bprob2(q, alpha, beta);
    double total = 0.0;
    for (int a = 0; a < 2; ++a) {
        double row = 0.0;
        for (int b = 0; b < 2; ++b) {
            if (pb[b] <= 1e-14) continue;
            const double im = t[a * 2 + b].imag();
            row += im * im / pb[b];
        }
        total += std::sqrt(row);
    }
    return total;
}

// Flat weighted mean-square of imaginary weak-value parts:
//   sum_{a,b} (Im Pr(a,b))^2 / Pr(b).
inline double msesq2(const Qubit& q, double alpha, double beta) {
    const auto t = kd2(q, alpha, beta);
    const auto pb = bprob2(q, alpha, beta);
    double s = 0.0;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            if (pb[b] <= 1e-14) continue;
            const double im = t[a * 2 + b].imag();
            s += im * im / pb[b];
        }
    return s;
}

// Total variation between rho and its two-outcome dephased update, summed over
// both a outcomes: sum_{a,b} |Tr{(rho - rho_a) Pi_b}| = 4 |<b+|Delta|b+>| with
// Delta the off-diagonal part of rho in the a frame.
inline double disturb2(const Qubit& q, double alpha, double beta) {
    const BCols b = bcols(alpha, beta);
    const cplx x = std::conj(b.p0) * q.r01 * b.p1;
    return 4.0 * std::abs(2.0 * x.real());
}

// Dense grid maximum of f(alpha, beta) over [0, pi] x [0, 2 pi).
inline double grid_max(const std::function<double(double, double)>& f, int na, int nb) {
    double best = -1e300;
    for (int i = 0; i < na; ++i) {
        const double alpha = pi * static_cast<double>(i) / (na - 1);
        for (int j = 0; j < nb; ++j) {
            const double beta = 2.0 * pi * static_cast<double>(j) / nb;
            best = std::max(best, f(alpha, beta));
        }
    }
    return best;
}

// Closed-form optima in the a frame (rho_perp = 2 |r01|):
inline double qnre_exact(const Qubit& q) { return 2.0 * std::abs(q.r01); }
inline double delta_exact(const Qubit& q) { return 4.0 * std::abs(q.r01); }

// Random spectrum in [-1, 1]^d with all pairwise gaps above 1e-3.
inline std::vector<double> random_spectrum(std::size_t d, kdq::Rng& rng) {
    while (true) {
        std::vector<double> s(d);
        for (double& v : s) v = rng.uniform(-1.0, 1.0);
        std::vector<double> t = s;
        std::sort(t.begin(), t.end());
        double gap = 2.0;
        for (std::size_t i = 0; i + 1 < d; ++i) gap = std::min(gap, t[i + 1] - t[i]);
        if (gap > 1e-3) return s;
    }
}

}  // namespace oracle
