#pragma once

// Quantum objects over the dense-matrix layer: density operators, rank-1
// projective measurement bases, observables, the joint quasiprobability table
// Pr(a, b) = <b|a><a|rho|b>, weak values, the nonselective two-outcome update,
// and the decomposition of the table into classical, real-correction, and
// imaginary-correction terms that are each readable off measurement data.

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdq/linalg.hpp"

namespace kdq {

// Postselection probabilities at or below this floor are treated as zero.
inline constexpr double postselect_floor = 1e-14;

// --- density operator -------------------------------------------------------

class DensityOperator {
  public:
    explicit DensityOperator(ComplexMatrix m) : m_(std::move(m)) {
        require(m_.square(), Err::InvariantError, "density matrix must be square");
        require(m_.finite(), Err::InvariantError, "density matrix must be finite");
        const double hd = hermiticity_defect(m_);
        require(hd <= 1e-10, Err::InvariantError,
                "density matrix is not Hermitian (defect " + fmt_double(hd) + ")");
        const double tr = trace(m_).real();
        require(std::abs(tr - 1.0) <= 1e-10, Err::InvariantError,
                "trace = " + fmt_double(tr));
        const auto es = eig_hermitian(m_);
        require(es.eigenvalues.front() >= -1e-10, Err::InvariantError,
                "negative eigenvalue " + fmt_double(es.eigenvalues.front()));
    }

    std::size_t dim() const { return m_.rows(); }
    const ComplexMatrix& matrix() const { return m_; }

  private:
    ComplexMatrix m_;
};

// --- projective basis -------------------------------------------------------

// Orthonormal basis stored as a unitary whose column k is the k-th vector.
class PvmBasis {
  public:
    explicit PvmBasis(ComplexMatrix u) : u_(std::move(u)) {
        require(u_.square(), Err::InvariantError, "basis matrix must be square");
        require(u_.finite(), Err::InvariantError, "basis matrix must be finite");
        const double defect = max_abs(adjoint(u_) * u_ - ComplexMatrix::identity(u_.rows()));
        require(defect <= 1e-10, Err::InvariantError,
                "basis columns are not orthonormal (defect " + fmt_double(defect) + ")");
    }

    static PvmBasis computational(std::size_t d) {
        return PvmBasis(ComplexMatrix::identity(d));
    }

    std::size_t dim() const { return u_.rows(); }
    const ComplexMatrix& matrix() const { return u_; }

    cplx component(std::size_t row, std::size_t vec) const { return u_(row, vec); }

    // |v_k><v_k|
    ComplexMatrix projector(std::size_t k) const {
        require(k < dim(), Err::DimensionMismatch, "projector index out of range");
        ComplexMatrix p(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) p(i, j) = u_(i, k) * std::conj(u_(j, k));
        return p;
    }

  private:
    ComplexMatrix u_;
};

// --- observable -------------------------------------------------------------

// A Hermitian operator given by a measurement basis and real spectrum.
struct Observable {
    PvmBasis basis;
    std::vector<double> spectrum;

    Observable(PvmBasis b, std::vector<double> s) : basis(std::move(b)), spectrum(std::move(s)) {
        require(spectrum.size() == basis.dim(), Err::DimensionMismatch,
                "spectrum size must equal the basis dimension");
        for (double v : spectrum)
            require(std::isfinite(v), Err::InvariantError, "spectrum must be finite");
    }

    std::size_t dim() const { return basis.dim(); }

    // sum_k a_k |v_k><v_k|
    ComplexMatrix matrix() const {
        const std::size_t d = dim();
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                cplx z{0.0, 0.0};
                for (std::size_t k = 0; k < d; ++k)
                    z += spectrum[k] * basis.component(i, k) * std::conj(basis.component(j, k));
                m(i, j) = z;
            }
        return m;
    }

    // sup norm, exact from the spectrum
    double sup_norm() const {
        double m = 0.0;
        for (double v : spectrum) m = std::max(m, std::abs(v));
        return m;
    }
};

// --- joint quasiprobability table -------------------------------------------

struct KdDistribution {
    std::size_t dim = 0;
    std::vector<cplx> table;  // index a * dim + b
    // provenance labels tying the table to its inputs
    std::string state_ref;
    std::string basis_a_ref;
    std::string basis_b_ref;

    cplx at(std::size_t a, std::size_t b) const { return table[a * dim + b]; }
};

// Pr(a, b) = <b_b | a_a> <a_a | rho | b_b>.
inline KdDistribution kd_distribution(const DensityOperator& rho, const PvmBasis& basis_a,
                                      const PvmBasis& basis_b, std::string state_ref = "",
                                      std::string basis_a_ref = "",
                                      std::string basis_b_ref = "") {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share one dimension");
    // S(b, a) = <b_b|a_a>, T(a, b) = <a_a|rho|b_b>
    const ComplexMatrix s = adjoint(basis_b.matrix()) * basis_a.matrix();
    const ComplexMatrix t = adjoint(basis_a.matrix()) * rho.matrix() * basis_b.matrix();

    KdDistribution out;
    out.dim = d;
    out.table.resize(d * d);
    out.state_ref = std::move(state_ref);
    out.basis_a_ref = std::move(basis_a_ref);
    out.basis_b_ref = std::move(basis_b_ref);
    for (std::size_t a = 0; a < d; ++a)
        for (std::size_t b = 0; b < d; ++b) out.table[a * d + b] = s(b, a) * t(a, b);
    return out;
}

// Born probability of outcome b in basis_b.
inline double born_probability(const DensityOperator& rho, const PvmBasis& basis_b,
                               std::size_t b) {
    const std::size_t d = rho.dim();
    require(basis_b.dim() == d, Err::DimensionMismatch, "state and basis must share a dimension");
    require(b < d, Err::DimensionMismatch, "outcome index out of range");
    cplx p{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            p += std::conj(basis_b.component(i, b)) * rho.matrix()(i, j) * basis_b.component(j, b);
    return p.real();
}

// Weak value of projector a conditioned on postselecting outcome b:
//   <b|a><a|rho|b> / <b|rho|b>.
inline cplx weak_value(const DensityOperator& rho, const PvmBasis& basis_a, std::size_t a,
                       const PvmBasis& basis_b, std::size_t b) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share one dimension");
    require(a < d && b < d, Err::DimensionMismatch, "projector index out of range");
    const double pb = born_probability(rho, basis_b, b);
    require(pb > postselect_floor, Err::ZeroPostselectionProbability,
            "postselection probability " + fmt_double(pb) + " is at the zero floor");
    cplx ba{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i)
        ba += std::conj(basis_b.component(i, b)) * basis_a.component(i, a);
    cplx arb{0.0, 0.0};
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            arb += std::conj(basis_a.component(i, a)) * rho.matrix()(i, j) * basis_b.component(j, b);
    return ba * arb / pb;
}

// Nonselective two-outcome update for projector a of basis_a:
//   rho -> Pi rho Pi + (I - Pi) rho (I - Pi).
inline DensityOperator nonselective_binary_update(const DensityOperator& rho,
                                                  const PvmBasis& basis_a, std::size_t a) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d, Err::DimensionMismatch, "state and basis must share a dimension");
    require(a < d, Err::DimensionMismatch, "projector index out of range");
    const ComplexMatrix p = basis_a.projector(a);
    const ComplexMatrix q = ComplexMatrix::identity(d) - p;
    ComplexMatrix out = p * rho.matrix() * p + q * rho.matrix() * q;
    // exact symmetrization removes rounding noise before revalidation
    for (std::size_t i = 0; i < d; ++i) {
        out(i, i) = cplx{out(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = 0.5 * (out(i, j) + std::conj(out(j, i)));
            out(i, j) = z;
            out(j, i) = std::conj(z);
        }
    }
    return DensityOperator(std::move(out));
}

// Projector b conjugated by the quarter-turn generated by projector a:
//   e^{i Pi_a pi/2} Pi_b e^{-i Pi_a pi/2},  with e^{i Pi pi/2} = I + (i-1) Pi.
inline ComplexMatrix rotated_projector(const PvmBasis& basis_a, std::size_t a,
                                       const PvmBasis& basis_b, std::size_t b) {
    const std::size_t d = basis_a.dim();
    require(basis_b.dim() == d, Err::DimensionMismatch, "bases must share a dimension");
    require(a < d && b < d, Err::DimensionMismatch, "projector index out of range");
    const ComplexMatrix pa = basis_a.projector(a);
    const ComplexMatrix u = ComplexMatrix::identity(d) + (cplx{0.0, 1.0} - cplx{1.0, 0.0}) * pa;
    ComplexMatrix r = u * basis_b.projector(b) * adjoint(u);
    for (std::size_t i = 0; i < d; ++i) {
        r(i, i) = cplx{r(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = 0.5 * (r(i, j) + std::conj(r(j, i)));
            r(i, j) = z;
            r(j, i) = std::conj(z);
        }
    }
    return r;
}

// --- decomposition of the table into measurable pieces ----------------------

// Pr(a, b) = classical(a, b) + real_mod(a, b) + i * imag_mod(a, b), where
//   classical(a, b) = Tr{Pi_b Pi_a rho Pi_a}                (>= 0, sums to 1)
//   real_mod(a, b)  = 1/2 Tr{(rho - rho_a) Pi_b}
//   imag_mod(a, b)  = 1/2 Tr{(rho - rho_a) Pi_b^{pi/2}}
// with rho_a the nonselective update of rho by projector a and Pi_b^{pi/2}
// the quarter-turn-rotated projector.  Every piece is an expectation value
// over directly measurable statistics.
struct JohansenTerms {
    std::size_t dim = 0;
    std::vector<double> classical;  // index a * dim + b
    std::vector<double> real_mod;
    std::vector<double> imag_mod;

    double classical_at(std::size_t a, std::size_t b) const { return classical[a * dim + b]; }
    double real_at(std::size_t a, std::size_t b) const { return real_mod[a * dim + b]; }
    double imag_at(std::size_t a, std::size_t b) const { return imag_mod[a * dim + b]; }
};

inline JohansenTerms johansen_decomposition(const DensityOperator& rho, const PvmBasis& basis_a,
                                            const PvmBasis& basis_b) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share one dimension");

    JohansenTerms out;
    out.dim = d;
    out.classical.assign(d * d, 0.0);
    out.real_mod.assign(d * d, 0.0);
    out.imag_mod.assign(d * d, 0.0);

    for (std::size_t a = 0; a < d; ++a) {
        const DensityOperator rho_a = nonselective_binary_update(rho, basis_a, a);
        const ComplexMatrix delta = rho.matrix() - rho_a.matrix();
        // population of projector a and overlaps with the b vectors
        cplx pop{0.0, 0.0};
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                pop += std::conj(basis_a.component(i, a)) * rho.matrix()(i, j) *
                       basis_a.component(j, a);
        for (std::size_t b = 0; b < d; ++b) {
            cplx ba{0.0, 0.0};
            for (std::size_t i = 0; i < d; ++i)
                ba += std::conj(basis_b.component(i, b)) * basis_a.component(i, a);
            out.classical[a * d + b] = pop.real() * std::norm(ba);

            cplx dv{0.0, 0.0};
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    dv += std::conj(basis_b.component(i, b)) * delta(i, j) *
                          basis_b.component(j, b);
            out.real_mod[a * d + b] = 0.5 * dv.real();

            const ComplexMatrix rp = rotated_projector(basis_a, a, basis_b, b);
            cplx rv{0.0, 0.0};
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) rv += delta(i, j) * rp(j, i);
            out.imag_mod[a * d + b] = 0.5 * rv.real();
        }
    }
    return out;
}

}  // namespace kdq
