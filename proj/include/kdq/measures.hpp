#pragma once

// Scalar figures of merit on quasiprobability tables, states, and observable
// pairs: nonreality and nonclassicality of a table, l1 coherence, commutator
// asymmetry, the two pointwise uncertainty-style lower bounds, and the
// estimation-error / disturbance terms tied to a fixed postselection basis.

#include <cstddef>
#include <vector>

#include "kdq/quantum.hpp"

namespace kdq {

enum class MeasureKind {
    NRe,
    NCl,
    Cl1,
    Asymmetry,
    RobertsonBound,
    RSBound,
    MseSq,
    DisturbanceTerm,
};

inline const char* measure_kind_name(MeasureKind k) {
    switch (k) {
        case MeasureKind::NRe: return "NRe";
        case MeasureKind::NCl: return "NCl";
        case MeasureKind::Cl1: return "Cl1";
        case MeasureKind::Asymmetry: return "Asymmetry";
        case MeasureKind::RobertsonBound: return "RobertsonBound";
        case MeasureKind::RSBound: return "RSBound";
        case MeasureKind::MseSq: return "MseSq";
        case MeasureKind::DisturbanceTerm: return "DisturbanceTerm";
    }
    return "Unknown";
}

struct MeasureValue {
    double value = 0.0;
    MeasureKind kind = MeasureKind::NRe;
};

// Sum of |imaginary parts| of the table.
inline MeasureValue nre(const KdDistribution& kd) {
    double s = 0.0;
    for (const cplx& z : kd.table) s += std::abs(z.imag());
    return {s, MeasureKind::NRe};
}

// Sum of |entries| minus one; zero exactly when the table is a genuine joint
// probability distribution.
inline MeasureValue ncl(const KdDistribution& kd) {
    double s = 0.0;
    for (const cplx& z : kd.table) s += std::abs(z);
    return {s - 1.0, MeasureKind::NCl};
}

// Sum of |off-diagonal entries| of the state written in the given basis.
inline MeasureValue l1_coherence(const DensityOperator& rho, const PvmBasis& basis) {
    const std::size_t d = rho.dim();
    require(basis.dim() == d, Err::DimensionMismatch, "state and basis must share a dimension");
    const ComplexMatrix m = adjoint(basis.matrix()) * rho.matrix() * basis.matrix();
    double s = 0.0;
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            if (i != j) s += std::abs(m(i, j));
    return {s, MeasureKind::Cl1};
}

namespace detail {

inline void check_nondegenerate_spectrum(const Observable& a) {
    double lo = a.spectrum.front(), hi = a.spectrum.front();
    for (double v : a.spectrum) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    require(hi - lo > 1e-14, Err::ZeroOperator,
            "observable spectrum is constant; its commutators vanish identically");
}

}  // namespace detail

// Half the Schatten-1 norm of [A, rho]; with normalize set, A is first scaled
// to unit sup norm.
inline MeasureValue trace_norm_asymmetry(const Observable& a, const DensityOperator& rho,
                                         bool normalize = false) {
    require(a.dim() == rho.dim(), Err::DimensionMismatch,
            "observable and state must share a dimension");
    detail::check_nondegenerate_spectrum(a);
    double scale = 1.0;
    if (normalize) {
        const double n = a.sup_norm();
        require(n > 1e-14, Err::ZeroOperator, "cannot normalize a zero observable");
        scale = 1.0 / n;
    }
    const ComplexMatrix c = commutator(a.matrix(), rho.matrix());
    // i [A, rho] is Hermitian, so its eigenvalue route avoids the squared
    // conditioning of the general singular-value route.
    const ComplexMatrix h = cplx{0.0, scale} * c;
    return {0.5 * trace_norm_hermitian(0.5 * (h + adjoint(h))), MeasureKind::Asymmetry};
}

// |Im Tr{B~ A~ rho}| with X~ = X / sup-norm: half the commutator expectation
// magnitude of the normalized pair.
inline MeasureValue robertson_bound(const Observable& a, const Observable& b,
                                    const DensityOperator& rho) {
    const std::size_t d = rho.dim();
    require(a.dim() == d && b.dim() == d, Err::DimensionMismatch,
            "observables and state must share one dimension");
    const double na = a.sup_norm();
    const double nb = b.sup_norm();
    require(na > 1e-14 && nb > 1e-14, Err::ZeroOperator,
            "normalizing a zero observable is undefined");
    const cplx w = trace(b.matrix() * a.matrix() * rho.matrix());
    return {std::abs(w.imag()) / (na * nb), MeasureKind::RobertsonBound};
}

// Uncertainty-style lower bound on table nonclassicality:
//   1/2 sqrt(X^2 + Y^2) - 1  =  |Tr{B~ A~ rho}| - 1
// where X~ is X shifted to zero mean against rho and scaled to unit sup norm;
// in that gauge X = 2 |Im Tr{B~ A~ rho}| and Y = 2 |Re Tr{B~ A~ rho}|.
// May be negative; callers decide whether to clamp.
inline MeasureValue rs_bound(const Observable& a, const Observable& b,
                             const DensityOperator& rho) {
    const std::size_t d = rho.dim();
    require(a.dim() == d && b.dim() == d, Err::DimensionMismatch,
            "observables and state must share one dimension");

    auto shifted = [&](const Observable& o) {
        std::vector<double> weights(d);
        for (std::size_t k = 0; k < d; ++k) weights[k] = born_probability(rho, o.basis, k);
        double mean = 0.0;
        for (std::size_t k = 0; k < d; ++k) mean += o.spectrum[k] * weights[k];
        std::vector<double> s(d);
        double norm = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            s[k] = o.spectrum[k] - mean;
            norm = std::max(norm, std::abs(s[k]));
        }
        require(norm > postselect_floor, Err::DegenerateShiftedOperator,
                "shifted observable has vanishing sup norm");
        for (double& v : s) v /= norm;
        return Observable(o.basis, s);
    };

    const Observable as = shifted(a);
    const Observable bs = shifted(b);
    const cplx w = trace(bs.matrix() * as.matrix() * rho.matrix());
    return {std::abs(w) - 1.0, MeasureKind::RSBound};
}

// Outcome-probability-weighted mean square of the imaginary weak-value parts:
//   sum over (a, b) with Pr(b) above the zero floor of (Im Pr(a,b))^2 / Pr(b).
inline MeasureValue mse_sq_term(const DensityOperator& rho, const PvmBasis& basis_a,
                                const PvmBasis& basis_b) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share one dimension");
    const KdDistribution kd = kd_distribution(rho, basis_a, basis_b);
    double s = 0.0;
    for (std::size_t b = 0; b < d; ++b) {
        const double pb = born_probability(rho, basis_b, b);
        if (pb <= postselect_floor) continue;
        for (std::size_t a = 0; a < d; ++a) {
            const double im = kd.at(a, b).imag();
            s += im * im / pb;
        }
    }
    return {s, MeasureKind::MseSq};
}

// Total variation between the b statistics of rho and of its nonselective
// updates, summed over the a outcomes:
//   sum_{a,b} |Tr{(rho - rho_a) Pi_b}|.
inline MeasureValue disturbance_term(const DensityOperator& rho, const PvmBasis& basis_a,
                                     const PvmBasis& basis_b) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share one dimension");
    double s = 0.0;
    for (std::size_t a = 0; a < d; ++a) {
        const DensityOperator rho_a = nonselective_binary_update(rho, basis_a, a);
        const ComplexMatrix delta = rho.matrix() - rho_a.matrix();
        for (std::size_t b = 0; b < d; ++b) {
            cplx dv{0.0, 0.0};
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j)
                    dv += std::conj(basis_b.component(i, b)) * delta(i, j) *
                          basis_b.component(j, b);
            s += std::abs(dv.real());
        }
    }
    return {s, MeasureKind::DisturbanceTerm};
}

}  // namespace kdq
