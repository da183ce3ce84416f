#pragma once

// Dense complex matrices and the numerical kernels built on them: a cyclic
// Jacobi eigensolver for Hermitian matrices, Schatten norms, and seeded
// sampling of Haar unitaries and random density matrices.  Everything is
// sized for small dimensions (d <= 16).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "kdq/common.hpp"

namespace kdq {

// Row-major dense complex matrix.
class ComplexMatrix {
  public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, cplx{0.0, 0.0}) {}

    static ComplexMatrix identity(std::size_t d) {
        ComplexMatrix m(d, d);
        for (std::size_t i = 0; i < d; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const cplx& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    std::vector<cplx>& data() { return a_; }
    const std::vector<cplx>& data() const { return a_; }

    bool square() const { return rows_ == cols_ && rows_ > 0; }

    bool finite() const {
        for (const cplx& z : a_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
        return true;
    }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> a_;
};

// --- elementary operations --------------------------------------------------

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    require(x.cols() == y.rows(), Err::DimensionMismatch,
            "matrix product needs inner dimensions to agree");
    ComplexMatrix r(x.rows(), y.cols());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t k = 0; k < x.cols(); ++k) {
            const cplx xik = x(i, k);
            if (xik == cplx{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < y.cols(); ++j) r(i, j) += xik * y(k, j);
        }
    return r;
}

inline ComplexMatrix operator+(const ComplexMatrix& x, const ComplexMatrix& y) {
    require(x.rows() == y.rows() && x.cols() == y.cols(), Err::DimensionMismatch,
            "matrix sum needs equal shapes");
    ComplexMatrix r = x;
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] += y.data()[i];
    return r;
}

inline ComplexMatrix operator-(const ComplexMatrix& x, const ComplexMatrix& y) {
    require(x.rows() == y.rows() && x.cols() == y.cols(), Err::DimensionMismatch,
            "matrix difference needs equal shapes");
    ComplexMatrix r = x;
    for (std::size_t i = 0; i < r.data().size(); ++i) r.data()[i] -= y.data()[i];
    return r;
}

inline ComplexMatrix operator*(cplx s, const ComplexMatrix& x) {
    ComplexMatrix r = x;
    for (cplx& z : r.data()) z *= s;
    return r;
}

inline ComplexMatrix adjoint(const ComplexMatrix& x) {
    ComplexMatrix r(x.cols(), x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = 0; j < x.cols(); ++j) r(j, i) = std::conj(x(i, j));
    return r;
}

inline cplx trace(const ComplexMatrix& x) {
    require(x.square(), Err::NotSquare, "trace needs a square matrix");
    cplx t{0.0, 0.0};
    for (std::size_t i = 0; i < x.rows(); ++i) t += x(i, i);
    return t;
}

inline double max_abs(const ComplexMatrix& x) {
    double m = 0.0;
    for (const cplx& z : x.data()) m = std::max(m, std::abs(z));
    return m;
}

inline double hermiticity_defect(const ComplexMatrix& x) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.rows(); ++i)
        for (std::size_t j = i; j < x.cols(); ++j)
            m = std::max(m, std::abs(x(i, j) - std::conj(x(j, i))));
    return m;
}

inline bool is_hermitian(const ComplexMatrix& x, double tol = 1e-10) {
    return x.square() && hermiticity_defect(x) <= tol;
}

inline ComplexMatrix commutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y - y * x;
}

inline ComplexMatrix anticommutator(const ComplexMatrix& x, const ComplexMatrix& y) {
    return x * y + y * x;
}

// --- Hermitian eigendecomposition -------------------------------------------

struct EigenSystem {
    std::vector<double> eigenvalues;  // ascending
    ComplexMatrix eigenvectors;       // unitary; column k pairs with eigenvalues[k]
};

namespace detail {

// Cyclic Jacobi on a Hermitian matrix.  Each (p, q) step applies a two-level
// unitary J = [[c, -s e^{i phi}], [s e^{-i phi}, c]] with phi = arg A(p,q)
// chosen so the phase is absorbed and the remaining 2x2 problem is the real
// symmetric one solved by the classic rotation angle.
inline EigenSystem jacobi_hermitian(ComplexMatrix a) {
    const std::size_t d = a.rows();
    ComplexMatrix v = ComplexMatrix::identity(d);

    const double scale = max_abs(a);
    const double stop = 1e-12 * std::max(1.0, scale);

    if (scale > 0.0) {
        const int max_sweeps = 100;
        int sweep = 0;
        for (; sweep < max_sweeps; ++sweep) {
            double off = 0.0;
            for (std::size_t p = 0; p + 1 < d; ++p)
                for (std::size_t q = p + 1; q < d; ++q) off = std::max(off, std::abs(a(p, q)));
            if (off <= stop) break;

            for (std::size_t p = 0; p + 1 < d; ++p) {
                for (std::size_t q = p + 1; q < d; ++q) {
                    const cplx apq = a(p, q);
                    const double h = std::abs(apq);
                    if (h <= 0.01 * stop) continue;

                    const double phi = std::atan2(apq.imag(), apq.real());
                    const double app = a(p, p).real();
                    const double aqq = a(q, q).real();
                    const double theta = 0.5 * std::atan2(2.0 * h, app - aqq);
                    const double c = std::cos(theta);
                    const double s = std::sin(theta);
                    const cplx eip{std::cos(phi), std::sin(phi)};
                    const cplx eim = std::conj(eip);

                    // columns: A <- A J
                    for (std::size_t r = 0; r < d; ++r) {
                        const cplx arp = a(r, p);
                        const cplx arq = a(r, q);
                        a(r, p) = c * arp + s * eim * arq;
                        a(r, q) = -s * eip * arp + c * arq;
                    }
                    // rows: A <- J^dagger A
                    for (std::size_t r = 0; r < d; ++r) {
                        const cplx apr = a(p, r);
                        const cplx aqr = a(q, r);
                        a(p, r) = c * apr + s * eip * aqr;
                        a(q, r) = -s * eim * apr + c * aqr;
                    }
                    // accumulate eigenvectors: V <- V J
                    for (std::size_t r = 0; r < d; ++r) {
                        const cplx vrp = v(r, p);
                        const cplx vrq = v(r, q);
                        v(r, p) = c * vrp + s * eim * vrq;
                        v(r, q) = -s * eip * vrp + c * vrq;
                    }

                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    a(p, p) = cplx{a(p, p).real(), 0.0};
                    a(q, q) = cplx{a(q, q).real(), 0.0};
                }
            }
        }
        require(sweep < max_sweeps, Err::Internal, "jacobi sweep limit exceeded");
    }

    std::vector<std::size_t> order(d);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenSystem es;
    es.eigenvalues.resize(d);
    es.eigenvectors = ComplexMatrix(d, d);
    for (std::size_t k = 0; k < d; ++k) {
        es.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < d; ++r) es.eigenvectors(r, k) = v(r, order[k]);
    }
    return es;
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix; eigenvalues ascending, eigenvector
// columns orthonormal.
inline EigenSystem eig_hermitian(const ComplexMatrix& m, double herm_tol = 1e-10) {
    require(m.square(), Err::NotSquare, "eig_hermitian needs a square matrix");
    require(hermiticity_defect(m) <= herm_tol * std::max(1.0, max_abs(m)), Err::NotHermitian,
            "eig_hermitian needs a Hermitian matrix");
    // Symmetrize to remove the sub-tolerance asymmetry before iterating.
    ComplexMatrix h = m;
    for (std::size_t i = 0; i < h.rows(); ++i) {
        h(i, i) = cplx{h(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < h.cols(); ++j) {
            const cplx z = 0.5 * (h(i, j) + std::conj(h(j, i)));
            h(i, j) = z;
            h(j, i) = std::conj(z);
        }
    }
    return detail::jacobi_hermitian(std::move(h));
}

// Sum of singular values (Schatten-1 norm) of a square matrix, via the
// eigenvalues of M^dagger M.
inline double trace_norm(const ComplexMatrix& m) {
    require(m.square(), Err::NotSquare, "trace_norm needs a square matrix");
    ComplexMatrix h = adjoint(m) * m;  // Hermitian PSD up to rounding
    EigenSystem es = eig_hermitian(h, 1e-8);
    double sum = 0.0;
    for (double lam : es.eigenvalues) sum += std::sqrt(std::max(0.0, lam));
    return sum;
}

// Schatten-1 norm of a Hermitian matrix via its eigenvalues directly; avoids
// the square-root amplification of the general route when the matrix is
// rank-deficient.
inline double trace_norm_hermitian(const ComplexMatrix& m) {
    EigenSystem es = eig_hermitian(m);
    double sum = 0.0;
    for (double lam : es.eigenvalues) sum += std::abs(lam);
    return sum;
}

// Largest eigenvalue magnitude of a Hermitian matrix (sup norm on operators).
inline double operator_norm(const ComplexMatrix& m) {
    require(m.square(), Err::NotSquare, "operator_norm needs a square matrix");
    require(is_hermitian(m, 1e-10 * std::max(1.0, max_abs(m))), Err::NotHermitian,
            "operator_norm is implemented for Hermitian matrices");
    EigenSystem es = eig_hermitian(m);
    double mx = 0.0;
    for (double lam : es.eigenvalues) mx = std::max(mx, std::abs(lam));
    return mx;
}

// --- seeded sampling --------------------------------------------------------

// Haar-distributed unitary: QR of a complex Ginibre matrix with the R diagonal
// forced real positive (Gram-Schmidt does that by construction).
inline ComplexMatrix haar_random_unitary(std::size_t d, std::uint64_t seed) {
    require(d >= 1, Err::InvalidDimension, "haar_random_unitary needs d >= 1");
    Rng rng(seed);
    ComplexMatrix g(d, d);
    while (true) {
        for (cplx& z : g.data()) z = rng.cnormal();
        ComplexMatrix q(d, d);
        bool ok = true;
        for (std::size_t j = 0; j < d && ok; ++j) {
            std::vector<cplx> col(d);
            for (std::size_t r = 0; r < d; ++r) col[r] = g(r, j);
            for (std::size_t k = 0; k < j; ++k) {
                cplx proj{0.0, 0.0};
                for (std::size_t r = 0; r < d; ++r) proj += std::conj(q(r, k)) * col[r];
                for (std::size_t r = 0; r < d; ++r) col[r] -= proj * q(r, k);
            }
            double nrm = 0.0;
            for (const cplx& z : col) nrm += std::norm(z);
            nrm = std::sqrt(nrm);
            if (nrm < 1e-8) {
                ok = false;  // numerically dependent draw; resample
                break;
            }
            for (std::size_t r = 0; r < d; ++r) q(r, j) = col[r] / nrm;
        }
        if (ok) return q;
    }
}

// Random rank-r density matrix: G G^dagger / Tr for a d x r Ginibre G.
inline ComplexMatrix random_density(std::size_t d, std::size_t rank, std::uint64_t seed) {
    require(d >= 1, Err::InvalidDimension, "random_density needs d >= 1");
    require(rank >= 1 && rank <= d, Err::InvalidRank, "random_density needs 1 <= rank <= d");
    Rng rng(seed);
    ComplexMatrix g(d, rank);
    for (cplx& z : g.data()) z = rng.cnormal();
    ComplexMatrix rho = g * adjoint(g);
    const double tr = trace(rho).real();
    for (cplx& z : rho.data()) z /= tr;
    // exact Hermitian symmetrization
    for (std::size_t i = 0; i < d; ++i) {
        rho(i, i) = cplx{rho(i, i).real(), 0.0};
        for (std::size_t j = i + 1; j < d; ++j) {
            const cplx z = 0.5 * (rho(i, j) + std::conj(rho(j, i)));
            rho(i, j) = z;
            rho(j, i) = std::conj(z);
        }
    }
    return rho;
}

}  // namespace kdq
