#pragma once
// Suprema of the quasiprobability measures over the manifold of rank-1
// projective bases and over observable spectra.  Basis suprema run a
// restarted Nelder-Mead search on a rotation-product chart of the basis
// manifold; spectrum suprema exploit convexity in the spectrum and enumerate
// the extreme points of the feasible polytopes exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "kdq/measures.hpp"

namespace kdq {

// ---------------------------------------------------------------------------
// Parameter charts
// ---------------------------------------------------------------------------

// Chart on the basis manifold: a unitary assembled as an ordered product of
// two-level rotations applied to the computational columns, then per-column
// phases.  Layout of `angles`:
//   [ d(d-1)/2 rotation angles | d(d-1)/2 rotation phases | d-1 column phases ]
// Column phases never move the projectors; they are carried so a parameter
// vector describes the unitary completely.
struct PvmParams {
    std::vector<double> angles;
};

inline std::size_t pvm_rotation_count(std::size_t d) { return d * (d - 1) / 2; }
inline std::size_t pvm_parameter_count(std::size_t d) { return d * d - 1; }

inline PvmBasis decode_pvm(const PvmParams& params, std::size_t d) {
    require(d >= 1, Err::InvalidDimension, "decode_pvm needs d >= 1");
    const std::size_t expected = pvm_parameter_count(d);
    if (params.angles.size() != expected) {
        fail(Err::BadParameterCount, "decode_pvm: dimension " + std::to_string(d) + " takes " +
                                         std::to_string(expected) + " parameters, got " +
                                         std::to_string(params.angles.size()));
    }
    const std::size_t nrot = pvm_rotation_count(d);
    ComplexMatrix u = ComplexMatrix::identity(d);
    std::size_t idx = 0;
    for (std::size_t j = 0; j + 1 < d; ++j) {
        for (std::size_t k = j + 1; k < d; ++k, ++idx) {
            const double c = std::cos(params.angles[idx] / 2.0);
            const double s = std::sin(params.angles[idx] / 2.0);
            const cplx ph = std::polar(1.0, params.angles[nrot + idx]);
            for (std::size_t r = 0; r < d; ++r) {
                const cplx uj = u(r, j);
                const cplx uk = u(r, k);
                u(r, j) = c * uj + s * ph * uk;
                u(r, k) = -s * std::conj(ph) * uj + c * uk;
            }
        }
    }
    for (std::size_t m = 1; m < d; ++m) {
        const cplx ph = std::polar(1.0, params.angles[2 * nrot + m - 1]);
        for (std::size_t r = 0; r < d; ++r) u(r, m) *= ph;
    }
    return PvmBasis(u);
}

// Spectrum of a sup-normalized observable: every entry in [-1, 1].
struct SpectrumParams {
    std::vector<double> values;
};

// ---------------------------------------------------------------------------
// Search configuration and results
// ---------------------------------------------------------------------------

struct OptConfig {
    int restarts = 32;
    int max_iterations = 2000;
    double tolerance = 1e-9;
    std::uint64_t seed = 0;
};

struct OptResult {
    double value = 0.0;
    std::optional<PvmBasis> witness_basis;
    std::optional<std::pair<SpectrumParams, SpectrumParams>> witness_spectra;
    int restarts_used = 0;
    bool converged = false;
    long long evaluations = 0;
};

struct BoundReport {
    std::string inequality_id;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = false;
    bool trivially_satisfied = false;
    bool heuristic = false;
    std::string witness;
};

enum class TradeoffKind { nre_product, nre_additive, ncl_product };

inline const char* tradeoff_kind_id(TradeoffKind kind) {
    switch (kind) {
        case TradeoffKind::nre_product: return "NRe-product";
        case TradeoffKind::nre_additive: return "NRe-additive";
        case TradeoffKind::ncl_product: return "NCl-product";
    }
    return "?";
}

namespace detail {

inline void check_config(const OptConfig& cfg) {
    require(cfg.restarts >= 1, Err::InvariantError, "OptConfig.restarts must be >= 1");
    require(cfg.max_iterations >= 1, Err::InvariantError, "OptConfig.max_iterations must be >= 1");
    require(cfg.tolerance > 0.0, Err::InvariantError, "OptConfig.tolerance must be positive");
}

constexpr double neg_inf = -std::numeric_limits<double>::infinity();

// Ceiling for the exact spectrum enumerations (2^(d-1) sign patterns).
constexpr std::size_t enumeration_dim_cap = 12;

inline void check_enumerable(std::size_t d) {
    require(d <= enumeration_dim_cap, Err::InvalidDimension,
            "spectrum enumeration supports dimension <= 12");
}

// ---------------------------------------------------------------------------
// Derivative-free maximizer (Nelder-Mead, reflection/expansion/contraction/
// shrink coefficients 1, 2, 0.5, 0.5; terminates when the simplex value
// spread falls below the tolerance).
// ---------------------------------------------------------------------------

struct SearchOutcome {
    std::vector<double> best_x;
    double best_value = neg_inf;
    bool converged = false;
    long long evaluations = 0;
};

template <typename F>
SearchOutcome nelder_mead_max(F&& f, const std::vector<double>& start, double step,
                              int max_iterations, double tolerance) {
    const std::size_t n = start.size();
    SearchOutcome out;
    if (n == 0) {
        out.best_x = start;
        out.best_value = f(start);
        out.converged = true;
        out.evaluations = 1;
        return out;
    }

    struct Vertex {
        std::vector<double> x;
        double v;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(n + 1);
    long long evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return f(x);
    };
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> x = start;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }
    auto by_value_desc = [](const Vertex& a, const Vertex& b) { return a.v > b.v; };
    std::stable_sort(simplex.begin(), simplex.end(), by_value_desc);

    bool converged = false;
    for (int iter = 0; iter < max_iterations; ++iter) {
        if (simplex.front().v - simplex.back().v <= tolerance) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t c = 0; c < n; ++c) centroid[c] += simplex[i].x[c];
        }
        for (double& c : centroid) c /= static_cast<double>(n);
        const std::vector<double>& worst = simplex[n].x;

        auto blend = [&](double coeff) {
            std::vector<double> x(n);
            for (std::size_t c = 0; c < n; ++c) x[c] = centroid[c] + coeff * (centroid[c] - worst[c]);
            return x;
        };

        std::vector<double> xr = blend(1.0);
        const double vr = eval(xr);
        bool shrink = false;
        if (vr > simplex[0].v) {
            std::vector<double> xe = blend(2.0);
            const double ve = eval(xe);
            if (ve > vr) {
                simplex[n] = {std::move(xe), ve};
            } else {
                simplex[n] = {std::move(xr), vr};
            }
        } else if (vr > simplex[n - 1].v) {
            simplex[n] = {std::move(xr), vr};
        } else if (vr > simplex[n].v) {
            std::vector<double> xc = blend(0.5);
            const double vc = eval(xc);
            if (vc >= vr) {
                simplex[n] = {std::move(xc), vc};
            } else {
                shrink = true;
            }
        } else {
            std::vector<double> xc = blend(-0.5);
            const double vc = eval(xc);
            if (vc > simplex[n].v) {
                simplex[n] = {std::move(xc), vc};
            } else {
                shrink = true;
            }
        }
        if (shrink) {
            for (std::size_t i = 1; i <= n; ++i) {
                for (std::size_t c = 0; c < n; ++c) {
                    simplex[i].x[c] = simplex[0].x[c] + 0.5 * (simplex[i].x[c] - simplex[0].x[c]);
                }
                simplex[i].v = eval(simplex[i].x);
            }
        }
        std::stable_sort(simplex.begin(), simplex.end(), by_value_desc);
    }

    out.best_x = simplex.front().x;
    out.best_value = simplex.front().v;
    out.converged = converged;
    out.evaluations = evals;
    return out;
}

// Restarted search: restart k draws its start from a stream seeded by
// derive_seed(cfg.seed, k), so the best-so-far after k restarts is a
// deterministic, monotone function of k.  Ties keep the earliest restart.
template <typename F, typename DrawStart>
SearchOutcome restarted_search(F&& objective, DrawStart&& draw_start, const OptConfig& cfg,
                               double step) {
    SearchOutcome best;
    for (int k = 0; k < cfg.restarts; ++k) {
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(k)));
        const std::vector<double> x0 = draw_start(rng);
        SearchOutcome run = nelder_mead_max(objective, x0, step, cfg.max_iterations, cfg.tolerance);
        const long long total = best.evaluations + run.evaluations;
        if (run.best_value > best.best_value) best = std::move(run);
        best.evaluations = total;
    }
    return best;
}

// ---------------------------------------------------------------------------
// Reduction to the frame of the first basis: rotate the state so that basis
// becomes computational, search over the relative basis, map witnesses back.
// ---------------------------------------------------------------------------

struct FrameProblem {
    DensityOperator rho;
    PvmBasis comp;
    ComplexMatrix back;  // first-basis matrix; maps frame vectors to the original frame
    std::size_t d;
};

inline FrameProblem make_frame(const DensityOperator& rho, const PvmBasis& basis_a) {
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d, Err::DimensionMismatch, "state and basis must share a dimension");
    const ComplexMatrix& a = basis_a.matrix();
    ComplexMatrix r = adjoint(a) * rho.matrix() * a;
    r = 0.5 * (r + adjoint(r));
    return FrameProblem{DensityOperator(r), PvmBasis::computational(d), a, d};
}

enum class BasisObjective { nonreality, nonclassicality, estimation_error, disturbance };

inline double basis_objective_value(BasisObjective kind, const DensityOperator& rho_f,
                                    const PvmBasis& comp, const PvmBasis& candidate) {
    switch (kind) {
        case BasisObjective::nonreality:
            return nre(kd_distribution(rho_f, comp, candidate)).value;
        case BasisObjective::nonclassicality:
            return ncl(kd_distribution(rho_f, comp, candidate)).value;
        case BasisObjective::disturbance:
            return disturbance_term(rho_f, comp, candidate).value;
        case BasisObjective::estimation_error: {
            const std::size_t d = comp.dim();
            const KdDistribution kd = kd_distribution(rho_f, comp, candidate);
            std::vector<double> pb(d);
            for (std::size_t b = 0; b < d; ++b) pb[b] = born_probability(rho_f, candidate, b);
            double total = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                double row = 0.0;
                for (std::size_t b = 0; b < d; ++b) {
                    if (pb[b] <= postselect_floor) continue;
                    const double im = kd.at(a, b).imag();
                    row += im * im / pb[b];
                }
                total += std::sqrt(row);
            }
            return total;
        }
    }
    return 0.0;
}

inline OptResult optimize_over_bases(BasisObjective kind, const DensityOperator& rho,
                                     const PvmBasis& basis_a, const OptConfig& cfg) {
    check_config(cfg);
    const FrameProblem fp = make_frame(rho, basis_a);
    const std::size_t nrot = pvm_rotation_count(fp.d);
    const std::size_t live = fp.d * (fp.d - 1);

    auto to_basis = [&](const std::vector<double>& p) {
        PvmParams params;
        params.angles.assign(pvm_parameter_count(fp.d), 0.0);
        std::copy(p.begin(), p.end(), params.angles.begin());
        return decode_pvm(params, fp.d);
    };
    auto objective = [&](const std::vector<double>& p) {
        return basis_objective_value(kind, fp.rho, fp.comp, to_basis(p));
    };
    auto draw = [&](Rng& rng) {
        std::vector<double> x(live);
        for (std::size_t i = 0; i < nrot; ++i) x[i] = rng.uniform(0.0, pi);
        for (std::size_t i = nrot; i < live; ++i) x[i] = rng.uniform(0.0, 2.0 * pi);
        return x;
    };

    const SearchOutcome out = restarted_search(objective, draw, cfg, 0.35);
    OptResult res;
    res.value = (kind == BasisObjective::nonclassicality) ? std::max(0.0, out.best_value)
                                                          : out.best_value;
    res.witness_basis = PvmBasis(fp.back * to_basis(out.best_x).matrix());
    res.restarts_used = cfg.restarts;
    res.converged = out.converged;
    res.evaluations = out.evaluations;
    return res;
}

// Extreme points of { alpha : |alpha|_inf <= 1, sum_k w_k alpha_k = 0 }:
// all free coordinates sit at +-1 and one weighted coordinate balances the
// constraint; candidates whose balancing entry leaves the box are discarded.
inline std::vector<std::vector<double>> zero_mean_box_extremes(const std::vector<double>& w) {
    const std::size_t d = w.size();
    std::vector<std::vector<double>> out;
    if (d == 0) return out;
    if (d == 1) {
        out.push_back({0.0});
        return out;
    }
    for (std::size_t f = 0; f < d; ++f) {
        if (w[f] <= postselect_floor) continue;
        const std::uint64_t patterns = 1ull << (d - 1);
        for (std::uint64_t mask = 0; mask < patterns; ++mask) {
            std::vector<double> alpha(d, 0.0);
            double acc = 0.0;
            std::size_t bit = 0;
            for (std::size_t k = 0; k < d; ++k) {
                if (k == f) continue;
                const double s = ((mask >> bit) & 1ull) ? 1.0 : -1.0;
                alpha[k] = s;
                acc += w[k] * s;
                ++bit;
            }
            const double balance = -acc / w[f];
            if (std::abs(balance) <= 1.0 + 1e-9) {
                alpha[f] = std::clamp(balance, -1.0, 1.0);
                out.push_back(std::move(alpha));
            }
        }
    }
    return out;
}

inline std::string spectrum_summary(const char* tag, const std::vector<double>& v) {
    std::string s(tag);
    s += " [";
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (k > 0) s += ", ";
        s += fmt_double(v[k]);
    }
    s += "]";
    return s;
}

struct PairingSup {
    double value = 0.0;
    std::vector<double> a_spec;
    std::vector<double> b_spec;
};

// sup over sign spectra alpha, beta in {-1, 1}^d of
// |sum_ab alpha_a beta_b Im Pr(a, b)|; the beta supremum collapses to a sum
// of absolute values, and the global sign symmetry pins alpha_0 = +1.
inline PairingSup sup_im_pairing(const KdDistribution& kd) {
    const std::size_t d = kd.dim;
    std::vector<double> t(d, 1.0), g(d);
    PairingSup best;
    best.value = neg_inf;
    std::vector<double> best_g(d, 0.0);
    const std::uint64_t count = d >= 1 ? (1ull << (d - 1)) : 1ull;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t k = 1; k < d; ++k) t[k] = ((mask >> (k - 1)) & 1ull) ? -1.0 : 1.0;
        double val = 0.0;
        for (std::size_t b = 0; b < d; ++b) {
            double col = 0.0;
            for (std::size_t a = 0; a < d; ++a) col += t[a] * kd.at(a, b).imag();
            g[b] = col;
            val += std::abs(col);
        }
        if (val > best.value) {
            best.value = val;
            best.a_spec = t;
            best_g = g;
        }
    }
    best.b_spec.resize(d);
    for (std::size_t b = 0; b < d; ++b) best.b_spec[b] = best_g[b] < 0.0 ? -1.0 : 1.0;
    return best;
}

// sup over zero-mean sup-normalized spectra (zero mean under the given Born
// weights) of |sum_ab alpha_a beta_b Pr(a, b)|, resolved exactly through the
// extreme points of the two constraint polytopes.
inline PairingSup sup_full_pairing(const KdDistribution& kd, const std::vector<double>& wa,
                                   const std::vector<double>& wb) {
    const std::size_t d = kd.dim;
    const std::vector<std::vector<double>> ext_a = zero_mean_box_extremes(wa);
    const std::vector<std::vector<double>> ext_b = zero_mean_box_extremes(wb);
    PairingSup best;
    best.value = neg_inf;
    best.a_spec.assign(d, 0.0);
    best.b_spec.assign(d, 0.0);
    std::vector<double> xs(d), ys(d);
    for (const std::vector<double>& alpha : ext_a) {
        for (std::size_t b = 0; b < d; ++b) {
            double x = 0.0, y = 0.0;
            for (std::size_t a = 0; a < d; ++a) {
                const cplx pr = kd.at(a, b);
                x += pr.real() * alpha[a];
                y += pr.imag() * alpha[a];
            }
            xs[b] = x;
            ys[b] = y;
        }
        for (const std::vector<double>& beta : ext_b) {
            double u = 0.0, v = 0.0;
            for (std::size_t b = 0; b < d; ++b) {
                u += beta[b] * xs[b];
                v += beta[b] * ys[b];
            }
            const double val = std::hypot(u, v);
            if (val > best.value) {
                best.value = val;
                best.a_spec = alpha;
                best.b_spec = beta;
            }
        }
    }
    if (!std::isfinite(best.value)) best.value = 0.0;
    return best;
}

inline std::vector<double> born_weights(const DensityOperator& rho, const PvmBasis& basis) {
    std::vector<double> w(rho.dim());
    for (std::size_t k = 0; k < w.size(); ++k)
        w[k] = std::max(0.0, born_probability(rho, basis, k));
    return w;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Basis-optimized measures
// ---------------------------------------------------------------------------

// Largest imaginarity weight of the state's quasiprobability table over all
// partner bases of the given basis.
inline OptResult q_nre(const DensityOperator& rho, const PvmBasis& basis_a,
                       const OptConfig& cfg = {}) {
    return detail::optimize_over_bases(detail::BasisObjective::nonreality, rho, basis_a, cfg);
}

// Largest total-variation excess of the table over all partner bases.
inline OptResult q_ncl(const DensityOperator& rho, const PvmBasis& basis_a,
                       const OptConfig& cfg = {}) {
    return detail::optimize_over_bases(detail::BasisObjective::nonclassicality, rho, basis_a, cfg);
}

// Worst-case postselected estimation error: for each outcome of the given
// basis, the root of the Born-weighted sum of squared imaginary parts along
// the partner basis, summed over outcomes, maximized over partner bases.
inline OptResult epsilon(const DensityOperator& rho, const PvmBasis& basis_a,
                         const OptConfig& cfg = {}) {
    return detail::optimize_over_bases(detail::BasisObjective::estimation_error, rho, basis_a, cfg);
}

// Worst-case measurement disturbance of the given basis, probed along an
// optimized partner basis.
inline OptResult delta(const DensityOperator& rho, const PvmBasis& basis_a,
                       const OptConfig& cfg = {}) {
    return detail::optimize_over_bases(detail::BasisObjective::disturbance, rho, basis_a, cfg);
}

// ---------------------------------------------------------------------------
// Spectrum-optimized lower bounds
// ---------------------------------------------------------------------------

// sup over sup-normalized observables diagonal in the given basis of half the
// trace norm of the commutator with the state.  The objective is convex in
// the spectrum, so the sup over the unit box is attained at a sign vector;
// signs are enumerated exactly (global sign symmetry pins the first entry).
// The partner-basis witness diagonalizes i[A, rho]; its sign spectrum turns
// the trace norm into the commutator expectation.
inline OptResult sup_robertson(const DensityOperator& rho, const PvmBasis& basis_a,
                               const OptConfig& cfg = {}) {
    detail::check_config(cfg);
    const detail::FrameProblem fp = detail::make_frame(rho, basis_a);
    const std::size_t d = fp.d;
    detail::check_enumerable(d);
    const ComplexMatrix& r = fp.rho.matrix();

    auto commutator_h = [&](const std::vector<double>& s) {
        ComplexMatrix h(d, d);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < d; ++j) {
                h(i, j) = cplx(0.0, 1.0) * (s[i] - s[j]) * r(i, j);
            }
        }
        return h;
    };

    std::vector<double> s(d, 1.0);
    std::vector<double> best_s(d, 1.0);
    double best = detail::neg_inf;
    long long evals = 0;
    const std::uint64_t count = d >= 1 ? (1ull << (d - 1)) : 1ull;
    for (std::uint64_t mask = 0; mask < count; ++mask) {
        for (std::size_t k = 1; k < d; ++k) s[k] = ((mask >> (k - 1)) & 1ull) ? -1.0 : 1.0;
        const double val = 0.5 * trace_norm_hermitian(commutator_h(s));
        ++evals;
        if (val > best) {
            best = val;
            best_s = s;
        }
    }

    ComplexMatrix h_orig = fp.back * commutator_h(best_s) * adjoint(fp.back);
    h_orig = 0.5 * (h_orig + adjoint(h_orig));
    const EigenSystem es = eig_hermitian(h_orig);
    std::vector<double> b_signs(d);
    for (std::size_t k = 0; k < d; ++k) b_signs[k] = es.eigenvalues[k] < 0.0 ? -1.0 : 1.0;

    OptResult res;
    res.value = best;
    res.witness_basis = PvmBasis(es.eigenvectors);
    res.witness_spectra = std::make_pair(SpectrumParams{best_s}, SpectrumParams{b_signs});
    res.restarts_used = 1;
    res.converged = true;
    res.evaluations = evals;
    return res;
}

// sup over partner bases and over zero-mean sup-normalized observables of the
// uncertainty-product excess |Tr{B A rho}| - 1 (observables taken in the
// shifted gauge).  The outer basis search is Nelder-Mead; for a fixed basis
// pair the objective is bilinear-convex in the two spectra, so both zero-mean
// boxes are resolved exactly through their extreme points.
inline OptResult sup_rs(const DensityOperator& rho, const PvmBasis& basis_a,
                        const OptConfig& cfg = {}) {
    detail::check_config(cfg);
    const detail::FrameProblem fp = detail::make_frame(rho, basis_a);
    const std::size_t d = fp.d;
    detail::check_enumerable(d);

    std::vector<double> wa(d);
    for (std::size_t a = 0; a < d; ++a) wa[a] = std::max(0.0, fp.rho.matrix()(a, a).real());
    const std::vector<std::vector<double>> ext_a = detail::zero_mean_box_extremes(wa);

    struct Inner {
        double value = detail::neg_inf;
        std::size_t ia = 0;
        std::vector<double> beta;
    };
    std::vector<double> xs(d), ys(d);
    auto inner_best = [&](const PvmBasis& candidate) {
        const KdDistribution kd = kd_distribution(fp.rho, fp.comp, candidate);
        std::vector<double> wb(d);
        for (std::size_t b = 0; b < d; ++b)
            wb[b] = std::max(0.0, born_probability(fp.rho, candidate, b));
        const std::vector<std::vector<double>> ext_b = detail::zero_mean_box_extremes(wb);
        Inner best;
        for (std::size_t ia = 0; ia < ext_a.size(); ++ia) {
            const std::vector<double>& alpha = ext_a[ia];
            for (std::size_t b = 0; b < d; ++b) {
                double x = 0.0, y = 0.0;
                for (std::size_t a = 0; a < d; ++a) {
                    const cplx pr = kd.at(a, b);
                    x += pr.real() * alpha[a];
                    y += pr.imag() * alpha[a];
                }
                xs[b] = x;
                ys[b] = y;
            }
            for (const std::vector<double>& beta : ext_b) {
                double u = 0.0, v = 0.0;
                for (std::size_t b = 0; b < d; ++b) {
                    u += beta[b] * xs[b];
                    v += beta[b] * ys[b];
                }
                const double val = std::hypot(u, v) - 1.0;
                if (val > best.value) {
                    best.value = val;
                    best.ia = ia;
                    best.beta = beta;
                }
            }
        }
        return best;
    };

    const std::size_t nrot = pvm_rotation_count(d);
    const std::size_t live = d * (d - 1);
    auto to_basis = [&](const std::vector<double>& p) {
        PvmParams params;
        params.angles.assign(pvm_parameter_count(d), 0.0);
        std::copy(p.begin(), p.end(), params.angles.begin());
        return decode_pvm(params, d);
    };
    auto objective = [&](const std::vector<double>& p) { return inner_best(to_basis(p)).value; };
    auto draw = [&](Rng& rng) {
        std::vector<double> x(live);
        for (std::size_t i = 0; i < nrot; ++i) x[i] = rng.uniform(0.0, pi);
        for (std::size_t i = nrot; i < live; ++i) x[i] = rng.uniform(0.0, 2.0 * pi);
        return x;
    };

    const detail::SearchOutcome out = detail::restarted_search(objective, draw, cfg, 0.35);
    const PvmBasis relative = to_basis(out.best_x);
    const Inner winner = inner_best(relative);

    OptResult res;
    res.value = winner.value;
    res.witness_basis = PvmBasis(fp.back * relative.matrix());
    res.witness_spectra = std::make_pair(SpectrumParams{ext_a.empty() ? std::vector<double>(d, 0.0)
                                                                      : ext_a[winner.ia]},
                                         SpectrumParams{winner.beta});
    res.restarts_used = cfg.restarts;
    res.converged = out.converged;
    res.evaluations = out.evaluations;
    return res;
}

// ---------------------------------------------------------------------------
// Two-basis trade-off relations
// ---------------------------------------------------------------------------

// Checks one of the three trade-off relations between the measures optimized
// from each of two fixed bases:
//   NRe-product:  q_nre(A) * q_nre(B)          >= R^2 / 4
//   NRe-additive: q_nre(A) + q_nre(B)          >= R
//   NCl-product:  (q_ncl(A)+1) * (q_ncl(B)+1)  >= S^2
// where R = sup |Tr{[A~, B~] rho}| over sup-normalized spectra on the two
// bases and S = sup |Tr{B~ A~ rho}| over zero-mean sup-normalized spectra.
// Both right-hand suprema are evaluated exactly by enumeration; the left-hand
// sides inherit the heuristic basis search, flagged for d > 2.
inline BoundReport tradeoff_bound(const DensityOperator& rho, const PvmBasis& basis_a,
                                  const PvmBasis& basis_b, const OptConfig& cfg = {},
                                  TradeoffKind kind = TradeoffKind::nre_product,
                                  double slack_tolerance = 1e-6) {
    detail::check_config(cfg);
    const std::size_t d = rho.dim();
    require(basis_a.dim() == d && basis_b.dim() == d, Err::DimensionMismatch,
            "state and bases must share a dimension");
    detail::check_enumerable(d);
    const KdDistribution kd = kd_distribution(rho, basis_a, basis_b);

    BoundReport rep;
    rep.inequality_id = tradeoff_kind_id(kind);
    rep.heuristic = d > 2;

    if (kind == TradeoffKind::nre_product || kind == TradeoffKind::nre_additive) {
        const detail::PairingSup sup = detail::sup_im_pairing(kd);
        const double r = 2.0 * sup.value;
        rep.rhs = kind == TradeoffKind::nre_additive ? r : 0.25 * r * r;
        const double la = q_nre(rho, basis_a, cfg).value;
        const double lb = q_nre(rho, basis_b, cfg).value;
        rep.lhs = kind == TradeoffKind::nre_additive ? la + lb : la * lb;
        rep.witness = detail::spectrum_summary("a-spectrum", sup.a_spec) + "; " +
                      detail::spectrum_summary("b-spectrum", sup.b_spec);
    } else {
        const detail::PairingSup sup = detail::sup_full_pairing(
            kd, detail::born_weights(rho, basis_a), detail::born_weights(rho, basis_b));
        rep.rhs = sup.value * sup.value;
        rep.lhs = (q_ncl(rho, basis_a, cfg).value + 1.0) * (q_ncl(rho, basis_b, cfg).value + 1.0);
        rep.witness = detail::spectrum_summary("a-spectrum", sup.a_spec) + "; " +
                      detail::spectrum_summary("b-spectrum", sup.b_spec);
    }

    rep.slack = rep.lhs - rep.rhs;
    rep.pass = rep.slack >= -slack_tolerance;
    rep.trivially_satisfied = rep.rhs <= 0.0;
    return rep;
}

// ---------------------------------------------------------------------------
// Qubit closed form
// ---------------------------------------------------------------------------

struct QubitAnalytic {
    double q_nre;
    PvmBasis optimal_b;
    double phi01;
};

// Exact qubit solution of the basis-optimized imaginarity weight: with the
// state written in the frame of the given basis, the optimum is twice the
// off-diagonal magnitude and is attained on the mutually unbiased partner
// basis whose azimuth is rotated a quarter turn from the coherence phase.
inline QubitAnalytic qubit_analytic(const DensityOperator& rho, const PvmBasis& basis_a) {
    require(rho.dim() == 2, Err::NotQubit, "qubit_analytic needs a two-dimensional state");
    require(basis_a.dim() == 2, Err::NotQubit, "qubit_analytic needs a two-dimensional basis");
    const detail::FrameProblem fp = detail::make_frame(rho, basis_a);
    const cplx z = fp.rho.matrix()(0, 1);
    const double q = 2.0 * std::abs(z);
    const double phi01 = std::abs(z) <= postselect_floor ? 0.0 : -std::arg(z);
    PvmParams p;
    p.angles = {pi / 2.0, phi01 + pi / 2.0, 0.0};
    const PvmBasis relative = decode_pvm(p, 2);
    return QubitAnalytic{q, PvmBasis(fp.back * relative.matrix()), phi01};
}

}  // namespace kdq
