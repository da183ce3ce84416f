#pragma once
// Instance files, seeded verification suites, and report emission.
//
// An instance is a JSON document pairing a density operator with one or two
// projective bases.  A suite draws a deterministic batch of instances,
// evaluates a family of inequality checks on each, and collects the results
// into a report that can be rendered as JSON, CSV, or a text summary.  Every
// check is a BoundReport row; equality claims are encoded as bound rows whose
// left side is the permitted deviation and whose right side is the observed
// deviation, so slack >= 0 exactly when the claim holds to tolerance.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "kdq/optimize.hpp"

namespace kdq {

// --- instances ---------------------------------------------------------------

struct Instance {
    std::size_t dim;
    DensityOperator rho;
    PvmBasis basis_a;
    std::optional<PvmBasis> basis_b;
    std::string label;
};

namespace detail {

inline std::size_t line_of_byte(const std::string& text, std::size_t byte) {
    std::size_t line = 1;
    const std::size_t stop = std::min(byte, text.size());
    for (std::size_t i = 0; i < stop; ++i)
        if (text[i] == '\n') ++line;
    return line;
}

inline const nlohmann::json& json_field(const nlohmann::json& j, const char* name) {
    const auto it = j.find(name);
    if (it == j.end()) fail(Err::SchemaError, std::string("missing field '") + name + "'");
    return *it;
}

inline std::string json_string(const nlohmann::json& j, const char* name) {
    const nlohmann::json& f = json_field(j, name);
    if (!f.is_string()) fail(Err::SchemaError, std::string("field '") + name + "' must be a string");
    return f.get<std::string>();
}

inline double json_number(const nlohmann::json& j, const char* name) {
    const nlohmann::json& f = json_field(j, name);
    if (!f.is_number()) fail(Err::SchemaError, std::string("field '") + name + "' must be a number");
    return f.get<double>();
}

inline bool json_bool(const nlohmann::json& j, const char* name) {
    const nlohmann::json& f = json_field(j, name);
    if (!f.is_boolean())
        fail(Err::SchemaError, std::string("field '") + name + "' must be a boolean");
    return f.get<bool>();
}

inline std::int64_t json_integer(const nlohmann::json& j, const char* name) {
    const nlohmann::json& f = json_field(j, name);
    if (!f.is_number_integer())
        fail(Err::SchemaError, std::string("field '") + name + "' must be an integer");
    return f.get<std::int64_t>();
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& name,
                                      std::size_t d) {
    if (!j.is_array() || j.size() != d)
        fail(Err::SchemaError,
             "field '" + name + "' must be an array of " + std::to_string(d) + " rows");
    ComplexMatrix m(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        const nlohmann::json& row = j[r];
        if (!row.is_array() || row.size() != d)
            fail(Err::SchemaError, "field '" + name + "[" + std::to_string(r) +
                                       "]' must be an array of " + std::to_string(d) + " entries");
        for (std::size_t c = 0; c < d; ++c) {
            const nlohmann::json& z = row[c];
            if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number())
                fail(Err::SchemaError, "field '" + name + "[" + std::to_string(r) + "][" +
                                           std::to_string(c) + "]' must be a [re, im] pair");
            m(r, c) = cplx{z[0].get<double>(), z[1].get<double>()};
        }
    }
    return m;
}

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t c = 0; c < m.cols(); ++c)
            row.push_back(nlohmann::json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(Err::IoError, "cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) fail(Err::IoError, "failed reading '" + path + "'");
    return buf.str();
}

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(Err::IoError, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(Err::IoError, "failed writing '" + path + "'");
}

inline nlohmann::json parse_json_text(const std::string& text) {
    try {
        return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        fail(Err::SchemaError,
             "line " + std::to_string(line_of_byte(text, byte)) + ": " + e.what());
    }
}

}  // namespace detail

inline Instance instance_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(Err::SchemaError, "instance document must be a JSON object");
    const std::int64_t dim_raw = detail::json_integer(j, "dim");
    if (dim_raw < 1) fail(Err::SchemaError, "field 'dim' must be a positive integer");
    const std::size_t d = static_cast<std::size_t>(dim_raw);

    const ComplexMatrix rho_m = detail::matrix_from_json(detail::json_field(j, "rho"), "rho", d);
    const ComplexMatrix a_m =
        detail::matrix_from_json(detail::json_field(j, "basis_a"), "basis_a", d);

    std::string label;
    if (const auto it = j.find("label"); it != j.end()) {
        if (!it->is_string()) fail(Err::SchemaError, "field 'label' must be a string");
        label = it->get<std::string>();
    }

    // Surface the most informative invariant first: a wrong trace is reported
    // with its value before the full density-operator validation runs.
    double tr = 0.0;
    for (std::size_t i = 0; i < d; ++i) tr += rho_m(i, i).real();
    if (std::abs(tr - 1.0) > 1e-10) fail(Err::InvariantError, "trace = " + fmt_double(tr));

    auto rho = [&] {
        try {
            return DensityOperator(rho_m);
        } catch (const Error& e) {
            fail(Err::InvariantError, std::string("rho: ") + e.what());
        }
    }();
    auto basis_a = [&] {
        try {
            return PvmBasis(a_m);
        } catch (const Error& e) {
            fail(Err::InvariantError, std::string("basis_a: ") + e.what());
        }
    }();

    std::optional<PvmBasis> basis_b;
    if (const auto it = j.find("basis_b"); it != j.end()) {
        const ComplexMatrix b_m = detail::matrix_from_json(*it, "basis_b", d);
        try {
            basis_b.emplace(b_m);
        } catch (const Error& e) {
            fail(Err::InvariantError, std::string("basis_b: ") + e.what());
        }
    }

    return Instance{d, std::move(rho), std::move(basis_a), std::move(basis_b), std::move(label)};
}

inline nlohmann::json instance_to_json(const Instance& inst) {
    nlohmann::json j;
    j["dim"] = inst.dim;
    j["label"] = inst.label;
    j["rho"] = detail::matrix_to_json(inst.rho.matrix());
    j["basis_a"] = detail::matrix_to_json(inst.basis_a.matrix());
    if (inst.basis_b) j["basis_b"] = detail::matrix_to_json(inst.basis_b->matrix());
    return j;
}

// Canonical serialization: two-space indentation, keys in sorted order,
// shortest round-trip decimals, trailing newline.  parse/emit round-trips of
// canonical documents are byte-identical.
inline std::string emit_instance(const Instance& inst) { return instance_to_json(inst).dump(2) + "\n"; }

inline Instance parse_instance_text(const std::string& text) {
    return instance_from_json(detail::parse_json_text(text));
}

inline Instance parse_instance(const std::string& path) {
    return parse_instance_text(detail::read_file(path));
}

inline void write_instance(const Instance& inst, const std::string& path) {
    detail::write_file(path, emit_instance(inst));
}

// Deterministic instance generator: the state rank, state, and bases are drawn
// from independent streams of the given seed, so any instance is reproducible
// from (dim, seed) alone.
inline Instance random_instance(std::size_t dim, std::uint64_t seed, bool with_b = true) {
    require(dim >= 1, Err::InvalidDimension, "instance dimension must be positive");
    Rng pick(derive_seed(seed, 0));
    const std::size_t rank = 1 + pick.index(dim);
    DensityOperator rho(random_density(dim, rank, derive_seed(seed, 1)));
    PvmBasis basis_a(haar_random_unitary(dim, derive_seed(seed, 2)));
    std::optional<PvmBasis> basis_b;
    if (with_b) basis_b.emplace(PvmBasis(haar_random_unitary(dim, derive_seed(seed, 3))));
    std::string label = "random-d" + std::to_string(dim) + "-s" + std::to_string(seed);
    return Instance{dim, std::move(rho), std::move(basis_a), std::move(basis_b), std::move(label)};
}

// --- suites ------------------------------------------------------------------

struct SuiteConfig {
    int instances = 100;
    std::size_t dim = 3;
    std::uint64_t seed = 1;
    double slack_tolerance = 1e-6;
    OptConfig opt{};
};

struct SuiteReport {
    std::string suite_name;
    int instances = 0;
    std::vector<BoundReport> checks;
    int failures = 0;
    std::uint64_t seed = 0;
    double wall_time_seconds = 0.0;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names = {
        "lemma1", "lemma2", "prop1",        "prop2", "prop3", "prop4",    "prop5",       "additive",
        "cor-ordering", "cor5a",  "cor5b", "cor6a", "cor6b", "johansen", "qubit-exact", "appendix-c"};
    return names;
}

namespace detail {

inline std::vector<double> random_spectrum(std::size_t d, Rng& rng) {
    std::vector<double> v(d);
    for (double& x : v) x = rng.uniform(-1.0, 1.0);
    return v;
}

inline BoundReport bound_row(std::string id, double lhs, double rhs, double tol, bool heuristic,
                             std::string witness = {}) {
    BoundReport r;
    r.inequality_id = std::move(id);
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = lhs - rhs;
    r.pass = r.slack >= -tol;
    r.trivially_satisfied = rhs <= 0.0;
    r.heuristic = heuristic;
    r.witness = std::move(witness);
    return r;
}

inline BoundReport equality_row(std::string id, double tolerance, double deviation,
                                bool heuristic = false, std::string witness = {}) {
    return bound_row(std::move(id), tolerance, deviation, 0.0, heuristic, std::move(witness));
}

inline std::string outcome_witness(const OptResult& r) {
    if (!r.witness_spectra) return {};
    return spectrum_summary("a-spectrum", r.witness_spectra->first.values) + "; " +
           spectrum_summary("b-spectrum", r.witness_spectra->second.values);
}

inline std::string pairing_witness(const PairingSup& p) {
    return spectrum_summary("a-spectrum", p.a_spec) + "; " +
           spectrum_summary("b-spectrum", p.b_spec);
}

}  // namespace detail

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg) {
    require(cfg.instances >= 0, Err::InvariantError, "instance count must be nonnegative");
    require(cfg.dim >= 1, Err::InvalidDimension, "suite dimension must be positive");
    if (std::find(suite_names().begin(), suite_names().end(), name) == suite_names().end()) {
        std::string msg = "no suite named '" + name + "'; valid names:";
        for (const std::string& s : suite_names()) msg += " " + s;
        fail(Err::UnknownSuite, msg);
    }

    const auto t0 = std::chrono::steady_clock::now();
    SuiteReport rep;
    rep.suite_name = name;
    rep.instances = cfg.instances;
    rep.seed = cfg.seed;

    const double tol = cfg.slack_tolerance;
    const bool qubit_suite = (name == "qubit-exact" || name == "appendix-c");
    const std::size_t d = qubit_suite ? 2 : cfg.dim;
    const bool searched = d > 2;  // flags rows whose values came out of a heuristic search
    const double pi = 3.14159265358979323846;

    for (int k = 0; k < cfg.instances; ++k) {
        const std::uint64_t iseed = derive_seed(cfg.seed, static_cast<std::uint64_t>(k));

        if (name == "lemma1" || name == "lemma2") {
            const Instance inst = random_instance(d, iseed, true);
            Rng sp(derive_seed(iseed, 101));
            const Observable oa(inst.basis_a, detail::random_spectrum(d, sp));
            const Observable ob(*inst.basis_b, detail::random_spectrum(d, sp));
            const KdDistribution kd = kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
            const std::string witness =
                detail::spectrum_summary("a-spectrum", oa.spectrum) + "; " +
                detail::spectrum_summary("b-spectrum", ob.spectrum);
            if (name == "lemma1") {
                rep.checks.push_back(detail::bound_row(
                    "lemma1", nre(kd).value, robertson_bound(oa, ob, inst.rho).value, tol, false,
                    witness));
            } else {
                rep.checks.push_back(detail::bound_row(
                    "lemma2", ncl(kd).value, rs_bound(oa, ob, inst.rho).value, tol, false,
                    witness));
            }
        } else if (name == "prop1") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult q = q_nre(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_robertson(inst.rho, inst.basis_a);
            rep.checks.push_back(detail::bound_row("prop1", q.value, s.value, tol, searched,
                                                   detail::outcome_witness(s)));
            rep.checks.push_back(detail::bound_row(
                "cor1", l1_coherence(inst.rho, inst.basis_a).value, s.value, tol, false));
        } else if (name == "prop2") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult q = q_nre(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_robertson(inst.rho, inst.basis_a);
            Rng sp(derive_seed(iseed, 101));
            const Observable oa(inst.basis_a, detail::random_spectrum(d, sp));
            rep.checks.push_back(detail::bound_row("prop2", q.value, s.value, tol, searched,
                                                   detail::outcome_witness(s)));
            rep.checks.push_back(detail::bound_row(
                "prop2-pointwise", q.value, trace_norm_asymmetry(oa, inst.rho, true).value, tol,
                searched, detail::spectrum_summary("a-spectrum", oa.spectrum)));
        } else if (name == "prop3" || name == "prop5" || name == "additive") {
            const Instance inst = random_instance(d, iseed, true);
            const TradeoffKind kind = name == "prop3"   ? TradeoffKind::nre_product
                                      : name == "prop5" ? TradeoffKind::ncl_product
                                                        : TradeoffKind::nre_additive;
            BoundReport main =
                tradeoff_bound(inst.rho, inst.basis_a, *inst.basis_b, cfg.opt, kind, tol);
            main.inequality_id = name;
            const double ca = l1_coherence(inst.rho, inst.basis_a).value;
            const double cb = l1_coherence(inst.rho, *inst.basis_b).value;
            double relaxed_lhs = 0.0;
            std::string relaxed_id;
            if (name == "prop3") {
                relaxed_lhs = ca * cb;
                relaxed_id = "cor3";
            } else if (name == "prop5") {
                relaxed_lhs = (ca + 1.0) * (cb + 1.0);
                relaxed_id = "cor5";
            } else {
                relaxed_lhs = ca + cb;
                relaxed_id = "additive-l1";
            }
            BoundReport relaxed =
                detail::bound_row(std::move(relaxed_id), relaxed_lhs, main.rhs, tol, false,
                                  main.witness);
            rep.checks.push_back(std::move(main));
            rep.checks.push_back(std::move(relaxed));
        } else if (name == "prop4") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult q = q_ncl(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_rs(inst.rho, inst.basis_a, cfg.opt);
            rep.checks.push_back(detail::bound_row("prop4", q.value, s.value, tol, searched,
                                                   detail::outcome_witness(s)));
            rep.checks.push_back(detail::bound_row(
                "cor4", l1_coherence(inst.rho, inst.basis_a).value, s.value, tol, searched));
        } else if (name == "cor-ordering") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult q = q_nre(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_robertson(inst.rho, inst.basis_a);
            rep.checks.push_back(detail::bound_row(
                "cor-ordering-upper", l1_coherence(inst.rho, inst.basis_a).value, q.value, tol,
                searched));
            rep.checks.push_back(detail::bound_row("cor-ordering-lower", q.value, s.value, tol,
                                                   searched, detail::outcome_witness(s)));
        } else if (name == "cor5a") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult e = epsilon(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_robertson(inst.rho, inst.basis_a);
            Rng sp(derive_seed(iseed, 101));
            const Observable oa(inst.basis_a, detail::random_spectrum(d, sp));
            rep.checks.push_back(detail::bound_row("cor5a", e.value, s.value, tol, searched,
                                                   detail::outcome_witness(s)));
            rep.checks.push_back(detail::bound_row(
                "cor5a-pointwise", e.value, trace_norm_asymmetry(oa, inst.rho, true).value, tol,
                searched, detail::spectrum_summary("a-spectrum", oa.spectrum)));
        } else if (name == "cor5b") {
            const Instance inst = random_instance(d, iseed, true);
            const double ea = epsilon(inst.rho, inst.basis_a, cfg.opt).value;
            const double eb = epsilon(inst.rho, *inst.basis_b, cfg.opt).value;
            const KdDistribution kd = kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
            const detail::PairingSup p = detail::sup_im_pairing(kd);
            rep.checks.push_back(detail::bound_row("cor5b", ea * eb, p.value * p.value, tol,
                                                   searched, detail::pairing_witness(p)));
        } else if (name == "cor6a") {
            const Instance inst = random_instance(d, iseed, false);
            const OptResult dl = delta(inst.rho, inst.basis_a, cfg.opt);
            const OptResult s = sup_rs(inst.rho, inst.basis_a, cfg.opt);
            const OptResult q = q_ncl(inst.rho, inst.basis_a, cfg.opt);
            rep.checks.push_back(detail::bound_row("cor6a", dl.value, s.value, tol, searched,
                                                   detail::outcome_witness(s)));
            rep.checks.push_back(
                detail::bound_row("cor6a-ncl", dl.value, q.value, tol, searched));
        } else if (name == "cor6b") {
            const Instance inst = random_instance(d, iseed, true);
            const double da = delta(inst.rho, inst.basis_a, cfg.opt).value;
            const double db = delta(inst.rho, *inst.basis_b, cfg.opt).value;
            const KdDistribution kd = kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
            const detail::PairingSup p =
                detail::sup_full_pairing(kd, detail::born_weights(inst.rho, inst.basis_a),
                                         detail::born_weights(inst.rho, *inst.basis_b));
            rep.checks.push_back(detail::bound_row("cor6b", (da + 1.0) * (db + 1.0),
                                                   p.value * p.value, tol, searched,
                                                   detail::pairing_witness(p)));
        } else if (name == "johansen") {
            const Instance inst = random_instance(d, iseed, true);
            const KdDistribution kd = kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
            const JohansenTerms jt = johansen_decomposition(inst.rho, inst.basis_a, *inst.basis_b);
            double err = 0.0;
            double imag_total = 0.0;
            for (std::size_t a = 0; a < d; ++a)
                for (std::size_t b = 0; b < d; ++b) {
                    const cplx rebuilt{jt.classical_at(a, b) + jt.real_at(a, b), jt.imag_at(a, b)};
                    err = std::max(err, std::abs(kd.at(a, b) - rebuilt));
                    imag_total += std::abs(jt.imag_at(a, b));
                }
            rep.checks.push_back(detail::equality_row("johansen", 1e-10, err));
            const double bound =
                0.5 * disturbance_term(inst.rho, inst.basis_a, *inst.basis_b).value + imag_total;
            rep.checks.push_back(
                detail::bound_row("johansen-ncl", bound, ncl(kd).value, 1e-10, false));
        } else if (name == "qubit-exact") {
            const Instance inst = random_instance(2, iseed, false);
            const OptResult q = q_nre(inst.rho, inst.basis_a, cfg.opt);
            const QubitAnalytic qa = qubit_analytic(inst.rho, inst.basis_a);
            rep.checks.push_back(
                detail::equality_row("qubit-exact", 1e-5, std::abs(q.value - qa.q_nre)));
            // The analytic partner basis must be mutually unbiased with the
            // measured basis: every overlap magnitude squared equals 1/2.
            double dev = 0.0;
            for (std::size_t i = 0; i < 2; ++i)
                for (std::size_t j = 0; j < 2; ++j) {
                    cplx ov{0.0, 0.0};
                    for (std::size_t r = 0; r < 2; ++r)
                        ov += std::conj(inst.basis_a.component(r, i)) *
                              qa.optimal_b.component(r, j);
                    dev = std::max(dev, std::abs(std::norm(ov) - 0.5));
                }
            rep.checks.push_back(detail::equality_row("qubit-exact-witness", 1e-6, dev));
            const OptResult s = sup_robertson(inst.rho, inst.basis_a);
            rep.checks.push_back(
                detail::equality_row("qubit-exact-robertson", 1e-5, std::abs(s.value - qa.q_nre)));
        } else if (name == "appendix-c") {
            Rng draw(derive_seed(iseed, 11));
            const double alpha = draw.uniform(0.0, pi);
            const double phi_z = draw.uniform(0.0, pi);
            const double beta = draw.uniform(0.0, 2.0 * pi);
            const double r = 0.8;
            const double rz = r * std::cos(phi_z);
            const double rx = r * std::sin(phi_z);
            ComplexMatrix m(2, 2);
            m(0, 0) = 0.5 * (1.0 + rz);
            m(1, 1) = 0.5 * (1.0 - rz);
            m(0, 1) = 0.5 * rx;
            m(1, 0) = 0.5 * rx;
            const DensityOperator rho(std::move(m));
            const PvmBasis za = PvmBasis::computational(2);
            const PvmBasis bb = decode_pvm(PvmParams{{alpha, beta, 0.0}}, 2);
            const KdDistribution kd = kd_distribution(rho, za, bb);
            const double big_r = 2.0 * detail::sup_im_pairing(kd).value;
            const double formula =
                2.0 * r * std::sin(phi_z) * std::sin(alpha) * std::abs(std::sin(beta));
            rep.checks.push_back(
                detail::equality_row("appendix-c", 1e-6, std::abs(big_r - formula)));
            if (k == 0) {
                // Fixed tight point: the x-polarized pure state against the
                // computational and circular bases saturates the additive
                // trade-off with both sides equal to 2.
                ComplexMatrix pm(2, 2);
                pm(0, 0) = 0.5;
                pm(0, 1) = 0.5;
                pm(1, 0) = 0.5;
                pm(1, 1) = 0.5;
                const double isq2 = 1.0 / std::sqrt(2.0);
                ComplexMatrix ym(2, 2);
                ym(0, 0) = isq2;
                ym(1, 0) = cplx{0.0, isq2};
                ym(0, 1) = isq2;
                ym(1, 1) = cplx{0.0, -isq2};
                const BoundReport mub =
                    tradeoff_bound(DensityOperator(std::move(pm)), PvmBasis::computational(2),
                                   PvmBasis(std::move(ym)), cfg.opt, TradeoffKind::nre_additive,
                                   tol);
                const double mdev = std::max(std::abs(mub.lhs - 2.0), std::abs(mub.rhs - 2.0));
                rep.checks.push_back(detail::equality_row("appendix-c-mub", 1e-6, mdev));
            }
        }
    }

    for (const BoundReport& c : rep.checks)
        if (!c.pass) ++rep.failures;
    rep.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

// --- reports -----------------------------------------------------------------

enum class ReportFormat { json, csv, text };

inline ReportFormat parse_report_format(const std::string& s) {
    if (s == "json") return ReportFormat::json;
    if (s == "csv") return ReportFormat::csv;
    if (s == "text") return ReportFormat::text;
    fail(Err::SchemaError, "unknown report format '" + s + "' (expected json, csv, or text)");
}

inline nlohmann::json check_to_json(const BoundReport& c) {
    nlohmann::json j;
    j["inequality_id"] = c.inequality_id;
    j["lhs"] = c.lhs;
    j["rhs"] = c.rhs;
    j["slack"] = c.slack;
    j["pass"] = c.pass;
    j["trivially_satisfied"] = c.trivially_satisfied;
    j["heuristic"] = c.heuristic;
    j["witness"] = c.witness;
    return j;
}

inline BoundReport check_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(Err::SchemaError, "check entry must be a JSON object");
    BoundReport c;
    c.inequality_id = detail::json_string(j, "inequality_id");
    c.lhs = detail::json_number(j, "lhs");
    c.rhs = detail::json_number(j, "rhs");
    c.slack = detail::json_number(j, "slack");
    c.pass = detail::json_bool(j, "pass");
    c.trivially_satisfied = detail::json_bool(j, "trivially_satisfied");
    c.heuristic = detail::json_bool(j, "heuristic");
    c.witness = detail::json_string(j, "witness");
    return c;
}

inline nlohmann::json report_to_json(const SuiteReport& r) {
    nlohmann::json j;
    j["suite_name"] = r.suite_name;
    j["instances"] = r.instances;
    j["failures"] = r.failures;
    j["seed"] = r.seed;
    j["wall_time_seconds"] = r.wall_time_seconds;
    nlohmann::json checks = nlohmann::json::array();
    for (const BoundReport& c : r.checks) checks.push_back(check_to_json(c));
    j["checks"] = std::move(checks);
    return j;
}

inline SuiteReport report_from_json(const nlohmann::json& j) {
    if (!j.is_object()) fail(Err::SchemaError, "report document must be a JSON object");
    SuiteReport r;
    r.suite_name = detail::json_string(j, "suite_name");
    const std::int64_t instances = detail::json_integer(j, "instances");
    if (instances < 0) fail(Err::SchemaError, "field 'instances' must be nonnegative");
    r.instances = static_cast<int>(instances);
    const std::int64_t failures = detail::json_integer(j, "failures");
    if (failures < 0) fail(Err::SchemaError, "field 'failures' must be nonnegative");
    r.failures = static_cast<int>(failures);
    const std::int64_t seed = detail::json_integer(j, "seed");
    r.seed = static_cast<std::uint64_t>(seed);
    r.wall_time_seconds = detail::json_number(j, "wall_time_seconds");
    const nlohmann::json& checks = detail::json_field(j, "checks");
    if (!checks.is_array()) fail(Err::SchemaError, "field 'checks' must be an array");
    for (const nlohmann::json& c : checks) r.checks.push_back(check_from_json(c));
    return r;
}

inline SuiteReport parse_report_text_json(const std::string& text) {
    return report_from_json(detail::parse_json_text(text));
}

inline SuiteReport parse_report(const std::string& path) {
    return parse_report_text_json(detail::read_file(path));
}

inline std::string format_report_csv(const SuiteReport& r) {
    std::string out = "inequality_id,lhs,rhs,slack,pass,heuristic\n";
    for (const BoundReport& c : r.checks) {
        out += c.inequality_id + "," + fmt_double(c.lhs) + "," + fmt_double(c.rhs) + "," +
               fmt_double(c.slack) + "," + (c.pass ? "true" : "false") + "," +
               (c.heuristic ? "true" : "false") + "\n";
    }
    return out;
}

inline std::string format_report_text(const SuiteReport& r) {
    std::ostringstream os;
    os << "suite " << r.suite_name << ": " << r.instances << " instances, " << r.checks.size()
       << " checks, " << r.failures << " failures, seed " << r.seed << ", wall time "
       << fmt_double(r.wall_time_seconds) << " s\n";

    struct Agg {
        int count = 0;
        int failures = 0;
        double min_slack = std::numeric_limits<double>::infinity();
    };
    std::vector<std::string> order;
    std::map<std::string, Agg> agg;
    for (const BoundReport& c : r.checks) {
        auto [it, inserted] = agg.try_emplace(c.inequality_id);
        if (inserted) order.push_back(c.inequality_id);
        ++it->second.count;
        if (!c.pass) ++it->second.failures;
        it->second.min_slack = std::min(it->second.min_slack, c.slack);
    }
    for (const std::string& id : order) {
        const Agg& a = agg.at(id);
        os << "  " << id << ": " << a.count << " checks, min slack " << fmt_double(a.min_slack)
           << ", " << a.failures << " failures\n";
    }
    if (r.failures > 0) {
        os << "failing checks:\n";
        for (const BoundReport& c : r.checks) {
            if (c.pass) continue;
            os << "  " << c.inequality_id << " lhs=" << fmt_double(c.lhs)
               << " rhs=" << fmt_double(c.rhs) << " slack=" << fmt_double(c.slack)
               << (c.heuristic ? " heuristic" : "") << "\n";
        }
    }
    return os.str();
}

inline std::string format_report(const SuiteReport& r, ReportFormat format) {
    switch (format) {
        case ReportFormat::json: return report_to_json(r).dump(2) + "\n";
        case ReportFormat::csv: return format_report_csv(r);
        case ReportFormat::text: return format_report_text(r);
    }
    fail(Err::Internal, "unhandled report format");
}

inline void emit_report(const SuiteReport& r, ReportFormat format, const std::string& path) {
    detail::write_file(path, format_report(r, format));
}

}  // namespace kdq
