// Command-line driver: compute KD tables and measures for stored instances,
// run basis/spectrum optimizations, verify inequality suites, scan qubit
// partner-basis grids, and generate random instances.
//
// Exit codes: 0 success, 1 verification failures present, 2 usage or
// schema/invariant errors.

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kdq/harness.hpp"

namespace {

constexpr double pi = 3.14159265358979323846;

// KDQ_SEED overrides the default seed of seeded subcommands when no --seed
// flag is given; the chosen value is always echoed in the output.
std::optional<std::uint64_t> env_seed() {
    const char* s = std::getenv("KDQ_SEED");
    if (s == nullptr || *s == '\0') return std::nullopt;
    errno = 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (errno != 0 || end == s || *end != '\0')
        kdq::fail(kdq::Err::SchemaError, "invalid KDQ_SEED value '" + std::string(s) + "'");
    return static_cast<std::uint64_t>(v);
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    kdq::detail::write_file(out_path, text);
}

struct TableRow {
    std::size_t a = 0;
    std::size_t b = 0;
    double re = 0.0;
    double im = 0.0;
};

int run_compute(const std::string& in, const std::string& format, const std::string& out) {
    const kdq::Instance inst = kdq::parse_instance(in);
    kdq::require(inst.basis_b.has_value(), kdq::Err::InvariantError,
                 "instance has no partner basis 'basis_b'");
    const kdq::KdDistribution kd = kdq::kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
    const std::size_t d = inst.dim;

    const double v_nre = kdq::nre(kd).value;
    const double v_ncl = kdq::ncl(kd).value;
    const double ca = kdq::l1_coherence(inst.rho, inst.basis_a).value;
    const double cb = kdq::l1_coherence(inst.rho, *inst.basis_b).value;
    const double v_mse = kdq::mse_sq_term(inst.rho, inst.basis_a, *inst.basis_b).value;
    const double v_dist = kdq::disturbance_term(inst.rho, inst.basis_a, *inst.basis_b).value;

    const kdq::ReportFormat f = kdq::parse_report_format(format);
    std::string text;
    if (f == kdq::ReportFormat::csv) {
        text = "a,b,re,im,abs,im_abs\n";
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const kdq::cplx z = kd.at(a, b);
                text += std::to_string(a) + "," + std::to_string(b) + "," +
                        kdq::fmt_double(z.real()) + "," + kdq::fmt_double(z.imag()) + "," +
                        kdq::fmt_double(std::abs(z)) + "," +
                        kdq::fmt_double(std::abs(z.imag())) + "\n";
            }
    } else if (f == kdq::ReportFormat::json) {
        nlohmann::json j;
        j["dim"] = d;
        j["label"] = inst.label;
        nlohmann::json measures;
        measures["nre"] = v_nre;
        measures["ncl"] = v_ncl;
        measures["l1_coherence_a"] = ca;
        measures["l1_coherence_b"] = cb;
        measures["mse_sq"] = v_mse;
        measures["disturbance"] = v_dist;
        j["measures"] = std::move(measures);
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b) {
                const kdq::cplx z = kd.at(a, b);
                nlohmann::json row;
                row["a"] = a;
                row["b"] = b;
                row["re"] = z.real();
                row["im"] = z.imag();
                row["abs"] = std::abs(z);
                row["im_abs"] = std::abs(z.imag());
                rows.push_back(std::move(row));
            }
        j["table"] = std::move(rows);
        text = j.dump(2) + "\n";
    } else {
        std::string label = inst.label.empty() ? std::string("(unlabeled)") : inst.label;
        text = "instance " + label + " (dim " + std::to_string(d) + ")\n";
        text += "nre = " + kdq::fmt_double(v_nre) + "\n";
        text += "ncl = " + kdq::fmt_double(v_ncl) + "\n";
        text += "l1_coherence_a = " + kdq::fmt_double(ca) + "\n";
        text += "l1_coherence_b = " + kdq::fmt_double(cb) + "\n";
        text += "mse_sq = " + kdq::fmt_double(v_mse) + "\n";
        text += "disturbance = " + kdq::fmt_double(v_dist) + "\n";
        double max_im = 0.0;
        for (std::size_t a = 0; a < d; ++a)
            for (std::size_t b = 0; b < d; ++b)
                max_im = std::max(max_im, std::abs(kd.at(a, b).imag()));
        text += "table entries = " + std::to_string(d * d) +
                ", max |Im| = " + kdq::fmt_double(max_im) + "\n";
    }
    write_output(text, out);
    return 0;
}

int run_optimize(const std::string& in, const kdq::OptConfig& cfg, const std::string& format,
                 const std::string& out) {
    const kdq::Instance inst = kdq::parse_instance(in);

    struct Named {
        const char* name;
        kdq::OptResult result;
    };
    std::vector<Named> results;
    results.push_back({"q_nre", kdq::q_nre(inst.rho, inst.basis_a, cfg)});
    results.push_back({"q_ncl", kdq::q_ncl(inst.rho, inst.basis_a, cfg)});
    results.push_back({"epsilon", kdq::epsilon(inst.rho, inst.basis_a, cfg)});
    results.push_back({"delta", kdq::delta(inst.rho, inst.basis_a, cfg)});
    results.push_back({"sup_robertson", kdq::sup_robertson(inst.rho, inst.basis_a, cfg)});
    results.push_back({"sup_rs", kdq::sup_rs(inst.rho, inst.basis_a, cfg)});

    const kdq::ReportFormat f = kdq::parse_report_format(format);
    std::string text;
    if (f == kdq::ReportFormat::csv) {
        text = "measure,value,converged,restarts_used,evaluations\n";
        for (const Named& n : results)
            text += std::string(n.name) + "," + kdq::fmt_double(n.result.value) + "," +
                    (n.result.converged ? "true" : "false") + "," +
                    std::to_string(n.result.restarts_used) + "," +
                    std::to_string(n.result.evaluations) + "\n";
    } else if (f == kdq::ReportFormat::json) {
        nlohmann::json j;
        j["label"] = inst.label;
        j["dim"] = inst.dim;
        j["seed"] = cfg.seed;
        j["restarts"] = cfg.restarts;
        j["tolerance"] = cfg.tolerance;
        nlohmann::json rs;
        for (const Named& n : results) {
            nlohmann::json e;
            e["value"] = n.result.value;
            e["converged"] = n.result.converged;
            e["restarts_used"] = n.result.restarts_used;
            e["evaluations"] = n.result.evaluations;
            rs[n.name] = std::move(e);
        }
        j["results"] = std::move(rs);
        text = j.dump(2) + "\n";
    } else {
        std::string label = inst.label.empty() ? std::string("(unlabeled)") : inst.label;
        text = "instance " + label + " (dim " + std::to_string(inst.dim) + "), seed " +
               std::to_string(cfg.seed) + "\n";
        for (const Named& n : results)
            text += std::string(n.name) + " = " + kdq::fmt_double(n.result.value) + " (" +
                    (n.result.converged ? "converged" : "not converged") + ", " +
                    std::to_string(n.result.restarts_used) + " restarts, " +
                    std::to_string(n.result.evaluations) + " evaluations)\n";
    }
    write_output(text, out);
    return 0;
}

int run_verify(const std::string& suite, const kdq::SuiteConfig& cfg, const std::string& format,
               const std::string& out) {
    const kdq::SuiteReport report = kdq::run_suite(suite, cfg);
    const kdq::ReportFormat f = kdq::parse_report_format(format);
    const std::string text = kdq::format_report(report, f);
    if (out.empty()) {
        std::fputs(text.c_str(), stdout);
    } else {
        kdq::detail::write_file(out, text);
        std::printf("suite %s: %zu checks, %d failures (report written to %s)\n",
                    report.suite_name.c_str(), report.checks.size(), report.failures,
                    out.c_str());
    }
    return report.failures > 0 ? 1 : 0;
}

int run_scan(const std::string& in, int grid, const std::string& format, const std::string& out) {
    const kdq::Instance inst = kdq::parse_instance(in);
    kdq::require(inst.dim == 2, kdq::Err::NotQubit, "scan requires a qubit instance");

    struct Row {
        double alpha, beta, nre, ncl, mse, dist;
    };
    struct Peak {
        double value = -1.0;
        double alpha = 0.0;
        double beta = 0.0;
        void feed(double v, double a, double b) {
            if (v > value) {
                value = v;
                alpha = a;
                beta = b;
            }
        }
    };
    std::vector<Row> rows;
    rows.reserve(static_cast<std::size_t>(grid) * static_cast<std::size_t>(grid));
    Peak p_nre, p_ncl, p_mse, p_dist;
    for (int i = 0; i < grid; ++i) {
        const double alpha = pi * static_cast<double>(i) / static_cast<double>(grid - 1);
        for (int j = 0; j < grid; ++j) {
            const double beta = 2.0 * pi * static_cast<double>(j) / static_cast<double>(grid);
            const kdq::PvmBasis b = kdq::decode_pvm(kdq::PvmParams{{alpha, beta, 0.0}}, 2);
            const kdq::KdDistribution kd = kdq::kd_distribution(inst.rho, inst.basis_a, b);
            Row r{alpha,
                  beta,
                  kdq::nre(kd).value,
                  kdq::ncl(kd).value,
                  kdq::mse_sq_term(inst.rho, inst.basis_a, b).value,
                  kdq::disturbance_term(inst.rho, inst.basis_a, b).value};
            p_nre.feed(r.nre, alpha, beta);
            p_ncl.feed(r.ncl, alpha, beta);
            p_mse.feed(r.mse, alpha, beta);
            p_dist.feed(r.dist, alpha, beta);
            rows.push_back(r);
        }
    }

    const kdq::ReportFormat f = kdq::parse_report_format(format);
    std::string text;
    if (f == kdq::ReportFormat::csv) {
        text = "alpha,beta,nre,ncl,mse_sq,disturbance\n";
        for (const Row& r : rows)
            text += kdq::fmt_double(r.alpha) + "," + kdq::fmt_double(r.beta) + "," +
                    kdq::fmt_double(r.nre) + "," + kdq::fmt_double(r.ncl) + "," +
                    kdq::fmt_double(r.mse) + "," + kdq::fmt_double(r.dist) + "\n";
    } else if (f == kdq::ReportFormat::json) {
        nlohmann::json j;
        j["label"] = inst.label;
        j["grid"] = grid;
        j["columns"] =
            nlohmann::json::array({"alpha", "beta", "nre", "ncl", "mse_sq", "disturbance"});
        nlohmann::json data = nlohmann::json::array();
        for (const Row& r : rows)
            data.push_back(nlohmann::json::array({r.alpha, r.beta, r.nre, r.ncl, r.mse, r.dist}));
        j["rows"] = std::move(data);
        text = j.dump(2) + "\n";
    } else {
        auto line = [](const char* name, const Peak& p) {
            return std::string(name) + " max = " + kdq::fmt_double(p.value) +
                   " at alpha = " + kdq::fmt_double(p.alpha) +
                   ", beta = " + kdq::fmt_double(p.beta) + "\n";
        };
        std::string label = inst.label.empty() ? std::string("(unlabeled)") : inst.label;
        text = "scan " + std::to_string(grid) + "x" + std::to_string(grid) +
               " over partner bases of " + label + "\n";
        text += line("nre", p_nre);
        text += line("ncl", p_ncl);
        text += line("mse_sq", p_mse);
        text += line("disturbance", p_dist);
    }
    write_output(text, out);
    return 0;
}

int run_random(std::size_t dim, std::uint64_t seed, bool single_basis, const std::string& out) {
    const kdq::Instance inst = kdq::random_instance(dim, seed, !single_basis);
    write_output(kdq::emit_instance(inst), out);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kirkwood-Dirac quasiprobability toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", "kdq 1.0.0");

    std::string suite_list;
    for (const std::string& s : kdq::suite_names()) suite_list += (suite_list.empty() ? "" : ", ") + s;

    // compute
    auto* compute = app.add_subcommand(
        "compute", "Evaluate the quasiprobability table and fixed-basis measures of an instance");
    std::string compute_in, compute_format = "text", compute_out;
    compute->add_option("input", compute_in, "instance file (JSON)")->required();
    compute->add_option("--format", compute_format, "output format: json, csv (the table), text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    compute->add_option("--out", compute_out, "write output to this path instead of stdout");

    // optimize
    auto* optimize = app.add_subcommand(
        "optimize", "Maximize each measure over partner bases and observable spectra");
    std::string optimize_in, optimize_format = "text", optimize_out;
    kdq::OptConfig opt_cfg;
    auto* optimize_seed =
        optimize->add_option("--seed", opt_cfg.seed, "search seed (default 0; KDQ_SEED overrides)");
    optimize->add_option("--restarts", opt_cfg.restarts, "simplex restarts (default 32)")
        ->check(CLI::Range(1, 100000));
    optimize->add_option("--tol", opt_cfg.tolerance, "simplex convergence tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    optimize->add_option("input", optimize_in, "instance file (JSON)")->required();
    optimize->add_option("--format", optimize_format, "output format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    optimize->add_option("--out", optimize_out, "write output to this path instead of stdout");

    // verify
    auto* verify =
        app.add_subcommand("verify", "Run a named inequality suite on seeded random instances");
    std::string verify_suite, verify_format = "text", verify_out;
    kdq::SuiteConfig suite_cfg;
    verify->add_option("suite", verify_suite, "suite name; one of: " + suite_list)->required();
    verify->add_option("--instances", suite_cfg.instances, "number of instances (default 100)")
        ->check(CLI::Range(0, 1000000));
    verify->add_option("--dim", suite_cfg.dim, "Hilbert-space dimension (default 3)")
        ->check(CLI::Range(1, 12));
    auto* verify_seed = verify->add_option("--seed", suite_cfg.seed,
                                           "master seed (default 1; KDQ_SEED overrides)");
    verify->add_option("--restarts", suite_cfg.opt.restarts, "simplex restarts (default 32)")
        ->check(CLI::Range(1, 100000));
    verify->add_option("--tol", suite_cfg.slack_tolerance,
                       "slack tolerance for pass/fail (default 1e-6)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--opt-tol", suite_cfg.opt.tolerance,
                       "simplex convergence tolerance (default 1e-9)")
        ->check(CLI::PositiveNumber);
    verify->add_option("--format", verify_format, "report format: json, csv, text")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    verify->add_option("--out", verify_out, "write the report to this path instead of stdout");

    // scan
    auto* scan = app.add_subcommand(
        "scan", "Tabulate the fixed-basis measures of a qubit instance over a partner-basis grid");
    std::string scan_in, scan_format = "csv", scan_out;
    int scan_grid = 50;
    scan->add_option("input", scan_in, "qubit instance file (JSON)")->required();
    scan->add_option("--grid", scan_grid, "grid points per angle (default 50)")
        ->check(CLI::Range(2, 2000));
    scan->add_option("--format", scan_format, "output format: csv, json, text (grid maxima)")
        ->check(CLI::IsMember({"json", "csv", "text"}));
    scan->add_option("--out", scan_out, "write output to this path instead of stdout");

    // random
    auto* random = app.add_subcommand("random", "Generate a canonical random instance");
    std::size_t random_dim = 3;
    std::uint64_t random_seed = 1;
    bool random_single = false;
    std::string random_out;
    random->add_option("--dim", random_dim, "Hilbert-space dimension (default 3)")
        ->check(CLI::Range(1, 64));
    auto* random_seed_opt =
        random->add_option("--seed", random_seed, "instance seed (default 1; KDQ_SEED overrides)");
    random->add_flag("--single-basis", random_single, "omit the partner basis");
    random->add_option("--out", random_out, "write the instance to this path instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*compute) return run_compute(compute_in, compute_format, compute_out);
        if (*optimize) {
            if (optimize_seed->count() == 0)
                if (const auto s = env_seed()) opt_cfg.seed = *s;
            return run_optimize(optimize_in, opt_cfg, optimize_format, optimize_out);
        }
        if (*verify) {
            if (verify_seed->count() == 0)
                if (const auto s = env_seed()) suite_cfg.seed = *s;
            return run_verify(verify_suite, suite_cfg, verify_format, verify_out);
        }
        if (*scan) return run_scan(scan_in, scan_grid, scan_format, scan_out);
        if (*random) {
            if (random_seed_opt->count() == 0)
                if (const auto s = env_seed()) random_seed = *s;
            return run_random(random_dim, random_seed, random_single, random_out);
        }
    } catch (const kdq::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
