// Pipeline demo in dimension three: generate a reproducible random instance,
// serialize it, decompose its quasiprobability table, evaluate every
// lower bound through one verification suite, and render the report.
//
// Build:  cmake --build build --target demo_suite_pipeline
// Run:    ./build/demo_suite_pipeline

#include <cstdio>

#include "kdq/harness.hpp"

int main() {
    // A deterministic instance: dimension 3, seed 2024, with a partner basis.
    const kdq::Instance inst = kdq::random_instance(3, 2024, true);
    std::printf("instance %s serializes to %zu bytes of canonical JSON\n",
                inst.label.c_str(), kdq::emit_instance(inst).size());

    // Every quasiprobability table splits into a classical joint part plus a
    // real and an imaginary modification, and rebuilds from them exactly.
    const kdq::KdDistribution kd = kdq::kd_distribution(inst.rho, inst.basis_a, *inst.basis_b);
    const kdq::JohansenTerms jt =
        kdq::johansen_decomposition(inst.rho, inst.basis_a, *inst.basis_b);
    double rebuild_err = 0.0;
    double classical_total = 0.0;
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b) {
            const kdq::cplx rebuilt{jt.classical_at(a, b) + jt.real_at(a, b), jt.imag_at(a, b)};
            rebuild_err = std::max(rebuild_err, std::abs(kd.at(a, b) - rebuilt));
            classical_total += jt.classical_at(a, b);
        }
    std::printf("decomposition: classical mass %s, reconstruction error %s\n",
                kdq::fmt_double(classical_total).c_str(), kdq::fmt_double(rebuild_err).c_str());

    // Fixed-basis measures and their basis-optimized counterparts.
    std::printf("nonreality %s (optimized %s), nonclassicality %s (optimized %s)\n",
                kdq::fmt_double(kdq::nre(kd).value).c_str(),
                kdq::fmt_double(kdq::q_nre(inst.rho, inst.basis_a).value).c_str(),
                kdq::fmt_double(kdq::ncl(kd).value).c_str(),
                kdq::fmt_double(kdq::q_ncl(inst.rho, inst.basis_a).value).c_str());

    // One suite end to end: 25 seeded instances of the ordering chain, then
    // the report in its three output formats.
    kdq::SuiteConfig cfg;
    cfg.instances = 25;
    cfg.dim = 3;
    cfg.seed = 5;
    const kdq::SuiteReport report = kdq::run_suite("cor-ordering", cfg);
    std::printf("\n%s", kdq::format_report(report, kdq::ReportFormat::text).c_str());
    std::printf("\nfirst CSV rows:\n");
    const std::string csv = kdq::format_report(report, kdq::ReportFormat::csv);
    std::size_t shown = 0, pos = 0;
    while (shown < 4 && pos < csv.size()) {
        const std::size_t nl = csv.find('\n', pos);
        std::printf("  %s\n", csv.substr(pos, nl - pos).c_str());
        pos = nl + 1;
        ++shown;
    }
    return report.failures == 0 ? 0 : 1;
}
