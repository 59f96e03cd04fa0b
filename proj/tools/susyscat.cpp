// susyscat: tables and verification for the complex SUSY partner of the
// 2 a1^2 / sinh^2(a1 x) potential and the Hermitian counterpart's resonance.

#include <cstdio>
#include <exception>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "susyscat/susyscat.hpp"

namespace {

enum ExitCode : int {
    exit_ok = 0,
    exit_bad_parameters = 2,
    exit_verification_failed = 3,
    exit_numerical = 4,
    exit_io = 5,
};

int exit_code_for(const susyscat::Error& e) {
    switch (e.category()) {
        case susyscat::ErrorCategory::parameter: return exit_bad_parameters;
        case susyscat::ErrorCategory::numerical: return exit_numerical;
        case susyscat::ErrorCategory::io: return exit_io;
    }
    return exit_numerical;
}

struct Flags {
    std::optional<double> a1, b, k_min, k_max, x_max;
    std::vector<double> d;
    std::optional<std::size_t> n_k, n_x;
    std::optional<std::string> config, format, out;
};

susyscat::RunConfig resolve(const Flags& f) {
    susyscat::RunConfig cfg;
    if (f.config) cfg = susyscat::load_config_file(*f.config, cfg);
    if (f.a1) cfg.a1 = *f.a1;
    if (f.b) cfg.b = *f.b;
    if (!f.d.empty()) {
        cfg.d = f.d.front();
        cfg.d_list = f.d;
    }
    if (f.k_min) cfg.k_min = *f.k_min;
    if (f.k_max) cfg.k_max = *f.k_max;
    if (f.n_k) cfg.n_k = *f.n_k;
    if (f.x_max) cfg.x_max = *f.x_max;
    if (f.n_x) cfg.n_x = *f.n_x;
    if (f.format) cfg.format = susyscat::parse_format(*f.format);
    if (f.out) cfg.output_path = *f.out;
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Scattering off the complex SUSY partner of a singular potential and its Hermitian counterpart"};
    app.require_subcommand(1);

    Flags flags;
    app.add_option("--a1", flags.a1, "stiffness of the background potential (> 0)");
    app.add_option("--b", flags.b, "Im a, the would-be singular wavenumber (!= 0)");
    app.add_option("--d", flags.d, "Re a (< 0); repeatable for phases, sweep and fit")->take_all();
    app.add_option("--k-min", flags.k_min, "smallest momentum (> 0)");
    app.add_option("--k-max", flags.k_max, "largest momentum");
    app.add_option("--n-k", flags.n_k, "number of momentum samples");
    app.add_option("--x-max", flags.x_max, "outer radius of x-space tables (default 25/a1)");
    app.add_option("--n-x", flags.n_x, "number of x samples (also sets the integration step)");
    app.add_option("--config", flags.config, "JSON config file; command-line flags take precedence");
    app.add_option("--format", flags.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", flags.out, "output file (default: standard output)");

    auto* curves = app.add_subcommand("curves", "cross sections sigma0, sigma_e, sigma_r, sigma_t, sigma_h, sigmaR, sigmaBW");
    auto* phases = app.add_subcommand("phases", "unwrapped phase shifts delta0, deltaR, deltaBW, delta_h");
    auto* potential = app.add_subcommand("potential", "v0, V and w on the x-grid");
    auto* verify = app.add_subcommand("verify", "run the oracle suite; JSON report, exit 3 on failure");
    auto* sweep = app.add_subcommand("sweep", "sigma_h peak statistics for each --d");
    auto* fit = app.add_subcommand("fit", "Breit-Wigner read-off of sigma_h, sigmaR, sigmaBW");
    for (auto* sub : {curves, phases, potential, verify, sweep, fit}) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? exit_ok : exit_bad_parameters;
    }

    try {
        const susyscat::RunConfig cfg = resolve(flags);
        if (*verify) {
            const susyscat::VerificationReport report = susyscat::cmd_verify(cfg);
            susyscat::write_output(susyscat::to_json(report).dump(2) + "\n", cfg.output_path);
            return report.all_passed() ? exit_ok : exit_verification_failed;
        }

        susyscat::Table table;
        if (*curves) {
            table = susyscat::cmd_curves(cfg);
        } else if (*phases) {
            table = susyscat::cmd_phases(cfg);
        } else if (*potential) {
            table = susyscat::cmd_potential(cfg);
            std::fprintf(stderr, "trapezoid integral of Im V over [0, x_max]: %.17g\n",
                         susyscat::integrate_im_V(table));
        } else if (*sweep) {
            table = susyscat::cmd_sweep(cfg);
        } else if (*fit) {
            table = susyscat::cmd_fit(cfg);
        }
        susyscat::write_output(susyscat::render(table, cfg.format), cfg.output_path);
        return exit_ok;
    } catch (const susyscat::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return exit_numerical;
    }
}
