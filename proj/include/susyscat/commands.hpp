#pragma once

// Command implementations behind the susyscat tool. Each command turns a
// RunConfig into a plot-ready table (or a verification report); the executable
// only parses arguments and writes the result.

#include <cmath>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "susyscat/errors.hpp"
#include "susyscat/identities.hpp"
#include "susyscat/model.hpp"
#include "susyscat/ode_oracle.hpp"
#include "susyscat/resonance.hpp"
#include "susyscat/scatter_core.hpp"
#include "susyscat/smatrix.hpp"

namespace susyscat {

enum class OutputFormat { csv, json };

inline OutputFormat parse_format(const std::string& s) {
    if (s == "csv") return OutputFormat::csv;
    if (s == "json") return OutputFormat::json;
    throw ParameterError("unknown format '" + s + "' (expected csv or json)");
}

struct RunConfig {
    double a1 = 3.0;
    double b = 0.5;
    double d = -0.1;
    /// Explicit list for phases/sweep; empty means "not given".
    std::vector<double> d_list;
    double k_min = 1e-3;
    double k_max = 3.0;
    std::size_t n_k = 2000;
    std::optional<double> x_max;  ///< defaults to 25/a1
    std::size_t n_x = 8334;
    std::string output_path;  ///< empty: standard output
    OutputFormat format = OutputFormat::csv;

    ModelParams params() const { return ModelParams::make(a1, b, d); }
    KGrid kgrid() const { return KGrid(k_min, k_max, n_k); }
    double resolved_x_max() const { return x_max.value_or(25.0 / a1); }

    std::vector<double> d_values() const { return d_list.empty() ? std::vector<double>{d} : d_list; }

    /// Throws ParameterError on anything ModelParams or the grids would reject.
    void validate() const {
        for (double dv : d_values()) (void)ModelParams::make(a1, b, dv);
        (void)kgrid();
        if (!(resolved_x_max() > 0.0)) throw ParameterError("x_max must be > 0");
        if (n_x < 2) throw ParameterError("n_x must be >= 2");
    }
};

/// Overlays the keys present in a JSON config object onto `cfg`.
inline void apply_json(RunConfig& cfg, const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ParameterError("config file must hold a JSON object");
        if (j.contains("a1")) cfg.a1 = j.at("a1").get<double>();
        if (j.contains("b")) cfg.b = j.at("b").get<double>();
        if (j.contains("d")) {
            const auto& d = j.at("d");
            if (d.is_array()) {
                cfg.d_list = d.get<std::vector<double>>();
                if (!cfg.d_list.empty()) cfg.d = cfg.d_list.front();
            } else {
                cfg.d = d.get<double>();
                cfg.d_list = {cfg.d};
            }
        }
        if (j.contains("k_min")) cfg.k_min = j.at("k_min").get<double>();
        if (j.contains("k_max")) cfg.k_max = j.at("k_max").get<double>();
        if (j.contains("n_k")) cfg.n_k = j.at("n_k").get<std::size_t>();
        if (j.contains("x_max")) cfg.x_max = j.at("x_max").get<double>();
        if (j.contains("n_x")) cfg.n_x = j.at("n_x").get<std::size_t>();
        if (j.contains("format")) cfg.format = parse_format(j.at("format").get<std::string>());
        if (j.contains("out")) cfg.output_path = j.at("out").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParameterError(std::string("config file: ") + e.what());
    }
}

inline RunConfig load_config_file(const std::string& path, RunConfig base = {}) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParameterError("config file " + path + ": " + e.what());
    }
    apply_json(base, j);
    return base;
}

using Cell = std::variant<double, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row) {
        if (row.size() != columns.size()) throw ConsistencyError("table row width mismatch");
        rows.push_back(std::move(row));
    }
};

/// 17 significant digits in scientific notation; round-trips every double.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.16e", v);
    return buf;
}

inline std::string to_csv(const Table& t) {
    std::ostringstream out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out << (c ? "," : "") << t.columns[c];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ',';
            if (const double* v = std::get_if<double>(&row[c])) {
                out << format_number(*v);
            } else {
                out << std::get<std::string>(row[c]);
            }
        }
        out << '\n';
    }
    return out.str();
}

inline nlohmann::json to_json(const Table& t) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : t.rows) {
        nlohmann::json obj = nlohmann::json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const double* v = std::get_if<double>(&row[c])) {
                obj[t.columns[c]] = std::isfinite(*v) ? nlohmann::json(*v) : nlohmann::json();
            } else {
                obj[t.columns[c]] = std::get<std::string>(row[c]);
            }
        }
        rows.push_back(std::move(obj));
    }
    return {{"columns", t.columns}, {"rows", rows}};
}

inline std::string render(const Table& t, OutputFormat format) {
    return format == OutputFormat::csv ? to_csv(t) : to_json(t).dump(2) + "\n";
}

/// Minimal reader for the tables written by to_csv (numeric cells only).
inline Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw IoError("empty CSV");
    {
        std::istringstream header(line);
        std::string name;
        while (std::getline(header, name, ',')) t.columns.push_back(name);
    }
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream cells(line);
        std::string cell;
        std::vector<Cell> row;
        while (std::getline(cells, cell, ',')) {
            char* end = nullptr;
            const double v = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() && *end == '\0') {
                row.emplace_back(v);
            } else {
                row.emplace_back(cell);
            }
        }
        t.add_row(std::move(row));
    }
    return t;
}

inline void write_output(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::fwrite(text.data(), 1, text.size(), stdout);
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open output file " + path);
    out << text;
    if (!out) throw IoError("write failed for " + path);
}

// ---------------------------------------------------------------------------

/// k, sigma0, sigma_e, sigma_r, sigma_t, sigma_h, sigmaR, sigmaBW.
inline Table cmd_curves(const RunConfig& cfg) {
    cfg.validate();
    const CrossSections cs = cross_sections(cfg.kgrid(), cfg.params());
    Table t{{"k", "sigma0", "sigma_e", "sigma_r", "sigma_t", "sigma_h", "sigmaR", "sigmaBW"}, {}};
    for (std::size_t i = 0; i < cs.size(); ++i) {
        t.add_row({cs.k[i], cs.sigma0[i], cs.sigma_e[i], cs.sigma_r[i], cs.sigma_t[i], cs.sigma_h[i], cs.sigmaR[i],
                   cs.sigmaBW[i]});
    }
    return t;
}

/// k, delta0 and (deltaR, deltaBW, delta_h) per requested d, all unwrapped.
/// With several d values the per-d columns carry a "(d=...)" suffix.
inline Table cmd_phases(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> ds = cfg.d_values();
    const KGrid grid = cfg.kgrid();
    const ModelParams first = cfg.params();

    std::vector<RealCurve> columns;
    Table t;
    t.columns = {"k", "delta0"};
    columns.push_back(phase_shift(tabulate(grid, [&](double k) { return s0(k, first); })));
    for (double d : ds) {
        const ModelParams p = ModelParams::make(cfg.a1, cfg.b, d);
        std::string suffix;
        if (ds.size() > 1) {
            char buf[48];
            std::snprintf(buf, sizeof buf, "(d=%g)", d);
            suffix = buf;
        }
        t.columns.push_back("deltaR" + suffix);
        t.columns.push_back("deltaBW" + suffix);
        t.columns.push_back("delta_h" + suffix);
        columns.push_back(phase_shift(tabulate(grid, [&](double k) { return s_R(k, p); })));
        columns.push_back(phase_shift(tabulate(grid, [&](double k) { return s_BW(k, p); })));
        columns.push_back(phase_shift(tabulate(grid, [&](double k) { return s_h(k, p); })));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i]};
        for (const auto& c : columns) row.emplace_back(c.value[i]);
        t.add_row(std::move(row));
    }
    return t;
}

/// x, v0, ReV, ImV, Rew, Imw on [0, x_max]; v0 and w are NaN at x = 0.
inline Table cmd_potential(const RunConfig& cfg) {
    cfg.validate();
    const ModelParams p = cfg.params();
    const double x_max = cfg.resolved_x_max();
    const std::size_t n = cfg.n_x;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    Table t{{"x", "v0", "ReV", "ImV", "Rew", "Imw"}, {}};
    for (std::size_t i = 0; i < n; ++i) {
        const double x = i + 1 == n ? x_max : x_max * static_cast<double>(i) / static_cast<double>(n - 1);
        const cplx V = potential_V(x, p);
        if (x == 0.0) {
            t.add_row({x, nan, V.real(), V.imag(), nan, nan});
        } else {
            const cplx w = superpotential_w(x, p);
            t.add_row({x, v0(x, p), V.real(), V.imag(), w.real(), w.imag()});
        }
    }
    return t;
}

/// Trapezoid integral of Im V over the potential table.
inline double integrate_im_V(const Table& potential) {
    double total = 0.0;
    for (std::size_t i = 1; i < potential.rows.size(); ++i) {
        const double x0 = std::get<double>(potential.rows[i - 1][0]);
        const double x1 = std::get<double>(potential.rows[i][0]);
        total += 0.5 * (x1 - x0) * (std::get<double>(potential.rows[i - 1][3]) + std::get<double>(potential.rows[i][3]));
    }
    return total;
}

inline const std::vector<double>& oracle_momenta() {
    static const std::vector<double> ks = log_spaced(0.05, 10.0, 20);
    return ks;
}

/// Full oracle suite: x-space identities and integrated S-matrices.
inline VerificationReport cmd_verify(const RunConfig& cfg) {
    cfg.validate();
    const ModelParams p = cfg.params();
    const double x_max = cfg.resolved_x_max();
    const double step = x_max / static_cast<double>(cfg.n_x - 1);
    IntegratorSpec spec = IntegratorSpec::for_potential(partner_potential(p), p).with_step(step);
    spec.x_match = x_max;

    VerificationReport report = verify_identities(p, spec);
    report.append(verify_smatrices(p, oracle_momenta(), step, x_max));
    return report;
}

/// d, k_peak, sigma_peak, width, sH_abs_at_b, phase_slope_at_b.
inline Table cmd_sweep(const RunConfig& cfg) {
    if (cfg.d_list.empty()) throw ParameterError("sweep: at least one --d value is required");
    cfg.validate();
    const std::vector<SweepRow> rows = singularity_sweep(cfg.d_list, cfg.params(), cfg.kgrid());
    Table t{{"d", "k_peak", "sigma_peak", "width", "sH_abs_at_b", "phase_slope_at_b"}, {}};
    for (const auto& r : rows) t.add_row({r.d, r.k_peak, r.sigma_peak, r.width, r.sH_abs_at_b, r.phase_slope_at_b});
    return t;
}

/// Breit-Wigner read-off of sigma_h, sigmaR and sigmaBW for each d.
inline Table cmd_fit(const RunConfig& cfg) {
    cfg.validate();
    const std::vector<double> ks = cfg.kgrid().nodes();
    Table t{{"d", "curve", "k_peak", "sigma_peak", "E_peak", "fwhm_E", "E0_implied", "Gamma_implied"}, {}};
    for (double d : cfg.d_values()) {
        const ModelParams p = ModelParams::make(cfg.a1, cfg.b, d);
        const CrossSections cs = cross_sections(ks, p);
        const std::pair<const char*, const std::vector<double>*> curves[] = {
            {"sigma_h", &cs.sigma_h}, {"sigmaR", &cs.sigmaR}, {"sigmaBW", &cs.sigmaBW}};
        for (const auto& [name, column] : curves) {
            const ResonanceFit f = fit_breit_wigner(RealCurve{ks, *column});
            t.add_row({d, std::string(name), f.k_peak, f.sigma_peak, f.E_peak, f.fwhm_E, f.E0_implied,
                       f.Gamma_implied});
        }
    }
    return t;
}

}  // namespace susyscat
