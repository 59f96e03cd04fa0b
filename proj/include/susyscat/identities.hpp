#pragma once

// Finite-difference verification of the SUSY construction and comparison of
// the integrated S-matrices against the closed forms. Failures are report
// entries, never exceptions.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "json.hpp"
#include "susyscat/model.hpp"
#include "susyscat/ode_oracle.hpp"
#include "susyscat/scatter_core.hpp"
#include "susyscat/smatrix.hpp"

namespace susyscat {

struct ReportItem {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerificationReport {
    std::vector<ReportItem> items;

    void add(std::string name, double residual, double tolerance) {
        const bool ok = std::isfinite(residual) && residual < tolerance;
        items.push_back({std::move(name), residual, tolerance, ok});
    }

    void append(const VerificationReport& other) {
        items.insert(items.end(), other.items.begin(), other.items.end());
    }

    bool all_passed() const {
        return std::all_of(items.begin(), items.end(), [](const ReportItem& it) { return it.passed; });
    }

    const ReportItem* find(const std::string& name) const {
        for (const auto& it : items) {
            if (it.name == name) return &it;
        }
        return nullptr;
    }
};

inline nlohmann::json to_json(const VerificationReport& report) {
    nlohmann::json items = nlohmann::json::array();
    for (const auto& it : report.items) {
        items.push_back({{"name", it.name},
                         {"residual", std::isfinite(it.residual) ? nlohmann::json(it.residual) : nlohmann::json()},
                         {"tolerance", it.tolerance},
                         {"passed", it.passed}});
    }
    return {{"passed", report.all_passed()}, {"items", items}};
}

namespace fd {

using Samples = std::vector<cplx>;

/// Five-point first derivative; the two outermost nodes on each side are left at zero.
inline Samples first(const Samples& f, double h) {
    Samples out(f.size());
    for (std::size_t i = 2; i + 2 < f.size(); ++i) {
        out[i] = (f[i - 2] - 8.0 * f[i - 1] + 8.0 * f[i + 1] - f[i + 2]) / (12.0 * h);
    }
    return out;
}

inline Samples second(const Samples& f, double h) {
    Samples out(f.size());
    for (std::size_t i = 2; i + 2 < f.size(); ++i) {
        out[i] = (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) / (12.0 * h * h);
    }
    return out;
}

template <class F>
cplx derivative(F&& f, double x, double h) {
    return (f(x - 2.0 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2.0 * h)) / (12.0 * h);
}

/// max |a - b| over nodes [margin, n - margin).
inline double max_diff(const Samples& a, const Samples& b, std::size_t margin) {
    double worst = 0.0;
    for (std::size_t i = margin; i + margin < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

inline double max_abs(const Samples& a, std::size_t margin = 0) {
    double worst = 0.0;
    for (std::size_t i = margin; i + margin < a.size(); ++i) worst = std::max(worst, std::abs(a[i]));
    return worst;
}

}  // namespace fd

struct IdentityTolerances {
    double riccati = 1e-6;
    double potential = 1e-6;
    double factorization = 1e-4;
    double intertwining = 1e-4;
    double eigen_alpha = 1e-5;
    double darboux = 1e-5;
};

inline const std::vector<double>& darboux_check_momenta() {
    static const std::vector<double> ks{0.25, 0.5, 1.0, 2.0, 3.0};
    return ks;
}

/// Riccati, V = v0 - 2w', both factorizations, intertwining, the eigen-residual
/// of 1/u at alpha and Darboux residuals at five momenta. `partner` replaces the
/// closed-form V when set (used to show the suite detects a wrong potential).
inline VerificationReport verify_identities(const ModelParams& p, const IntegratorSpec& spec,
                                            std::function<cplx(double)> partner = {},
                                            const IdentityTolerances& tol = {}) {
    if (!partner) partner = [p](double x) { return potential_V(x, p); };
    const cplx alpha = p.alpha();
    const double a1 = p.a1();
    const double x_max = spec.x_match;
    VerificationReport report;

    {
        const double h = 1e-3;
        const std::size_t n = 400;
        const double lo = 0.1;
        double riccati = 0.0;
        double potential = 0.0;
        auto w = [&](double x) { return superpotential_w(x, p); };
        for (std::size_t i = 0; i < n; ++i) {
            const double x = lo + (x_max - 2.0 * h - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
            const cplx wp = fd::derivative(w, x, h);
            const cplx wx = w(x);
            const double v = v0(x, p);
            riccati = std::max(riccati, std::abs(wp + wx * wx - v + alpha) / (1.0 + v));
            potential = std::max(potential, std::abs(partner(x) - v + 2.0 * wp) / (1.0 + v));
        }
        report.add("riccati", riccati, tol.riccati);
        report.add("potential_identity", potential, tol.potential);
    }

    {
        // Gaussian bump of width 1/a1 centred mid-grid.
        const double h = 2e-3;
        const double centre = 0.5 * x_max;
        const double half = std::min(8.0 / a1, 0.45 * x_max);
        const auto n = static_cast<std::size_t>(2.0 * half / h) + 1;
        std::vector<double> xs(n);
        fd::Samples f(n), w(n), v(n), V(n);
        for (std::size_t i = 0; i < n; ++i) {
            xs[i] = centre - half + h * static_cast<double>(i);
            const double t = a1 * (xs[i] - centre);
            f[i] = std::exp(-0.5 * t * t);
            w[i] = superpotential_w(xs[i], p);
            v[i] = v0(xs[i], p);
            V[i] = partner(xs[i]);
        }
        auto combine = [n](const fd::Samples& a, const fd::Samples& b, auto op) {
            fd::Samples out(n);
            for (std::size_t i = 0; i < n; ++i) out[i] = op(a[i], b[i]);
            return out;
        };
        auto mul = [&](const fd::Samples& a, const fd::Samples& b) { return combine(a, b, std::multiplies<>()); };
        auto add = [&](const fd::Samples& a, const fd::Samples& b) { return combine(a, b, std::plus<>()); };
        auto sub = [&](const fd::Samples& a, const fd::Samples& b) { return combine(a, b, std::minus<>()); };
        auto shifted = [&](const fd::Samples& a, cplx c) {
            fd::Samples out(a);
            for (auto& z : out) z -= c;
            return out;
        };
        const std::size_t margin = 8;

        const fd::Samples df = fd::first(f, h);
        const fd::Samples d2f = fd::second(f, h);
        const fd::Samples lf = sub(mul(w, f), df);  // (-d + w) f
        const fd::Samples rf = add(df, mul(w, f));  // (d + w) f

        // (d + w)(-d + w) f = (h0 - alpha) f
        const fd::Samples lhs0 = add(fd::first(lf, h), mul(w, lf));
        const fd::Samples rhs0 = sub(mul(shifted(v, alpha), f), d2f);
        report.add("factorization_h0", fd::max_diff(lhs0, rhs0, margin) / fd::max_abs(rhs0, margin),
                   tol.factorization);

        // (-d + w)(d + w) f = (H - alpha) f
        const fd::Samples lhs1 = sub(mul(w, rf), fd::first(rf, h));
        const fd::Samples rhs1 = sub(mul(shifted(V, alpha), f), d2f);
        report.add("factorization_H", fd::max_diff(lhs1, rhs1, margin) / fd::max_abs(rhs1, margin),
                   tol.factorization);

        // L h0 f = H L f
        const fd::Samples h0f = sub(mul(v, f), d2f);
        const fd::Samples lhs2 = sub(mul(w, h0f), fd::first(h0f, h));
        const fd::Samples rhs2 = sub(mul(V, lf), fd::second(lf, h));
        report.add("intertwining", fd::max_diff(lhs2, rhs2, margin) / fd::max_abs(lhs2, margin), tol.intertwining);
    }

    const XGrid grid(1e-3 / a1, x_max, static_cast<std::size_t>(std::llround((x_max - 1e-3 / a1) / spec.step)) + 1);
    const double h = grid.spacing();
    const std::size_t n = grid.size();

    {
        double worst = 0.0;
        try {
            check_jost_nonvanishing(grid, p);
        } catch (const ConsistencyError&) {
            worst = 1.0;
        }
        report.add("jost_nonvanishing", worst, 0.5);
    }

    {
        fd::Samples phi(n), V(n);
        for (std::size_t i = 0; i < n; ++i) {
            phi[i] = phi_at_alpha(grid[i], p);
            V[i] = partner(grid[i]);
        }
        const fd::Samples d2 = fd::second(phi, h);
        double worst = 0.0;
        for (std::size_t i = 2; i + 2 < n; ++i) worst = std::max(worst, std::abs(-d2[i] + (V[i] - alpha) * phi[i]));
        report.add("eigen_alpha", worst / fd::max_abs(phi), tol.eigen_alpha);
    }

    for (double k : darboux_check_momenta()) {
        double residual = 0.0;
        try {
            const WaveSolution phi = darboux_map(sample_psi0(k, grid, p), p);
            const fd::Samples d2 = fd::second(phi.values, h);
            double worst = 0.0;
            for (std::size_t i = 2; i + 2 < n; ++i) {
                worst = std::max(worst, std::abs(-d2[i] + (partner(grid[i]) - k * k) * phi.values[i]));
            }
            residual = worst / fd::max_abs(phi.values);
        } catch (const Error&) {
            residual = std::numeric_limits<double>::infinity();
        }
        char name[64];
        std::snprintf(name, sizeof name, "darboux_k=%g", k);
        report.add(name, residual, tol.darboux);
    }
    return report;
}

struct SmatrixTolerances {
    double background = 1e-6;
    double partner = 1e-5;
    double flux = 1e-7;
    double absorption = 1e-6;
    double step_halving = 1e-8;
};

/// Integrated S-matrices against S0 and S_H over `ks`, plus flux, absorption
/// and step-halving checks. Numerical exceptions propagate.
/// `step` and `x_match` override the defaults when positive.
inline VerificationReport verify_smatrices(const ModelParams& p, const std::vector<double>& ks, double step = 0.0,
                                           double x_match = 0.0, const SmatrixTolerances& tol = {}) {
    const RadialPotential bg = background_potential(p);
    const RadialPotential partner = partner_potential(p);
    IntegratorSpec bg_spec = IntegratorSpec::for_potential(bg, p);
    IntegratorSpec pt_spec = IntegratorSpec::for_potential(partner, p);
    if (step > 0.0) {
        bg_spec = bg_spec.with_step(step);
        pt_spec = pt_spec.with_step(step);
    }
    if (x_match > 0.0) {
        bg_spec.x_match = x_match;
        pt_spec.x_match = x_match;
    }

    double bg_dev = 0.0;
    double pt_dev = 0.0;
    double flux = 0.0;
    double absorption = 0.0;
    for (double k : ks) {
        const cplx sb = numeric_smatrix(bg, k, bg_spec);
        const cplx sp = numeric_smatrix(partner, k, pt_spec);
        bg_dev = std::max(bg_dev, std::abs(sb - s0(k, p)) / std::abs(s0(k, p)));
        pt_dev = std::max(pt_dev, std::abs(sp - s_H(k, p)) / std::abs(s_H(k, p)));
        flux = std::max(flux, std::abs(std::abs(sb) - 1.0));
        absorption = std::max(absorption, std::abs(sp) - 1.0);
    }
    VerificationReport report;
    report.add("smatrix_background", bg_dev, tol.background);
    report.add("smatrix_partner", pt_dev, tol.partner);
    report.add("flux_background", flux, tol.flux);
    // Reported as the excess of |S| over 1; negative means strictly absorbing.
    report.add("absorption_partner", std::max(absorption, 0.0), tol.absorption);

    const double k_ref = 1.0;
    const double halving = std::max(
        std::abs(numeric_smatrix(bg, k_ref, bg_spec) - numeric_smatrix(bg, k_ref, bg_spec.with_step(0.5 * bg_spec.step))),
        std::abs(numeric_smatrix(partner, k_ref, pt_spec) -
                 numeric_smatrix(partner, k_ref, pt_spec.with_step(0.5 * pt_spec.step))));
    report.add("step_halving", halving, tol.step_halving);
    return report;
}

}  // namespace susyscat
