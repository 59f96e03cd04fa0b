#pragma once

// Independent numerical route to the scattering matrices: integrate the radial
// equation -psi'' + (V - k^2) psi = 0 outward from the origin and read off the
// asymptotic amplitudes psi ~ A e^{ikx} + B e^{-ikx}.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "susyscat/errors.hpp"
#include "susyscat/model.hpp"
#include "susyscat/scatter_core.hpp"

namespace susyscat {

/// A radial potential together with its behaviour at the origin:
///   V(x) = p (p - 1) / x^2 + c0 + c1 x + O(x^2),
/// where p = origin_order is the leading power of the regular solution.
struct RadialPotential {
    std::function<cplx(double)> value;
    int origin_order = 1;
    cplx origin_c0{};
    cplx origin_c1{};
    PotentialTag tag = PotentialTag::other;

    cplx operator()(double x) const { return value(x); }
};

/// 2 a1^2 / sinh^2(a1 x) = 2/x^2 - 2 a1^2 / 3 + O(x^2).
inline RadialPotential background_potential(const ModelParams& p) {
    return {[p](double x) { return cplx(v0(x, p), 0.0); }, 2, cplx(-2.0 * p.a1() * p.a1() / 3.0, 0.0), cplx{},
            PotentialTag::V0};
}

/// Complex partner V; V(0) = 2(a^2 - a1^2), V'(0) = 4a(a^2 - a1^2).
inline RadialPotential partner_potential(const ModelParams& p) {
    const cplx a = p.a();
    const double a1sq = p.a1() * p.a1();
    return {[p](double x) { return potential_V(x, p); }, 1, 2.0 * (a * a - a1sq), 4.0 * a * (a * a - a1sq),
            PotentialTag::V_complex};
}

inline RadialPotential free_potential() {
    return {[](double) { return cplx{}; }, 1, cplx{}, cplx{}, PotentialTag::other};
}

enum class IntegrationMethod { numerov, rk4 };

struct IntegratorSpec {
    IntegrationMethod method = IntegrationMethod::numerov;
    double step = 1e-3;
    double x_start = 1e-3;
    double x_match = 25.0 / 3.0;
    int origin_order = 1;
    /// Overall factor applied to the origin series; scattering ratios ignore it.
    cplx seed_scale{1.0, 0.0};

    /// Defaults for the toy model: step 3e-3/a1, x_match = 25/a1, x_start = step
    /// for the singular background and step/2 for the finite partner.
    static IntegratorSpec for_potential(const RadialPotential& v, const ModelParams& p,
                                        IntegrationMethod method = IntegrationMethod::numerov) {
        IntegratorSpec spec;
        spec.method = method;
        spec.step = 3e-3 / p.a1();
        spec.x_match = 25.0 / p.a1();
        spec.origin_order = v.origin_order;
        spec.x_start = v.origin_order >= 2 ? std::max(spec.step, 1e-4) : 0.5 * spec.step;
        return spec;
    }

    IntegratorSpec with_step(double h) const {
        IntegratorSpec out = *this;
        out.x_start = origin_order >= 2 ? std::max(h, 1e-4) : 0.5 * h;
        out.step = h;
        return out;
    }
};

inline constexpr double max_step_times_k = 0.05;
inline constexpr double match_potential_tolerance = 1e-12;
inline constexpr double match_agreement_tolerance = 1e-6;

namespace detail {

inline void validate_spec(const IntegratorSpec& spec, const RadialPotential& v, double k) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("integrate: k must be > 0");
    if (!(spec.step > 0.0)) throw ParameterError("integrate: step must be > 0");
    if (!(spec.x_start > 0.0)) throw ParameterError("integrate: x_start must be > 0");
    if (!(spec.x_match > spec.x_start + 2.0 * spec.step)) {
        throw ParameterError("integrate: x_match must lie beyond x_start + 2 step");
    }
    if (spec.origin_order < 1) throw ParameterError("integrate: origin_order must be >= 1");
    if (spec.origin_order != v.origin_order) {
        throw ParameterError("integrate: origin_order does not match the potential");
    }
    if (spec.origin_order == 1 && spec.x_start > 0.5 * spec.step * (1.0 + 1e-12)) {
        throw ParameterError("integrate: x_start must be <= step/2 for a finite potential");
    }
    if (spec.origin_order >= 2 && spec.x_start < 1e-4) {
        throw ParameterError("integrate: x_start must be >= 1e-4 for a singular potential");
    }
    if (spec.seed_scale == cplx{}) throw ParameterError("integrate: seed_scale must be nonzero");
    if (!(spec.step * k < max_step_times_k)) {
        throw GridTooCoarseError("integrate: step * k = " + std::to_string(spec.step * k) +
                                 " exceeds the phase-resolution limit " + std::to_string(max_step_times_k));
    }
}

/// Origin series x^p (1 + c2 x^2 + c3 x^3) and its derivative.
inline std::pair<cplx, cplx> origin_series(const RadialPotential& v, double k, double x) {
    const double p = v.origin_order;
    const cplx c2 = (v.origin_c0 - k * k) / (4.0 * p + 2.0);
    const cplx c3 = v.origin_c1 / (6.0 * p + 6.0);
    const double xp = std::pow(x, p);
    const cplx value = xp * (1.0 + c2 * x * x + c3 * x * x * x);
    const cplx deriv = std::pow(x, p - 1.0) * (p + (p + 2.0) * c2 * x * x + (p + 3.0) * c3 * x * x * x);
    return {value, deriv};
}

inline bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

inline constexpr std::size_t renormalize_every = 1000;

/// Rescales everything stored so far when |psi| leaves [1e-100, 1e100].
inline void maybe_renormalize(std::vector<cplx>& values, std::vector<cplx>& derivs, std::size_t upto,
                              double& log_scale) {
    double peak = 0.0;
    for (std::size_t j = 0; j <= upto; ++j) peak = std::max(peak, std::abs(values[j]));
    if (peak > 1e-100 && peak < 1e100) return;
    if (!(peak > 0.0) || !std::isfinite(peak)) throw IntegrationError("integrate: solution underflowed or overflowed");
    for (std::size_t j = 0; j <= upto; ++j) {
        values[j] /= peak;
        derivs[j] /= peak;
    }
    // Nodes past `upto` hold the next state of the recurrence.
    if (upto + 1 < values.size()) values[upto + 1] /= peak;
    log_scale += std::log(peak);
}

/// Numerov in summed form: with z = (1 - h^2 g / 12) psi the recurrence
/// z[i+1] - 2 z[i] + z[i-1] = h^2 g[i] psi[i] is advanced through the first
/// differences D[i] = z[i] - z[i-1], which keeps roundoff from growing like 1/h^2.
inline WaveSolution integrate_numerov(const RadialPotential& v, double k, const IntegratorSpec& spec,
                                      const XGrid& grid) {
    const std::size_t n = grid.size();
    const double h = spec.step;
    const double h2 = h * h / 12.0;
    const double k2 = k * k;

    // One ghost node beyond x_match provides the last derivative.
    std::vector<cplx> g(n + 1);
    for (std::size_t i = 0; i <= n; ++i) {
        const double x = spec.x_start + h * static_cast<double>(i);
        g[i] = v(x) - k2;
    }

    std::vector<cplx> y(n + 1);
    std::vector<cplx> dy(n + 1);
    auto [y0, dy0] = origin_series(v, k, spec.x_start);
    auto [y1, dy1] = origin_series(v, k, spec.x_start + h);
    y[0] = spec.seed_scale * y0;
    dy[0] = spec.seed_scale * dy0;
    y[1] = spec.seed_scale * y1;

    auto z_of = [&](std::size_t i) { return (1.0 - h2 * g[i]) * y[i]; };
    cplx z = z_of(1);
    cplx diff = z - z_of(0);
    double log_scale = 0.0;
    for (std::size_t i = 1; i <= n - 1; ++i) {
        const cplx next_diff = diff + 12.0 * h2 * g[i] * y[i];
        z += next_diff;
        y[i + 1] = z / (1.0 - h2 * g[i + 1]);
        if (!finite(y[i + 1])) {
            throw IntegrationError("integrate: non-finite value near x = " + std::to_string(grid[std::min(i, n - 1)]));
        }
        // Fourth-order derivative from the Numerov stencil.
        dy[i] = (next_diff + diff - h2 * (g[i + 1] * y[i + 1] - g[i - 1] * y[i - 1])) / (2.0 * h);
        diff = next_diff;
        if (i % renormalize_every == 0 && i + 1 < n) {
            const double before = log_scale;
            maybe_renormalize(y, dy, i, log_scale);
            if (log_scale != before) {
                const double factor = std::exp(log_scale - before);
                z /= factor;
                diff /= factor;
            }
        }
    }
    y.resize(n);
    dy.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!finite(y[i]) || !finite(dy[i])) throw IntegrationError("integrate: NaN in Numerov solution");
    }
    return WaveSolution{k, grid, std::move(y), std::move(dy), v.tag, log_scale};
}

inline WaveSolution integrate_rk4(const RadialPotential& v, double k, const IntegratorSpec& spec, const XGrid& grid) {
    const std::size_t n = grid.size();
    const double h = spec.step;
    const double k2 = k * k;
    std::vector<cplx> y(n);
    std::vector<cplx> dy(n);
    auto [y0, dy0] = origin_series(v, k, spec.x_start);
    y[0] = spec.seed_scale * y0;
    dy[0] = spec.seed_scale * dy0;

    double log_scale = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double x = spec.x_start + h * static_cast<double>(i);
        const cplx g0 = v(x) - k2;
        const cplx gm = v(x + 0.5 * h) - k2;
        const cplx g1 = v(x + h) - k2;
        const cplx p1 = dy[i];
        const cplx q1 = g0 * y[i];
        const cplx p2 = dy[i] + 0.5 * h * q1;
        const cplx q2 = gm * (y[i] + 0.5 * h * p1);
        const cplx p3 = dy[i] + 0.5 * h * q2;
        const cplx q3 = gm * (y[i] + 0.5 * h * p2);
        const cplx p4 = dy[i] + h * q3;
        const cplx q4 = g1 * (y[i] + h * p3);
        y[i + 1] = y[i] + h / 6.0 * (p1 + 2.0 * p2 + 2.0 * p3 + p4);
        dy[i + 1] = dy[i] + h / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
        if (!finite(y[i + 1]) || !finite(dy[i + 1])) {
            throw IntegrationError("integrate: non-finite value near x = " + std::to_string(x));
        }
        if ((i + 1) % renormalize_every == 0) maybe_renormalize(y, dy, i + 1, log_scale);
    }
    return WaveSolution{k, grid, std::move(y), std::move(dy), v.tag, log_scale};
}

}  // namespace detail

/// Fixed-step outward integration from x_start to (the grid node nearest) x_match.
inline WaveSolution integrate(const RadialPotential& v, double k, const IntegratorSpec& spec) {
    detail::validate_spec(spec, v, k);
    const auto steps = static_cast<std::size_t>(std::llround((spec.x_match - spec.x_start) / spec.step));
    const XGrid grid(spec.x_start, spec.x_start + spec.step * static_cast<double>(steps), steps + 1);
    return spec.method == IntegrationMethod::numerov ? detail::integrate_numerov(v, k, spec, grid)
                                                     : detail::integrate_rk4(v, k, spec, grid);
}

/// Asymptotic amplitudes of psi ~ A e^{ikx} + B e^{-ikx}.
struct AmplitudePair {
    cplx A;
    cplx B;
    double k = 0.0;

    /// S = -A/B.
    cplx smatrix() const { return -A / B; }
};

namespace detail {

inline AmplitudePair match_at(const WaveSolution& sol, std::size_t i, double k) {
    const double x = sol.grid[i];
    const cplx ik(0.0, k);
    const cplx psi = sol.values[i];
    const cplx dpsi = sol.derivatives[i];
    const cplx A = (dpsi + ik * psi) / (2.0 * ik) * std::exp(-ik * x);
    const cplx B = (ik * psi - dpsi) / (2.0 * ik) * std::exp(ik * x);
    return {A, B, k};
}

}  // namespace detail

/// Matches at the node nearest x_match and again at x_match - min(1/k, x_match/2);
/// the two extractions must agree to `tolerance` (relative).
inline AmplitudePair extract_amplitudes(const WaveSolution& sol, double k, double x_match,
                                        double tolerance = match_agreement_tolerance) {
    if (!(k > 0.0)) throw DomainError("extract_amplitudes: k must be > 0");
    const XGrid& grid = sol.grid;
    if (sol.values.size() != grid.size() || sol.derivatives.size() != grid.size()) {
        throw PreconditionError("extract_amplitudes: sample count does not match grid");
    }
    auto node_of = [&](double x) {
        const double t = (x - grid.x_min()) / grid.spacing();
        const auto i = static_cast<long long>(std::llround(t));
        return static_cast<std::size_t>(std::clamp<long long>(i, 0, static_cast<long long>(grid.size()) - 1));
    };
    const std::size_t outer = node_of(x_match);
    const double back = std::min(1.0 / k, 0.5 * x_match);
    const std::size_t inner = node_of(x_match - back);
    if (inner >= outer) throw MatchingWindowError("extract_amplitudes: matching window collapsed");

    const AmplitudePair far = detail::match_at(sol, outer, k);
    const AmplitudePair near = detail::match_at(sol, inner, k);
    const double norm = std::max(std::abs(far.A), std::abs(far.B));
    if (!(norm > 0.0) || !detail::finite(far.A) || !detail::finite(far.B)) {
        throw MatchingWindowError("extract_amplitudes: vanishing or non-finite amplitudes");
    }
    const double disagreement = std::max(std::abs(far.A - near.A), std::abs(far.B - near.B)) / norm;
    if (!(disagreement < tolerance)) {
        throw MatchingWindowError("extract_amplitudes: match points x = " + std::to_string(grid[inner]) + " and " +
                                  std::to_string(grid[outer]) + " disagree by " + std::to_string(disagreement) +
                                  " (relative)");
    }
    return far;
}

/// -A/B from a full integration.
inline cplx numeric_smatrix(const RadialPotential& v, double k, const IntegratorSpec& spec) {
    const cplx tail = v(spec.x_match);
    if (!(std::abs(tail) < match_potential_tolerance * k * k)) {
        throw MatchingWindowError("numeric_smatrix: |V(x_match)| = " + std::to_string(std::abs(tail)) +
                                  " is not negligible against k^2");
    }
    const WaveSolution sol = integrate(v, k, spec);
    return extract_amplitudes(sol, k, sol.grid.x_max()).smatrix();
}

inline AmplitudePair numeric_amplitudes(const RadialPotential& v, double k, const IntegratorSpec& spec) {
    const WaveSolution sol = integrate(v, k, spec);
    AmplitudePair out = extract_amplitudes(sol, k, sol.grid.x_max());
    const double scale = std::exp(sol.log_scale);
    out.A *= scale;
    out.B *= scale;
    return out;
}

}  // namespace susyscat
