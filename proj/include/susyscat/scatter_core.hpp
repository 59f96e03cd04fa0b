#pragma once

// Closed-form x-space objects of the toy model: the background potential v0
// and its regular scattering states, the transformation (Jost) function u,
// the superpotential w = u'/u, the complex partner potential V = v0 - 2w',
// and the first-order intertwiner L = -d/dx + w.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "susyscat/errors.hpp"
#include "susyscat/model.hpp"

namespace susyscat {

enum class PotentialTag { V0, V_complex, other };

inline const char* to_string(PotentialTag tag) {
    switch (tag) {
        case PotentialTag::V0: return "V0";
        case PotentialTag::V_complex: return "V_complex";
        default: return "other";
    }
}

/// Radial wavefunction sampled on an x-grid with its first derivative.
/// The physical solution is values * exp(log_scale).
struct WaveSolution {
    double k = 0.0;
    XGrid grid;
    std::vector<cplx> values;
    std::vector<cplx> derivatives;
    PotentialTag potential_tag = PotentialTag::other;
    double log_scale = 0.0;
};

namespace detail {

inline void require_positive_x(double x, const char* what) {
    if (!(x > 0.0)) throw DomainError(std::string(what) + ": x must be > 0");
}

/// exp(-2 a1 x), and 1 - exp(-2 a1 x) without cancellation.
struct Decay {
    double q;
    double one_minus_q;

    Decay(double a1, double x) : q(std::exp(-2.0 * a1 * x)), one_minus_q(-std::expm1(-2.0 * a1 * x)) {}
};

}  // namespace detail

/// Background potential 2 a1^2 / sinh^2(a1 x) (singularity strength 1).
inline double v0(double x, const ModelParams& p) {
    detail::require_positive_x(x, "v0");
    const double a1 = p.a1();
    const detail::Decay e(a1, x);
    return 8.0 * a1 * a1 * e.q / (e.one_minus_q * e.one_minus_q);
}

/// Unnormalized regular solution a1 coth(a1 x) sin(kx) - k cos(kx) of the v0 problem.
inline double psi0(double k, double x, const ModelParams& p) {
    detail::require_positive_x(x, "psi0");
    if (!(k > 0.0)) throw DomainError("psi0: k must be > 0");
    const double a1 = p.a1();
    const detail::Decay e(a1, x);
    const double coth = (1.0 + e.q) / e.one_minus_q;
    return a1 * coth * std::sin(k * x) - k * std::cos(k * x);
}

inline double psi0_prime(double k, double x, const ModelParams& p) {
    detail::require_positive_x(x, "psi0_prime");
    if (!(k > 0.0)) throw DomainError("psi0_prime: k must be > 0");
    const double a1 = p.a1();
    const detail::Decay e(a1, x);
    const double coth = (1.0 + e.q) / e.one_minus_q;
    const double csch2 = 4.0 * e.q / (e.one_minus_q * e.one_minus_q);
    const double s = std::sin(k * x);
    const double c = std::cos(k * x);
    return -a1 * a1 * csch2 * s + a1 * k * coth * c + k * k * s;
}

/// Transformation function exp(a x) (a1 coth(a1 x) - a), the Jost solution of
/// h0 u = alpha u with 1/u ~ exp(-a x) at infinity.
inline cplx jost_u(double x, const ModelParams& p) {
    detail::require_positive_x(x, "jost_u");
    const double a1 = p.a1();
    const cplx a = p.a();
    const detail::Decay e(a1, x);
    const double coth = (1.0 + e.q) / e.one_minus_q;
    return std::exp(a * x) * (a1 * coth - a);
}

/// w = u'/u in closed form: a - a1^2 / (sinh(a1 x) [a1 cosh(a1 x) - a sinh(a1 x)]).
inline cplx superpotential_w(double x, const ModelParams& p) {
    detail::require_positive_x(x, "superpotential_w");
    const double a1 = p.a1();
    const cplx a = p.a();
    const detail::Decay e(a1, x);
    // Both hyperbolic factors scaled by exp(-a1 x) so that nothing overflows.
    const cplx bracket = (a1 - a) + (a1 + a) * e.q;
    return a - 4.0 * a1 * a1 * e.q / (e.one_minus_q * bracket);
}

/// Complex partner potential 2 a1^2 (a^2 - a1^2) / [a1 cosh(a1 x) - a sinh(a1 x)]^2,
/// finite at the origin.
inline cplx potential_V(double x, const ModelParams& p) {
    if (!(x >= 0.0)) throw DomainError("potential_V: x must be >= 0");
    const double a1 = p.a1();
    const cplx a = p.a();
    const detail::Decay e(a1, x);
    const cplx bracket = (a1 - a) + (a1 + a) * e.q;
    return 8.0 * a1 * a1 * (a * a - a1 * a1) * e.q / (bracket * bracket);
}

/// Solution 1/u of H phi = alpha phi; vanishes linearly at the origin.
inline cplx phi_at_alpha(double x, const ModelParams& p) { return 1.0 / jost_u(x, p); }

inline cplx phi_at_alpha_prime(double x, const ModelParams& p) {
    return -superpotential_w(x, p) / jost_u(x, p);
}

/// Throws ConsistencyError if u has a (numerical) zero on the grid.
inline void check_jost_nonvanishing(const XGrid& grid, const ModelParams& p) {
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const cplx u = jost_u(grid[i], p);
        if (!std::isfinite(u.real()) || !std::isfinite(u.imag()) || std::abs(u) == 0.0) {
            throw ConsistencyError("jost_u vanishes or is not finite at x = " + std::to_string(grid[i]));
        }
    }
}

/// Samples the closed-form psi0 and its derivative.
inline WaveSolution sample_psi0(double k, const XGrid& grid, const ModelParams& p) {
    WaveSolution out{k, grid, {}, {}, PotentialTag::V0, 0.0};
    out.values.resize(grid.size());
    out.derivatives.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out.values[i] = psi0(k, grid[i], p);
        out.derivatives[i] = psi0_prime(k, grid[i], p);
    }
    return out;
}

/// Max relative residual of psi'' = (v0 - k^2) psi, with psi'' taken as the
/// central difference of the sampled derivative.
inline double background_equation_residual(const WaveSolution& psi, const ModelParams& p) {
    const std::size_t n = psi.grid.size();
    if (n < 3) throw PreconditionError("wave solution needs at least 3 nodes");
    const double h = psi.grid.spacing();
    const double k2 = psi.k * psi.k;
    double worst = 0.0;
    double scale = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const cplx second = (psi.derivatives[i + 1] - psi.derivatives[i - 1]) / (2.0 * h);
        const cplx rhs = (v0(psi.grid[i], p) - k2) * psi.values[i];
        worst = std::max(worst, std::abs(second - rhs));
        scale = std::max(scale, std::abs(second) + std::abs(rhs));
    }
    return scale > 0.0 ? worst / scale : 0.0;
}

inline constexpr double darboux_input_tolerance = 1e-4;

/// phi = L psi = -psi' + w psi. The (k^2 - alpha)^{-1/2} normalization is
/// dropped. The derivative uses psi'' = (v0 - k^2) psi and the Riccati
/// identity w' = v0 - alpha - w^2, so phi' = (k^2 - alpha - w^2) psi + w psi'.
inline WaveSolution darboux_map(const WaveSolution& psi, const ModelParams& p) {
    if (psi.potential_tag != PotentialTag::V0) {
        throw PreconditionError("darboux_map: input must solve the v0 problem");
    }
    if (psi.values.size() != psi.grid.size() || psi.derivatives.size() != psi.grid.size()) {
        throw PreconditionError("darboux_map: sample count does not match grid");
    }
    const double residual = background_equation_residual(psi, p);
    if (!(residual < darboux_input_tolerance)) {
        throw PreconditionError("darboux_map: input residual " + std::to_string(residual) +
                                " exceeds tolerance");
    }

    const cplx alpha = p.alpha();
    const double k2 = psi.k * psi.k;
    WaveSolution phi{psi.k, psi.grid, {}, {}, PotentialTag::V_complex, psi.log_scale};
    phi.values.resize(psi.grid.size());
    phi.derivatives.resize(psi.grid.size());
    for (std::size_t i = 0; i < psi.grid.size(); ++i) {
        const cplx w = superpotential_w(psi.grid[i], p);
        phi.values[i] = -psi.derivatives[i] + w * psi.values[i];
        phi.derivatives[i] = (k2 - alpha - w * w) * psi.values[i] + w * psi.derivatives[i];
    }
    return phi;
}

}  // namespace susyscat
