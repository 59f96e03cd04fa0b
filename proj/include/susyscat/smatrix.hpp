#pragma once

// Closed-form k-space objects: the scattering matrices S0, S~, S_H, S_R, S_h,
// S_BW, phase shifts, amplitudes, effective-range functions and cross sections.
// Units hbar^2/2m = 1, s-wave only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "susyscat/errors.hpp"
#include "susyscat/model.hpp"

namespace susyscat {

namespace detail {

inline void require_positive_k(double k, const char* what) {
    if (!(k > 0.0) || !std::isfinite(k)) throw DomainError(std::string(what) + ": k must be > 0");
}

inline void require_off_singularity(const ModelParams& p, const char* what) {
    if (p.at_singularity()) {
        throw SingularLimitError(std::string(what) +
                                 ": undefined at d = 0 (no Hermitian counterpart at the spectral singularity)");
    }
}

}  // namespace detail

/// Background S-matrix (a1 - ik)/(a1 + ik).
inline cplx s0(double k, const ModelParams& p) {
    detail::require_positive_k(k, "s0");
    const cplx ik(0.0, k);
    return (p.a1() - ik) / (p.a1() + ik);
}

/// (d + ib - ik)/(d + ib + ik).
inline cplx s_tilde(double k, const ModelParams& p) {
    detail::require_positive_k(k, "s_tilde");
    const cplx ik(0.0, k);
    return (p.a() - ik) / (p.a() + ik);
}

/// Non-unitary S-matrix of the complex partner H.
inline cplx s_H(double k, const ModelParams& p) { return s0(k, p) * s_tilde(k, p); }

/// |S_H| = [((b-k)^2 + d^2) / ((b+k)^2 + d^2)]^{1/2}, independent of the product form.
inline double abs_s_H(double k, const ModelParams& p) {
    detail::require_positive_k(k, "abs_s_H");
    const double b = p.b();
    const double d = p.d();
    return std::sqrt(((b - k) * (b - k) + d * d) / ((b + k) * (b + k) + d * d));
}

/// Resonant factor of S_h: S~ rescaled to unit modulus with the positive root.
inline cplx s_R(double k, const ModelParams& p) {
    detail::require_off_singularity(p, "s_R");
    const double b = p.b();
    const double d = p.d();
    const double ratio = ((b + k) * (b + k) + d * d) / ((b - k) * (b - k) + d * d);
    return s_tilde(k, p) * std::sqrt(ratio);
}

/// Unitary S-matrix of the Hermitian counterpart h.
inline cplx s_h(double k, const ModelParams& p) { return s0(k, p) * s_R(k, p); }

/// Breit-Wigner S-matrix (b^2 + (d - ik)^2)/(b^2 + (d + ik)^2) = S_R^2.
inline cplx s_BW(double k, const ModelParams& p) {
    detail::require_positive_k(k, "s_BW");
    const cplx b2(p.b() * p.b(), 0.0);
    const cplx dm(p.d(), -k);
    const cplx dp(p.d(), k);
    return (b2 + dm * dm) / (b2 + dp * dp);
}

/// f = (S - 1)/(2ik).
inline cplx amplitude(cplx s, double k) {
    detail::require_positive_k(k, "amplitude");
    return (s - 1.0) / cplx(0.0, 2.0 * k);
}

/// g = k cot(delta) = ik (S + 1)/(S - 1).
inline cplx effective_range_function(cplx s, double k) {
    detail::require_positive_k(k, "effective_range_function");
    return cplx(0.0, k) * (s + 1.0) / (s - 1.0);
}

/// sigma = 4 pi |f|^2 = (pi/k^2) |S - 1|^2.
inline double cross_section(cplx s, double k) {
    detail::require_positive_k(k, "cross_section");
    return pi / (k * k) * std::norm(s - 1.0);
}

/// Background cross section 4 pi / (k^2 + a1^2).
inline double sigma0(double k, const ModelParams& p) {
    detail::require_positive_k(k, "sigma0");
    return 4.0 * pi / (k * k + p.a1() * p.a1());
}

inline double sigma0_at_zero(const ModelParams& p) { return 4.0 * pi / (p.a1() * p.a1()); }

/// Breit-Wigner cross section 16 pi d^2 / ((k^2 + d^2 - b^2)^2 + 4 b^2 d^2).
inline double sigma_BW(double k, const ModelParams& p) {
    detail::require_positive_k(k, "sigma_BW");
    const double b = p.b();
    const double d = p.d();
    const double shift = k * k + d * d - b * b;
    return 16.0 * pi * d * d / (shift * shift + 4.0 * b * b * d * d);
}

/// Breit-Wigner resonance energy b^2 - d^2.
inline double bw_energy(const ModelParams& p) { return p.b() * p.b() - p.d() * p.d(); }

/// Breit-Wigner width |4 b d|. The closed form reads 4bd, which is negative for
/// d < 0; only (Gamma/2)^2 enters the line shape.
inline double bw_width(const ModelParams& p) { return std::abs(4.0 * p.b() * p.d()); }

/// Square-root-branch cross section of S_R:
///   (2 pi / k^2) [1 + (k^2 - b^2 - d^2) / sqrt((k^2 + d^2 - b^2)^2 + 4 b^2 d^2)].
/// For k^2 < b^2 + d^2 the bracket is rewritten as 4 d^2 k^2 / (R (R + X)) to
/// avoid cancellation; both forms are the same expression.
inline double sigma_R(double k, const ModelParams& p) {
    detail::require_positive_k(k, "sigma_R");
    detail::require_off_singularity(p, "sigma_R");
    const double b = p.b();
    const double d = p.d();
    const double x = b * b + d * d - k * k;
    const double shift = k * k + d * d - b * b;
    const double r = std::sqrt(shift * shift + 4.0 * b * b * d * d);
    if (x > 0.0) return 8.0 * pi * d * d / (r * (r + x));
    return 2.0 * pi / (k * k) * (1.0 - x / r);
}

/// Limit k -> 0+ of sigma_R: 4 pi d^2 / (b^2 + d^2)^2.
inline double sigma_R_at_zero(const ModelParams& p) {
    detail::require_off_singularity(p, "sigma_R_at_zero");
    const double s = p.b() * p.b() + p.d() * p.d();
    return 4.0 * pi * p.d() * p.d() / (s * s);
}

/// Unwrapped phase shift delta = (1/2i) log S of a unimodular S-matrix.
///
/// Phases are unwrapped starting from the low-energy end, where every S-matrix
/// here tends to 1; the anchor sample is taken in (-pi/2, pi/2]. Successive
/// S-phases must differ by less than pi/2.
inline RealCurve phase_shift(const ComplexCurve& curve, double unimodular_tol = 1e-9) {
    const std::size_t n = curve.size();
    if (n == 0 || curve.value.size() != n) throw PreconditionError("phase_shift: empty or ragged curve");
    for (std::size_t i = 0; i < n; ++i) {
        if (std::abs(std::abs(curve.value[i]) - 1.0) > unimodular_tol) {
            throw DomainError("phase_shift: |S| = " + std::to_string(std::abs(curve.value[i])) +
                              " is not unimodular at k = " + std::to_string(curve.k[i]));
        }
        if (i > 0 && !(curve.k[i] > curve.k[i - 1])) {
            throw PreconditionError("phase_shift: k must be strictly increasing");
        }
    }

    RealCurve out{curve.k, std::vector<double>(n)};
    double phase = std::arg(curve.value[0]);  // (-pi, pi]
    out.value[0] = 0.5 * phase;
    for (std::size_t i = 1; i < n; ++i) {
        // Principal increment of arg S between neighbours.
        const double step = std::arg(curve.value[i] / curve.value[i - 1]);
        if (std::abs(step) >= 0.5 * pi) {
            throw GridTooCoarseError("phase_shift: phase jump of " + std::to_string(step) +
                                     " rad near k = " + std::to_string(curve.k[i]));
        }
        phase += step;
        out.value[i] = 0.5 * phase;
    }
    return out;
}

/// All cross sections of the model on one grid (area units, hbar^2/2m = 1).
struct CrossSections {
    std::vector<double> k;
    std::vector<double> sigma0;   ///< background h0
    std::vector<double> sigma_e;  ///< elastic, from S_H
    std::vector<double> sigma_r;  ///< reaction (absorption), from |S_H|
    std::vector<double> sigma_t;  ///< sigma_e + sigma_r
    std::vector<double> sigma_h;  ///< Hermitian counterpart h
    std::vector<double> sigmaR;   ///< square-root Breit-Wigner factor S_R alone
    std::vector<double> sigmaBW;  ///< Breit-Wigner

    std::size_t size() const noexcept { return k.size(); }
};

inline constexpr double sigma_R_crosscheck_tolerance = 1e-10;

inline CrossSections cross_sections(const std::vector<double>& ks, const ModelParams& p) {
    detail::require_off_singularity(p, "cross_sections");
    CrossSections cs;
    const std::size_t n = ks.size();
    cs.k = ks;
    for (auto* column : {&cs.sigma0, &cs.sigma_e, &cs.sigma_r, &cs.sigma_t, &cs.sigma_h, &cs.sigmaR, &cs.sigmaBW}) {
        column->resize(n);
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double k = ks[i];
        const cplx sh_big = s_H(k, p);
        const double abs_sh = std::abs(sh_big);
        cs.sigma0[i] = sigma0(k, p);
        cs.sigma_e[i] = cross_section(sh_big, k);
        cs.sigma_r[i] = pi / (k * k) * (1.0 - abs_sh * abs_sh);
        cs.sigma_t[i] = cs.sigma_e[i] + cs.sigma_r[i];
        cs.sigma_h[i] = cross_section(s_h(k, p), k);
        cs.sigmaR[i] = sigma_R(k, p);
        cs.sigmaBW[i] = sigma_BW(k, p);

        const double direct = cross_section(s_R(k, p), k);
        if (std::abs(direct - cs.sigmaR[i]) > sigma_R_crosscheck_tolerance * std::max(direct, cs.sigmaR[i])) {
            throw ConsistencyError("sigma_R closed form disagrees with (pi/k^2)|S_R - 1|^2 at k = " +
                                   std::to_string(k));
        }
    }
    return cs;
}

inline CrossSections cross_sections(const KGrid& grid, const ModelParams& p) {
    return cross_sections(grid.nodes(), p);
}

/// Breit-Wigner / square-root effective-range decomposition g_R = g_BW + Delta.
struct EffectiveRangeData {
    std::vector<double> k;
    std::vector<double> gBW;
    std::vector<double> Delta;  ///< interference term 1/|f_BW|
    std::vector<double> gR;
    std::vector<cplx> fBW;
    std::vector<cplx> fR;
    /// False where |S_R - 1| < 1e-3: k cot(delta) is ill-conditioned there.
    std::vector<bool> valid;

    std::size_t size() const noexcept { return k.size(); }
};

inline constexpr double effective_range_guard = 1e-3;

inline EffectiveRangeData effective_range(const std::vector<double>& ks, const ModelParams& p) {
    if (!(p.d() < 0.0)) throw DomainError("effective_range: requires d < 0");
    const double b = p.b();
    const double d = p.d();
    EffectiveRangeData out;
    out.k = ks;
    const std::size_t n = ks.size();
    out.gBW.resize(n);
    out.Delta.resize(n);
    out.gR.resize(n);
    out.fBW.resize(n);
    out.fR.resize(n);
    out.valid.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double k = ks[i];
        detail::require_positive_k(k, "effective_range");
        const double shift = k * k + d * d - b * b;
        out.gBW[i] = (k * k - b * b - d * d) / (2.0 * d);
        out.Delta[i] = std::sqrt(shift * shift + 4.0 * b * b * d * d) / (-2.0 * d);
        out.gR[i] = out.gBW[i] + out.Delta[i];

        const cplx dp(d, k);
        const cplx inv_fBW = (b * b + dp * dp) / (-2.0 * d);
        const cplx inv_fR = inv_fBW + out.Delta[i];
        out.fBW[i] = 1.0 / inv_fBW;
        out.fR[i] = 1.0 / inv_fR;
        if (std::abs(inv_fR.real() - out.gR[i]) > 1e-12 * std::max(1.0, std::abs(out.gR[i]))) {
            throw ConsistencyError("effective_range: Re(1/f_R) != g_R at k = " + std::to_string(k));
        }
        out.valid[i] = std::abs(s_R(k, p) - 1.0) >= effective_range_guard;
    }
    return out;
}

inline EffectiveRangeData effective_range(const KGrid& grid, const ModelParams& p) {
    return effective_range(grid.nodes(), p);
}

}  // namespace susyscat
