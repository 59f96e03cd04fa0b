#pragma once

// Resonance phenomenology on sampled cross sections: peak location, FWHM-based
// Breit-Wigner parameters, prominence-based "no resonance" test and sweeps of
// the distance d to the spectral singularity.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "susyscat/errors.hpp"
#include "susyscat/identities.hpp"
#include "susyscat/model.hpp"
#include "susyscat/smatrix.hpp"

namespace susyscat {

struct Peak {
    double k = 0.0;
    double value = 0.0;
    std::size_t index = 0;  ///< discrete argmax
};

inline constexpr std::size_t min_peak_samples = 50;

/// Discrete argmax refined by the parabola through it and its two neighbours.
inline Peak find_peak(const RealCurve& curve) {
    const std::size_t n = curve.size();
    if (n < min_peak_samples || curve.value.size() != n) {
        throw PreconditionError("find_peak: need at least " + std::to_string(min_peak_samples) + " samples");
    }
    const auto it = std::max_element(curve.value.begin(), curve.value.end());
    const auto i = static_cast<std::size_t>(it - curve.value.begin());
    if (i == 0 || i + 1 == n) {
        throw NoInteriorPeakError("find_peak: maximum at the boundary k = " + std::to_string(curve.k[i]));
    }
    const double x0 = curve.k[i - 1], x1 = curve.k[i], x2 = curve.k[i + 1];
    const double y0 = curve.value[i - 1], y1 = curve.value[i], y2 = curve.value[i + 1];
    // Newton divided differences of the interpolating parabola.
    const double d01 = (y1 - y0) / (x1 - x0);
    const double d12 = (y2 - y1) / (x2 - x1);
    const double c2 = (d12 - d01) / (x2 - x0);
    if (!(c2 < 0.0)) return {x1, y1, i};
    const double c1 = d01 - c2 * (x0 + x1);
    const double kp = std::clamp(-c1 / (2.0 * c2), x0, x2);
    const double vp = y0 + d01 * (kp - x0) + c2 * (kp - x0) * (kp - x1);
    return {kp, std::max(vp, y1), i};
}

/// Peak data read off a cross-section curve, in the energy scale E = k^2.
struct ResonanceFit {
    double k_peak = 0.0;
    double sigma_peak = 0.0;
    double E_peak = 0.0;
    double fwhm_E = 0.0;  ///< full width at half maximum in energy
    double E0_implied = 0.0;
    double Gamma_implied = 0.0;
};

inline constexpr std::size_t min_window_samples = 10;

namespace detail {

/// Energy where the curve crosses `level`, walking from `from` in direction `dir`
/// (+1 or -1); linear interpolation in E between the bracketing samples.
inline bool half_max_crossing(const RealCurve& curve, std::size_t from, int dir, double level, double& energy,
                              std::size_t& inside) {
    inside = 0;
    std::size_t i = from;
    while (true) {
        if (dir < 0 ? i == 0 : i + 1 == curve.size()) return false;
        const std::size_t j = dir < 0 ? i - 1 : i + 1;
        if (curve.value[j] < level) {
            const double e_i = curve.k[i] * curve.k[i];
            const double e_j = curve.k[j] * curve.k[j];
            const double t = (curve.value[i] - level) / (curve.value[i] - curve.value[j]);
            energy = e_i + t * (e_j - e_i);
            return true;
        }
        ++inside;
        i = j;
    }
}

}  // namespace detail

/// E0 = E_peak and Gamma = FWHM in energy. No least squares: the inputs are
/// noise-free closed-form curves.
inline ResonanceFit fit_breit_wigner(const RealCurve& curve) {
    const Peak peak = find_peak(curve);
    const double level = 0.5 * peak.value;
    double e_lo = 0.0, e_hi = 0.0;
    std::size_t in_lo = 0, in_hi = 0;
    if (!detail::half_max_crossing(curve, peak.index, -1, level, e_lo, in_lo)) {
        throw WindowError("fit_breit_wigner: half maximum not bracketed below the peak");
    }
    if (!detail::half_max_crossing(curve, peak.index, +1, level, e_hi, in_hi)) {
        throw WindowError("fit_breit_wigner: half maximum not bracketed above the peak");
    }
    if (in_lo + in_hi + 1 < min_window_samples) {
        throw WindowError("fit_breit_wigner: fewer than " + std::to_string(min_window_samples) +
                          " samples inside the half-maximum window");
    }
    ResonanceFit fit;
    fit.k_peak = peak.k;
    fit.sigma_peak = peak.value;
    fit.E_peak = peak.k * peak.k;
    fit.fwhm_E = e_hi - e_lo;
    fit.E0_implied = fit.E_peak;
    fit.Gamma_implied = fit.fwhm_E;
    return fit;
}

/// One d value of a singularity-proximity sweep (sigma_h statistics).
struct SweepRow {
    double d = 0.0;
    double k_peak = 0.0;
    double sigma_peak = 0.0;
    double width = 0.0;  ///< FWHM in energy
    double sH_abs_at_b = 0.0;
    double phase_slope_at_b = 0.0;  ///< d delta_h / dk at k = b
    bool interior_peak = true;
};

namespace detail {

/// Peak statistics that tolerate a maximum at the low-k boundary: then the
/// boundary value is reported and the width is twice the one-sided half width.
inline void sweep_peak(const RealCurve& curve, SweepRow& row) {
    try {
        const ResonanceFit fit = fit_breit_wigner(curve);
        row.k_peak = fit.k_peak;
        row.sigma_peak = fit.sigma_peak;
        row.width = fit.fwhm_E;
        row.interior_peak = true;
        return;
    } catch (const NoInteriorPeakError&) {
    } catch (const WindowError&) {
    }
    const auto it = std::max_element(curve.value.begin(), curve.value.end());
    const auto i = static_cast<std::size_t>(it - curve.value.begin());
    Peak peak{curve.k[i], curve.value[i], i};
    if (i > 0 && i + 1 < curve.size()) peak = find_peak(curve);
    row.k_peak = peak.k;
    row.sigma_peak = peak.value;
    row.interior_peak = i > 0 && i + 1 < curve.size();
    const double level = 0.5 * peak.value;
    double e_lo = 0.0, e_hi = 0.0;
    std::size_t inside = 0;
    const double e_peak = peak.k * peak.k;
    const bool lo = half_max_crossing(curve, i, -1, level, e_lo, inside);
    const bool hi = half_max_crossing(curve, i, +1, level, e_hi, inside);
    if (lo && hi) {
        row.width = e_hi - e_lo;
    } else if (hi) {
        row.width = 2.0 * (e_hi - e_peak);
    } else if (lo) {
        row.width = 2.0 * (e_peak - e_lo);
    } else {
        throw WindowError("singularity_sweep: half maximum not bracketed on either side");
    }
}

}  // namespace detail

/// d delta_h / dk at k = b by a central difference of the unwrapped phase.
inline double phase_slope_at(double k, double dk, const ModelParams& p) {
    ComplexCurve s;
    s.k = {k - dk, k, k + dk};
    for (double kk : s.k) s.value.push_back(s_h(kk, p));
    const RealCurve delta = phase_shift(s);
    return (delta.value[2] - delta.value[0]) / (2.0 * dk);
}

inline std::vector<SweepRow> singularity_sweep(const std::vector<double>& d_values, const ModelParams& base,
                                               const KGrid& kgrid) {
    if (d_values.empty()) throw ParameterError("singularity_sweep: empty d list");
    for (double d : d_values) {
        if (!(d < 0.0)) throw ParameterError("singularity_sweep: every d must be < 0");
    }
    std::vector<SweepRow> rows;
    rows.reserve(d_values.size());
    const std::vector<double> ks = kgrid.nodes();
    for (double d : d_values) {
        const ModelParams p = base.with_d(d);
        // The phase varies on the scale min(|b|, |d|); keep the difference step well inside it.
        const double dk = 1e-5 * std::min(std::abs(p.b()), std::abs(d));
        SweepRow row;
        row.d = d;
        const RealCurve sigma_h = tabulate(ks, [&](double k) { return cross_section(s_h(k, p), k); });
        detail::sweep_peak(sigma_h, row);
        row.sH_abs_at_b = abs_s_H(std::abs(p.b()), p);
        row.phase_slope_at_b = phase_slope_at(std::abs(p.b()), dk, p);
        rows.push_back(row);
    }
    return rows;
}

inline constexpr double prominence_factor = 1.05;

/// True if the curve, restricted to [k_lo, k_hi], has an interior local maximum
/// exceeding `factor` times the larger of its two neighbouring minima (window
/// endpoints count as minima).
inline bool has_prominent_peak(const RealCurve& curve, double k_lo, double k_hi,
                               double factor = prominence_factor) {
    std::vector<double> v;
    for (std::size_t i = 0; i < curve.size(); ++i) {
        if (curve.k[i] >= k_lo && curve.k[i] <= k_hi) v.push_back(curve.value[i]);
    }
    const std::size_t n = v.size();
    if (n < 3) throw PreconditionError("has_prominent_peak: fewer than 3 samples in window");
    std::vector<std::size_t> maxima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (v[i] > v[i - 1] && v[i] >= v[i + 1]) maxima.push_back(i);
    }
    for (std::size_t m = 0; m < maxima.size(); ++m) {
        const std::size_t left_end = m == 0 ? 0 : maxima[m - 1];
        const std::size_t right_end = m + 1 == maxima.size() ? n - 1 : maxima[m + 1];
        const double left_min = *std::min_element(v.begin() + static_cast<long>(left_end),
                                                  v.begin() + static_cast<long>(maxima[m]) + 1);
        const double right_min = *std::min_element(v.begin() + static_cast<long>(maxima[m]),
                                                   v.begin() + static_cast<long>(right_end) + 1);
        if (v[maxima[m]] > factor * std::max(left_min, right_min)) return true;
    }
    return false;
}

inline constexpr double no_resonance_k_lo = 0.3;
inline constexpr double no_resonance_k_hi = 1.5;

/// sigma_e, sigma_r and sigma_t of the non-Hermitian H must show no prominent
/// peak on [0.3, 1.5]. Each item's residual is 1 when a peak is found.
inline VerificationReport no_resonance_check(const ModelParams& p, const KGrid& kgrid) {
    const CrossSections cs = cross_sections(kgrid, p);
    VerificationReport report;
    auto item = [&](const char* name, const std::vector<double>& column) {
        const RealCurve c{cs.k, column};
        report.add(name, has_prominent_peak(c, no_resonance_k_lo, no_resonance_k_hi) ? 1.0 : 0.0, 0.5);
    };
    item("no_peak_sigma_e", cs.sigma_e);
    item("no_peak_sigma_r", cs.sigma_r);
    item("no_peak_sigma_t", cs.sigma_t);
    return report;
}

}  // namespace susyscat
