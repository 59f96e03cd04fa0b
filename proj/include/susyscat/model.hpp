#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "susyscat/errors.hpp"

namespace susyscat {

using cplx = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;

/// Parameters of the toy model in units hbar^2/2m = 1.
///
/// a1 is the stiffness of the background potential 2 a1^2 / sinh^2(a1 x);
/// the transformation function is built at the complex wavenumber
/// a = d + i b, i.e. at the factorization energy alpha = -a^2.
/// d < 0 keeps H similar to a Hermitian h; d = 0 is the spectral singularity.
class ModelParams {
public:
    /// Regular parameters: a1 > 0, b != 0, d < 0.
    static ModelParams make(double a1, double b, double d) {
        validate_common(a1, b, d);
        if (!(d < 0.0)) {
            throw ParameterError("d must be strictly negative (d = " + std::to_string(d) + ")");
        }
        return ModelParams(a1, b, d);
    }

    /// Accepts d = 0 as well. Only |S_H|-type quantities are meaningful there;
    /// S_R and S_h reject such parameters.
    static ModelParams make_singular_limit(double a1, double b, double d) {
        validate_common(a1, b, d);
        if (d > 0.0) {
            throw ParameterError("d must be non-positive (d = " + std::to_string(d) + ")");
        }
        return ModelParams(a1, b, d);
    }

    double a1() const noexcept { return a1_; }
    double b() const noexcept { return b_; }
    double d() const noexcept { return d_; }

    cplx a() const noexcept { return {d_, b_}; }
    cplx alpha() const noexcept { return -a() * a(); }

    bool at_singularity() const noexcept { return d_ == 0.0; }

    ModelParams with_d(double d) const { return make(a1_, b_, d); }

private:
    ModelParams(double a1, double b, double d) : a1_(a1), b_(b), d_(d) {}

    static void validate_common(double a1, double b, double d) {
        if (!std::isfinite(a1) || !std::isfinite(b) || !std::isfinite(d)) {
            throw ParameterError("model parameters must be finite");
        }
        if (!(a1 > 0.0)) throw ParameterError("a1 must be positive");
        if (b == 0.0) throw ParameterError("b must be nonzero");
    }

    double a1_;
    double b_;
    double d_;
};

/// Uniform, strictly increasing sampling of (0, inf).
class XGrid {
public:
    XGrid(double x_min, double x_max, std::size_t n) : x_min_(x_min), x_max_(x_max), n_(n) {
        if (!(x_min > 0.0) || !std::isfinite(x_max)) throw ParameterError("XGrid: x_min must be > 0");
        if (!(x_max > x_min)) throw ParameterError("XGrid: x_max must exceed x_min");
        if (n < 2) throw ParameterError("XGrid: need at least 2 nodes");
        spacing_ = (x_max - x_min) / static_cast<double>(n - 1);
    }

    /// x_min = 1e-3/a1, x_max = 25/a1.
    static XGrid for_model(const ModelParams& p, std::size_t n) {
        return XGrid(1e-3 / p.a1(), 25.0 / p.a1(), n);
    }

    double x_min() const noexcept { return x_min_; }
    double x_max() const noexcept { return x_max_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return spacing_; }

    double operator[](std::size_t i) const noexcept {
        return i + 1 == n_ ? x_max_ : x_min_ + spacing_ * static_cast<double>(i);
    }

    /// The exponential tails must have died out: a1 * x_max >= 20.
    bool covers_tail(const ModelParams& p) const noexcept { return p.a1() * x_max_ >= 20.0; }

private:
    double x_min_;
    double x_max_;
    std::size_t n_;
    double spacing_;
};

/// Uniform momentum grid; k = 0 is never sampled.
class KGrid {
public:
    KGrid(double k_min, double k_max, std::size_t n) : k_min_(k_min), k_max_(k_max), n_(n) {
        if (!(k_min > 0.0)) throw ParameterError("KGrid: k_min must be > 0");
        if (!(k_max > k_min) || !std::isfinite(k_max)) throw ParameterError("KGrid: k_max must exceed k_min");
        if (n < 2) throw ParameterError("KGrid: need at least 2 nodes");
    }

    double k_min() const noexcept { return k_min_; }
    double k_max() const noexcept { return k_max_; }
    std::size_t size() const noexcept { return n_; }
    double spacing() const noexcept { return (k_max_ - k_min_) / static_cast<double>(n_ - 1); }

    double operator[](std::size_t i) const noexcept {
        return i + 1 == n_ ? k_max_ : k_min_ + spacing() * static_cast<double>(i);
    }

    std::vector<double> nodes() const {
        std::vector<double> out(n_);
        for (std::size_t i = 0; i < n_; ++i) out[i] = (*this)[i];
        return out;
    }

private:
    double k_min_;
    double k_max_;
    std::size_t n_;
};

/// A sampled map k -> T.
template <class T>
struct Curve {
    std::vector<double> k;
    std::vector<T> value;

    std::size_t size() const noexcept { return k.size(); }
};

using RealCurve = Curve<double>;
using ComplexCurve = Curve<cplx>;

template <class F>
auto tabulate(const std::vector<double>& ks, F&& f) {
    using T = std::decay_t<decltype(f(ks.front()))>;
    Curve<T> out;
    out.k = ks;
    out.value.reserve(ks.size());
    for (double k : ks) out.value.push_back(f(k));
    return out;
}

template <class F>
auto tabulate(const KGrid& grid, F&& f) {
    return tabulate(grid.nodes(), std::forward<F>(f));
}

/// n log-spaced values from lo to hi inclusive.
inline std::vector<double> log_spaced(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo) || n < 2) throw ParameterError("log_spaced: need 0 < lo < hi, n >= 2");
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * static_cast<double>(i));
    out.back() = hi;
    return out;
}

}  // namespace susyscat
