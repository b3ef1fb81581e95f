#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "spectral.hpp"

namespace kronfrob {

enum class Chart { X, Cover, Quotient, Flat };

inline const char* chart_name(Chart c) {
    switch (c) {
        case Chart::X: return "x";
        case Chart::Cover: return "y";
        case Chart::Quotient: return "s";
        case Chart::Flat: return "t";
    }
    return "?";
}

/// A point in one of the four charts; conversions are always explicit.
///   x-chart: coordinates of X in the dual beta basis
///   y-chart: universal cover, x = (e^{y1}, e^{y2}), |Im(y1-y2)| < pi
///   s-chart: W-invariant coordinates, s1 in the ellipse E, s2 in C
///   t-chart: flat coordinates, t2 != 0
struct ChartPoint {
    Chart chart = Chart::X;
    Complex c1, c2;
};

namespace detail {

// Classification band for "nonpositive real ratio": measure-zero walls need
// an explicit numerical tolerance (1e-9 relative on the imaginary part).
inline constexpr double kRatioImagTol = 1e-9;

inline bool is_nonpositive_real(Complex r) {
    return std::abs(r.imag()) <= kRatioImagTol * std::abs(r) && r.real() <= 0.0;
}

inline bool in_strip(Complex y1, Complex y2) {
    return std::abs(std::imag(y1 - y2)) < std::numbers::pi;
}

inline void require_strip(Complex y1, Complex y2, const char* who) {
    if (!in_strip(y1, y2))
        throw std::domain_error(std::string(who) + ": point outside the cover strip |Im(y1-y2)| < pi");
}

}  // namespace detail

/// Membership in X: both coordinates nonzero and x1/x2 off the closed
/// negative real ray (the hyperplanes of the blunt imaginary cone).
inline bool in_X(Complex x1, Complex x2) {
    if (x1 == Complex(0.0) || x2 == Complex(0.0)) return false;
    return !detail::is_nonpositive_real(x1 / x2);
}

/// Membership in X_reg: in X and off every reflection wall x2 = nu^{2k+1} x1.
inline bool in_X_reg(const SpectralFrame& f, Complex x1, Complex x2) {
    if (!in_X(x1, x2)) return false;
    const Complex r = x2 / x1;
    if (std::abs(r.imag()) > detail::kRatioImagTol * std::abs(r) || r.real() <= 0.0)
        return true;  // ratio not a positive real: no wall can contain it
    const double m = std::log(r.real()) / f.log_nu();
    const double nearest_odd = 2.0 * std::round((m - 1.0) / 2.0) + 1.0;
    return std::abs(m - nearest_odd) > 1e-9;
}

/// Covering map (y1, y2) -> (e^{y1}, e^{y2}).
inline ChartPoint covering_map(Complex y1, Complex y2) {
    detail::require_strip(y1, y2, "covering_map");
    return {Chart::X, std::exp(y1), std::exp(y2)};
}

/// The unique cover preimage with y1 the principal log of x1.
inline ChartPoint lift_point(Complex x1, Complex x2) {
    if (!in_X(x1, x2)) throw std::domain_error("lift_point: point not in X");
    const Complex y1 = std::log(x1);
    const Complex y2 = y1 - std::log(x1 / x2);  // principal: |Im(y1-y2)| < pi
    return {Chart::Cover, y1, y2};
}

/// Lifted Weyl reflections on the cover:
///   R1.(y1,y2) = (y2 - log nu, y1 + log nu)
///   R2.(y1,y2) = (y2 + log nu, y1 - log nu)
inline std::pair<Complex, Complex> weyl_action_cover(const SpectralFrame& f, int i, Complex y1,
                                                     Complex y2) {
    detail::require_strip(y1, y2, "weyl_action_cover");
    const double ln = f.log_nu();
    if (i == 1) return {y2 - ln, y1 + ln};
    if (i == 2) return {y2 + ln, y1 - ln};
    throw std::invalid_argument("weyl_action_cover: index must be 1 or 2");
}

/// Deck transformation: add 2 pi i n to both coordinates.
inline std::pair<Complex, Complex> deck_transform(int n, Complex y1, Complex y2) {
    const Complex shift(0.0, 2.0 * std::numbers::pi * n);
    return {y1 + shift, y2 + shift};
}

/// Fundamental domain of the W-action on the cover: |Re(y1-y2)| <= log nu.
inline bool in_fundamental_domain(const SpectralFrame& f, Complex y1, Complex y2) {
    detail::require_strip(y1, y2, "in_fundamental_domain");
    return std::abs(std::real(y1 - y2)) <= f.log_nu();
}

/// Ellipse E (image of the W-invariant chart): semi-axes
/// a = e^T - e^{-T} (real), b = e^T + e^{-T} (imaginary), T = pi^2/log rho.
inline bool in_ellipse_E(const SpectralFrame& f, Complex z) {
    const double T = f.strip_half_width();
    const double a = std::exp(T) - std::exp(-T);
    const double b = std::exp(T) + std::exp(-T);
    const double xr = z.real() / a, yi = z.imag() / b;
    return xr * xr + yi * yi < 1.0;
}

/// W-invariant chart: s1 = 2 sinh(h (y1-y2)/2), s2 = y1 + y2.
inline ChartPoint invariant_chart(const SpectralFrame& f, Complex y1, Complex y2) {
    detail::require_strip(y1, y2, "invariant_chart");
    return {Chart::Quotient, 2.0 * std::sinh(f.h * (y1 - y2) / 2.0), y1 + y2};
}

/// Closed-form inverse of the invariant chart on E x C:
///   w = asinh(s1/2) (principal), d = 2 w / h,
///   y = ((s2+d)/2, (s2-d)/2), |Im d| < pi.
/// The principal asinh lands exactly on the fundamental-domain branch, so
/// invariant_chart(inverse) == id on E x C and the reverse holds on the
/// fundamental domain.
inline ChartPoint inverse_chart(const SpectralFrame& f, Complex s1, Complex s2) {
    if (!in_ellipse_E(f, s1))
        throw std::domain_error("inverse_chart: s1 outside the ellipse E");
    const Complex w = std::asinh(s1 / 2.0);
    const Complex d = 2.0 * w / f.h;
    return {Chart::Cover, (s2 + d) / 2.0, (s2 - d) / 2.0};
}

}  // namespace kronfrob
