#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

#include "mat2.hpp"

namespace kronfrob {

/// Finite-difference configuration shared by the verification checks.
struct FDConfig {
    double base_step = 1e-5;
    int richardson_levels = 1;
    double min_discriminant = 1e-3;
};

inline void validate(const FDConfig& cfg) {
    if (!(cfg.base_step >= 1e-9 && cfg.base_step <= 1e-2))
        throw std::invalid_argument("FDConfig: base_step must lie in [1e-9, 1e-2]");
    if (cfg.richardson_levels < 0)
        throw std::invalid_argument("FDConfig: richardson_levels must be >= 0");
    if (!(cfg.min_discriminant > 0.0))
        throw std::invalid_argument("FDConfig: min_discriminant must be positive");
}

using ScalarField = std::function<Complex(Complex, Complex)>;

namespace detail {

// Step grows with the derivative order to balance truncation against
// roundoff: base^(3/(order+2)) gives 1e-5 / ~2e-4 / 1e-3 for orders 1/2/3
// at the default base.
inline double fd_step_for(double base_step, int order, Complex coord) {
    const double scale = std::max(1.0, std::abs(coord));
    return std::pow(base_step, 3.0 / (order + 2)) * scale;
}

template <typename Eval>
Complex richardson(Eval&& stencil, double step, int levels) {
    // central stencils have O(step^2) error; classic factor-4 table
    std::vector<Complex> row(levels + 1);
    for (int i = 0; i <= levels; ++i) row[i] = stencil(step / std::pow(2.0, i));
    double factor = 4.0;
    for (int j = 0; j < levels; ++j) {
        for (int i = 0; i + j + 1 <= levels; ++i)
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        factor *= 4.0;
    }
    return row[0];
}

}  // namespace detail

/// Central-difference partial derivative of order 1..3 in coordinate
/// direction dir (0 or 1), with Richardson extrapolation.
inline Complex fd_partial(const ScalarField& f, Complex c1, Complex c2, int dir, int order,
                          const FDConfig& cfg) {
    validate(cfg);
    if (dir != 0 && dir != 1) throw std::invalid_argument("fd_partial: dir must be 0 or 1");
    if (order < 1 || order > 3) throw std::invalid_argument("fd_partial: order must be 1..3");

    auto at = [&](double off) {
        return dir == 0 ? f(c1 + off, c2) : f(c1, c2 + off);
    };
    auto stencil = [&](double s) -> Complex {
        switch (order) {
            case 1: return (at(s) - at(-s)) / (2.0 * s);
            case 2: return (at(s) - 2.0 * at(0.0) + at(-s)) / (s * s);
            default:
                return (at(2.0 * s) - 2.0 * at(s) + 2.0 * at(-s) - at(-2.0 * s)) /
                       (2.0 * s * s * s);
        }
    };
    const double step = detail::fd_step_for(cfg.base_step, order, dir == 0 ? c1 : c2);
    return detail::richardson(stencil, step, cfg.richardson_levels);
}

/// Mixed third derivative d1^{n1} d2^{3-n1} f by a product central stencil,
/// per-direction step scaling and one joint Richardson level.
inline Complex fd_third(const ScalarField& f, Complex c1, Complex c2, int n1,
                        const FDConfig& cfg) {
    validate(cfg);
    if (n1 < 0 || n1 > 3) throw std::invalid_argument("fd_third: n1 must be 0..3");
    if (n1 == 3) return fd_partial(f, c1, c2, 0, 3, cfg);
    if (n1 == 0) return fd_partial(f, c1, c2, 1, 3, cfg);

    const double base = std::pow(cfg.base_step, 0.5);
    const double s1 = base * std::max(1.0, std::abs(c1));
    const double s2 = base * std::max(1.0, std::abs(c2));
    auto stencil = [&](double shrink) -> Complex {
        const double a = s1 * shrink, b = s2 * shrink;
        auto second_at = [&](int sign) {
            // second derivative in the repeated direction, offset in the other
            if (n1 == 2) {
                const Complex off = Complex(sign * b);
                return (f(c1 + a, c2 + off) - 2.0 * f(c1, c2 + off) + f(c1 - a, c2 + off)) /
                       (a * a);
            }
            const Complex off = Complex(sign * a);
            return (f(c1 + off, c2 + b) - 2.0 * f(c1 + off, c2) + f(c1 + off, c2 - b)) /
                   (b * b);
        };
        const double first = n1 == 2 ? b : a;
        return (second_at(+1) - second_at(-1)) / (2.0 * first);
    };
    const int levels = std::max(1, cfg.richardson_levels);
    std::vector<Complex> row(levels + 1);
    for (int i = 0; i <= levels; ++i) row[i] = stencil(1.0 / std::pow(2.0, i));
    double factor = 4.0;
    for (int j = 0; j < levels; ++j) {
        for (int i = 0; i + j + 1 <= levels; ++i)
            row[i] = (factor * row[i + 1] - row[i]) / (factor - 1.0);
        factor *= 4.0;
    }
    return row[0];
}

using MatrixField = std::function<Mat2(Complex, Complex)>;

/// First derivative of a matrix-valued field in coordinate direction dir.
inline Mat2 fd_matrix_partial(const MatrixField& f, Complex c1, Complex c2, int dir,
                              const FDConfig& cfg, double step_override = 0.0) {
    const double step = step_override > 0.0
                            ? step_override
                            : detail::fd_step_for(cfg.base_step, 1, dir == 0 ? c1 : c2);
    auto at = [&](double off) {
        return dir == 0 ? f(c1 + off, c2) : f(c1, c2 + off);
    };
    auto stencil = [&](double s) { return (at(s) - at(-s)).scaled(1.0 / (2.0 * s)); };
    Mat2 d = stencil(step), d2 = stencil(step / 2.0);
    return (d2.scaled(4.0) - d).scaled(1.0 / 3.0);
}

/// Second derivative d_l d_k of a matrix-valued field (pure or mixed
/// directions), with one Richardson level.
inline Mat2 fd_matrix_second(const MatrixField& f, Complex c1, Complex c2, int l, int k,
                             const FDConfig& cfg) {
    const double base = std::pow(cfg.base_step, 3.0 / 4.0);
    const double sl = base * std::max(1.0, std::abs(l == 0 ? c1 : c2));
    const double sk = base * std::max(1.0, std::abs(k == 0 ? c1 : c2));
    auto at = [&](double ol, double ok) {
        Complex a = c1, b = c2;
        (l == 0 ? a : b) += ol;
        (k == 0 ? a : b) += ok;
        return f(a, b);
    };
    auto stencil = [&](double shrink) -> Mat2 {
        const double u = sl * shrink, v = sk * shrink;
        if (l == k)
            return (at(u, 0.0) - at(0.0, 0.0).scaled(2.0) + at(-u, 0.0)).scaled(1.0 / (u * u));
        return (at(u, v) - at(u, -v) - at(-u, v) + at(-u, -v)).scaled(1.0 / (4.0 * u * v));
    };
    const Mat2 d = stencil(1.0), d2 = stencil(0.5);
    return (d2.scaled(4.0) - d).scaled(1.0 / 3.0);
}

/// Christoffel symbols Gamma^j_{km} of the covariant metric dual to the
/// supplied co-metric field.  Finite differences touch only the smooth
/// co-metric; derivatives of the inverse come from dG = -G (dg) G, which
/// stays accurate near the discriminant where G itself blows up.
struct Christoffel {
    Complex g[2][2][2];  // g[j][k][m] = Gamma^j_{km}
};

namespace detail {

struct MetricJet {
    Mat2 up;      // g^{ij}
    Mat2 down;    // G = inverse
    Mat2 dup[2];  // d_k g
    Mat2 ddn[2];  // d_k G
};

inline MetricJet metric_jet(const MatrixField& cometric, Complex c1, Complex c2,
                            const FDConfig& cfg) {
    MetricJet j;
    j.up = cometric(c1, c2);
    j.down = j.up.inverse();
    for (int k = 0; k < 2; ++k) {
        j.dup[k] = fd_matrix_partial(cometric, c1, c2, k, cfg);
        j.ddn[k] = (j.down * j.dup[k] * j.down).scaled(-1.0);
    }
    return j;
}

inline Christoffel christoffel_from_jet(const MetricJet& j) {
    Christoffel out{};
    for (int a = 0; a < 2; ++a)
        for (int k = 0; k < 2; ++k)
            for (int m = 0; m < 2; ++m) {
                Complex s = 0.0;
                for (int n = 0; n < 2; ++n)
                    s += j.up.m[a][n] *
                         (j.ddn[k].m[n][m] + j.ddn[m].m[n][k] - j.ddn[n].m[k][m]);
                out.g[a][k][m] = s / 2.0;
            }
    return out;
}

}  // namespace detail

inline Christoffel christoffel_from_cometric(const MatrixField& cometric, Complex c1, Complex c2,
                                             const FDConfig& cfg) {
    return detail::christoffel_from_jet(detail::metric_jet(cometric, c1, c2, cfg));
}

/// Max |R^i_{jkl}| of the Riemann curvature of the metric dual to the given
/// co-metric.  All finite differences are taken on the smooth co-metric
/// (first and second derivatives); the inverse and the Christoffel
/// derivatives are assembled analytically:
///   d_l G        = -G (d_l g) G
///   d_l d_k G    =  G(d_l g)G(d_k g)G + G(d_k g)G(d_l g)G - G(d_l d_k g)G
///   d_l Gamma^a_{km} = 1/2 [ (d_l g)^{an} (...) + g^{an} d_l(...) ].
inline double curvature_max_component(const MatrixField& cometric, Complex c1, Complex c2,
                                      const FDConfig& cfg) {
    const detail::MetricJet jet = detail::metric_jet(cometric, c1, c2, cfg);
    Mat2 ddup[2][2];  // d_l d_k g
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k)
            ddup[l][k] = l <= k ? fd_matrix_second(cometric, c1, c2, l, k, cfg) : ddup[k][l];

    const Mat2& G = jet.down;
    Mat2 dddn[2][2];  // d_l d_k G
    for (int l = 0; l < 2; ++l)
        for (int k = 0; k < 2; ++k) {
            const Mat2 a = G * jet.dup[l] * G * jet.dup[k] * G;
            const Mat2 b = G * jet.dup[k] * G * jet.dup[l] * G;
            dddn[l][k] = a + b - G * ddup[l][k] * G;
        }

    const Christoffel Gam = detail::christoffel_from_jet(jet);
    Christoffel dGam[2];  // dGam[l] = d_l Gamma
    for (int l = 0; l < 2; ++l) {
        // d_l g^{an} appears directly; d_l of the bracket uses dddn
        for (int a = 0; a < 2; ++a)
            for (int k = 0; k < 2; ++k)
                for (int m = 0; m < 2; ++m) {
                    Complex s = 0.0;
                    for (int n = 0; n < 2; ++n) {
                        const Complex bracket =
                            jet.ddn[k].m[n][m] + jet.ddn[m].m[n][k] - jet.ddn[n].m[k][m];
                        const Complex dbracket =
                            dddn[l][k].m[n][m] + dddn[l][m].m[n][k] - dddn[l][n].m[k][m];
                        s += jet.dup[l].m[a][n] * bracket + jet.up.m[a][n] * dbracket;
                    }
                    dGam[l].g[a][k][m] = s / 2.0;
                }
    }

    double worst = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) {
                    Complex r = dGam[k].g[i][l][j] - dGam[l].g[i][k][j];
                    for (int m = 0; m < 2; ++m)
                        r += Gam.g[i][k][m] * Gam.g[m][l][j] - Gam.g[i][l][m] * Gam.g[m][k][j];
                    worst = std::max(worst, std::abs(r));
                }
    return worst;
}

}  // namespace kronfrob
