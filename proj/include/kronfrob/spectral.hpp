#pragma once

#include <cmath>
#include <numbers>
#include <utility>

#include "mat2.hpp"
#include "root_lattice.hpp"

namespace kronfrob {

/// Spectral constants of the Coxeter transformation and the basis change
/// P that brings the Cartan form to the antidiagonal normal form.
///
///   nu  = (ell + sqrt(ell^2-4))/2,  rho = nu^2  (spectral radius of c)
///   h   = 2 pi i / log rho          (purely imaginary, generalizes the
///                                    Coxeter number)
///   P   = [[nu, 1], [1, nu]] / sqrt((ell^2-4) nu),  P^T A P = [[0,-1],[-1,0]]
struct SpectralFrame {
    int ell = 3;
    double nu = 0.0;
    double rho = 0.0;
    double log_rho = 0.0;
    Complex h;
    Mat2 P;
    Mat2 P_inv;

    double log_nu() const { return 0.5 * log_rho; }
    /// kappa = |h| = 2 pi / log rho; h = i kappa.
    double kappa() const { return 2.0 * std::numbers::pi / log_rho; }
    /// Half-width pi^2 / log rho of the invariant-chart image in Re(asinh).
    double strip_half_width() const { return std::numbers::pi * std::numbers::pi / log_rho; }
};

inline SpectralFrame build_frame(const QuiverParams& p) {
    SpectralFrame f;
    f.ell = p.ell;
    const double ell = static_cast<double>(p.ell);
    const double disc = std::sqrt(ell * ell - 4.0);
    f.nu = (ell + disc) / 2.0;
    f.rho = (ell * ell - 2.0 + std::sqrt(ell * ell * ell * ell - 4.0 * ell * ell)) / 2.0;
    f.log_rho = std::log(f.rho);
    f.h = Complex(0.0, 2.0 * std::numbers::pi / f.log_rho);
    const double scale = 1.0 / std::sqrt((ell * ell - 4.0) * f.nu);
    f.P = Mat2{{{f.nu * scale, scale}, {scale, f.nu * scale}}};
    f.P_inv = f.P.inverse();
    return f;
}

/// Reflection matrices in the beta basis: R1 = [[0, nu], [1/nu, 0]] and
/// R2 = [[0, 1/nu], [nu, 0]]; both equal P^{-1} r_i P.
inline std::pair<Mat2, Mat2> transformed_reflections(const SpectralFrame& f) {
    const Mat2 r1 = Mat2{{{0.0, f.nu}, {1.0 / f.nu, 0.0}}};
    const Mat2 r2 = Mat2{{{0.0, 1.0 / f.nu}, {f.nu, 0.0}}};
    return {r1, r2};
}

/// P^T A P; equals [[0, -1], [-1, 0]] for every ell.
inline Mat2 gram_in_beta(const SpectralFrame& f) {
    const double ell = static_cast<double>(f.ell);
    const Mat2 A{{{2.0, -ell}, {-ell, 2.0}}};
    return f.P.transposed() * A * f.P;
}

}  // namespace kronfrob
