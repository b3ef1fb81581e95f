#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "charts.hpp"
#include "mat2.hpp"
#include "spectral.hpp"

namespace kronfrob {

enum class Variance { Contravariant, Covariant, Mixed };

/// 2x2 complex tensor tagged with its chart and variance, so that metric
/// components never get mixed up across charts.
struct Tensor2 {
    Mat2 m;
    Chart chart = Chart::Flat;
    Variance variance = Variance::Contravariant;
};

struct VectorField2 {
    Chart chart = Chart::Flat;
    Complex v1, v2;
};

/// Constant data of the Frobenius structure in flat coordinates.
///   dimension d = 1 - 2/h, degrees (deg t^1, deg t^2)/h = (1, 2/h),
///   eta(dt,dt) = [[0,-h],[-h,0]], eta(d/dt,d/dt) = [[0,-1/h],[-1/h,0]].
struct FrobeniusData {
    SpectralFrame frame;
    Complex dimension;
    Complex degree[2];
    Mat2 eta_co;   // contravariant components eta(dt^i, dt^j)
    Mat2 eta;      // covariant components eta(d_i, d_j)
};

inline FrobeniusData frobenius_data(const SpectralFrame& f) {
    FrobeniusData d;
    d.frame = f;
    d.dimension = 1.0 - 2.0 / f.h;
    d.degree[0] = 1.0;
    d.degree[1] = 2.0 / f.h;
    d.eta_co = Mat2::antidiag(-f.h);
    d.eta = Mat2::antidiag(-1.0 / f.h);
    return d;
}

/// Unit field e = d/dt1.
inline VectorField2 unit_field() { return {Chart::Flat, 1.0, 0.0}; }

/// Euler field E = t1 d/dt1 + (2/h) t2 d/dt2 at a flat-chart point.
inline VectorField2 euler_field(const SpectralFrame& f, Complex t1, Complex t2) {
    return {Chart::Flat, t1, 2.0 / f.h * t2};
}

/// Flat coordinates from the invariant chart:
///   t1 = e^{h s2 / 2} s1,  t2 = e^{s2}  (t2 never vanishes).
inline std::pair<Complex, Complex> flat_coords(const SpectralFrame& f, Complex s1, Complex s2) {
    return {std::exp(f.h * s2 / 2.0) * s1, std::exp(s2)};
}

namespace detail {

inline void require_t2(Complex t2, const char* who) {
    if (t2 == Complex(0.0)) throw std::domain_error(std::string(who) + ": t2 must be nonzero");
}

/// Principal power t^w = exp(w log t).
inline Complex cpow(Complex base, Complex expo) {
    return std::exp(expo * std::log(base));
}

}  // namespace detail

/// Frobenius potential F = -(t1)^2 t2 / (2h) + (t2)^{h+1} / (h^2 - 1),
/// principal branch for the complex power.
inline Complex potential(const SpectralFrame& f, Complex t1, Complex t2) {
    detail::require_t2(t2, "potential");
    const Complex h = f.h;
    return -t1 * t1 * t2 / (2.0 * h) + detail::cpow(t2, h + 1.0) / (h * h - 1.0);
}

/// Third partials of the potential: the only nonzero components are
/// F_112 = -1/h (all orderings) and F_222 = h (t2)^{h-2}.
struct PotentialThird {
    Complex f112, f222;
    Complex operator()(int i, int j, int k) const {
        const int ones = (i == 0) + (j == 0) + (k == 0);
        if (ones == 2) return f112;
        if (ones == 0) return f222;
        return 0.0;
    }
};

inline PotentialThird potential_third(const SpectralFrame& f, Complex /*t1*/, Complex t2) {
    detail::require_t2(t2, "potential_third");
    return {-1.0 / f.h, f.h * detail::cpow(t2, f.h - 2.0)};
}

/// Contravariant intersection form g(.,.) on the cotangent sheaf, per chart:
///   x: [[0,-1],[-1,0]]                      (constant; the Cartan form in
///                                            the beta basis)
///   y: antidiagonal -e^{-(y1+y2)}
///   s: diag(h^2 (4+(s1)^2) / (2 e^{s2}), -2 e^{-s2})
///   t: [[2 h^2 (t2)^{h-1}, -h t1], [-h t1, -2 t2]]
inline Tensor2 g_cometric(const SpectralFrame& f, const ChartPoint& p) {
    const Complex h = f.h;
    switch (p.chart) {
        case Chart::X:
            return {Mat2::antidiag(-1.0), Chart::X, Variance::Contravariant};
        case Chart::Cover:
            return {Mat2::antidiag(-std::exp(-(p.c1 + p.c2))), Chart::Cover,
                    Variance::Contravariant};
        case Chart::Quotient: {
            const Complex e = std::exp(p.c2);
            return {Mat2::diag(h * h * (4.0 + p.c1 * p.c1) / (2.0 * e), -2.0 / e),
                    Chart::Quotient, Variance::Contravariant};
        }
        case Chart::Flat: {
            detail::require_t2(p.c2, "g_cometric");
            const Complex g11 = 2.0 * h * h * detail::cpow(p.c2, h - 1.0);
            const Complex g12 = -h * p.c1;
            return {Mat2{{{g11, g12}, {g12, -2.0 * p.c2}}}, Chart::Flat,
                    Variance::Contravariant};
        }
    }
    throw std::domain_error("g_cometric: unsupported chart");
}

/// eta = Lie_e g computed by a central finite difference in t1; equals the
/// constant antidiagonal matrix [[0,-h],[-h,0]].
inline Tensor2 eta_from_lie(const SpectralFrame& f, Complex t1, Complex t2, double fd_step) {
    detail::require_t2(t2, "eta_from_lie");
    if (!(fd_step >= 1e-9 && fd_step <= 1e-2))
        throw std::invalid_argument("eta_from_lie: fd_step must lie in [1e-9, 1e-2]");
    auto g_at = [&](Complex u1) { return g_cometric(f, {Chart::Flat, u1, t2}).m; };
    auto diff = [&](double s) {
        return (g_at(t1 + s) - g_at(t1 - s)).scaled(1.0 / (2.0 * s));
    };
    const Mat2 d = diff(fd_step), d2 = diff(fd_step / 2.0);
    // one Richardson level on the O(step^2) central difference
    const Mat2 eta = (d2.scaled(4.0) - d).scaled(1.0 / 3.0);
    return {eta, Chart::Flat, Variance::Contravariant};
}

/// Structure constants C[i][j][k] of the product d_i o d_j = sum_k C_ij^k d_k,
/// from the closed-form third derivatives of the potential contracted with
/// eta^{-1}.
struct StructureConstants {
    Complex c[2][2][2];
    Complex operator()(int i, int j, int k) const { return c[i][j][k]; }
};

inline StructureConstants structure_constants(const SpectralFrame& f, Complex t1, Complex t2) {
    detail::require_t2(t2, "structure_constants");
    const PotentialThird F = potential_third(f, t1, t2);
    const Mat2 eta_up = Mat2::antidiag(-f.h);  // inverse of eta(d_i, d_j)
    StructureConstants C{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) {
                Complex s = 0.0;
                for (int a = 0; a < 2; ++a) s += eta_up.m[k][a] * F(a, i, j);
                C.c[i][j][k] = s;
            }
    return C;
}

/// Matrix of multiplication by the Euler field E = t1 d_1 + (2/h) t2 d_2
/// in the basis (d_1, d_2): [[t1, -2h (t2)^{h-1}], [(2/h) t2, t1]].
inline Tensor2 euler_multiplication(const SpectralFrame& f, Complex t1, Complex t2) {
    detail::require_t2(t2, "euler_multiplication");
    const Complex h = f.h;
    return {Mat2{{{t1, -2.0 * h * detail::cpow(t2, h - 1.0)}, {2.0 / h * t2, t1}}},
            Chart::Flat, Variance::Mixed};
}

/// Discriminant det(C_E): (t1)^2 + 4 (t2)^h in the flat chart,
/// e^{h s2} ((s1)^2 + 4) in the invariant chart (zero iff s1 = +/- 2i).
inline Complex discriminant(const SpectralFrame& f, const ChartPoint& p) {
    switch (p.chart) {
        case Chart::Flat:
            detail::require_t2(p.c2, "discriminant");
            return p.c1 * p.c1 + 4.0 * detail::cpow(p.c2, f.h);
        case Chart::Quotient:
            return std::exp(f.h * p.c2) * (p.c1 * p.c1 + 4.0);
        default:
            throw std::domain_error("discriminant: point must be in the s- or t-chart");
    }
}

/// Canonical coordinates u_{1,2} = e^{h s2 / 2}(s1 +/- 2i) = t1 +/- 2i (t2)^{h/2}.
/// They are the eigenvalues of C_E, satisfy E(u_i) = u_i, and u1 u2 equals
/// the discriminant.
inline std::pair<Complex, Complex> canonical_coords(const SpectralFrame& f, Complex s1,
                                                    Complex s2) {
    const Complex scale = std::exp(f.h * s2 / 2.0);
    const Complex two_i(0.0, 2.0);
    return {scale * (s1 + two_i), scale * (s1 - two_i)};
}

namespace detail {

inline bool on_branch_segment(Complex s1) {
    // the closed segment [-2i, 2i], with a small numerical band
    const double tol = 1e-12 * std::max(1.0, std::abs(s1));
    return std::abs(s1.real()) <= tol && std::abs(s1.imag()) <= 2.0 + tol;
}

/// sqrt((s1)^2 + 4) with the branch cut on the segment [-2i, 2i]; behaves
/// like s1 at infinity.  Realized as s1 * principal_sqrt(1 + 4/s1^2), whose
/// inner argument crosses the negative real axis exactly on the segment.
inline Complex sqrt_disc_segment_cut(Complex s1) {
    return s1 * std::sqrt(1.0 + 4.0 / (s1 * s1));
}

}  // namespace detail

/// Periods of the intersection form:
///   x1 = e^{s2/2} ((s1 + R)/2)^{1/h},  x2 = e^{s2/2} ((-s1 + R)/2)^{1/h},
/// R = sqrt((s1)^2+4) cut along [-2i, 2i].  Both powers share one principal
/// logarithm of (s1+R)/2 (note (-s1+R)/2 is its reciprocal), which makes
///   x1 x2 = e^{s2} = t2   and   (x1)^h - (x2)^h = t1
/// exact by construction.
inline std::pair<Complex, Complex> periods(const SpectralFrame& f, Complex s1, Complex s2) {
    if (detail::on_branch_segment(s1))
        throw std::domain_error("periods: s1 lies on the branch segment [-2i, 2i]");
    const Complex R = detail::sqrt_disc_segment_cut(s1);
    const Complex la = std::log((s1 + R) / 2.0);
    return {std::exp(s2 / 2.0 + la / f.h), std::exp(s2 / 2.0 - la / f.h)};
}

/// Jacobian d(x1,x2)/d(s1,s2) of the periods (rows = periods, columns = s).
inline Mat2 periods_jacobian(const SpectralFrame& f, Complex s1, Complex s2) {
    const auto [x1, x2] = periods(f, s1, s2);
    const Complex R = detail::sqrt_disc_segment_cut(s1);
    return Mat2{{{x1 / (f.h * R), x1 / 2.0}, {-x2 / (f.h * R), x2 / 2.0}}};
}

/// The degree-two flat function t(x) = sum g(d/dx^i, d/dx^j) x^i x^j = -2 x1 x2,
/// which equals -2 t2.
inline Complex flat_function_from_periods(const SpectralFrame& f, Complex s1, Complex s2) {
    const auto [x1, x2] = periods(f, s1, s2);
    const Complex value = -2.0 * x1 * x2;
    if (std::abs(value + 2.0 * std::exp(s2)) > 1e-9 * std::max(1.0, std::abs(value)))
        throw std::logic_error("flat_function_from_periods: -2 x1 x2 != -2 t2");
    return value;
}

/// Monodromy of the periods around the discriminant punctures s1 = +/- 2i.
///
/// The periods are continued stepwise around a circle of the given radius:
/// the square root is tracked by sign continuity against the previous step
/// and the logarithm of (s1+R)/2 accumulates principal increments.  The
/// continued pair is then expressed through the original branch by solving
/// a 2x2 system sampled at two distinct points past the loop closure, giving
/// matrices M with (continued x) = M (original x).
///
/// Expected values: M1 = [[0, nu], [1/nu, 0]], M2 = [[0, 1/nu], [nu, 0]];
/// they generate the Weyl group in the beta basis.
///
/// `reference` supplies the single-valued branch the continued pair is
/// expressed in; it defaults to periods() and exists so tests can probe the
/// comparison with a perturbed branch.
using PeriodFn = std::function<std::pair<Complex, Complex>(Complex, Complex)>;

inline std::pair<Tensor2, Tensor2> monodromy_matrices(const SpectralFrame& f,
                                                      double loop_radius = 0.5,
                                                      int steps = 4096,
                                                      bool clockwise = false,
                                                      const PeriodFn& reference = {}) {
    if (!(loop_radius > 0.0) || steps < 16)
        throw std::invalid_argument("monodromy_matrices: need loop_radius > 0 and steps >= 16");
    const PeriodFn ref = reference
                             ? reference
                             : PeriodFn([&f](Complex a, Complex b) { return periods(f, a, b); });

    auto continue_around = [&](Complex center) -> Mat2 {
        const double extra = 0.3;  // arc past closure for the second sample
        const double total = 2.0 * std::numbers::pi + extra;
        const int n_total = static_cast<int>(steps * total / (2.0 * std::numbers::pi));
        const double dir = clockwise ? -1.0 : 1.0;

        auto point = [&](int k) {
            const double th = dir * total * k / n_total;
            return center + loop_radius * std::exp(Complex(0.0, th));
        };

        Complex s_prev = point(0);
        Complex R_prev = detail::sqrt_disc_segment_cut(s_prev);
        Complex la = std::log((s_prev + R_prev) / 2.0);

        const int k_close = static_cast<int>(std::llround(n_total * 2.0 * std::numbers::pi / total));
        Complex cont1[2], cont2[2];
        int n_saved = 0;

        for (int k = 1; k <= n_total; ++k) {
            const Complex s = point(k);
            if (!in_ellipse_E(f, s))
                throw std::domain_error("monodromy_matrices: loop exits the ellipse E");
            Complex R = detail::sqrt_disc_segment_cut(s);
            if (std::abs(R - R_prev) > std::abs(-R - R_prev)) R = -R;
            const Complex A_new = (s + R) / 2.0;
            const Complex A_old = std::exp(la);
            la += std::log(A_new / A_old);
            R_prev = R;
            if (k == k_close || k == n_total) {
                cont1[n_saved] = std::exp(la / f.h);
                cont2[n_saved] = std::exp(-la / f.h);
                ++n_saved;
            }
        }
        if (n_saved != 2)
            throw std::logic_error("monodromy_matrices: sampling points not reached");

        // original branch at the two sample points (s2 = 0 throughout)
        const auto [b1a, b2a] = ref(point(k_close), 0.0);
        const auto [b1b, b2b] = ref(point(n_total), 0.0);
        const Mat2 basis{{{b1a, b2a}, {b1b, b2b}}};
        if (condition_estimate(basis) > 1e8)
            throw std::runtime_error("monodromy_matrices: ill-conditioned sample system");

        const Vec2 row1 = solve2(basis, {cont1[0], cont1[1]});
        const Vec2 row2 = solve2(basis, {cont2[0], cont2[1]});
        return Mat2{{{row1.a, row1.b}, {row2.a, row2.b}}};
    };

    const Complex two_i(0.0, 2.0);
    Tensor2 m1{continue_around(two_i), Chart::X, Variance::Mixed};
    Tensor2 m2{continue_around(-two_i), Chart::X, Variance::Mixed};
    return {m1, m2};
}

}  // namespace kronfrob
