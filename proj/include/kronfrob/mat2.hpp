#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <stdexcept>
#include <utility>

namespace kronfrob {

using Complex = std::complex<double>;

struct Vec2 {
    Complex a{0.0}, b{0.0};
};

/// Dense 2x2 complex matrix; the workhorse for metrics, reflections,
/// Jacobians and monodromy representations.
struct Mat2 {
    Complex m[2][2]{{0.0, 0.0}, {0.0, 0.0}};

    static Mat2 identity() { return Mat2{{{1.0, 0.0}, {0.0, 1.0}}}; }
    static Mat2 zero() { return Mat2{}; }
    static Mat2 antidiag(Complex v) { return Mat2{{{0.0, v}, {v, 0.0}}}; }
    static Mat2 diag(Complex d0, Complex d1) { return Mat2{{{d0, 0.0}, {0.0, d1}}}; }

    Complex& operator()(int r, int c) { return m[r][c]; }
    const Complex& operator()(int r, int c) const { return m[r][c]; }

    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    Vec2 operator*(const Vec2& v) const {
        return {m[0][0] * v.a + m[0][1] * v.b, m[1][0] * v.a + m[1][1] * v.b};
    }
    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] + o.m[i][j];
        return r;
    }
    Mat2 operator-(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = m[i][j] - o.m[i][j];
        return r;
    }
    Mat2 scaled(Complex s) const {
        Mat2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) r.m[i][j] = s * m[i][j];
        return r;
    }
    Mat2 transposed() const { return Mat2{{{m[0][0], m[1][0]}, {m[0][1], m[1][1]}}}; }

    Complex det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    Complex trace() const { return m[0][0] + m[1][1]; }

    Mat2 inverse() const {
        const Complex d = det();
        if (std::abs(d) == 0.0) throw std::domain_error("Mat2::inverse: singular matrix");
        return Mat2{{{m[1][1] / d, -m[0][1] / d}, {-m[1][0] / d, m[0][0] / d}}};
    }

    /// Eigenvalues by the quadratic formula, unordered.
    std::pair<Complex, Complex> eigenvalues() const {
        const Complex t = trace(), d = det();
        const Complex disc = std::sqrt(t * t - 4.0 * d);
        return {(t + disc) / 2.0, (t - disc) / 2.0};
    }
};

inline double max_abs(const Mat2& a) {
    double r = 0.0;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r = std::max(r, std::abs(a.m[i][j]));
    return r;
}

inline double max_abs_diff(const Mat2& a, const Mat2& b) { return max_abs(a - b); }

/// Rough condition estimate for a 2x2 solve: product of row norms over |det|.
inline double condition_estimate(const Mat2& a) {
    const double r0 = std::abs(a.m[0][0]) + std::abs(a.m[0][1]);
    const double r1 = std::abs(a.m[1][0]) + std::abs(a.m[1][1]);
    const double d = std::abs(a.det());
    if (d == 0.0) return std::numeric_limits<double>::infinity();
    return r0 * r1 / d;
}

/// Solve a x = rhs for 2x2 a.
inline Vec2 solve2(const Mat2& a, const Vec2& rhs) {
    const Complex d = a.det();
    if (std::abs(d) == 0.0) throw std::domain_error("solve2: singular system");
    return {(rhs.a * a.m[1][1] - rhs.b * a.m[0][1]) / d,
            (a.m[0][0] * rhs.b - a.m[1][0] * rhs.a) / d};
}

}  // namespace kronfrob
