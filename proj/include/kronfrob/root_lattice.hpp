#pragma once

#include <algorithm>
#include <stdexcept>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace kronfrob {

// Lattice arithmetic is exact and arbitrary-width: Weyl orbits grow like
// powers of the Coxeter spectral radius, which overflows 64 bits quickly.
using BigInt = boost::multiprecision::cpp_int;

/// Parameters of the l-Kronecker quiver: two vertices, ell parallel arrows.
struct QuiverParams {
    int ell;
    explicit QuiverParams(int ell_) : ell(ell_) {
        if (ell_ < 3) throw std::invalid_argument("QuiverParams: ell must be >= 3");
    }
};

/// Lattice vector in the simple-root basis (alpha_1, alpha_2).
struct RootVector {
    BigInt a1{0}, a2{0};

    RootVector() = default;
    RootVector(BigInt x, BigInt y) : a1(std::move(x)), a2(std::move(y)) {}
    RootVector(long x, long y) : a1(x), a2(y) {}

    bool operator==(const RootVector& o) const { return a1 == o.a1 && a2 == o.a2; }
    bool operator!=(const RootVector& o) const { return !(*this == o); }

    BigInt height() const { return a1 + a2; }
    bool is_zero() const { return a1 == 0 && a2 == 0; }
    bool in_positive_cone() const { return a1 >= 0 && a2 >= 0; }
    RootVector negated() const { return {-a1, -a2}; }
};

inline bool lex_less(const RootVector& u, const RootVector& v) {
    return std::tie(u.a1, u.a2) < std::tie(v.a1, v.a2);
}

/// Exact 2x2 integer matrix acting on RootVector columns.
struct IntegerMatrix2 {
    BigInt m[2][2];

    RootVector apply(const RootVector& v) const {
        return {m[0][0] * v.a1 + m[0][1] * v.a2, m[1][0] * v.a1 + m[1][1] * v.a2};
    }
    IntegerMatrix2 operator*(const IntegerMatrix2& o) const {
        IntegerMatrix2 r;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                r.m[i][j] = m[i][0] * o.m[0][j] + m[i][1] * o.m[1][j];
        return r;
    }
    bool operator==(const IntegerMatrix2& o) const {
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                if (m[i][j] != o.m[i][j]) return false;
        return true;
    }
    BigInt det() const { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }
    BigInt trace() const { return m[0][0] + m[1][1]; }
    static IntegerMatrix2 identity() { return {{{1, 0}, {0, 1}}}; }
};

inline RootVector simple_root(int i) {
    if (i != 1 && i != 2) throw std::invalid_argument("simple_root: index must be 1 or 2");
    return i == 1 ? RootVector{1, 0} : RootVector{0, 1};
}

/// [[2, -ell], [-ell, 2]].
inline IntegerMatrix2 cartan_matrix(const QuiverParams& p) {
    return {{{2, -p.ell}, {-p.ell, 2}}};
}

/// Symmetric bilinear form I(u, v) = u^T A v on the root lattice.
inline BigInt bilinear_I(const QuiverParams& p, const RootVector& u, const RootVector& v) {
    return 2 * u.a1 * v.a1 - BigInt(p.ell) * (u.a1 * v.a2 + u.a2 * v.a1) + 2 * u.a2 * v.a2;
}

/// Reflection in the simple root alpha_i: v - I(v, alpha_i) alpha_i.
inline RootVector reflect(const QuiverParams& p, int i, const RootVector& v) {
    const RootVector alpha = simple_root(i);
    const BigInt c = bilinear_I(p, v, alpha);
    return {v.a1 - c * alpha.a1, v.a2 - c * alpha.a2};
}

inline IntegerMatrix2 reflection_matrix(const QuiverParams& p, int i) {
    if (i == 1) return {{{-1, p.ell}, {0, 1}}};
    if (i == 2) return {{{1, 0}, {p.ell, -1}}};
    throw std::invalid_argument("reflection_matrix: index must be 1 or 2");
}

/// Coxeter transformation c = r1 r2; matrix [[ell^2-1, -ell], [ell, -1]].
inline IntegerMatrix2 coxeter_matrix(const QuiverParams& p) {
    return reflection_matrix(p, 1) * reflection_matrix(p, 2);
}

namespace detail {

inline BigInt abs_height(const RootVector& v) {
    return abs(v.a1) + abs(v.a2);
}

// Height-reduction loop: repeatedly apply the reflection that strictly
// decreases |a1|+|a2|.  Returns true iff a (+/-) simple root is reached.
inline bool reduces_to_simple(const QuiverParams& p, RootVector v) {
    const RootVector s1 = simple_root(1), s2 = simple_root(2);
    while (true) {
        if (v == s1 || v == s2 || v == s1.negated() || v == s2.negated()) return true;
        const BigInt cur = abs_height(v);
        RootVector best = v;
        BigInt best_h = cur;
        for (int i = 1; i <= 2; ++i) {
            RootVector w = reflect(p, i, v);
            BigInt hw = abs_height(w);
            if (hw < best_h) {
                best = w;
                best_h = hw;
            }
        }
        if (best_h == cur) return false;
        v = best;
    }
}

}  // namespace detail

/// True iff v lies in the Weyl orbit of a simple root.  Uses the rank-2
/// quadratic criterion I(v,v) = 2 cross-checked by the reduction loop.
inline bool is_real_root(const QuiverParams& p, const RootVector& v) {
    if (bilinear_I(p, v, v) != 2) return false;
    return detail::reduces_to_simple(p, v);
}

/// All positive real roots of height <= max_height, sorted by height then
/// lexicographically.  Built from the two reflection chains out of the
/// simple roots (alternating r2, r1, ... and r1, r2, ...), which exhaust
/// the positive real roots in rank 2.
inline std::vector<RootVector> enumerate_positive_real_roots(const QuiverParams& p,
                                                             int max_height) {
    if (max_height < 1)
        throw std::invalid_argument("enumerate_positive_real_roots: max_height must be >= 1");
    std::vector<RootVector> out;
    auto chain = [&](RootVector v, int first_reflection) {
        int i = first_reflection;
        while (v.height() <= max_height) {
            out.push_back(v);
            v = reflect(p, i, v);
            i = 3 - i;
        }
    };
    chain(simple_root(1), 2);
    chain(simple_root(2), 1);
    std::sort(out.begin(), out.end(), [](const RootVector& u, const RootVector& v) {
        if (u.height() != v.height()) return u.height() < v.height();
        return lex_less(u, v);
    });
    return out;
}

/// True iff v lies in W(K), K the fundamental cone of imaginary roots.
/// While some I(v, alpha_i) > 0, apply r_i; each step strictly lowers the
/// height inside the positive cone, so the loop terminates.
inline bool is_positive_imaginary_root(const QuiverParams& p, RootVector v) {
    while (true) {
        if (!v.in_positive_cone() || v.is_zero()) return false;
        const BigInt c1 = bilinear_I(p, v, simple_root(1));
        const BigInt c2 = bilinear_I(p, v, simple_root(2));
        if (c1 <= 0 && c2 <= 0) return true;
        v = reflect(p, c1 > 0 ? 1 : 2, v);
    }
}

/// Imaginary cone membership: z1, z2 >= 0 and z1^2 - ell z1 z2 + z2^2 <= 0.
inline bool in_imaginary_cone(const QuiverParams& p, double z1, double z2) {
    if (z1 < 0.0 || z2 < 0.0) return false;
    return z1 * z1 - static_cast<double>(p.ell) * z1 * z2 + z2 * z2 <= 0.0;
}

/// Exact integer variant used for lattice points.
inline bool in_imaginary_cone(const QuiverParams& p, const RootVector& v) {
    if (!v.in_positive_cone()) return false;
    return v.a1 * v.a1 - BigInt(p.ell) * v.a1 * v.a2 + v.a2 * v.a2 <= 0;
}

}  // namespace kronfrob
