#include <catch2/catch_amalgamated.hpp>

#include "test_support.hpp"

using namespace kronfrob;
using testsup::cdist;
using testsup::Rng;

namespace {
const Complex I(0.0, 1.0);

SamplePoint draw(const SpectralFrame& f, std::uint64_t seed, int k) {
    return sample_point(f, seed, k, 1e-3);
}
}  // namespace

TEST_CASE("frobenius data", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const auto d = frobenius_data(f);
    CHECK(cdist(d.dimension, 1.0 - 2.0 / f.h) == 0.0);
    CHECK(cdist(d.degree[0], 1.0) == 0.0);
    CHECK(cdist(d.degree[1], 2.0 / f.h) == 0.0);
    CHECK(max_abs_diff(d.eta * d.eta_co, Mat2::identity()) <= 1e-15);

    const VectorField2 e = unit_field();
    CHECK(e.chart == Chart::Flat);
    CHECK(cdist(e.v1, 1.0) == 0.0);
    CHECK(cdist(e.v2, 0.0) == 0.0);
}

TEST_CASE("flat coordinates", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    auto [t1, t2] = flat_coords(f, 0.0, 0.0);
    CHECK(cdist(t1, 0.0) == 0.0);
    CHECK(cdist(t2, 1.0) == 0.0);
    std::tie(t1, t2) = flat_coords(f, 1.0, 0.0);
    CHECK(cdist(t1, 1.0) == 0.0);
    CHECK(cdist(t2, 1.0) == 0.0);

    // local expression t1 = (x1)^h - (x2)^h, t2 = x1 x2 with principal powers
    Rng rng(31);
    for (int k = 0; k < 100; ++k) {
        const auto [y1, y2] = testsup::random_fundamental_point(f, rng);
        if (std::abs(y1.imag()) >= 3.0 || std::abs(y2.imag()) >= 3.0) continue;
        const auto s = invariant_chart(f, y1, y2);
        const auto [u1, u2] = flat_coords(f, s.c1, s.c2);
        const Complex x1 = std::exp(y1), x2 = std::exp(y2);
        const Complex lt1 = std::pow(x1, f.h) - std::pow(x2, f.h);
        const Complex lt2 = x1 * x2;
        CHECK(cdist(u1, lt1) <= 1e-9 * std::max(1.0, std::abs(lt1)));
        CHECK(cdist(u2, lt2) <= 1e-9 * std::max(1.0, std::abs(lt2)));
    }
}

TEST_CASE("potential values", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Complex h = f.h;
    CHECK(cdist(potential(f, 0.0, 1.0), 1.0 / (h * h - 1.0)) <= 1e-15);
    CHECK(cdist(potential(f, 1.0, 1.0), -1.0 / (2.0 * h) + 1.0 / (h * h - 1.0)) <= 1e-15);
    CHECK_THROWS_AS(potential(f, 1.0, 0.0), std::domain_error);

    // d1 d1 d2 F = -1/h = eta_12 via finite differences
    const FDConfig cfg;
    auto F = [&](Complex a, Complex b) { return potential(f, a, b); };
    const Complex d112 = fd_third(F, Complex(0.4, 0.2), Complex(1.1, -0.3), 2, cfg);
    CHECK(cdist(d112, -1.0 / h) <= 1e-8);
}

TEST_CASE("co-metric per chart", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Complex h = f.h;

    const Mat2 gx = g_cometric(f, {Chart::X, 0.3, 0.7}).m;
    CHECK(max_abs_diff(gx, Mat2::antidiag(-1.0)) == 0.0);

    const Mat2 gy = g_cometric(f, {Chart::Cover, 0.2, -0.1}).m;
    CHECK(cdist(gy.m[0][1], -std::exp(Complex(-0.1))) <= 1e-15);
    CHECK(cdist(gy.m[0][0], 0.0) == 0.0);

    const Mat2 gs = g_cometric(f, {Chart::Quotient, 0.0, 0.0}).m;
    CHECK(cdist(gs.m[0][0], 2.0 * h * h) <= 1e-12);
    CHECK(cdist(gs.m[1][1], -2.0) <= 1e-15);
    CHECK(cdist(gs.m[0][1], 0.0) == 0.0);

    const Mat2 gt = g_cometric(f, {Chart::Flat, 0.0, 1.0}).m;
    CHECK(cdist(gt.m[0][0], 2.0 * h * h) <= 1e-12);
    CHECK(cdist(gt.m[1][1], -2.0) <= 1e-15);
    CHECK(cdist(gt.m[0][1], 0.0) == 0.0);

    CHECK_THROWS_AS(g_cometric(f, {Chart::Flat, 1.0, 0.0}), std::domain_error);
}

TEST_CASE("co-metric transforms as a tensor between charts", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    Rng rng(32);
    const double eps = 1e-5;
    for (int k = 0; k < 100; ++k) {
        const auto p = draw(f, 777, k);

        // numeric Jacobian of t(s)
        Mat2 J;
        auto tmap = [&](Complex a, Complex b) { return flat_coords(f, a, b); };
        for (int j = 0; j < 2; ++j) {
            const Complex da = j == 0 ? Complex(eps) : Complex(0.0);
            const Complex db = j == 1 ? Complex(eps) : Complex(0.0);
            const auto [p1, q1] = tmap(p.s1 + da, p.s2 + db);
            const auto [p0, q0] = tmap(p.s1 - da, p.s2 - db);
            J.m[0][j] = (p1 - p0) / (2.0 * eps);
            J.m[1][j] = (q1 - q0) / (2.0 * eps);
        }
        const Mat2 gs = g_cometric(f, {Chart::Quotient, p.s1, p.s2}).m;
        const Mat2 gt = g_cometric(f, {Chart::Flat, p.t1, p.t2}).m;
        const Mat2 pushed = J * gs * J.transposed();
        CHECK(max_abs_diff(pushed, gt) <= 1e-8 * std::max(1.0, max_abs(gt)));
    }

    // y-chart to s-chart as well
    Rng rng2(33);
    for (int k = 0; k < 100; ++k) {
        const auto [y1, y2] = testsup::random_fundamental_point(f, rng2);
        const auto s = invariant_chart(f, y1, y2);
        Mat2 J;
        for (int j = 0; j < 2; ++j) {
            const Complex d1 = j == 0 ? Complex(eps) : Complex(0.0);
            const Complex d2 = j == 1 ? Complex(eps) : Complex(0.0);
            const auto sp = invariant_chart(f, y1 + d1, y2 + d2);
            const auto sm = invariant_chart(f, y1 - d1, y2 - d2);
            J.m[0][j] = (sp.c1 - sm.c1) / (2.0 * eps);
            J.m[1][j] = (sp.c2 - sm.c2) / (2.0 * eps);
        }
        const Mat2 gy = g_cometric(f, {Chart::Cover, y1, y2}).m;
        const Mat2 gs = g_cometric(f, {Chart::Quotient, s.c1, s.c2}).m;
        const Mat2 pushed = J * gy * J.transposed();
        CHECK(max_abs_diff(pushed, gs) <= 1e-6 * std::max(1.0, max_abs(gs)));
    }
}

TEST_CASE("eta from the Lie derivative", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Mat2 expect = Mat2::antidiag(-f.h);

    const Mat2 e1 = eta_from_lie(f, 0.0, 1.0, 1e-5).m;
    CHECK(max_abs_diff(e1, expect) <= 1e-6);
    const Mat2 e2 = eta_from_lie(f, Complex(3.0), Complex(2.0, 1.0), 1e-5).m;
    CHECK(max_abs_diff(e2, expect) <= 1e-6);

    // the (1,1) entry has no t1 dependence at all, so the difference is exact
    CHECK(e2.m[0][0] == Complex(0.0));

    CHECK_THROWS_AS(eta_from_lie(f, 0.0, 1.0, 1e-12), std::invalid_argument);
    CHECK_THROWS_AS(eta_from_lie(f, 0.0, 1.0, 0.5), std::invalid_argument);
}

TEST_CASE("structure constants", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Complex h = f.h;

    // unit axiom at an arbitrary point
    const auto C = structure_constants(f, Complex(0.7, -0.2), Complex(1.3, 0.4));
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            CHECK(cdist(C(0, j, k), j == k ? 1.0 : 0.0) <= 1e-12);

    // d2 o d2 = -h^2 d1 at (0,1)
    const auto C0 = structure_constants(f, 0.0, 1.0);
    CHECK(cdist(C0(1, 1, 0), -h * h) <= 1e-12);
    CHECK(cdist(C0(1, 1, 1), 0.0) <= 1e-15);

    // commutativity everywhere sampled
    for (int k = 0; k < 50; ++k) {
        const auto p = draw(f, 55, k);
        const auto Cq = structure_constants(f, p.t1, p.t2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int m = 0; m < 2; ++m) CHECK(Cq(i, j, m) == Cq(j, i, m));
    }

    // eta-lowered constants equal the closed-form third derivatives
    for (int k = 0; k < 50; ++k) {
        const auto p = draw(f, 56, k);
        const auto Cq = structure_constants(f, p.t1, p.t2);
        const auto F3 = potential_third(f, p.t1, p.t2);
        const Mat2 eta_low = Mat2::antidiag(-1.0 / h);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int m = 0; m < 2; ++m) {
                    Complex low = 0.0;
                    for (int l = 0; l < 2; ++l) low += Cq(i, j, l) * eta_low.m[l][m];
                    CHECK(cdist(low, F3(i, j, m)) <= 1e-12 * std::max(1.0, std::abs(low)));
                }
    }
}

TEST_CASE("euler multiplication", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Complex h = f.h;

    // det C_E = (t1)^2 + 4 (t2)^h
    for (int k = 0; k < 100; ++k) {
        const auto p = draw(f, 57, k);
        const Mat2 ce = euler_multiplication(f, p.t1, p.t2).m;
        const Complex expect = p.t1 * p.t1 + 4.0 * std::exp(h * std::log(p.t2));
        CHECK(cdist(ce.det(), expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
        CHECK(cdist(ce.det(), discriminant(f, {Chart::Flat, p.t1, p.t2})) <=
              1e-12 * std::max(1.0, std::abs(expect)));
        // first column is E itself (E o e = E)
        const VectorField2 E = euler_field(f, p.t1, p.t2);
        CHECK(cdist(ce.m[0][0], E.v1) == 0.0);
        CHECK(cdist(ce.m[1][0], E.v2) == 0.0);
    }

    const Mat2 c0 = euler_multiplication(f, 0.0, 1.0).m;
    const auto [e1, e2] = c0.eigenvalues();
    const double d1 = cdist(e1, 2.0 * I), d2 = cdist(e2, -2.0 * I);
    const double s1 = cdist(e1, -2.0 * I), s2 = cdist(e2, 2.0 * I);
    CHECK(std::min(d1 + d2, s1 + s2) <= 1e-12);
}

TEST_CASE("discriminant", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    CHECK(std::abs(discriminant(f, {Chart::Quotient, 2.0 * I, 0.0})) <= 1e-12);
    CHECK(std::abs(discriminant(f, {Chart::Quotient, -2.0 * I, 0.3})) <= 1e-12);
    CHECK(cdist(discriminant(f, {Chart::Flat, 0.0, 1.0}), 4.0) <= 1e-15);

    // homogeneity under s2 shifts with s1 fixed
    Rng rng(34);
    for (int k = 0; k < 50; ++k) {
        const Complex s1 = rng.box(3.0, 1.5), s2 = rng.box(1.0, 1.0), ds = rng.box(0.5, 0.5);
        const Complex a = discriminant(f, {Chart::Quotient, s1, s2});
        const Complex b = discriminant(f, {Chart::Quotient, s1, s2 + ds});
        CHECK(cdist(b, a * std::exp(f.h * ds)) <= 1e-10 * std::max(1.0, std::abs(b)));
    }

    CHECK_THROWS_AS(discriminant(f, {Chart::X, 1.0, 1.0}), std::domain_error);
}

TEST_CASE("canonical coordinates", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const auto [u1, u2] = canonical_coords(f, 0.0, 0.0);
    CHECK(cdist(u1, 2.0 * I) == 0.0);
    CHECK(cdist(u2, -2.0 * I) == 0.0);

    for (int k = 0; k < 100; ++k) {
        const auto p = draw(f, 58, k);
        const auto [v1, v2] = canonical_coords(f, p.s1, p.s2);
        const Complex disc = discriminant(f, {Chart::Quotient, p.s1, p.s2});
        CHECK(cdist(v1 * v2, disc) <= 1e-9 * std::max(1.0, std::abs(disc)));

        const auto [e1, e2] = euler_multiplication(f, p.t1, p.t2).m.eigenvalues();
        const double straight = std::max(cdist(e1, v1), cdist(e2, v2));
        const double crossed = std::max(cdist(e1, v2), cdist(e2, v1));
        CHECK(std::min(straight, crossed) <= 1e-8 * std::max(1.0, std::abs(v1)));
    }

    // on the discriminant locus one canonical coordinate vanishes
    const auto [w1, w2] = canonical_coords(f, 2.0 * I, 0.4);
    CHECK(std::abs(w2) <= 1e-15);
    (void)w1;
}

TEST_CASE("periods", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const Complex h = f.h;

    {
        const auto [x1, x2] = periods(f, 1.0, 0.0);
        CHECK(cdist(x1 * x2, 1.0) <= 1e-10);
        CHECK(cdist(std::pow(x1, h) - std::pow(x2, h), 1.0) <= 1e-9);
    }

    CHECK_THROWS_AS(periods(f, I, 0.0), std::domain_error);
    CHECK_THROWS_AS(periods(f, 2.0 * I, 0.0), std::domain_error);
    CHECK_THROWS_AS(periods(f, 0.0, 0.0), std::domain_error);
    CHECK_NOTHROW(periods(f, 3.0 * I, 0.0));

    // algebraic identities at random points off the cut
    for (int k = 0; k < 200; ++k) {
        const auto p = draw(f, 59, k);
        const auto [x1, x2] = periods(f, p.s1, p.s2);
        const Complex t2 = std::exp(p.s2);
        CHECK(cdist(x1 * x2, t2) <= 1e-9 * std::max(1.0, std::abs(t2)));
        const Complex pw = std::pow(x1, h) - std::pow(x2, h);
        CHECK(cdist(pw, p.t1) <= 1e-9 * std::max(1.0, std::abs(p.t1)));
    }

    // at fundamental-domain points the periods agree with e^{y} up to the
    // branch ambiguity of (.)^{1/h}: a nu-power and possibly the Weyl swap
    Rng rng(35);
    for (int k = 0; k < 200; ++k) {
        const auto [y1, y2] = testsup::random_fundamental_point(f, rng);
        const auto s = invariant_chart(f, y1, y2);
        const auto [x1, x2] = periods(f, s.c1, s.c2);
        const Complex a = std::exp(y1), b = std::exp(y2);
        const Complex cands1[] = {a, f.nu * b, b / f.nu};
        const Complex cands2[] = {b, f.nu * a, a / f.nu};
        double best1 = 1e30, best2 = 1e30;
        for (const auto& c : cands1) best1 = std::min(best1, cdist(x1, c) / std::abs(x1));
        for (const auto& c : cands2) best2 = std::min(best2, cdist(x2, c) / std::abs(x2));
        CHECK(best1 <= 1e-8);
        CHECK(best2 <= 1e-8);
    }
}

TEST_CASE("periods jacobian matches finite differences", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const double eps = 1e-6;
    for (int k = 0; k < 50; ++k) {
        const auto p = draw(f, 60, k);
        const Mat2 J = periods_jacobian(f, p.s1, p.s2);
        for (int j = 0; j < 2; ++j) {
            const Complex d1 = j == 0 ? Complex(eps) : Complex(0.0);
            const Complex d2 = j == 1 ? Complex(eps) : Complex(0.0);
            const auto [p1, q1] = periods(f, p.s1 + d1, p.s2 + d2);
            const auto [p0, q0] = periods(f, p.s1 - d1, p.s2 - d2);
            CHECK(cdist(J.m[0][j], (p1 - p0) / (2.0 * eps)) <=
                  1e-7 * std::max(1.0, std::abs(J.m[0][j])));
            CHECK(cdist(J.m[1][j], (q1 - q0) / (2.0 * eps)) <=
                  1e-7 * std::max(1.0, std::abs(J.m[1][j])));
        }
    }
}

TEST_CASE("degree-two flat function", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    CHECK(cdist(flat_function_from_periods(f, 1.0, 0.0), -2.0) <= 1e-10);

    Rng rng(36);
    for (int k = 0; k < 100; ++k) {
        const auto p = draw(f, 61, k);
        const Complex v = flat_function_from_periods(f, p.s1, p.s2);
        CHECK(cdist(v, -2.0 * p.t2) <= 1e-9 * std::max(1.0, std::abs(v)));
        const Complex w = flat_function_from_periods(f, p.s1, p.s2 + 1.0);
        CHECK(cdist(w / v, std::numbers::e) <= 1e-10 * std::numbers::e);
    }
}

TEST_CASE("monodromy matrices", "[frobenius]") {
    for (int ell : {3, 5}) {
        const auto f = build_frame(QuiverParams(ell));
        const auto [m1, m2] = monodromy_matrices(f);
        const auto [r1, r2] = transformed_reflections(f);
        CHECK(max_abs_diff(m1.m, r1) <= 1e-6 * std::max(1.0, max_abs(r1)));
        CHECK(max_abs_diff(m2.m, r2) <= 1e-6 * std::max(1.0, max_abs(r2)));
        CHECK(max_abs_diff(m1.m * m1.m, Mat2::identity()) <= 1e-5);
        CHECK(max_abs_diff(m2.m * m2.m, Mat2::identity()) <= 1e-5);

        // reversed orientation gives the inverse matrices
        const auto [w1, w2] = monodromy_matrices(f, 0.5, 4096, true);
        CHECK(max_abs_diff(w1.m * m1.m, Mat2::identity()) <= 1e-5);
        CHECK(max_abs_diff(w2.m * m2.m, Mat2::identity()) <= 1e-5);
    }
    const auto f = build_frame(QuiverParams(3));
    CHECK_THROWS_AS(monodromy_matrices(f, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(monodromy_matrices(f, 200.0), std::domain_error);  // exits the ellipse

    // loop radius and step count do not matter once the loop encircles one
    // puncture and stays inside the ellipse
    const auto [a1, a2] = monodromy_matrices(f, 0.3, 1024);
    const auto [b1, b2] = monodromy_matrices(f, 0.8, 2048);
    CHECK(max_abs_diff(a1.m, b1.m) <= 1e-5);
    CHECK(max_abs_diff(a2.m, b2.m) <= 1e-5);

    // an ell beyond the usual pair, same structure
    const auto f8 = build_frame(QuiverParams(8));
    const auto [m1, m2] = monodromy_matrices(f8);
    const auto [r1, r2] = transformed_reflections(f8);
    CHECK(max_abs_diff(m1.m, r1) <= 1e-5 * std::max(1.0, max_abs(r1)));
    CHECK(max_abs_diff(m2.m, r2) <= 1e-5 * std::max(1.0, max_abs(r2)));
}

TEST_CASE("intersection form reconstruction and cartan pullback", "[frobenius]") {
    const auto f = build_frame(QuiverParams(3));
    const FDConfig cfg;
    for (int k = 0; k < 100; ++k) {
        const auto p = draw(f, 62, k);
        CHECK(intersection_reconstruction_residual(f, p.t1, p.t2, cfg) <= 1e-8);
        CHECK(cartan_pullback_residual(f, p.s1, p.s2) <= 1e-7);
    }
}
