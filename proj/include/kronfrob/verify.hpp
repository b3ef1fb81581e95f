#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fd.hpp"
#include "frobenius.hpp"

namespace kronfrob {

// ---------------------------------------------------------------------------
// Deterministic sampling.  Each sample draws from its own splitmix64 stream
// derived from (seed, index), so evaluation order cannot change results.

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
};

inline SplitMix64 sample_stream(std::uint64_t seed, std::uint64_t index) {
    SplitMix64 r{seed ^ (0xD1B54A32D192ED03ULL * (index + 1))};
    r.next();
    return r;
}

struct SamplePoint {
    Complex s1, s2;  // invariant chart
    Complex t1, t2;  // flat chart
};

/// s1 uniform on a disc of radius min(5, 0.8 a) minus discs of radius 0.3
/// around the punctures +/- 2i; s2 uniform on [-1,1]^2.  Candidates whose
/// discriminant falls below min_discriminant are rejected and counted in
/// *skipped.
inline SamplePoint sample_point(const SpectralFrame& f, std::uint64_t seed, std::uint64_t index,
                                double min_discriminant, int* skipped = nullptr) {
    const double T = f.strip_half_width();
    const double semi_axis = std::exp(T) - std::exp(-T);
    const double radius = std::min(5.0, 0.8 * semi_axis);
    SplitMix64 rng = sample_stream(seed, index);
    const Complex two_i(0.0, 2.0);
    for (;;) {
        const double re = rng.uniform(-radius, radius);
        const double im = rng.uniform(-radius, radius);
        const Complex s1(re, im);
        if (std::abs(s1) > radius) continue;
        if (std::abs(s1 - two_i) < 0.3 || std::abs(s1 + two_i) < 0.3) continue;
        const Complex s2(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        if (std::abs(discriminant(f, {Chart::Quotient, s1, s2})) < min_discriminant) {
            if (skipped) ++*skipped;
            continue;
        }
        const auto [t1, t2] = flat_coords(f, s1, s2);
        return {s1, s2, t1, t2};
    }
}

// ---------------------------------------------------------------------------
// Report structures.

struct CheckRecord {
    std::string name;
    int samples = 0;
    int skipped = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct VerificationReport {
    int ell = 0;
    std::uint64_t seed = 0;
    std::string suite;
    FDConfig config;
    std::vector<CheckRecord> checks;
    bool pass = false;

    void add(CheckRecord r) {
        r.pass = r.max_residual <= r.tolerance;
        checks.push_back(std::move(r));
    }
    void finalize() {
        pass = std::all_of(checks.begin(), checks.end(),
                           [](const CheckRecord& c) { return c.pass; });
    }
};

/// Relative residual when the reference magnitude exceeds 1, absolute otherwise.
inline double scaled_residual(double diff, double reference_magnitude) {
    return diff / std::max(1.0, reference_magnitude);
}

// ---------------------------------------------------------------------------
// Model hooks: the formulas under test, replaceable so that mutation tests
// can certify each check actually constrains its target.

struct ModelHooks {
    ScalarField potential;                                            // (t1, t2)
    MatrixField g_cometric_t;                                         // t-chart
    std::function<StructureConstants(Complex, Complex)> structure;    // (t1, t2)
    PeriodFn periods;                                                 // (s1, s2)
    Mat2 eta_lower;                                                   // eta(d_i, d_j)
    Complex degrees[2];
};

inline ModelHooks default_hooks(const SpectralFrame& f) {
    ModelHooks h;
    h.potential = [f](Complex t1, Complex t2) { return potential(f, t1, t2); };
    h.g_cometric_t = [f](Complex t1, Complex t2) {
        return g_cometric(f, {Chart::Flat, t1, t2}).m;
    };
    h.structure = [f](Complex t1, Complex t2) { return structure_constants(f, t1, t2); };
    h.periods = [f](Complex s1, Complex s2) { return periods(f, s1, s2); };
    h.eta_lower = Mat2::antidiag(-1.0 / f.h);
    h.degrees[0] = 1.0;
    h.degrees[1] = 2.0 / f.h;
    return h;
}

namespace detail {

// eta-lowered structure constants C_ijk = sum_l C_ij^l eta_lk
inline Complex lowered(const StructureConstants& C, const Mat2& eta_low, int i, int j, int k) {
    Complex s = 0.0;
    for (int l = 0; l < 2; ++l) s += C(i, j, l) * eta_low.m[l][k];
    return s;
}

inline std::pair<Complex, Complex> euler_flow(const ModelHooks& h, Complex t1, Complex t2,
                                              double tau) {
    return {std::exp(h.degrees[0] * tau) * t1, std::exp(h.degrees[1] * tau) * t2};
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Axiom suite: Definition of the Frobenius structure as executable
// predicates, plus potential consistency, eta non-degeneracy and flatness.

inline VerificationReport check_axioms(const SpectralFrame& f, int n_samples, std::uint64_t seed,
                                       const FDConfig& cfg, const ModelHooks* hooks = nullptr) {
    validate(cfg);
    if (n_samples < 1) throw std::invalid_argument("check_axioms: n_samples must be >= 1");
    const ModelHooks h = hooks ? *hooks : default_hooks(f);
    const Mat2 eta_up = h.eta_lower.inverse();
    const Complex dim = 2.0 - h.degrees[0] - h.degrees[1];

    VerificationReport rep;
    rep.ell = f.ell;
    rep.seed = seed;
    rep.suite = "axioms";
    rep.config = cfg;

    double r_selfadj = 0, r_etaflat = 0, r_cflat = 0, r_unit = 0, r_homog = 0;
    double r_comm = 0, r_assoc = 0, r_potcons = 0;
    int skipped = 0;

    for (int n = 0; n < n_samples; ++n) {
        const SamplePoint p = sample_point(f, seed, n, cfg.min_discriminant, &skipped);
        const StructureConstants C = h.structure(p.t1, p.t2);

        // (i) self-adjointness  eta(di o dj, dk) = eta(di, dj o dk)
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    const Complex lhs = detail::lowered(C, h.eta_lower, i, j, k);
                    Complex rhs = 0.0;
                    for (int l = 0; l < 2; ++l) rhs += h.eta_lower.m[i][l] * C(j, k, l);
                    r_selfadj = std::max(r_selfadj,
                                         scaled_residual(std::abs(lhs - rhs), std::abs(lhs)));
                }

        // (ii) flatness of eta: Lie_e g is the constant antidiagonal matrix
        const Mat2 lie = fd_matrix_partial(h.g_cometric_t, p.t1, p.t2, 0, cfg);
        r_etaflat = std::max(r_etaflat,
                             scaled_residual(max_abs_diff(lie, eta_up), max_abs(eta_up)));

        // (iii) flatness of C: d_l C_ijk totally symmetric (FD first derivative)
        Complex dC[2][2][2][2];
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    auto field = [&](Complex a, Complex b) {
                        Mat2 m;
                        const StructureConstants Cq = h.structure(a, b);
                        for (int k = 0; k < 2; ++k)
                            m.m[0][k] = detail::lowered(Cq, h.eta_lower, i, j, k);
                        return m;
                    };
                    const Mat2 d = fd_matrix_partial(field, p.t1, p.t2, l, cfg);
                    for (int k = 0; k < 2; ++k) dC[l][i][j][k] = d.m[0][k];
                }
        for (int l = 0; l < 2; ++l)
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k)
                        r_cflat = std::max(
                            r_cflat, scaled_residual(std::abs(dC[l][i][j][k] - dC[i][l][j][k]),
                                                     std::abs(dC[l][i][j][k])));

        // (iv) flat unit: e = d_1, so C_1j^k = delta_jk
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                r_unit = std::max(r_unit, std::abs(C(0, j, k) - (j == k ? 1.0 : 0.0)));

        // (v) homogeneity via the flow of E: central difference in the flow
        // time with one Richardson level
        {
            const double tau = 1e-2;
            auto eta_cov_at = [&](Complex a, Complex b) {
                return fd_matrix_partial(h.g_cometric_t, a, b, 0, cfg).inverse();
            };
            auto pulled_eta = [&](double s) {
                const auto [a, b] = detail::euler_flow(h, p.t1, p.t2, s);
                const Mat2 e = eta_cov_at(a, b);
                Mat2 r;
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        r.m[i][j] = std::exp((h.degrees[i] + h.degrees[j]) * s) * e.m[i][j];
                return r;
            };
            auto lie_eta_at = [&](double s) {
                return (pulled_eta(s) - pulled_eta(-s)).scaled(1.0 / (2.0 * s));
            };
            const Mat2 lie_eta =
                (lie_eta_at(tau / 2.0).scaled(4.0) - lie_eta_at(tau)).scaled(1.0 / 3.0);
            const Mat2 expect = eta_cov_at(p.t1, p.t2).scaled(2.0 - dim);
            r_homog = std::max(r_homog, scaled_residual(max_abs_diff(lie_eta, expect),
                                                        max_abs(expect)));

            auto pulled_C = [&](double s) {
                const auto [a, b] = detail::euler_flow(h, p.t1, p.t2, s);
                const StructureConstants Cq = h.structure(a, b);
                StructureConstants r{};
                for (int i = 0; i < 2; ++i)
                    for (int j = 0; j < 2; ++j)
                        for (int k = 0; k < 2; ++k)
                            r.c[i][j][k] =
                                std::exp((h.degrees[i] + h.degrees[j] - h.degrees[k]) * s) *
                                Cq(i, j, k);
                return r;
            };
            auto lie_c_at = [&](double s, int i, int j, int k) {
                const StructureConstants cp = pulled_C(s), cm = pulled_C(-s);
                return (cp(i, j, k) - cm(i, j, k)) / (2.0 * s);
            };
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) {
                        const Complex lie_c =
                            (4.0 * lie_c_at(tau / 2.0, i, j, k) - lie_c_at(tau, i, j, k)) / 3.0;
                        r_homog = std::max(r_homog,
                                           scaled_residual(std::abs(lie_c - C(i, j, k)),
                                                           std::abs(C(i, j, k))));
                    }
        }

        // commutativity and associativity of the product
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    r_comm = std::max(r_comm, std::abs(C(i, j, k) - C(j, i, k)));
                    for (int l = 0; l < 2; ++l) {
                        Complex left = 0.0, right = 0.0;
                        for (int m = 0; m < 2; ++m) {
                            left += C.c[i][j][m] * C.c[m][k][l];
                            right += C.c[j][k][m] * C.c[i][m][l];
                        }
                        r_assoc = std::max(r_assoc,
                                           scaled_residual(std::abs(left - right),
                                                           std::abs(left)));
                    }
                }

        // potential consistency: eta(di o dj, dk) = d_i d_j d_k F (FD thirds)
        for (int i = 0; i < 2; ++i)
            for (int j = i; j < 2; ++j)
                for (int k = j; k < 2; ++k) {
                    const int n1 = (i == 0) + (j == 0) + (k == 0);
                    const Complex fd3 = fd_third(h.potential, p.t1, p.t2, n1, cfg);
                    const Complex lhs = detail::lowered(C, h.eta_lower, i, j, k);
                    r_potcons = std::max(r_potcons,
                                         scaled_residual(std::abs(lhs - fd3), std::abs(fd3)));
                }
    }

    rep.add({"axiom_i_self_adjointness", n_samples, skipped, r_selfadj, 1e-9});
    rep.add({"axiom_ii_eta_flatness", n_samples, skipped, r_etaflat, 1e-6});
    rep.add({"axiom_iii_product_flatness", n_samples, skipped, r_cflat, 1e-6});
    rep.add({"axiom_iv_unit_flatness", n_samples, skipped, r_unit, 1e-9});
    rep.add({"axiom_v_homogeneity", n_samples, skipped, r_homog, 1e-6});
    rep.add({"product_commutativity", n_samples, skipped, r_comm, 1e-9});
    rep.add({"product_associativity", n_samples, skipped, r_assoc, 1e-9});
    // third-difference noise floor sits near 1e-5 at the sampling extremes,
    // where |F| dwarfs the derivative being extracted
    rep.add({"potential_consistency", n_samples, skipped, r_potcons, 1e-4});

    const double det_residual = std::abs(h.eta_lower.det() - (-1.0 / (f.h * f.h)));
    rep.add({"eta_nondegenerate", 1, 0, scaled_residual(det_residual, std::abs(1.0 / (f.h * f.h))),
             1e-10});

    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Flatness of the second structure connection (Levi-Civita of g).

/// Curvature residual at one point, or nullopt when the point is rejected by
/// the discriminant guard.
inline std::optional<double> curvature_residual_at(const SpectralFrame& f, Complex s1, Complex s2,
                                                   const FDConfig& cfg,
                                                   const ModelHooks* hooks = nullptr) {
    validate(cfg);
    if (std::abs(discriminant(f, {Chart::Quotient, s1, s2})) < cfg.min_discriminant)
        return std::nullopt;
    const ModelHooks h = hooks ? *hooks : default_hooks(f);
    const auto [t1, t2] = flat_coords(f, s1, s2);
    return curvature_max_component(h.g_cometric_t, t1, t2, cfg);
}

inline VerificationReport check_second_connection_flat(const SpectralFrame& f, int n_samples,
                                                       std::uint64_t seed, const FDConfig& cfg,
                                                       const ModelHooks* hooks = nullptr) {
    validate(cfg);
    if (n_samples < 1)
        throw std::invalid_argument("check_second_connection_flat: n_samples must be >= 1");
    const ModelHooks h = hooks ? *hooks : default_hooks(f);

    VerificationReport rep;
    rep.ell = f.ell;
    rep.seed = seed;
    rep.suite = "connection";
    rep.config = cfg;

    double worst = 0.0;
    int skipped = 0;
    for (int n = 0; n < n_samples; ++n) {
        const SamplePoint p = sample_point(f, seed, n, cfg.min_discriminant, &skipped);
        worst = std::max(worst, curvature_max_component(h.g_cometric_t, p.t1, p.t2, cfg));
    }
    rep.add({"second_connection_curvature_t", n_samples, skipped, worst, 1e-4});

    // cross-check: the constant antidiagonal co-metric of the x-chart is
    // exactly flat, FD or not
    auto const_x = [](Complex, Complex) { return Mat2::antidiag(-1.0); };
    const double xcurv = curvature_max_component(const_x, Complex(0.7, 0.1), Complex(0.4, -0.2),
                                                 cfg);
    rep.add({"x_chart_curvature_exact", 1, 0, xcurv, 0.0});

    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Dubrovin's reconstruction identity
//   g(dt^i, nabla_{d_k} dt^j) = ((d-1)/2 + d_j) sum eta^{ia} eta^{jb} d_k d_a d_b F,
// left side from FD Christoffel symbols of g, right side in closed form.

inline VerificationReport check_dubrovin(const SpectralFrame& f, int n_samples,
                                         std::uint64_t seed, const FDConfig& cfg,
                                         const ModelHooks* hooks = nullptr) {
    validate(cfg);
    if (n_samples < 1) throw std::invalid_argument("check_dubrovin: n_samples must be >= 1");
    const ModelHooks h = hooks ? *hooks : default_hooks(f);
    const Mat2 eta_up = h.eta_lower.inverse();
    const Complex dim = 2.0 - h.degrees[0] - h.degrees[1];

    VerificationReport rep;
    rep.ell = f.ell;
    rep.seed = seed;
    rep.suite = "dubrovin";
    rep.config = cfg;

    double worst[2][2][2] = {};
    int skipped = 0;
    for (int n = 0; n < n_samples; ++n) {
        const SamplePoint p = sample_point(f, seed, n, cfg.min_discriminant, &skipped);
        const Christoffel gam = christoffel_from_cometric(h.g_cometric_t, p.t1, p.t2, cfg);
        const Mat2 gco = h.g_cometric_t(p.t1, p.t2);
        const StructureConstants C = h.structure(p.t1, p.t2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 2; ++k) {
                    Complex lhs = 0.0;
                    for (int m = 0; m < 2; ++m) lhs -= gam.g[j][k][m] * gco.m[i][m];
                    // sum eta^{ia} eta^{jb} F_kab = sum_b eta^{jb} C_bk^i
                    Complex contracted = 0.0;
                    for (int b = 0; b < 2; ++b) contracted += eta_up.m[j][b] * C(b, k, i);
                    const Complex rhs = ((dim - 1.0) / 2.0 + h.degrees[j]) * contracted;
                    worst[i][j][k] = std::max(
                        worst[i][j][k], scaled_residual(std::abs(lhs - rhs), std::abs(rhs)));
                }
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                rep.add({"dubrovin_i" + std::to_string(i + 1) + "_j" + std::to_string(j + 1) +
                             "_k" + std::to_string(k + 1),
                         n_samples, skipped, worst[i][j][k], 1e-5});

    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Monodromy group: continued periods around s1 = +/- 2i reproduce the
// transformed reflections; the product has the Coxeter spectrum.

inline VerificationReport check_monodromy_group(const SpectralFrame& f, const FDConfig& cfg,
                                                const ModelHooks* hooks = nullptr) {
    validate(cfg);
    const ModelHooks h = hooks ? *hooks : default_hooks(f);

    VerificationReport rep;
    rep.ell = f.ell;
    rep.seed = 0;
    rep.suite = "monodromy";
    rep.config = cfg;

    const auto [m1, m2] = monodromy_matrices(f, 0.5, 4096, false, h.periods);
    const auto [r1, r2] = transformed_reflections(f);

    rep.add({"monodromy_m1_matches_r1", 1, 0,
             scaled_residual(max_abs_diff(m1.m, r1), max_abs(r1)), 1e-5});
    rep.add({"monodromy_m2_matches_r2", 1, 0,
             scaled_residual(max_abs_diff(m2.m, r2), max_abs(r2)), 1e-5});
    rep.add({"monodromy_involution", 1, 0, max_abs_diff(m1.m * m1.m, Mat2::identity()), 1e-5});

    const auto [e1, e2] = (m1.m * m2.m).eigenvalues();
    const double big = std::max(std::abs(e1), std::abs(e2));
    const double small = std::min(std::abs(e1), std::abs(e2));
    const double spec_res = std::max(scaled_residual(std::abs(big - f.rho), f.rho),
                                     std::abs(small - 1.0 / f.rho));
    rep.add({"monodromy_coxeter_spectrum", 1, 0, spec_res, 1e-5});

    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// Pointwise identities used by the acceptance suite.

/// | sum eta^{ia} eta^{jb} E(d_a d_b F) - g^{ij} | with E applied to the
/// closed-form Hessian by finite differences.
inline double intersection_reconstruction_residual(const SpectralFrame& f, Complex t1, Complex t2,
                                                   const FDConfig& cfg) {
    const Complex h = f.h;
    auto hessian = [&](Complex a, Complex b) {
        return Mat2{{{-b / h, -a / h}, {-a / h, h / (h - 1.0) * detail::cpow(b, h - 1.0)}}};
    };
    const Mat2 d1 = fd_matrix_partial(hessian, t1, t2, 0, cfg);
    const Mat2 d2 = fd_matrix_partial(hessian, t1, t2, 1, cfg);
    Mat2 ehess;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            ehess.m[a][b] = t1 * d1.m[a][b] + 2.0 / h * t2 * d2.m[a][b];
    const Mat2 eta_up = Mat2::antidiag(-h);
    const Mat2 rec = eta_up * ehess * eta_up.transposed();
    const Mat2 g = g_cometric(f, {Chart::Flat, t1, t2}).m;
    return scaled_residual(max_abs_diff(rec, g), max_abs(g));
}

/// | J g_t J^T - [[0,-1],[-1,0]] | where J = d(x1,x2)/d(t1,t2) through the
/// invariant chart: the Cartan form is recovered from the flat-chart
/// co-metric by the period Jacobian.
inline double cartan_pullback_residual(const SpectralFrame& f, Complex s1, Complex s2) {
    const Mat2 dx_ds = periods_jacobian(f, s1, s2);
    const auto [t1, t2] = flat_coords(f, s1, s2);
    const Mat2 dt_ds{{{std::exp(f.h * s2 / 2.0), f.h / 2.0 * t1}, {0.0, t2}}};
    const Mat2 dx_dt = dx_ds * dt_ds.inverse();
    const Mat2 g_t = g_cometric(f, {Chart::Flat, t1, t2}).m;
    const Mat2 g_x = dx_dt * g_t * dx_dt.transposed();
    return max_abs_diff(g_x, Mat2::antidiag(-1.0));
}

// ---------------------------------------------------------------------------
// Suite runner.

enum class Suite { All, Axioms, Dubrovin, Monodromy, Connection };

inline VerificationReport run_suite(const SpectralFrame& f, Suite suite, int n_samples,
                                    std::uint64_t seed, const FDConfig& cfg) {
    auto merge = [](VerificationReport& into, const VerificationReport& from) {
        into.checks.insert(into.checks.end(), from.checks.begin(), from.checks.end());
    };
    VerificationReport rep;
    rep.ell = f.ell;
    rep.config = cfg;
    switch (suite) {
        case Suite::Axioms: rep = check_axioms(f, n_samples, seed, cfg); break;
        case Suite::Dubrovin: rep = check_dubrovin(f, n_samples, seed, cfg); break;
        case Suite::Monodromy: rep = check_monodromy_group(f, cfg); break;
        case Suite::Connection:
            rep = check_second_connection_flat(f, n_samples, seed, cfg);
            break;
        case Suite::All: {
            rep.suite = "all";
            merge(rep, check_axioms(f, n_samples, seed, cfg));
            merge(rep, check_dubrovin(f, n_samples, seed, cfg));
            merge(rep, check_monodromy_group(f, cfg));
            merge(rep, check_second_connection_flat(f, n_samples, seed, cfg));
            break;
        }
    }
    rep.seed = seed;
    rep.finalize();
    return rep;
}

}  // namespace kronfrob
