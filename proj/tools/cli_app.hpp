#pragma once

// Command-line front end: subcommands roots / frame / eval / verify, all
// emitting deterministic JSON (stable key order, %.15g floats, complex
// numbers as {"re","im"}).  Exit codes: 0 success or verification pass,
// 1 verification failure, 2 usage error, 3 domain error.

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kronfrob/kronfrob.hpp"

namespace kronfrob::cli {

inline constexpr int kSchemaVersion = 1;

struct CliConfig {
    int ell = 3;
    std::uint64_t seed = 42;
    int samples = 500;
    double tolerance_scale = 1.0;
    std::string format = "json";
    FDConfig fd;
};

namespace detail {

inline Chart parse_chart(const std::string& s) {
    if (s == "x") return Chart::X;
    if (s == "y") return Chart::Cover;
    if (s == "s") return Chart::Quotient;
    if (s == "t") return Chart::Flat;
    throw std::invalid_argument("unknown chart '" + s + "' (expected x, y, s or t)");
}

inline Json report_json(const VerificationReport& rep, int samples, double tol_scale) {
    Json j = Json::object();
    j.set("schema_version", Json::integer(kSchemaVersion));
    j.set("command", Json::str("verify"));
    j.set("ell", Json::integer(rep.ell));
    j.set("seed", Json::uinteger(rep.seed));
    j.set("samples", Json::integer(samples));
    j.set("suite", Json::str(rep.suite));
    Json cfg = Json::object();
    cfg.set("base_step", Json::num(rep.config.base_step));
    cfg.set("richardson_levels", Json::integer(rep.config.richardson_levels));
    cfg.set("min_discriminant", Json::num(rep.config.min_discriminant));
    cfg.set("tolerance_scale", Json::num(tol_scale));
    j.set("config", std::move(cfg));
    Json checks = Json::array();
    bool all_pass = true;
    for (const auto& c : rep.checks) {
        Json e = Json::object();
        const double tol = c.tolerance * tol_scale;
        const bool pass = c.max_residual <= tol;
        all_pass = all_pass && pass;
        e.set("name", Json::str(c.name));
        e.set("samples", Json::integer(c.samples));
        e.set("skipped", Json::integer(c.skipped));
        e.set("max_residual", Json::num(c.max_residual));
        e.set("tolerance", Json::num(tol));
        e.set("pass", Json::boolean(pass));
        checks.push(std::move(e));
    }
    j.set("checks", std::move(checks));
    j.set("pass", Json::boolean(all_pass));
    return j;
}

inline std::string report_table(const VerificationReport& rep, double tol_scale) {
    std::ostringstream os;
    os << "suite " << rep.suite << "  ell " << rep.ell << "  seed " << rep.seed << "\n";
    bool all_pass = true;
    for (const auto& c : rep.checks) {
        const double tol = c.tolerance * tol_scale;
        const bool pass = c.max_residual <= tol;
        all_pass = all_pass && pass;
        os << (pass ? "  pass  " : "  FAIL  ") << c.name << "  max_residual "
           << Json::format_double(c.max_residual) << "  tolerance " << Json::format_double(tol)
           << "\n";
    }
    os << (all_pass ? "PASS" : "FAIL") << "\n";
    return os.str();
}

}  // namespace detail

/// Run the CLI on the given arguments (excluding the program name); stdout
/// and stderr text goes to the supplied streams.  Returns the exit code.
inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Frobenius manifold toolkit for the l-Kronecker quiver"};
    app.require_subcommand(1);

    CliConfig cfg;
    if (const char* env_seed = std::getenv("KRONECKER_SEED")) {
        try {
            cfg.seed = std::stoull(env_seed);
        } catch (const std::exception&) {
            err << "error: KRONECKER_SEED is not an integer\n";
            return 2;
        }
    }
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();

    // roots ------------------------------------------------------------
    auto* roots = app.add_subcommand("roots", "Enumerate positive roots up to a height bound");
    int max_height = 1;
    bool include_imaginary = false;
    roots->add_option("--ell", cfg.ell, "Number of quiver arrows (>= 3)")->required();
    roots->add_option("--max-height", max_height, "Height bound (>= 1)")->required();
    roots->add_flag("--imaginary", include_imaginary, "Also list positive imaginary roots");

    // frame ------------------------------------------------------------
    auto* frame_cmd = app.add_subcommand("frame", "Print the spectral frame constants");
    frame_cmd->add_option("--ell", cfg.ell, "Number of quiver arrows (>= 3)")->required();

    // eval -------------------------------------------------------------
    auto* eval = app.add_subcommand("eval", "Evaluate tensors and functions at a chart point");
    std::string chart_s = "s", point_s, what = "tensors";
    eval->add_option("--ell", cfg.ell, "Number of quiver arrows (>= 3)")->required();
    eval->add_option("--chart", chart_s, "Chart tag: x, y, s or t")->capture_default_str();
    eval->add_option("--point", point_s, "Point \"c1,c2\", entries as a+bi literals")->required();
    eval->add_option("--what", what, "What to evaluate")
        ->check(CLI::IsMember({"tensors", "potential", "periods", "canonical", "discriminant"}))
        ->capture_default_str();

    // verify -----------------------------------------------------------
    auto* verify = app.add_subcommand("verify", "Run the numerical verification suites");
    std::string suite = "all";
    verify->add_option("--ell", cfg.ell, "Number of quiver arrows (>= 3)")->required();
    verify->add_option("--samples", cfg.samples, "Sample count (>= 1)")->capture_default_str();
    verify->add_option("--seed", cfg.seed, "RNG seed (fallback: KRONECKER_SEED)");
    verify->add_option("--suite", suite, "Which suite to run")
        ->check(CLI::IsMember({"all", "axioms", "dubrovin", "monodromy", "connection"}))
        ->capture_default_str();
    verify->add_option("--base-step", cfg.fd.base_step, "FD base step")->capture_default_str();
    verify->add_option("--richardson", cfg.fd.richardson_levels, "Richardson levels")
        ->capture_default_str();
    verify->add_option("--min-discriminant", cfg.fd.min_discriminant,
                       "Reject samples with |discriminant| below this")
        ->capture_default_str();
    verify->add_option("--tolerance-scale", cfg.tolerance_scale,
                       "Multiplier applied to every check tolerance")
        ->capture_default_str();

    try {
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const QuiverParams params(cfg.ell);
        const SpectralFrame frame = build_frame(params);

        if (roots->parsed()) {
            const auto reals = enumerate_positive_real_roots(params, max_height);
            struct Entry { RootVector v; bool real; };
            std::vector<Entry> entries;
            for (const auto& v : reals) entries.push_back({v, true});
            if (include_imaginary) {
                for (int hgt = 1; hgt <= max_height; ++hgt)
                    for (int a1 = 0; a1 <= hgt; ++a1) {
                        const RootVector v{a1, hgt - a1};
                        if (is_positive_imaginary_root(params, v)) entries.push_back({v, false});
                    }
            }
            std::sort(entries.begin(), entries.end(), [](const Entry& x, const Entry& y) {
                if (x.v.height() != y.v.height()) return x.v.height() < y.v.height();
                return lex_less(x.v, y.v);
            });
            Json j = Json::object();
            j.set("schema_version", Json::integer(kSchemaVersion));
            j.set("command", Json::str("roots"));
            j.set("ell", Json::integer(cfg.ell));
            j.set("max_height", Json::integer(max_height));
            j.set("include_imaginary", Json::boolean(include_imaginary));
            Json arr = Json::array();
            for (const auto& e : entries) {
                Json r = Json::object();
                Json pair = Json::array();
                pair.push(Json::big(e.v.a1));
                pair.push(Json::big(e.v.a2));
                r.set("root", std::move(pair));
                r.set("height", Json::big(e.v.height()));
                r.set("kind", Json::str(e.real ? "real" : "imaginary"));
                arr.push(std::move(r));
            }
            j.set("roots", std::move(arr));
            if (cfg.format == "json") {
                out << j.dump() << "\n";
            } else {
                for (const auto& e : entries)
                    out << (e.real ? "real      " : "imaginary ") << "(" << e.v.a1 << ", "
                        << e.v.a2 << ")\n";
            }
            return 0;
        }

        if (frame_cmd->parsed()) {
            const auto [r1, r2] = transformed_reflections(frame);
            Json j = Json::object();
            j.set("schema_version", Json::integer(kSchemaVersion));
            j.set("command", Json::str("frame"));
            j.set("ell", Json::integer(cfg.ell));
            j.set("nu", Json::num(frame.nu));
            j.set("rho", Json::num(frame.rho));
            j.set("log_rho", Json::num(frame.log_rho));
            j.set("h", Json::complex_number(frame.h));
            const auto A = cartan_matrix(params);
            Json cart = Json::array();
            for (int i = 0; i < 2; ++i) {
                Json row = Json::array();
                for (int k = 0; k < 2; ++k) row.push(Json::big(A.m[i][k]));
                cart.push(std::move(row));
            }
            j.set("cartan", std::move(cart));
            j.set("P", Json::real_matrix(frame.P));
            j.set("P_inv", Json::real_matrix(frame.P_inv));
            j.set("R1", Json::matrix(r1));
            j.set("R2", Json::matrix(r2));
            if (cfg.format == "json") {
                out << j.dump() << "\n";
            } else {
                out << "ell " << cfg.ell << "\nnu " << Json::format_double(frame.nu) << "\nrho "
                    << Json::format_double(frame.rho) << "\nlog_rho "
                    << Json::format_double(frame.log_rho) << "\nh "
                    << Json::format_double(frame.h.imag()) << "i\n";
            }
            return 0;
        }

        if (eval->parsed()) {
            const Chart chart = detail::parse_chart(chart_s);
            const auto [c1, c2] = parse_point(point_s);
            const ChartPoint pt{chart, c1, c2};

            Json j = Json::object();
            j.set("schema_version", Json::integer(kSchemaVersion));
            j.set("command", Json::str("eval"));
            j.set("ell", Json::integer(cfg.ell));
            j.set("chart", Json::str(chart_name(chart)));
            Json ptj = Json::array();
            ptj.push(Json::complex_number(c1));
            ptj.push(Json::complex_number(c2));
            j.set("point", std::move(ptj));
            j.set("what", Json::str(what));

            auto to_flat = [&]() -> std::pair<Complex, Complex> {
                if (chart == Chart::Flat) return {c1, c2};
                if (chart == Chart::Quotient) return flat_coords(frame, c1, c2);
                throw std::domain_error(what + " requires a point in the s- or t-chart");
            };
            auto require_quotient = [&]() {
                if (chart != Chart::Quotient)
                    throw std::domain_error(what + " requires a point in the s-chart");
            };

            if (what == "tensors") {
                const Tensor2 g = g_cometric(frame, pt);
                const FrobeniusData data = frobenius_data(frame);
                j.set("g_cometric", Json::matrix(g.m));
                j.set("eta_co", Json::matrix(data.eta_co));
                j.set("eta", Json::matrix(data.eta));
            } else if (what == "potential") {
                const auto [t1, t2] = to_flat();
                Json tp = Json::array();
                tp.push(Json::complex_number(t1));
                tp.push(Json::complex_number(t2));
                j.set("t_point", std::move(tp));
                j.set("potential", Json::complex_number(potential(frame, t1, t2)));
            } else if (what == "periods") {
                require_quotient();
                const auto [x1, x2] = periods(frame, c1, c2);
                j.set("x1", Json::complex_number(x1));
                j.set("x2", Json::complex_number(x2));
            } else if (what == "canonical") {
                require_quotient();
                const auto [u1, u2] = canonical_coords(frame, c1, c2);
                j.set("u1", Json::complex_number(u1));
                j.set("u2", Json::complex_number(u2));
            } else {  // discriminant
                if (chart != Chart::Quotient && chart != Chart::Flat)
                    throw std::domain_error("discriminant requires the s- or t-chart");
                j.set("discriminant", Json::complex_number(discriminant(frame, pt)));
            }
            out << j.dump() << "\n";
            return 0;
        }

        // verify
        if (cfg.samples < 1) throw std::invalid_argument("--samples must be >= 1");
        validate(cfg.fd);
        Suite s = Suite::All;
        if (suite == "axioms") s = Suite::Axioms;
        else if (suite == "dubrovin") s = Suite::Dubrovin;
        else if (suite == "monodromy") s = Suite::Monodromy;
        else if (suite == "connection") s = Suite::Connection;
        VerificationReport rep = run_suite(frame, s, cfg.samples, cfg.seed, cfg.fd);
        rep.suite = suite;
        bool all_pass = true;
        for (const auto& c : rep.checks)
            all_pass = all_pass && c.max_residual <= c.tolerance * cfg.tolerance_scale;
        if (cfg.format == "json")
            out << detail::report_json(rep, cfg.samples, cfg.tolerance_scale).dump() << "\n";
        else
            out << detail::report_table(rep, cfg.tolerance_scale);
        return all_pass ? 0 : 1;
    } catch (const std::domain_error& e) {
        err << "domain error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace kronfrob::cli
