#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sliceq/aut.hpp"
#include "sliceq/deform.hpp"
#include "sliceq/hopf.hpp"
#include "sliceq/report_io.hpp"
#include "sliceq/stem.hpp"
#include "sliceq/verify.hpp"

namespace {

using namespace sliceq;

constexpr int kExitPass = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitConfigError = 2;
constexpr int kExitMethodMisuse = 3;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("SLICEQUAT_SEED")) {
        try {
            return std::stoull(env);
        } catch (...) {
        }
    }
    return 12345;
}

struct GlobalOptions {
    std::uint64_t seed = default_seed();
    int degree = 0;
    int samples = 0;
    double atol = 1e-12;
    double rtol = 1e-10;
    double sv_rel_tol = 1e-8;
    std::string out;
    std::string format = "json";
    std::string config_file;

    Tolerance tolerance() const { return {atol, rtol}; }
    AutConfig aut_config() const { return {degree, samples, seed, sv_rel_tol}; }
};

// Config file (JSON) fills any option the command line left at its default:
// flags override config, config overrides built-in defaults.
void apply_config(CLI::App& app, GlobalOptions& g) {
    if (g.config_file.empty()) return;
    std::ifstream in(g.config_file);
    if (!in) throw std::invalid_argument("cannot open config file " + g.config_file);
    json cfg = json::parse(in);
    auto take = [&](const char* flag, const char* key, auto& slot) {
        using T = std::decay_t<decltype(slot)>;
        if (app.count(flag) == 0 && cfg.contains(key)) slot = cfg.at(key).get<T>();
    };
    take("--seed", "seed", g.seed);
    take("--degree", "degree", g.degree);
    take("--samples", "samples", g.samples);
    take("--atol", "atol", g.atol);
    take("--rtol", "rtol", g.rtol);
    take("--sv-tol", "sv_rel_tol", g.sv_rel_tol);
    take("--format", "format", g.format);
    take("--out", "out", g.out);
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file " + path);
    out << text;
}

std::vector<Quaternion> parse_quaternion_list(const std::string& text) {
    std::vector<Quaternion> out;
    std::string token;
    std::istringstream is(text);
    while (std::getline(is, token, ';'))
        if (!token.empty()) out.push_back(parse_quaternion(token));
    return out;
}

int cmd_classify(const GlobalOptions& g, const HopfParams& params) {
    const Classification cls = classify(params, g.tolerance());
    const Quaternion beta_p = int_pow(params.beta, params.p);
    std::cout << "case: " << to_string(cls.kase) << "\n";
    std::cout << "|alpha| = " << params.alpha.norm() << "  |beta| = " << params.beta.norm()
              << "  |(alpha-beta^p)*lambda| = "
              << ((params.alpha - beta_p) * params.lambda).norm() << "\n";
    if (!cls.valid()) {
        std::cout << "reason: " << cls.reason << "\n";
        return kExitConfigError;
    }
    return kExitPass;
}

int cmd_autdim(const GlobalOptions& g, const HopfParams& params, const std::string& method) {
    if (method == "direct" && params.p > 1) {
        std::cerr << "error: nonlinear system for p > 1; the direct method needs p = 1\n";
        return kExitMethodMisuse;
    }
    const Tolerance tol = g.tolerance();
    const AutConfig cfg = g.aut_config();

    AutReport report;
    bool stable = true;
    if (method == "direct") {
        report = direct_system_nullity(params, cfg, tol);
    } else if (method == "linearized") {
        report = linearized_system_nullity(params, cfg, tol);
    } else {
        const StabilityResult res = automorphism_dimension_stable(params, cfg, tol);
        report = res.primary;
        stable = res.stable;
    }

    std::cout << "case " << to_string(report.kase) << "  method " << report.method
              << "  degree " << report.degree << "  nullity " << report.nullity
              << "  expected " << format_expected(report.expected) << "  gap "
              << report.spectral_gap() << (stable ? "" : "  UNSTABLE")
              << (report.pass ? "  PASS" : "  FAIL") << "\n";

    if (!g.out.empty()) {
        if (g.format == "csv")
            write_text(g.out, aut_csv_header() + "\n" + aut_csv_row(report) + "\n");
        else
            write_text(g.out, to_json(report).dump(2) + "\n");
    }
    return report.pass && stable ? kExitPass : kExitVerifyFail;
}

int cmd_verify_theorems(const GlobalOptions& g, bool inject_wrong_expected) {
    verify::Options opts;
    opts.seed = g.seed;
    opts.inject_wrong_expected = inject_wrong_expected;
    const auto results = verify::run_all(opts);

    bool all_pass = true;
    std::vector<AutReport> grid_reports;
    for (const auto& c : results) {
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.id << ": "
                  << c.title << "\n";
        for (const auto& r : c.rows)
            std::cout << "       " << (r.pass ? "[pass] " : "[FAIL] ") << r.label
                      << (r.detail.empty() ? "" : "  (" + r.detail + ")") << "\n";
        all_pass = all_pass && c.pass;
        for (const auto& rep : c.reports) grid_reports.push_back(rep);
    }
    std::cout << (all_pass ? "ALL CRITERIA PASS" : "CRITERIA FAILED") << "\n";

    if (!g.out.empty()) {
        if (g.format == "csv") {
            std::string text = aut_csv_header() + "\n";
            for (const auto& rep : grid_reports) text += aut_csv_row(rep) + "\n";
            write_text(g.out, text);
        } else {
            json doc = json::array();
            for (const auto& c : results) {
                json rows = json::array();
                for (const auto& r : c.rows)
                    rows.push_back({{"label", r.label}, {"pass", r.pass}, {"detail", r.detail}});
                doc.push_back({{"criterion", c.id},
                               {"title", c.title},
                               {"pass", c.pass},
                               {"rows", rows}});
            }
            write_text(g.out, doc.dump(2) + "\n");
        }
    }
    return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_scan_family(const GlobalOptions& g, const FamilyParams& family,
                    const std::vector<Quaternion>& lambdas) {
    const ScanTable table = dimension_scan(family, lambdas, g.aut_config(), g.tolerance());
    std::cout << scan_csv_header() << "\n";
    std::string csv = scan_csv_header() + "\n";
    bool all_pass = true;
    for (const auto& r : table.rows) {
        const std::string line = scan_csv_row(r);
        std::cout << line << "\n";
        csv += line + "\n";
        all_pass = all_pass && r.report.pass;
    }
    if (table.jump_asserted) {
        std::cout << "dimension jump: " << (table.jump_pass ? "PASS" : "FAIL") << "\n";
        all_pass = all_pass && table.jump_pass;
    }
    if (!g.out.empty()) {
        if (g.format == "csv") {
            write_text(g.out, csv);
        } else {
            json rows = json::array();
            for (const auto& r : table.rows)
                rows.push_back({{"lambda", to_json(r.lambda)},
                                {"case", to_string(r.kase)},
                                {"report", to_json(r.report)},
                                {"slice_regular_family", r.slice_regular_family}});
            write_text(g.out, rows.dump(2) + "\n");
        }
    }
    return all_pass ? kExitPass : kExitVerifyFail;
}

int cmd_orbit(const GlobalOptions& g, const HopfParams& params,
              const std::vector<Quaternion>& a, const std::vector<Quaternion>& b, int k_max,
              double tol_orbit) {
    if (a.size() != 2 || b.size() != 2)
        throw std::invalid_argument("points must be two quaternions 'z;w'");
    const auto k = orbit_equivalent(params, {a[0], a[1]}, {b[0], b[1]}, k_max, tol_orbit,
                                    g.tolerance());
    if (k) {
        std::cout << "equivalent: k = " << *k << "\n";
        return kExitPass;
    }
    std::cout << "not equivalent within |k| <= " << k_max << "\n";
    return kExitVerifyFail;
}

int cmd_stem_check(const GlobalOptions& g, const std::string& stem_file, double h_step,
                   int samples, double dbar_tol, const std::string& at_text) {
    PolyStem stem;
    if (stem_file.empty()) {
        stem.terms = {{1, 1, Quaternion::one()}, {2, 0, Quaternion::j()}};
    } else {
        std::ifstream in(stem_file);
        if (!in) throw std::invalid_argument("cannot open stem file " + stem_file);
        stem = poly_stem_from_json(json::parse(in));
    }
    const StemOracle oracle = stem.to_oracle();

    std::vector<double> at_coords;
    {
        std::istringstream is(at_text);
        std::string token;
        while (std::getline(is, token, ',')) at_coords.push_back(std::stod(token));
    }
    if (at_coords.size() != 4)
        throw std::invalid_argument("--at must be 'a1,b1,a2,b2'");
    const ComplexPoint2 at{at_coords[0], at_coords[1], at_coords[2], at_coords[3]};

    const double parity = parity_residual(oracle, samples, g.seed);
    const auto [r1, r2] = dbar_residual(oracle, at, h_step);
    std::cout << "parity residual: " << parity << "\n";
    std::cout << "dbar residuals:  " << r1 << "  " << r2 << "\n";
    const bool ok = parity <= 1e-10 && r1 <= dbar_tol && r2 <= dbar_tol;
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
    return ok ? kExitPass : kExitVerifyFail;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"slice-quaternionic Hopf surfaces: case taxonomy, iterates and "
                 "automorphism-group dimensions"};
    app.require_subcommand(1);
    app.fallthrough();

    GlobalOptions g;
    app.add_option("--seed", g.seed, "RNG seed (default: SLICEQUAT_SEED or 12345)");
    app.add_option("--degree", g.degree, "series truncation degree (0 = auto)");
    app.add_option("--samples", g.samples, "sample count (0 = auto)");
    app.add_option("--atol", g.atol, "absolute tolerance");
    app.add_option("--rtol", g.rtol, "relative tolerance");
    app.add_option("--sv-tol", g.sv_rel_tol, "singular-value threshold relative to sigma_max");
    app.add_option("--out", g.out, "output file");
    app.add_option("--format", g.format, "output format: json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--config", g.config_file, "JSON config file (flags override)");

    std::string alpha_text = "0.5", beta_text = "0.5", lambda_text = "0";
    int p = 1;
    auto add_params = [&](CLI::App* sub) {
        sub->add_option("--p", p, "exponent p");
        sub->add_option("--alpha", alpha_text, "alpha as 1- or 4-tuple");
        sub->add_option("--beta", beta_text, "beta as 1- or 4-tuple");
        sub->add_option("--lambda", lambda_text, "lambda as 1- or 4-tuple");
    };

    CLI::App* classify_cmd = app.add_subcommand("classify", "classify Hopf parameters");
    add_params(classify_cmd);

    CLI::App* autdim_cmd =
        app.add_subcommand("autdim", "automorphism-group dimension via nullity");
    add_params(autdim_cmd);
    std::string method = "auto";
    autdim_cmd->add_option("--method", method, "auto, direct or linearized")
        ->check(CLI::IsMember({"auto", "direct", "linearized"}));

    CLI::App* verify_cmd =
        app.add_subcommand("verify-theorems", "run the full verification grid");
    bool inject_wrong_expected = false;
    verify_cmd
        ->add_flag("--inject-wrong-expected", inject_wrong_expected,
                   "self-test: corrupt one expected value")
        ->group("");

    CLI::App* scan_cmd =
        app.add_subcommand("scan-family", "automorphism dimensions along a family");
    int kind = 2;
    std::string lambdas_text = "0;0,0,1,0";
    scan_cmd->add_option("--kind", kind, "1 (A1->A3) or 2 (A21->B)")
        ->check(CLI::IsMember({1, 2}));
    scan_cmd->add_option("--p", p, "exponent p (kind 2)");
    scan_cmd->add_option("--alpha", alpha_text, "alpha (kind 1)");
    scan_cmd->add_option("--beta", beta_text, "beta (kind 2)");
    scan_cmd->add_option("--lambdas", lambdas_text,
                         "semicolon-separated lambda list (must include 0)");

    CLI::App* orbit_cmd = app.add_subcommand("orbit", "orbit equivalence of two points");
    add_params(orbit_cmd);
    std::string point_a = "1;1", point_b = "1;1";
    int k_max = 16;
    double orbit_tol = 1e-8;
    orbit_cmd->add_option("--a", point_a, "first point 'z;w'");
    orbit_cmd->add_option("--b", point_b, "second point 'z;w'");
    orbit_cmd->add_option("--k-max", k_max, "search window");
    orbit_cmd->add_option("--tol", orbit_tol, "matching tolerance");

    CLI::App* stem_cmd = app.add_subcommand("stem-check", "parity and holomorphy residuals");
    std::string stem_file, at_text = "0.1,0.1,0.1,0.1";
    double h_step = 1e-4, dbar_tol = 1e-6;
    int stem_samples = 100;
    stem_cmd->add_option("--stem", stem_file, "JSON file with [{h,k,coeff},...]");
    stem_cmd->add_option("--h-step", h_step, "finite-difference step");
    stem_cmd->add_option("--samples", stem_samples, "parity sample count");
    stem_cmd->add_option("--dbar-tol", dbar_tol, "holomorphy pass threshold");
    stem_cmd->add_option("--at", at_text, "evaluation point 'a1,b1,a2,b2'");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfigError;
    }

    try {
        apply_config(app, g);
        const HopfParams params{p, parse_quaternion(alpha_text), parse_quaternion(beta_text),
                                parse_quaternion(lambda_text)};

        if (classify_cmd->parsed()) return cmd_classify(g, params);
        if (autdim_cmd->parsed()) return cmd_autdim(g, params, method);
        if (verify_cmd->parsed()) return cmd_verify_theorems(g, inject_wrong_expected);
        if (scan_cmd->parsed()) {
            FamilyParams family;
            if (kind == 1) {
                family.kind = FamilyParams::Kind::A1_to_A3;
                family.alpha = parse_quaternion(alpha_text);
            } else {
                family.kind = FamilyParams::Kind::A21_to_B;
                family.p = p == 1 ? 2 : p;
                family.beta = parse_quaternion(beta_text);
            }
            const auto lambdas = parse_quaternion_list(lambdas_text);
            if (lambdas.empty()) {
                std::cerr << "error: empty lambda list\n";
                return kExitConfigError;
            }
            return cmd_scan_family(g, family, lambdas);
        }
        if (orbit_cmd->parsed())
            return cmd_orbit(g, params, parse_quaternion_list(point_a),
                             parse_quaternion_list(point_b), k_max, orbit_tol);
        if (stem_cmd->parsed())
            return cmd_stem_check(g, stem_file, h_step, stem_samples, dbar_tol, at_text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitConfigError;
    }
    return kExitConfigError;
}
