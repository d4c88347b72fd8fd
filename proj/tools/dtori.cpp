// Command-line front end: build the Darboux-transform families, run the
// verification suites, sweep parameters, and export meshes and profiles.
//
// Exit codes: 0 all checks pass / artifacts written, 1 residual breach,
// 2 invalid parameters.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dtori/dtori.hpp"
#include "dtori/verify.hpp"

namespace {

using dtori::BulgeTorusFamily;
using dtori::CylinderFamily;
using dtori::verify::Check;
using Json = nlohmann::ordered_json;

int thread_count() {
    if (const char* env = std::getenv("DARBOUX_THREADS")) {
        const int n = std::atoi(env);
        if (n >= 1) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

void print_table(const std::vector<Check>& checks) {
    std::printf("%-38s %14s %12s  %s\n", "check", "max residual", "tolerance", "status");
    for (const Check& c : checks)
        std::printf("%-38s %14.4e %12.2e  %s\n", c.name.c_str(), c.max_residual, c.tolerance,
                    c.pass ? "ok" : "FAIL");
}

bool all_pass(const std::vector<Check>& checks) {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

Json checks_json(const std::vector<Check>& checks) {
    Json arr = Json::array();
    for (const Check& c : checks) {
        Json jc;
        jc["name"] = c.name;
        jc["max_residual"] = c.max_residual;
        jc["tolerance"] = c.tolerance;
        jc["pass"] = c.pass;
        arr.push_back(jc);
    }
    return arr;
}

struct ReportOptions {
    std::string path;
    bool timings = false;
};

void write_report(const ReportOptions& opt, const std::string& command, const Json& params,
                  const std::vector<Check>& checks, const Json& timings) {
    if (opt.path.empty()) return;
    Json report;
    report["command"] = command;
    report["params"] = params;
    report["checks"] = checks_json(checks);
    report["timings"] = opt.timings ? timings : Json(nullptr);
    std::ofstream os(opt.path);
    if (!os) throw dtori::IoFailure(opt.path);
    os << report.dump(2) << '\n';
}

std::pair<int, int> parse_grid(const std::string& s) {
    int nx = 0, ny = 0;
    if (std::sscanf(s.c_str(), "%dx%d", &nx, &ny) != 2 || nx < 3 || ny < 3)
        throw dtori::Error("grid must look like 64x64 with both sides >= 3");
    return {nx, ny};
}

/// Largest bulge count admissible for (u, v): n with u >= v sqrt(n^2 - 1).
int infer_bulges(double u, double v) {
    const int n = static_cast<int>(std::floor(std::sqrt((u / v) * (u / v) + 1.0) + 1e-12));
    if (n < 2) throw dtori::BelowThreshold("u/v must be at least sqrt(3) = 1.7320508...");
    return n;
}

int finish(const std::string& command, const Json& params, std::vector<Check> checks,
           const ReportOptions& report, const Json& timings, double tol_scale) {
    for (Check& c : checks) {
        c.tolerance *= tol_scale;
        c.pass = c.max_residual <= c.tolerance;
    }
    print_table(checks);
    write_report(report, command, params, checks, timings);
    if (!all_pass(checks)) {
        std::printf("FAILED: %zu check(s) breached tolerance\n",
                    static_cast<std::size_t>(std::count_if(
                        checks.begin(), checks.end(), [](const Check& c) { return !c.pass; })));
        return 1;
    }
    std::printf("all %zu checks passed\n", checks.size());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Conformal tori of revolution in S^3 via Darboux transforms"};
    app.require_subcommand(1);
    app.fallthrough(); // --seed / --report apply to every subcommand

    std::uint64_t seed = 0;
    app.add_option("--seed", seed, "seed for randomized sample sets")->capture_default_str();

    ReportOptions report;
    app.add_option("--report", report.path, "write a JSON report to this path");
    app.add_flag("--timings", report.timings, "include wall-clock timings in the report");

    double tol_scale = 1.0;
    app.add_option("--tol-scale", tol_scale, "scale every check tolerance by this factor")
        ->capture_default_str();

    // ---- torus-family ----
    auto* tf = app.add_subcommand("torus-family", "n-bulge torus family from (u, v, n)");
    double tf_u = 2.0, tf_v = 1.0;
    int tf_n = 2;
    bool tf_verify = false;
    tf->add_option("--u", tf_u, "torus parameter u")->required();
    tf->add_option("--v", tf_v, "torus parameter v")->capture_default_str();
    tf->add_option("--n", tf_n, "number of bulges (>= 2)")->capture_default_str();
    tf->add_flag("--verify", tf_verify, "run the family invariant checks");

    // ---- cylinder-family ----
    auto* cf = app.add_subcommand("cylinder-family", "cylinder family from (u, a)");
    double cf_u = 2.0, cf_a = 1.0;
    bool cf_verify = false;
    cf->add_option("--u", cf_u, "cylinder parameter u")->required();
    cf->add_option("--a", cf_a, "frequency parameter a (0 < a <= u)")->required();
    cf->add_flag("--verify", cf_verify, "run the family invariant checks");

    // ---- verify ----
    auto* vf = app.add_subcommand("verify", "run the full invariant suite");

    // ---- sweep ----
    auto* sw = app.add_subcommand("sweep", "tabulate H(0), H(1/(2nv)) over u");
    double sw_v = 1.0, sw_umax = 4.0;
    int sw_n = 2, sw_count = 50;
    std::string sw_csv;
    sw->add_option("--n", sw_n, "number of bulges")->capture_default_str();
    sw->add_option("--v", sw_v, "torus parameter v")->capture_default_str();
    sw->add_option("--u-max", sw_umax, "upper end of the u range")->capture_default_str();
    sw->add_option("--count", sw_count, "number of samples")->capture_default_str();
    sw->add_option("--csv", sw_csv, "also write the table as CSV");

    // ---- mesh ----
    auto* me = app.add_subcommand("mesh", "export an OBJ mesh of a family surface");
    double me_u = 2.0, me_v = 1.0, me_a = 0.0;
    int me_n = 0;
    std::string me_grid = "64x64", me_out = "surface.obj";
    me->add_option("--u", me_u, "parameter u")->required();
    me->add_option("--v", me_v, "torus parameter v")->capture_default_str();
    me->add_option("--n", me_n, "bulge count (default: largest admissible)");
    me->add_option("--a", me_a, "cylinder parameter a; selects the cylinder family");
    me->add_option("--grid", me_grid, "sampling grid NXxNY")->capture_default_str();
    me->add_option("-o,--output", me_out, "output OBJ path")->capture_default_str();

    // ---- profile ----
    auto* pr = app.add_subcommand("profile", "export y, kappa0, H, Rhat as CSV");
    double pr_u = 2.0, pr_v = 1.0;
    int pr_n = 2, pr_ny = 256;
    std::string pr_out = "profile.csv";
    pr->add_option("--u", pr_u, "torus parameter u")->required();
    pr->add_option("--v", pr_v, "torus parameter v")->capture_default_str();
    pr->add_option("--n", pr_n, "number of bulges")->capture_default_str();
    pr->add_option("--ny", pr_ny, "number of rows")->capture_default_str();
    pr->add_option("-o,--output", pr_out, "output CSV path")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    const int threads = thread_count();

    try {
        if (tf->parsed()) {
            const BulgeTorusFamily F(tf_u, tf_v, tf_n);
            const dtori::MeanCurvatureSpecial sp = F.mean_curvature_special();
            std::printf("n-bulge torus family (u, v, n) = (%g, %g, %d)\n", tf_u, tf_v, tf_n);
            std::printf("  s = %.12g, rho = %.12g, profile period = %.12g\n", F.s(), F.rho(),
                        F.profile_period());
            std::printf("  H(0) = %.12g, H(1/(2nv)) = %.12g, cmc = %s\n", sp.H0, sp.Hhalf,
                        sp.cmc ? "yes" : "no");
            Json params{{"u", tf_u},       {"v", tf_v},  {"n", tf_n},
                        {"seed", seed},    {"s", F.s()}, {"rho", F.rho()},
                        {"H0", sp.H0},     {"Hhalf", sp.Hhalf},
                        {"cmc", sp.cmc}};
            std::vector<Check> checks;
            if (tf_verify) checks = dtori::verify::torus_family_checks(F, seed);
            return finish("torus-family", params, checks, report, Json(nullptr), tol_scale);
        }

        if (cf->parsed()) {
            const CylinderFamily G(cf_u, cf_a);
            const double spread = G.cmc_spread();
            std::printf("cylinder family (u, a) = (%g, %g)\n", cf_u, cf_a);
            std::printf("  sqrt(u^2-a^2) = %.12g, min R^ = %.12g\n", G.sqrt_u2_a2(),
                        G.rhat_min());
            std::printf("  mean-curvature spread over a period = %.6e (%s)\n", spread,
                        G.cmc_test() ? "constant: round cylinder" : "not constant");
            Json params{{"u", cf_u},
                        {"a", cf_a},
                        {"seed", seed},
                        {"sqrt_u2_a2", G.sqrt_u2_a2()},
                        {"H_spread", spread},
                        {"cmc", G.cmc_test()}};
            std::vector<Check> checks;
            if (cf_verify) checks = dtori::verify::cylinder_family_checks(G, seed);
            return finish("cylinder-family", params, checks, report, Json(nullptr), tol_scale);
        }

        if (vf->parsed()) {
            const auto t0 = std::chrono::steady_clock::now();
            const std::vector<Check> checks = dtori::verify::run_full_suite(seed, threads);
            const double ms = std::chrono::duration<double, std::milli>(
                                  std::chrono::steady_clock::now() - t0)
                                  .count();
            Json params{{"seed", seed}, {"threads", threads}};
            Json timings{{"total_ms", ms}};
            return finish("verify", params, checks, report, timings, tol_scale);
        }

        if (sw->parsed()) {
            const double u_lo = sw_v * std::sqrt(static_cast<double>(sw_n) * sw_n - 1.0);
            if (sw_umax < u_lo) throw dtori::BelowThreshold("u-max below the family threshold");
            if (sw_count < 2) throw dtori::Error("sweep needs at least two samples");
            std::FILE* csv = nullptr;
            if (!sw_csv.empty()) {
                csv = std::fopen(sw_csv.c_str(), "w");
                if (!csv) throw dtori::IoFailure(sw_csv);
                std::fprintf(csv, "u,H0,Hhalf,cmc\n");
            }
            std::printf("%12s %16s %16s %8s\n", "u", "H(0)", "H(1/(2nv))", "cmc");
            for (int i = 0; i < sw_count; ++i) {
                const double u = u_lo + i * (sw_umax - u_lo) / (sw_count - 1);
                const BulgeTorusFamily F(u, sw_v, sw_n);
                const dtori::MeanCurvatureSpecial sp = F.mean_curvature_special();
                std::printf("%12.8f %16.10f %16.10f %8s\n", u, sp.H0, sp.Hhalf,
                            sp.cmc ? "yes" : "no");
                if (csv)
                    std::fprintf(csv, "%.17g,%.17g,%.17g,%d\n", u, sp.H0, sp.Hhalf,
                                 sp.cmc ? 1 : 0);
            }
            if (csv) std::fclose(csv);
            Json params{{"n", sw_n}, {"v", sw_v}, {"u_max", sw_umax},
                        {"count", sw_count}, {"seed", seed}};
            write_report(report, "sweep", params, {}, Json(nullptr));
            return 0;
        }

        if (me->parsed()) {
            const auto [nx, ny] = parse_grid(me_grid);
            dtori::MeshGrid mesh;
            Json params;
            if (me_a > 0.0) {
                const CylinderFamily G(me_u, me_a);
                mesh = dtori::sample_grid(G.surface(), nx, ny);
                params = Json{{"u", me_u}, {"a", me_a}, {"grid", me_grid}, {"seed", seed}};
            } else {
                const int n = me_n > 0 ? me_n : infer_bulges(me_u, me_v);
                const BulgeTorusFamily F(me_u, me_v, n);
                mesh = dtori::sample_grid(F.surface(), nx, ny);
                params = Json{{"u", me_u}, {"v", me_v}, {"n", n}, {"grid", me_grid},
                              {"seed", seed}};
            }
            dtori::write_obj(mesh, me_out);
            std::printf("wrote %s: %zu vertices, %zu faces\n", me_out.c_str(),
                        mesh.vertices.size(), mesh.faces.size());
            write_report(report, "mesh", params, {}, Json(nullptr));
            return 0;
        }

        if (pr->parsed()) {
            const BulgeTorusFamily F(pr_u, pr_v, pr_n);
            dtori::write_profiles(F, pr_ny, pr_out);
            std::printf("wrote %s: %d rows\n", pr_out.c_str(), pr_ny);
            Json params{{"u", pr_u}, {"v", pr_v}, {"n", pr_n}, {"ny", pr_ny}, {"seed", seed}};
            write_report(report, "profile", params, {}, Json(nullptr));
            return 0;
        }
    } catch (const dtori::BelowThreshold& e) {
        std::fprintf(stderr, "invalid parameters: %s\n", e.what());
        return 2;
    } catch (const dtori::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
