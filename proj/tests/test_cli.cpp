#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "dtori/meshio.hpp"

namespace {

struct RunResult {
    int code;
    std::string output;
};

RunResult run(const std::string& args) {
    const std::string out_path = "cli_out.txt";
    const std::string cmd = std::string(DTORI_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
    const int raw = std::system(cmd.c_str());
    std::ifstream is(out_path);
    std::stringstream ss;
    ss << is.rdbuf();
#ifdef _WIN32
    const int code = raw;
#else
    const int code = WEXITSTATUS(raw);
#endif
    return {code, ss.str()};
}

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("torus-family summary and verification") {
    const RunResult r = run("torus-family --u 2 --v 1 --n 2 --verify --report tf1.json");
    INFO(r.output);
    CHECK(r.code == 0);
    CHECK(r.output.find("H(0) = 0.194444") != std::string::npos);
    CHECK(r.output.find("-0.0833333") != std::string::npos);
    CHECK(r.output.find("cmc = no") != std::string::npos);
    CHECK(r.output.find("FAIL") == std::string::npos);

    const std::string report = slurp("tf1.json");
    CHECK(report.find("\"command\": \"torus-family\"") != std::string::npos);
    CHECK(report.find("\"family.s3_membership\"") != std::string::npos);
    CHECK(report.find("\"timings\": null") != std::string::npos);
    // stable key order for golden-file diffing
    CHECK(report.find("\"command\"") < report.find("\"params\""));
    CHECK(report.find("\"params\"") < report.find("\"checks\""));
    CHECK(report.find("\"checks\"") < report.find("\"timings\""));
}

TEST_CASE("reports are byte-identical for a fixed seed") {
    REQUIRE(run("torus-family --u 2.9 --v 1 --n 3 --verify --seed 5 --report det_a.json").code == 0);
    REQUIRE(run("torus-family --u 2.9 --v 1 --n 3 --verify --seed 5 --report det_b.json").code == 0);
    CHECK(slurp("det_a.json") == slurp("det_b.json"));
    REQUIRE(run("verify --seed 3 --report v_a.json").code == 0);
    REQUIRE(run("verify --seed 3 --report v_b.json").code == 0);
    CHECK(slurp("v_a.json") == slurp("v_b.json"));
}

TEST_CASE("invalid parameters exit with code 2 and an actionable message") {
    const RunResult r = run("torus-family --u 1 --v 1 --n 2");
    CHECK(r.code == 2);
    CHECK(r.output.find("1.7320508") != std::string::npos);

    CHECK(run("cylinder-family --u 1 --a 2").code == 2);
    CHECK(run("mesh --u 0.5 --v 1 --grid 8x8 -o nope.obj").code == 2);
    CHECK(run("nonsense-subcommand").code == 2);
}

TEST_CASE("full verify succeeds under a capped worker count") {
    const RunResult r = run("verify --seed 1");
    INFO(r.output);
    CHECK(r.code == 0);
    CHECK(r.output.find("FAIL") == std::string::npos);

    const std::string out_path = "cli_out.txt";
    const std::string cmd = std::string("DARBOUX_THREADS=2 ") + DTORI_CLI_PATH +
                            " verify --seed 1 --report v_threads.json > " + out_path + " 2>&1";
    REQUIRE(std::system(cmd.c_str()) == 0);
    REQUIRE(run("verify --seed 1 --report v_serial.json").code == 0);
    CHECK(slurp("v_threads.json") == slurp("v_serial.json"));
}

TEST_CASE("mesh subcommand writes a parseable OBJ") {
    const RunResult r = run("mesh --u 1.8 --v 1 --n 2 --grid 16x16 -o cli_mesh.obj");
    INFO(r.output);
    CHECK(r.code == 0);
    const dtori::MeshGrid mesh = dtori::read_obj("cli_mesh.obj");
    CHECK(mesh.vertices.size() == 256);
    CHECK(mesh.faces.size() == 512);

    // cylinder branch
    CHECK(run("mesh --u 2.1 --a 1.0 --grid 12x12 -o cli_cyl.obj").code == 0);
    const dtori::MeshGrid cyl = dtori::read_obj("cli_cyl.obj");
    CHECK(cyl.vertices.size() == 144);
    CHECK(cyl.faces.size() == 2u * 12u * 11u);

    // same config gives byte-identical output
    CHECK(run("mesh --u 1.8 --v 1 --n 2 --grid 16x16 -o cli_mesh2.obj").code == 0);
    CHECK(slurp("cli_mesh.obj") == slurp("cli_mesh2.obj"));
}

TEST_CASE("a breached tolerance exits with code 1") {
    const RunResult r = run("torus-family --u 2 --v 1 --n 2 --verify --tol-scale 1e-20");
    CHECK(r.code == 1);
    CHECK(r.output.find("FAIL") != std::string::npos);
}

TEST_CASE("sweep and profile emit their tables") {
    const RunResult r = run("sweep --n 2 --v 1 --u-max 2.5 --count 5 --csv cli_sweep.csv");
    CHECK(r.code == 0);
    std::ifstream is("cli_sweep.csv");
    std::string line;
    int rows = 0;
    std::getline(is, line);
    CHECK(line == "u,H0,Hhalf,cmc");
    while (std::getline(is, line)) ++rows;
    CHECK(rows == 5);
    // the sweep starts at the CMC boundary
    CHECK(r.output.find("yes") != std::string::npos);

    CHECK(run("profile --u 2 --v 1 --n 2 --ny 16 -o cli_profile.csv").code == 0);
    std::ifstream ps("cli_profile.csv");
    rows = 0;
    while (std::getline(ps, line)) ++rows;
    CHECK(rows == 17);
}
