#include "doctest.h"
#include "oracle.hpp"

#include <vpatch/cli.hpp>
#include <vpatch/contour.hpp>
#include <vpatch/io.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

using namespace vpatch;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("vpatch-test-" + std::to_string(std::random_device{}()));
        fs::create_directories(path);
    }
    ~TempDir() { std::error_code ec; fs::remove_all(path, ec); }
    std::string str(const char* name = "") const { return (path / name).string(); }
};

int run(std::vector<std::string> args) {
    std::vector<char*> argv;
    args.insert(args.begin(), "vpatch");
    for (auto& a : args) argv.push_back(a.data());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

std::string write_disc(const TempDir& d) {
    const auto path = d.str("disc.json");
    save_json(contour_to_json(Contour::circle(1.0, 256)), path);
    return path;
}

} // namespace

TEST_CASE("contour json round trips") {
    const Contour c = PolarShape{3, 1.0, {0.1, -0.02}}.to_contour(256);
    const auto j = contour_to_json(c);
    CHECK(j["kind"] == "complex-fourier");
    const Contour back = contour_from_json(j);
    CHECK(hausdorff_distance(c, back) < 1e-13);
    CHECK(back.node_count() == c.node_count());
}

TEST_CASE("polar and polyline json forms load") {
    const nlohmann::ordered_json polar{{"kind", "polar-fourier"},
                                       {"symmetry", 2},
                                       {"base_radius", 1.0},
                                       {"cosines", {0.2}},
                                       {"nodes", 128}};
    const Contour c = contour_from_json(polar);
    CHECK(c.node_count() == 128);
    CHECK(std::abs(c.point(0.0) - cplx{1.2, 0.0}) < 1e-12);

    nlohmann::ordered_json poly{{"kind", "polyline"}};
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 128; ++i) {
        const double t = 2.0 * oracle::pi * i / 128;
        pts.push_back({std::cos(t), std::sin(t)});
    }
    poly["points"] = pts;
    const Contour d = contour_from_json(poly);
    CHECK(std::abs(d.signed_area() - oracle::pi) < 1e-6);
}

TEST_CASE("malformed contour json is rejected") {
    CHECK_THROWS_AS((void)contour_from_json({{"kind", "hexagon"}}), ContourError);
    CHECK_THROWS_AS((void)contour_from_json({{"kind", "complex-fourier"},
                                             {"coefficients", {{1.0, 0.0}}},
                                             {"k_min", -2},
                                             {"k_max", 2}}),
                    ContourError);
}

TEST_CASE("digest is stable and content sensitive") {
    TempDir d;
    const auto p1 = d.str("a.json");
    const auto p2 = d.str("b.json");
    std::ofstream(p1) << "{\"x\":1}";
    std::ofstream(p2) << "{\"x\":2}";
    CHECK(fnv1a_file_hex(p1) == fnv1a_file_hex(p1));
    CHECK(fnv1a_file_hex(p1) != fnv1a_file_hex(p2));
    CHECK(fnv1a_file_hex(p1).size() == 16);
}

TEST_CASE("residual command writes a report and a manifest") {
    TempDir d;
    const auto disc = write_disc(d);
    CHECK(run({"residual", "--contour", disc, "--omega", "-1", "--out", d.str()}) == 0);

    const auto rep = load_json(d.str("residual-report.json"));
    CHECK(rep["kind"] == "residual-report");
    CHECK(rep["sup_norm"].get<double>() < 1e-12);
    CHECK(rep["nodes"] == 256);

    const auto man = load_json(d.str("manifest.json"));
    CHECK(man["kind"] == "run-manifest");
    CHECK(man["inputs"].size() == 1);
    CHECK(man["outputs"].size() == 1);
    CHECK(man["inputs"][0]["fnv1a"] == fnv1a_file_hex(disc));
}

TEST_CASE("residual with a tolerance gate fails loud shapes") {
    TempDir d;
    const auto path = d.str("peanut.json");
    save_json(contour_to_json(PolarShape{2, 1.0, {0.6}}.to_contour(256)), path);
    CHECK(run({"residual", "--contour", path, "--omega", "0.3", "--tol", "1e-8",
               "--out", d.str()}) == 2);
    const auto rep = load_json(d.str("residual-report.json"));
    CHECK(rep["pass"] == false);
}

TEST_CASE("solve command writes a valid solution") {
    TempDir d;
    CHECK(run({"solve", "--m", "2", "--omega", "-0.1", "--amp0", "0.05", "--modes", "3",
               "--out", d.str()}) == 0);
    const auto sol = load_json(d.str("solution.json"));
    CHECK(sol["kind"] == "vstate-solution");
    CHECK(sol["residual"].get<double>() < 1e-10);
    for (double a : sol["shape"]["cosines"]) CHECK(std::abs(a) < 1e-8);
}

TEST_CASE("solution files feed straight back into --contour") {
    TempDir d;
    CHECK(run({"solve", "--m", "3", "--omega", "0.33", "--omega-free", "--pin", "0.04",
               "--modes", "12", "--out", d.str()}) == 0);
    const auto sol = load_json(d.str("solution.json"));
    char omega[40];
    std::snprintf(omega, sizeof omega, "%.17g", sol["omega"].get<double>());
    CHECK(run({"residual", "--contour", d.str("solution.json"), "--omega", omega, "--tol",
               "1e-9", "--out", d.str()}) == 0);
    const auto rep = load_json(d.str("residual-report.json"));
    CHECK(rep["pass"] == true);
}

TEST_CASE("solve surfaces the singular system as an error report") {
    TempDir d;
    CHECK(run({"solve", "--m", "2", "--omega", "0.25", "--amp0", "0.01", "--modes", "2",
               "--out", d.str()}) == 2);
    const auto rep = load_json(d.str("error-report.json"));
    CHECK(rep["kind"] == "error-report");
    CHECK(!rep["reason"].get<std::string>().empty());
}

TEST_CASE("sigma-check exit codes follow the verdict") {
    TempDir d;
    const auto disc = write_disc(d);
    CHECK(run({"sigma-check", "--contour", disc, "--alpha", "critical", "--out", d.str()}) == 0);

    const auto peanut = d.str("peanut.json");
    save_json(contour_to_json(PolarShape{2, 1.0, {0.6}}.to_contour(256)), peanut);
    CHECK(run({"sigma-check", "--contour", peanut, "--alpha", "critical", "--out", d.str()}) == 2);
    const auto rep = load_json(d.str("sigma-report.json"));
    CHECK(rep["verdict"] == false);
    CHECK(rep["sector"]["pass"] == false);
}

TEST_CASE("probe command round trip") {
    TempDir d;
    const auto disc = write_disc(d);
    CHECK(run({"probe", "--kind", "half-omega", "--contour", disc, "--omega", "0.5",
               "--out", d.str()}) == 0);
    const auto rep = load_json(d.str("probe-report.json"));
    CHECK(rep["probe"] == "half-omega");
    CHECK(rep["pass"] == true);
    CHECK(rep["margin"].get<double>() < 1e-10);
}

TEST_CASE("unknown flags and missing files exit 1") {
    TempDir d;
    CHECK(run({"residual", "--contour", d.str("absent.json"), "--omega", "0"}) == 1);
    CHECK(run({"no-such-command"}) == 1);
    CHECK(run({"probe", "--kind", "bogus", "--contour", write_disc(d), "--omega", "0"}) == 1);
}

TEST_CASE("identical runs produce identical payload digests") {
    TempDir d1, d2;
    const auto disc1 = write_disc(d1);
    // same bytes at a different path
    const auto disc2 = d2.str("disc.json");
    fs::copy_file(disc1, disc2);

    CHECK(run({"residual", "--contour", disc1, "--omega", "0.25", "--out", d1.str()}) == 0);
    CHECK(run({"residual", "--contour", disc2, "--omega", "0.25", "--out", d2.str()}) == 0);

    const auto m1 = load_json(d1.str("manifest.json"));
    const auto m2 = load_json(d2.str("manifest.json"));
    CHECK(m1["outputs"][0]["fnv1a"] == m2["outputs"][0]["fnv1a"]);
}

TEST_CASE("field command emits the full grid") {
    TempDir d;
    const auto disc = write_disc(d);
    CHECK(run({"field", "--contour", disc, "--omega", "-1", "--nx", "8", "--ny", "8",
               "--out", d.str()}) == 0);
    std::ifstream csv(d.str("field.csv"));
    REQUIRE(csv.good());
    std::string line;
    std::getline(csv, line);
    CHECK(line == "x,y,psi,vx,vy,phi,re_C,im_C");
    int rows = 0;
    while (std::getline(csv, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 64);
}
