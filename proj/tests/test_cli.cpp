#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <sstream>

#include "asd/io.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using namespace asd;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("asd_cli_" + name))
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str(const std::string& leaf = "") const { return (leaf.empty() ? path : path / leaf).string(); }
};

std::string config_file(const std::string& name)
{
    return (fs::path(ASD_CONFIG_DIR) / name).string();
}

}  // namespace

TEST_CASE("deploy writes points and metadata per run")
{
    TempDir dir("deploy");
    const Result r = run_cli({"deploy", "--size", "1", "--max-layers", "5", "--nodes", "100", "--seed", "42",
                              "--runs", "4", "--out-dir", dir.str()});
    REQUIRE(r.code == cli::kOk);
    for (int k = 0; k < 4; ++k) {
        const std::string stem = io::run_stem(k);
        REQUIRE(fs::exists(dir.path / (stem + ".csv")));
        REQUIRE(fs::exists(dir.path / (stem + ".meta.json")));
        const auto pts = io::points_from_csv(io::read_file(dir.path / (stem + ".csv")));
        CHECK(pts.size() == 100);
        const auto meta = nlohmann::json::parse(io::read_file(dir.path / (stem + ".meta.json")));
        CHECK(meta["seed"] == 42);
        CHECK(meta["run"] == k);
        for (const NodePoint& p : pts) {
            CHECK(std::hypot(p.x, p.y) < 1.0);
        }
    }
    CHECK_FALSE(fs::exists(dir.path / "run_0004.csv"));
    CHECK(r.out.find("run 3:") != std::string::npos);
}

TEST_CASE("deploy rejects invalid configurations naming the invariant")
{
    TempDir dir("deploy_bad");
    const Result r = run_cli({"deploy", "--size", "0", "--max-layers", "5", "--nodes", "100", "--out-dir", dir.str()});
    CHECK(r.code == cli::kInvalidInput);
    CHECK(r.err.find("size L must be a finite value > 0") != std::string::npos);
    CHECK(fs::is_empty(dir.path));

    const Result few = run_cli({"deploy", "--size", "1", "--max-layers", "10", "--nodes", "5", "--out-dir", dir.str()});
    CHECK(few.code == cli::kInvalidInput);
    CHECK(few.err.find("every layer receives a node") != std::string::npos);

    CHECK(run_cli({"deploy", "--size", "1"}).code == cli::kInvalidInput);
    CHECK(run_cli({"deploy", "--size", "abc", "--max-layers", "5", "--nodes", "100"}).code == cli::kInvalidInput);
    CHECK(run_cli({"frobnicate"}).code == cli::kInvalidInput);
}

TEST_CASE("deploy from a config file, flags override, JSON output, plot data")
{
    TempDir dir("deploy_config");
    const Result r = run_cli({"deploy", "--config", config_file("small_scale.json"), "--nodes", "60", "--seed", "3",
                              "--format", "json", "--plot-data", "--out-dir", dir.str()});
    REQUIRE(r.code == cli::kOk);
    const auto pts = io::points_from_json(io::read_file(dir.path / "run_0000.json"));
    CHECK(pts.size() == 60);
    const auto meta = nlohmann::json::parse(io::read_file(dir.path / "run_0000.meta.json"));
    CHECK(meta["n_Lmax"] == 5);
    CHECK(meta["n_S"] == 60);
    CHECK(fs::exists(dir.path / "run_0000.plot.txt"));
    CHECK(fs::exists(dir.path / "run_0000.rings.txt"));

    CHECK(run_cli({"deploy", "--config", dir.str("missing.json")}).code == cli::kIoFailure);
}

TEST_CASE("plan subcommand")
{
    TempDir dir("plan");
    const Result r = run_cli({"plan", "--plan", config_file("two_annuli_plan.json"), "--seed", "1", "--out-dir", dir.str()});
    REQUIRE(r.code == cli::kOk);
    const auto pts = io::points_from_csv(io::read_file(dir.path / "run_0000.csv"));
    int inner = 0;
    int outer = 0;
    for (const NodePoint& p : pts) {
        const double rr = std::hypot(p.x, p.y);
        if (p.sector == 1) {
            ++inner;
            CHECK(rr < 0.5);
        } else {
            REQUIRE(p.sector == 2);
            ++outer;
            CHECK(rr >= 0.5);
            CHECK(rr < 1.0);
        }
    }
    CHECK(inner == 80);
    CHECK(outer == 20);

    const Result overlap = run_cli({"plan", "--plan", config_file("overlapping_rects_plan.json"), "--out-dir", dir.str()});
    CHECK(overlap.code == cli::kInvalidInput);
    CHECK(overlap.err.find("sectors 1 and 3 overlap") != std::string::npos);

    io::write_file(dir.path / "zero.json", R"([{"shape": "disk", "r": 1, "n": 0}])");
    const Result zero = run_cli({"plan", "--plan", dir.str("zero.json"), "--out-dir", dir.str("z")});
    CHECK(zero.code == cli::kInvalidInput);
    CHECK(zero.err.find("sector 1") != std::string::npos);

    CHECK(run_cli({"plan", "--plan", dir.str("nope.json")}).code == cli::kIoFailure);
}

TEST_CASE("validate passes fresh runs and flags displaced points")
{
    TempDir dir("validate");
    REQUIRE(run_cli({"deploy", "--config", config_file("medium_scale.json"), "--nodes", "20000", "--seed", "7",
                     "--out-dir", dir.str()})
                .code == cli::kOk);
    const std::string points = dir.str("run_0000.csv");
    const Result ok = run_cli({"validate", points});
    CHECK(ok.code == cli::kOk);
    CHECK(ok.out.rfind("PASS", 0) == 0);
    const auto report = nlohmann::json::parse(io::read_file(dir.path / "run_0000.report.json"));
    CHECK(report["pass"] == true);

    auto pts = io::points_from_csv(io::read_file(points));
    const auto meta = nlohmann::json::parse(io::read_file(dir.path / "run_0000.meta.json"));
    const double radius = meta["L"].get<double>();
    pts[11].x = 2.0 * radius;
    pts[11].y = 0.0;
    io::write_file(dir.path / "moved.csv", io::points_to_csv(pts));
    const Result bad =
        run_cli({"validate", dir.str("moved.csv"), "--meta", dir.str("run_0000.meta.json")});
    CHECK(bad.code == cli::kValidationFailure);
    CHECK(bad.err.find("point 11 lies outside layer") != std::string::npos);

    CHECK(run_cli({"validate", dir.str("moved.csv")}).code == cli::kIoFailure);
    CHECK(run_cli({"validate", dir.str("absent.csv")}).code == cli::kIoFailure);
}

TEST_CASE("validate a planned run")
{
    TempDir dir("validate_plan");
    REQUIRE(run_cli({"plan", "--plan", config_file("campus_plan.json"), "--seed", "5", "--format", "json",
                     "--out-dir", dir.str()})
                .code == cli::kOk);
    const Result r = run_cli({"validate", dir.str("run_0000.json")});
    CHECK(r.code == cli::kOk);
}

TEST_CASE("bench writes a timing table")
{
    TempDir dir("bench");
    const Result r = run_cli({"bench", "--out-dir", dir.str(), "--repeats", "1", "--nodes-from", "2", "--nodes-to", "3",
                              "--layers-from", "1", "--layers-to", "2", "--fixed-nodes", "1000", "--fixed-layers", "5"});
    REQUIRE(r.code == cli::kOk);
    const std::string csv = io::read_file(dir.path / "bench.csv");
    CHECK(csv.rfind("n_S,n_Lmax,seconds\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
    CHECK(r.out.find("n_S exponent:") != std::string::npos);
    CHECK(r.out.find("n_Lmax exponent:") != std::string::npos);
}

TEST_CASE("help exits cleanly")
{
    const Result r = run_cli({"--help"});
    CHECK(r.code == cli::kOk);
    CHECK(r.out.find("deploy") != std::string::npos);
}
