// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "asd/auto_deploy.hpp"
#include "asd/io.hpp"
#include "asd/planned_deploy.hpp"
#include "asd/scaling.hpp"
#include "asd/stats.hpp"
#include "cli.hpp"

namespace fs = std::filesystem;
using namespace asd;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_seconds, const std::function<Outcome()>& body)
{
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
        o = body();
    } catch (const std::exception& e) {
        o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < budget_seconds;
    const bool pass = o.pass && in_time;
    failures += !pass;
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2fs/%.0fs", secs, budget_seconds);
    std::cout << (pass ? "PASS" : "FAIL") << " [" << id << "] " << name << " -- " << o.detail << " (" << timing
              << (in_time ? "" : ", over budget") << ")" << std::endl;
}

int run_cli(std::vector<std::string> args, std::string* err_text = nullptr)
{
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run(args, out, err);
    if (err_text) {
        *err_text = err.str();
    }
    return code;
}

fs::path scratch(const std::string& name)
{
    const fs::path p = fs::temp_directory_path() / ("asd_acceptance_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os.precision(4);
    os << v;
    return os.str();
}

Outcome split_conservation()
{
    long checked = 0;
    long bad = 0;
    for (std::int64_t n_s = 2; n_s <= 500; ++n_s) {
        for (int n_l = 2; n_l <= std::min<std::int64_t>(n_s, 20); ++n_l) {
            const NodeSplit s = split_nodes(n_s, n_l);
            const bool ok = s.n_in + (n_l - 1) * s.n_out == n_s && s.n_out <= s.n_in && s.n_in <= s.n_out + n_l - 1;
            bad += !ok;
            ++checked;
        }
    }
    return {bad == 0, std::to_string(checked) + " pairs, " + std::to_string(bad) + " failures"};
}

Outcome layer_count_law()
{
    std::string detail;
    bool pass = true;
    for (int n_max : {2, 3, 5, 10}) {
        RandomStream s(2024, static_cast<std::uint64_t>(n_max));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(n_max - 1), 0);
        for (int i = 0; i < 100'000; ++i) {
            ++counts[static_cast<std::size_t>(sample_layer_count(n_max, s) - 2)];
        }
        if (n_max == 2) {
            // a single admissible value: the law is degenerate, every draw must be 2
            pass &= counts[0] == 100'000;
            detail += "n_Lmax=2 all 2; ";
            continue;
        }
        const Chi2Result r = chi2_equal_expected(counts, 0.001);
        pass &= r.pass;
        detail += "n_Lmax=" + std::to_string(n_max) + " chi2=" + fmt(r.statistic) + "<" + fmt(r.critical) + "; ";
    }

    // round to nearest on v = 1.5 + u (n_Lmax - 1); exact half-way points are measure-zero and counted apart
    long mismatches = 0;
    long ties = 0;
    RandomStream inject(77, 0);
    for (int n_max : {2, 3, 5, 10, 20, 100}) {
        for (int i = 0; i < 1'000'000; ++i) {
            const double u = inject.uniform01();
            const double v = 1.5 + u * static_cast<double>(n_max - 1);
            if (v - std::floor(v) == 0.5) {
                ++ties;
                continue;
            }
            mismatches += threshold_index(u, n_max) != static_cast<int>(std::lround(v));
        }
    }
    pass &= mismatches == 0;
    detail += "6e6 injected u0: " + std::to_string(mismatches) + " mismatches, " + std::to_string(ties) + " exact ties";
    return {pass, detail};
}

Outcome annulus_law()
{
    const int n = 10'000;
    const int trials = 100;
    const double ks_bound = 1.628 / std::sqrt(static_cast<double>(n));
    bool pass = true;
    std::string detail;
    const std::pair<double, double> rings[] = {{0.0, 1.0}, {0.3, 0.7}, {0.9, 1.0}};
    for (std::size_t c = 0; c < 3; ++c) {
        const auto [a, b] = rings[c];
        int ok = 0;
        for (int seed = 0; seed < trials; ++seed) {
            RandomStream s(static_cast<std::uint64_t>(seed), 1000 + c);
            std::vector<Point2> pts(n);
            for (Point2& p : pts) {
                p = sample_point_in_annulus(a, b, s);
            }
            const KsResult ks = radial_ks(pts, a, b, 0.01);
            const Chi2Result ang = angular_chi2(pts, 36, 0.001);
            ok += ks.statistic < ks_bound && ang.pass;
        }
        pass &= ok >= 97;
        detail += "(" + fmt(a) + "," + fmt(b) + ") " + std::to_string(ok) + "/100; ";
    }
    return {pass, detail + "KS bound " + fmt(ks_bound)};
}

Outcome areal_uniformity()
{
    const int n = 10'000;
    RandomStream good_src(31, 0);
    RandomStream bad_src(31, 1);
    std::vector<Point2> good(n);
    std::vector<Point2> bad(n);
    for (int i = 0; i < n; ++i) {
        good[i] = sample_point_in_annulus(0.0, 1.0, good_src);
        const double r = bad_src.uniform01();
        const double t = 2.0 * kPi * bad_src.uniform01();
        bad[i] = {r * std::cos(t), r * std::sin(t)};
    }
    const Chi2Result g = areal_chi2(good, 0.0, 1.0, 8, 8, 0.001);
    const Chi2Result w = areal_chi2(bad, 0.0, 1.0, 8, 8, 0.001);
    return {g.pass && !w.pass, "correct chi2=" + fmt(g.statistic) + ", radius-uniform chi2=" + fmt(w.statistic) +
                                   ", critical " + fmt(g.critical)};
}

Outcome reference_regimes()
{
    const fs::path dir = scratch("regimes");
    struct Regime {
        double size;
        int max_layers;
        int nodes;
    };
    long failures_here = 0;
    std::string first;
    auto fail = [&](const std::string& why) {
        if (failures_here++ == 0) {
            first = why;
        }
    };
    for (const Regime reg : {Regime{1.0, 5, 100}, Regime{1.0, 10, 1000}}) {
        for (int seed = 0; seed < 100; ++seed) {
            const fs::path out = dir / (std::to_string(reg.max_layers) + "_" + std::to_string(seed));
            const int code = run_cli({"deploy", "--size", io::format_double(reg.size), "--max-layers",
                                      std::to_string(reg.max_layers), "--nodes", std::to_string(reg.nodes), "--seed",
                                      std::to_string(seed), "--out-dir", out.string()});
            if (code != cli::kOk) {
                fail("deploy exit " + std::to_string(code));
                continue;
            }
            const auto pts = io::points_from_csv(io::read_file(out / "run_0000.csv"));
            const auto meta = nlohmann::json::parse(io::read_file(out / "run_0000.meta.json"));
            const int n_l = meta["n_L"];
            const std::int64_t n_in = meta["n_in"];
            const std::int64_t n_out = meta["n_out"];
            if (static_cast<int>(pts.size()) != reg.nodes) {
                fail("point count");
            }
            if (n_l < 2 || n_l > reg.max_layers) {
                fail("n_L out of range");
            }
            std::vector<std::int64_t> counts(static_cast<std::size_t>(n_l), 0);
            for (const NodePoint& p : pts) {
                if (!(std::hypot(p.x, p.y) < reg.size)) {
                    fail("point outside radius L");
                }
                if (p.sector < 1 || p.sector > n_l) {
                    fail("bad layer tag");
                    continue;
                }
                ++counts[static_cast<std::size_t>(p.sector - 1)];
            }
            if (counts[0] != n_in) {
                fail("inner count != n_in");
            }
            for (int j = 1; j < n_l; ++j) {
                if (counts[static_cast<std::size_t>(j)] != n_out) {
                    fail("layer count != n_out");
                }
            }
        }
    }
    fs::remove_all(dir);
    return {failures_here == 0, "200 runs, " + std::to_string(failures_here) + " failures" +
                                    (first.empty() ? "" : " (first: " + first + ")")};
}

Outcome determinism()
{
    const fs::path dir = scratch("determinism");
    bool pass = true;
    std::string detail;
    for (const std::string format : {"csv", "json"}) {
        std::vector<std::string> bytes;
        for (int invocation = 0; invocation < 2; ++invocation) {
            const fs::path out = dir / (format + std::to_string(invocation));
            const std::string cmd = std::string("\"") + ASD_CLI_PATH +
                                    "\" deploy --size 1 --max-layers 10 --nodes 1000 --seed 99 --runs 3 --format " +
                                    format + " --out-dir \"" + out.string() + "\" > /dev/null";
            if (std::system(cmd.c_str()) != 0) {
                return {false, "CLI invocation failed"};
            }
            std::string all;
            for (int run = 0; run < 3; ++run) {
                all += io::read_file(out / (io::run_stem(run) + "." + format));
                all += io::read_file(out / (io::run_stem(run) + ".meta.json"));
            }
            bytes.push_back(std::move(all));
        }
        const bool same = bytes[0] == bytes[1] && !bytes[0].empty();
        pass &= same;
        detail += format + (same ? " identical" : " differs") + " (" + std::to_string(bytes[0].size()) + " bytes); ";
    }
    fs::remove_all(dir);
    return {pass, detail + "2 processes x 3 runs"};
}

Outcome scaling()
{
    const int repeats = 7;
    const double t5 = time_worst_case(100'000, 10, 5, repeats);
    const double t6 = time_worst_case(1'000'000, 10, 5, repeats);
    const double ratio = t6 / t5;

    const std::int64_t fixed_nodes[] = {100'000};
    const int layers[] = {100, 1'000, 10'000};
    const auto rows = sweep(fixed_nodes, layers, 5, repeats);
    const double exponent = fit_exponent(rows, [](const TimingRow& r) { return static_cast<double>(r.max_layers); });
    return {ratio >= 7.0 && ratio <= 13.0 && exponent < 1.5,
            "n_S 1e5->1e6 ratio " + fmt(ratio) + " (median of " + std::to_string(repeats) + "), n_Lmax exponent " +
                fmt(exponent)};
}

Outcome planned_mode()
{
    const DeploymentPlan plan = io::parse_plan(io::read_file(fs::path(ASD_CONFIG_DIR) / "two_annuli_plan.json"));
    const Deployment d = deploy_planned(plan, 1);
    const auto counts = count_per_sector(d);
    const auto profile = empirical_density_profile(d);
    const double ratio = profile[0].density / profile[1].density;
    const bool counts_ok = counts.size() == 2 && counts[0].count == 80 && counts[1].count == 20;
    const bool ratio_ok = std::abs(ratio - 12.0) <= 1e-9;

    const fs::path dir = scratch("overlap");
    std::string err;
    const int code = run_cli(
        {"plan", "--plan", (fs::path(ASD_CONFIG_DIR) / "overlapping_rects_plan.json").string(), "--out-dir", dir.string()},
        &err);
    fs::remove_all(dir);
    const bool reject_ok = code == cli::kInvalidInput;
    std::string reason = err.substr(0, err.find('\n'));
    return {counts_ok && ratio_ok && reject_ok,
            "counts (" + std::to_string(counts[0].count) + ", " + std::to_string(counts[1].count) + "), ratio 12" +
                (ratio >= 12.0 ? "+" : "") + fmt(ratio - 12.0) + ", overlap fixture exit " + std::to_string(code) +
                " [" + reason + "]"};
}

}  // namespace

int main()
{
    criterion(1, "node split conservation, exhaustive", 1.0, split_conservation);
    criterion(2, "layer-count law and threshold rounding", 5.0, layer_count_law);
    criterion(3, "annulus radial KS and angular chi-square", 30.0, annulus_law);
    criterion(4, "areal 8x8 chi-square: correct passes, radius-uniform fails", 10.0, areal_uniformity);
    criterion(5, "deploy regimes (1,5,100) and (1,10,1000) over 100 seeds", 10.0, reference_regimes);
    criterion(6, "byte-identical output across processes", 1.0, determinism);
    criterion(7, "worst-case cost scaling", 120.0, scaling);
    criterion(8, "planned two-annulus counts, density ratio, overlap rejection", 1.0, planned_mode);
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
