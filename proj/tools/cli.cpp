#include "cli.hpp"

#include <algorithm>
#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "asd/auto_deploy.hpp"
#include "asd/io.hpp"
#include "asd/planned_deploy.hpp"
#include "asd/scaling.hpp"
#include "asd/stats.hpp"

namespace asd::cli {

namespace fs = std::filesystem;

namespace {

struct OutputOptions {
    std::uint64_t seed = 0;
    int runs = 1;
    std::string out_dir = ".";
    std::string format = "csv";
    bool plot_data = false;
};

void add_output_flags(CLI::App& cmd, OutputOptions& o)
{
    cmd.add_option("--seed", o.seed, "RNG seed")->capture_default_str();
    cmd.add_option("--runs", o.runs, "number of independent runs; run k uses stream k")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    cmd.add_option("--out-dir", o.out_dir, "output directory")->capture_default_str();
    cmd.add_option("--format", o.format, "points file format")
        ->capture_default_str()
        ->check(CLI::IsMember({"csv", "json"}));
    cmd.add_flag("--plot-data", o.plot_data, "also write `x y sector` and ring-radius files for plotting");
}

// Everything a run writes, produced without touching shared state.
struct RunResult {
    std::string summary;
    std::string error;
    int code = kOk;
};

RunResult write_run(const Deployment& d, const OutputOptions& o)
{
    RunResult r;
    const fs::path dir(o.out_dir);
    const std::string stem = io::run_stem(d.run);
    try {
        const bool json = o.format == "json";
        const fs::path points_path = dir / (stem + (json ? ".json" : ".csv"));
        io::write_file(points_path, json ? io::points_to_json(d.points) : io::points_to_csv(d.points));
        io::write_file(dir / (stem + ".meta.json"), io::metadata_json(d).dump(2) + "\n");
        if (o.plot_data) {
            io::write_file(dir / (stem + ".plot.txt"), io::plot_points(d.points));
            io::write_file(dir / (stem + ".rings.txt"), io::plot_rings(d));
        }
        std::ostringstream os;
        os << "run " << d.run << ": ";
        if (d.automatic()) {
            os << "n_L=" << d.layers->layer_count() << " n_in=" << d.n_in << " n_out=" << d.n_out;
        } else {
            os << "sectors=" << sector_total(d);
        }
        os << " points=" << d.points.size() << " -> " << points_path.string();
        r.summary = os.str();
    } catch (const io::IoError& e) {
        r.error = e.what();
        r.code = kIoFailure;
    }
    return r;
}

template <class Generate>
int run_batch(const OutputOptions& o, Generate generate, std::ostream& out, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(o.out_dir, ec);
    if (ec) {
        err << "error: cannot create output directory '" << o.out_dir << "': " << ec.message() << "\n";
        return kIoFailure;
    }
    std::vector<RunResult> results(static_cast<std::size_t>(o.runs));

#pragma omp parallel for schedule(dynamic, 1)
    for (int k = 0; k < o.runs; ++k) {
        RunResult& slot = results[static_cast<std::size_t>(k)];
        try {
            Deployment d = generate(static_cast<std::uint64_t>(k));
            d.run = static_cast<std::uint64_t>(k);
            slot = write_run(d, o);
        } catch (const std::exception& e) {
            slot.error = e.what();
            slot.code = kInvalidInput;
        }
    }

    int code = kOk;
    for (const RunResult& r : results) {
        if (r.code != kOk) {
            err << "error: " << r.error << "\n";
            code = std::max(code, r.code);
        } else {
            out << r.summary << "\n";
        }
    }
    return code;
}

NetworkConfig load_network_config(const std::string& path)
{
    const std::string text = io::read_file(path);
    try {
        const nlohmann::json j = nlohmann::json::parse(text);
        NetworkConfig c;
        c.size = j.at("L").get<double>();
        c.max_layers = j.at("n_Lmax").get<int>();
        c.nodes = j.at("n_S").get<std::int64_t>();
        c.seed = j.value("seed", std::uint64_t{0});
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw io::IoError("config '" + path + "': " + e.what());
    }
}

int cmd_deploy(const NetworkConfig& raw, const OutputOptions& o, std::ostream& out, std::ostream& err)
{
    NetworkConfig config = raw;
    config.seed = o.seed;
    try {
        config = validate_config(config);
    } catch (const ConfigError& e) {
        for (const std::string& v : e.violations()) {
            err << "error: " << v << "\n";
        }
        return kInvalidInput;
    }
    return run_batch(
        o, [&](std::uint64_t run) { return deploy_automatic_parallel(config, run); }, out, err);
}

int cmd_plan(const std::string& plan_path, const OutputOptions& o, std::ostream& out, std::ostream& err)
{
    DeploymentPlan plan;
    try {
        plan = io::parse_plan(io::read_file(plan_path));
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const PlanError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }
    return run_batch(
        o, [&](std::uint64_t run) { return deploy_planned(plan, o.seed, run); }, out, err);
}

struct ValidateOptions {
    std::string points;
    std::string meta;
    std::string report;
    std::optional<double> alpha;
};

fs::path sibling(const fs::path& points, const std::string& suffix)
{
    return points.parent_path() / (points.stem().string() + suffix);
}

int cmd_validate(const ValidateOptions& v, std::ostream& out, std::ostream& err)
{
    const fs::path points_path(v.points);
    const fs::path meta_path = v.meta.empty() ? sibling(points_path, ".meta.json") : fs::path(v.meta);
    const fs::path report_path = v.report.empty() ? sibling(points_path, ".report.json") : fs::path(v.report);

    Deployment d;
    try {
        const std::string meta_text = io::read_file(meta_path);
        nlohmann::json meta;
        try {
            meta = nlohmann::json::parse(meta_text);
        } catch (const nlohmann::json::exception& e) {
            throw io::IoError("metadata '" + meta_path.string() + "': " + e.what());
        }
        d = io::deployment_from_metadata(meta);
        const std::string text = io::read_file(points_path);
        d.points = points_path.extension() == ".json" ? io::points_from_json(text) : io::points_from_csv(text);
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }

    ReportOptions options;
    if (v.alpha) {
        options.ks_alpha = *v.alpha;
        options.chi2_alpha = *v.alpha;
    }
    StatReport report;
    try {
        report = build_report(d, options);
        io::write_file(report_path, io::report_json(report).dump(2) + "\n");
    } catch (const SampleError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }

    for (const MembershipViolation& m : report.outside) {
        err << "point " << m.point_index << " lies outside " << (d.automatic() ? "layer " : "sector ") << m.sector
            << "\n";
    }
    for (const std::string& c : report.count_mismatches) {
        err << c << "\n";
    }
    for (const SectorTests& t : report.tests) {
        if (t.radial && !t.radial->pass) {
            err << "sector " << t.sector << ": radial KS " << t.radial->statistic << " >= " << t.radial->critical
                << "\n";
        }
        if (t.angular && !t.angular->pass) {
            err << "sector " << t.sector << ": angular chi-square " << t.angular->statistic << " > "
                << t.angular->critical << "\n";
        }
        if (t.areal && !t.areal->pass) {
            err << "sector " << t.sector << ": areal chi-square " << t.areal->statistic << " > "
                << t.areal->critical << "\n";
        }
    }
    if (report.angular_all && !report.angular_all->pass) {
        err << "angular chi-square over all points " << report.angular_all->statistic << " > "
            << report.angular_all->critical << "\n";
    }

    const bool pass = report.pass();
    out << (pass ? "PASS" : "FAIL") << " " << points_path.string() << " (" << report.total << " points, "
        << report.per_sector.size() << " sectors) report -> " << report_path.string() << "\n";
    return pass ? kOk : kValidationFailure;
}

struct BenchOptions {
    std::string out_dir = ".";
    std::uint64_t seed = 1;
    int repeats = 3;
    int nodes_lo = 4;
    int nodes_hi = 7;
    int layers_lo = 1;
    int layers_hi = 4;
    std::int64_t fixed_nodes = 100000;
    int fixed_layers = 10;
    std::string kernel = "serial";
};

int cmd_bench(const BenchOptions& b, std::ostream& out, std::ostream& err)
{
    std::error_code ec;
    fs::create_directories(b.out_dir, ec);
    if (ec) {
        err << "error: cannot create output directory '" << b.out_dir << "': " << ec.message() << "\n";
        return kIoFailure;
    }
    const Kernel kernel = b.kernel == "parallel" ? Kernel::parallel : Kernel::serial;

    const std::vector<std::int64_t> nodes = decade_ladder(b.nodes_lo, b.nodes_hi);
    const std::vector<int> fixed_layers{b.fixed_layers};
    std::vector<int> layers;
    for (std::int64_t v : decade_ladder(b.layers_lo, b.layers_hi)) {
        layers.push_back(static_cast<int>(v));
    }
    const std::vector<std::int64_t> fixed_nodes{b.fixed_nodes};

    std::vector<TimingRow> node_rows;
    std::vector<TimingRow> layer_rows;
    try {
        node_rows = sweep(nodes, fixed_layers, b.seed, b.repeats, kernel);
        layer_rows = sweep(fixed_nodes, layers, b.seed, b.repeats, kernel);
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    std::string csv = "n_S,n_Lmax,seconds\n";
    for (const auto* rows : {&node_rows, &layer_rows}) {
        for (const TimingRow& r : *rows) {
            csv += std::to_string(r.nodes) + "," + std::to_string(r.max_layers) + "," + io::format_double(r.seconds) +
                   "\n";
        }
    }
    const fs::path csv_path = fs::path(b.out_dir) / "bench.csv";
    try {
        io::write_file(csv_path, csv);
    } catch (const io::IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoFailure;
    }
    out << csv;
    if (node_rows.size() >= 2) {
        out << "n_S exponent: " << fit_exponent(node_rows, [](const TimingRow& r) { return double(r.nodes); })
            << "\n";
    }
    if (layer_rows.size() >= 2) {
        out << "n_Lmax exponent: "
            << fit_exponent(layer_rows, [](const TimingRow& r) { return double(r.max_layers); }) << "\n";
    }
    out << "timings -> " << csv_path.string() << "\n";
    return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Inhomogeneous random node deployment over a circular network"};
    app.require_subcommand(1);

    NetworkConfig config{};
    std::string config_path;
    OutputOptions deploy_out;
    auto* deploy = app.add_subcommand("deploy", "automatic layered deployment");
    auto* size_opt = deploy->add_option("--size", config.size, "network radius L");
    auto* layers_opt = deploy->add_option("--max-layers", config.max_layers, "maximum number of layers n_Lmax");
    auto* nodes_opt = deploy->add_option("--nodes", config.nodes, "total number of nodes n_S");
    deploy->add_option("--config", config_path, "JSON file with L, n_Lmax, n_S (and optionally seed)");
    add_output_flags(*deploy, deploy_out);

    std::string plan_path;
    OutputOptions plan_out;
    auto* plan = app.add_subcommand("plan", "deployment over designer-specified sectors");
    plan->add_option("--plan", plan_path, "JSON plan file")->required();
    add_output_flags(*plan, plan_out);

    ValidateOptions validate_opts;
    auto* validate = app.add_subcommand("validate", "statistical validation of a generated run");
    validate->add_option("points", validate_opts.points, "points file (.csv or .json)")->required();
    validate->add_option("--meta", validate_opts.meta, "metadata file (default: <stem>.meta.json)");
    validate->add_option("--report", validate_opts.report, "report path (default: <stem>.report.json)");
    validate->add_option("--alpha", validate_opts.alpha, "significance level for every test")
        ->check(CLI::Range(1e-12, 0.5));

    BenchOptions bench_opts;
    auto* bench = app.add_subcommand("bench", "worst-case cost sweeps with n_L = n_Lmax");
    bench->add_option("--out-dir", bench_opts.out_dir, "directory for bench.csv")->capture_default_str();
    bench->add_option("--seed", bench_opts.seed)->capture_default_str();
    bench->add_option("--repeats", bench_opts.repeats, "timings per point (median reported)")
        ->capture_default_str()
        ->check(CLI::PositiveNumber);
    bench->add_option("--nodes-from", bench_opts.nodes_lo, "n_S sweep starts at 10^k")->capture_default_str();
    bench->add_option("--nodes-to", bench_opts.nodes_hi, "n_S sweep ends at 10^k")->capture_default_str();
    bench->add_option("--layers-from", bench_opts.layers_lo, "n_Lmax sweep starts at 10^k")->capture_default_str();
    bench->add_option("--layers-to", bench_opts.layers_hi, "n_Lmax sweep ends at 10^k")->capture_default_str();
    bench->add_option("--fixed-nodes", bench_opts.fixed_nodes, "n_S held fixed in the n_Lmax sweep")
        ->capture_default_str();
    bench->add_option("--fixed-layers", bench_opts.fixed_layers, "n_Lmax held fixed in the n_S sweep")
        ->capture_default_str();
    bench->add_option("--kernel", bench_opts.kernel)
        ->capture_default_str()
        ->check(CLI::IsMember({"serial", "parallel"}));

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kInvalidInput;
    }

    if (*deploy) {
        NetworkConfig merged{std::nan(""), 0, 0, deploy_out.seed};
        if (!config_path.empty()) {
            try {
                merged = load_network_config(config_path);
            } catch (const io::IoError& e) {
                err << "error: " << e.what() << "\n";
                return kIoFailure;
            }
            if (deploy->count("--seed") == 0) {
                deploy_out.seed = merged.seed;
            }
        }
        if (*size_opt) {
            merged.size = config.size;
        }
        if (*layers_opt) {
            merged.max_layers = config.max_layers;
        }
        if (*nodes_opt) {
            merged.nodes = config.nodes;
        }
        if (config_path.empty() && (!*size_opt || !*layers_opt || !*nodes_opt)) {
            err << "error: deploy needs --size, --max-layers and --nodes (or --config)\n";
            return kInvalidInput;
        }
        return cmd_deploy(merged, deploy_out, out, err);
    }
    if (*plan) {
        return cmd_plan(plan_path, plan_out, out, err);
    }
    if (*validate) {
        return cmd_validate(validate_opts, out, err);
    }
    return cmd_bench(bench_opts, out, err);
}

}  // namespace asd::cli
