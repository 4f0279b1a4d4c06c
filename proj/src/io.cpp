#include "asd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "asd/planned_deploy.hpp"

namespace asd::io {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double value)
{
    char buf[64];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) {
        throw IoError("format_double: conversion failed");
    }
    return std::string(buf, end);
}

double parse_double(std::string_view text)
{
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw IoError("not a number: '" + std::string(text) + "'");
    }
    return value;
}

std::string points_to_csv(const std::vector<NodePoint>& points)
{
    std::string out = "x,y,sector\n";
    out.reserve(points.size() * 44);
    for (const NodePoint& p : points) {
        out += format_double(p.x);
        out += ',';
        out += format_double(p.y);
        out += ',';
        out += std::to_string(p.sector);
        out += '\n';
    }
    return out;
}

namespace {

int parse_int(std::string_view text)
{
    int value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw IoError("not an integer: '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

std::vector<NodePoint> points_from_csv(std::string_view text)
{
    std::vector<NodePoint> out;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) {
            eol = text.size();
        }
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.remove_suffix(1);
        }
        if (line_no == 1) {
            if (line != "x,y,sector") {
                throw IoError("points CSV: expected header 'x,y,sector'");
            }
            continue;
        }
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = c1 == std::string_view::npos ? c1 : line.find(',', c1 + 1);
        if (c2 == std::string_view::npos) {
            throw IoError("points CSV line " + std::to_string(line_no) + ": expected 3 fields");
        }
        try {
            out.push_back({parse_double(line.substr(0, c1)), parse_double(line.substr(c1 + 1, c2 - c1 - 1)),
                           parse_int(line.substr(c2 + 1))});
        } catch (const IoError& e) {
            throw IoError("points CSV line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (line_no == 0) {
        throw IoError("points CSV: empty file");
    }
    return out;
}

std::string points_to_json(const std::vector<NodePoint>& points)
{
    std::string out = "{\"points\":[";
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i != 0) {
            out += ',';
        }
        out += "{\"x\":" + format_double(points[i].x) + ",\"y\":" + format_double(points[i].y) +
               ",\"sector\":" + std::to_string(points[i].sector) + '}';
    }
    out += "]}\n";
    return out;
}

std::vector<NodePoint> points_from_json(std::string_view text)
{
    try {
        const json doc = json::parse(text);
        std::vector<NodePoint> out;
        for (const json& p : doc.at("points")) {
            out.push_back({p.at("x").get<double>(), p.at("y").get<double>(), p.at("sector").get<int>()});
        }
        return out;
    } catch (const json::exception& e) {
        throw IoError(std::string("points JSON: ") + e.what());
    }
}

ordered_json sector_to_json(const SectorSpec& sector)
{
    ordered_json j;
    if (const auto* a = std::get_if<Annulus>(&sector.shape)) {
        j["shape"] = "annulus";
        j["r_inner"] = a->r_inner;
        j["r_outer"] = a->r_outer;
    } else if (const auto* d = std::get_if<Disk>(&sector.shape)) {
        j["shape"] = "disk";
        j["r"] = d->r;
    } else {
        const auto& r = std::get<Rect>(sector.shape);
        j["shape"] = "rect";
        j["x0"] = r.x0;
        j["y0"] = r.y0;
        j["x1"] = r.x1;
        j["y1"] = r.y1;
    }
    j["n"] = sector.n;
    return j;
}

ordered_json metadata_json(const Deployment& deployment)
{
    ordered_json j;
    if (deployment.automatic()) {
        const auto& c = std::get<NetworkConfig>(deployment.config);
        j["L"] = c.size;
        j["n_Lmax"] = c.max_layers;
        j["n_S"] = c.nodes;
        j["seed"] = c.seed;
        j["run"] = deployment.run;
        j["n_L"] = deployment.layers->layer_count();
        j["radii"] = deployment.layers->radii;
        j["n_in"] = deployment.n_in;
        j["n_out"] = deployment.n_out;
        return j;
    }
    j["seed"] = deployment.seed;
    j["run"] = deployment.run;
    ordered_json sectors = ordered_json::array();
    for (const SectorSpec& s : std::get<DeploymentPlan>(deployment.config).sectors) {
        sectors.push_back(sector_to_json(s));
    }
    j["sectors"] = std::move(sectors);
    return j;
}

namespace {

SectorSpec sector_from_json(const json& j)
{
    const std::string shape = j.at("shape").get<std::string>();
    SectorSpec s;
    if (shape == "annulus") {
        s.shape = Annulus{j.at("r_inner").get<double>(), j.at("r_outer").get<double>()};
    } else if (shape == "disk") {
        s.shape = Disk{j.at("r").get<double>()};
    } else if (shape == "rect") {
        s.shape = Rect{j.at("x0").get<double>(), j.at("y0").get<double>(), j.at("x1").get<double>(),
                       j.at("y1").get<double>()};
    } else {
        throw PlanError("unknown shape '" + shape + "'");
    }
    const json& n = j.at("n");
    if (!n.is_number_integer()) {
        throw PlanError("node count n must be an integer");
    }
    s.n = n.get<std::int64_t>();
    return s;
}

}  // namespace

Deployment deployment_from_metadata(const json& meta)
{
    try {
        Deployment d;
        d.seed = meta.at("seed").get<std::uint64_t>();
        d.run = meta.at("run").get<std::uint64_t>();
        if (meta.contains("sectors")) {
            DeploymentPlan plan;
            for (const json& s : meta.at("sectors")) {
                plan.sectors.push_back(sector_from_json(s));
            }
            d.config = std::move(plan);
            return d;
        }
        NetworkConfig c;
        c.size = meta.at("L").get<double>();
        c.max_layers = meta.at("n_Lmax").get<int>();
        c.nodes = meta.at("n_S").get<std::int64_t>();
        c.seed = d.seed;
        d.config = c;
        LayerSet layers;
        layers.size = c.size;
        layers.radii = meta.at("radii").get<std::vector<double>>();
        if (layers.layer_count() != meta.at("n_L").get<int>()) {
            throw IoError("metadata: radii count does not match n_L");
        }
        d.layers = std::move(layers);
        d.n_in = meta.at("n_in").get<std::int64_t>();
        d.n_out = meta.at("n_out").get<std::int64_t>();
        return d;
    } catch (const json::exception& e) {
        throw IoError(std::string("metadata: ") + e.what());
    } catch (const PlanError& e) {
        throw IoError(std::string("metadata: ") + e.what());
    }
}

DeploymentPlan parse_plan(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw PlanError(std::string("plan file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array()) {
        throw PlanError("plan file must be a JSON array of sector objects");
    }
    DeploymentPlan plan;
    for (std::size_t i = 0; i < doc.size(); ++i) {
        try {
            plan.sectors.push_back(sector_from_json(doc[i]));
        } catch (const json::exception& e) {
            throw PlanError("sector " + std::to_string(i + 1) + ": " + e.what());
        } catch (const PlanError& e) {
            throw PlanError("sector " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    validate_plan(plan);
    return plan;
}

std::string plot_points(const std::vector<NodePoint>& points)
{
    std::string out;
    for (const NodePoint& p : points) {
        out += format_double(p.x) + ' ' + format_double(p.y) + ' ' + std::to_string(p.sector) + '\n';
    }
    return out;
}

std::string plot_rings(const Deployment& deployment)
{
    std::vector<double> rings;
    if (deployment.layers) {
        rings = deployment.layers->radii;
        rings.push_back(deployment.layers->size);
    } else {
        for (const SectorSpec& s : std::get<DeploymentPlan>(deployment.config).sectors) {
            if (const auto b = radial_bounds(s.shape)) {
                if (b->r_inner > 0.0) {
                    rings.push_back(b->r_inner);
                }
                rings.push_back(b->r_outer);
            }
        }
    }
    std::string out;
    for (double r : rings) {
        out += format_double(r) + '\n';
    }
    return out;
}

namespace {

ordered_json chi2_json(const Chi2Result& c)
{
    return {{"statistic", c.statistic}, {"dof", c.dof}, {"critical", c.critical}, {"p_value", c.p_value},
            {"pass", c.pass}};
}

}  // namespace

ordered_json report_json(const StatReport& report)
{
    ordered_json j;
    j["pass"] = report.pass();
    j["alpha"] = {{"ks", report.ks_alpha}, {"chi2", report.chi2_alpha}};
    j["total"] = report.total;

    ordered_json per_sector = ordered_json::array();
    for (const SectorDensity& s : report.per_sector) {
        per_sector.push_back({{"index", s.sector}, {"count", s.count}, {"area", s.area}, {"density", s.density}});
    }
    j["per_sector"] = std::move(per_sector);

    ordered_json radial = ordered_json::array();
    ordered_json areal = ordered_json::array();
    ordered_json angular = ordered_json::array();
    ordered_json skipped = ordered_json::array();
    for (const SectorTests& t : report.tests) {
        if (t.radial) {
            radial.push_back({{"sector", t.sector},
                              {"n", t.radial->n},
                              {"statistic", t.radial->statistic},
                              {"critical", t.radial->critical},
                              {"pass", t.radial->pass}});
        }
        if (t.angular) {
            ordered_json a = chi2_json(*t.angular);
            a["sector"] = t.sector;
            angular.push_back(std::move(a));
        }
        if (t.areal) {
            ordered_json a = chi2_json(*t.areal);
            a["sector"] = t.sector;
            areal.push_back(std::move(a));
        }
        for (const std::string& why : t.skipped) {
            skipped.push_back({{"sector", t.sector}, {"reason", why}});
        }
    }
    j["radial_ks"] = std::move(radial);
    j["angular_chi2"] = report.angular_all ? chi2_json(*report.angular_all) : ordered_json(nullptr);
    j["angular_chi2_per_sector"] = std::move(angular);
    j["areal_chi2"] = std::move(areal);
    j["skipped"] = std::move(skipped);

    ordered_json outside = ordered_json::array();
    for (const MembershipViolation& v : report.outside) {
        outside.push_back({{"point_index", v.point_index}, {"sector", v.sector}, {"x", v.x}, {"y", v.y}});
    }
    j["outside_sector"] = std::move(outside);
    j["count_mismatches"] = report.count_mismatches;
    return j;
}

std::string read_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw IoError("cannot open '" + path.string() + "' for writing");
    }
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) {
        throw IoError("write to '" + path.string() + "' failed");
    }
}

std::string run_stem(std::uint64_t run)
{
    std::string digits = std::to_string(run);
    if (digits.size() < 4) {
        digits.insert(0, 4 - digits.size(), '0');
    }
    return "run_" + digits;
}

}  // namespace asd::io
