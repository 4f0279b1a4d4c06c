// File formats: points (CSV or JSON), per-run metadata, plan files, plot
// data, and the validation report.
#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "asd/core.hpp"
#include "asd/stats.hpp"

namespace asd::io {

/// Any file-system or parse failure while reading or writing run artefacts.
class IoError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

enum class PointFormat { csv, json };

/// Shortest decimal string that parses back to exactly `value`.
std::string format_double(double value);
double parse_double(std::string_view text);

std::string points_to_csv(const std::vector<NodePoint>& points);
std::vector<NodePoint> points_from_csv(std::string_view text);

std::string points_to_json(const std::vector<NodePoint>& points);
std::vector<NodePoint> points_from_json(std::string_view text);

/// {"L", "n_Lmax", "n_S", "seed", "run", "n_L", "radii", "n_in", "n_out"} for
/// automatic runs; {"seed", "run", "sectors"} for planned runs.
nlohmann::ordered_json metadata_json(const Deployment& deployment);

/// Rebuilds a deployment (without points) from its metadata.
Deployment deployment_from_metadata(const nlohmann::json& meta);

nlohmann::ordered_json sector_to_json(const SectorSpec& sector);

/// Plan file: JSON array of sector objects. Throws PlanError (from
/// planned_deploy) naming the offending entry.
DeploymentPlan parse_plan(std::string_view text);

/// Whitespace-separated `x y sector` lines.
std::string plot_points(const std::vector<NodePoint>& points);
/// One ring radius per line.
std::string plot_rings(const Deployment& deployment);

nlohmann::ordered_json report_json(const StatReport& report);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Stem used for run k inside an output directory, e.g. "run_0003".
std::string run_stem(std::uint64_t run);

}  // namespace asd::io
