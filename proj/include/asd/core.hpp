// Domain types and geometric primitives shared by the deployment modules.
#pragma once

#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace asd {

inline constexpr double kPi = std::numbers::pi;

/// The three designer inputs of the automatic deployment plus the RNG seed.
struct NetworkConfig {
    double size = 1.0;          // network radius L
    int max_layers = 2;         // upper bound on the sampled layer count
    std::int64_t nodes = 1;     // total node count n_S
    std::uint64_t seed = 0;

    bool operator==(const NetworkConfig&) const = default;
};

/// Thrown by validate_config; carries every violated invariant, not just the first.
class ConfigError : public std::invalid_argument {
  public:
    explicit ConfigError(std::vector<std::string> violations);
    const std::vector<std::string>& violations() const noexcept { return violations_; }

  private:
    std::vector<std::string> violations_;
};

std::vector<std::string> config_violations(const NetworkConfig& config);
NetworkConfig validate_config(const NetworkConfig& config);

struct Annulus {
    double r_inner;
    double r_outer;
};

struct Disk {
    double r;
};

struct Rect {
    double x0, y0, x1, y1;
};

using Shape = std::variant<Annulus, Disk, Rect>;

/// One ASD sub-region: a support domain and the number of nodes placed in it.
struct SectorSpec {
    Shape shape;
    std::int64_t n = 1;
};

struct DeploymentPlan {
    std::vector<SectorSpec> sectors;
};

double annulus_area(double r_inner, double r_outer);

void validate_shape(const Shape& shape);
void validate_sector(const SectorSpec& sector);
double shape_area(const Shape& shape);
double sector_area(const SectorSpec& sector);
double sector_density(const SectorSpec& sector);

/// Radial bounds of a rotationally symmetric shape; nullopt for rectangles.
std::optional<Annulus> radial_bounds(const Shape& shape);

/// Closed-domain membership with an absolute slack for rounding in x, y.
bool shape_contains(const Shape& shape, double x, double y, double slack = 0.0);

/// Sorted layer radii partitioning the disk of radius `size` into concentric annuli.
/// Layer j (1-based) spans [inner(j), outer(j)); the outermost layer is closed at `size`.
struct LayerSet {
    double size = 1.0;
    std::vector<double> radii;

    int layer_count() const noexcept { return static_cast<int>(radii.size()) + 1; }
    double inner(int layer) const;
    double outer(int layer) const;
    double width(int layer) const { return outer(layer) - inner(layer); }
    double area(int layer) const { return annulus_area_unchecked(inner(layer), outer(layer)); }

    /// Layer index owning radius r under the half-open convention; 0 if r is outside [0, size].
    int layer_of(double r) const;

    bool operator==(const LayerSet&) const = default;

  private:
    static double annulus_area_unchecked(double a, double b) { return kPi * (b * b - a * a); }
};

struct Point2 {
    double x;
    double y;
};

/// A generated node: position plus 1-based sector (or layer) index.
struct NodePoint {
    double x;
    double y;
    int sector;

    bool operator==(const NodePoint&) const = default;
};

/// Generated point set plus whatever generation metadata the mode provides.
struct Deployment {
    std::vector<NodePoint> points;
    std::variant<NetworkConfig, DeploymentPlan> config;

    // automatic mode only
    std::optional<LayerSet> layers;
    std::int64_t n_in = 0;
    std::int64_t n_out = 0;

    std::uint64_t seed = 0;
    std::uint64_t run = 0;

    bool automatic() const noexcept { return layers.has_value(); }
};

/// Domain of sector `index` (1-based) in a deployment, as a Shape.
Shape sector_shape(const Deployment& deployment, int index);
int sector_total(const Deployment& deployment);

}  // namespace asd
