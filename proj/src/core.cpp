#include "asd/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asd {

namespace {

std::string join_violations(const std::vector<std::string>& violations)
{
    std::ostringstream os;
    os << "invalid network configuration: ";
    for (std::size_t i = 0; i < violations.size(); ++i) {
        if (i != 0) {
            os << "; ";
        }
        os << violations[i];
    }
    return os.str();
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument(join_violations(violations)), violations_(std::move(violations))
{
}

std::vector<std::string> config_violations(const NetworkConfig& config)
{
    std::vector<std::string> out;
    if (!(config.size > 0.0) || !std::isfinite(config.size)) {
        out.emplace_back("size L must be a finite value > 0");
    }
    if (config.max_layers < 2) {
        out.emplace_back("max-layers n_Lmax must be > 1");
    }
    if (config.nodes < 1) {
        out.emplace_back("nodes n_S must be >= 1");
    }
    if (config.nodes < config.max_layers) {
        out.emplace_back("nodes n_S must be >= max-layers n_Lmax so every layer receives a node");
    }
    return out;
}

NetworkConfig validate_config(const NetworkConfig& config)
{
    auto violations = config_violations(config);
    if (!violations.empty()) {
        throw ConfigError(std::move(violations));
    }
    return config;
}

double annulus_area(double r_inner, double r_outer)
{
    if (!(r_inner >= 0.0) || !(r_inner < r_outer)) {
        throw std::domain_error("annulus_area: need 0 <= r_inner < r_outer");
    }
    return kPi * (r_outer * r_outer - r_inner * r_inner);
}

void validate_shape(const Shape& shape)
{
    std::visit(overloaded{
                   [](const Annulus& a) {
                       if (!(a.r_inner >= 0.0) || !(a.r_inner < a.r_outer) || !std::isfinite(a.r_outer)) {
                           throw std::domain_error("annulus sector needs 0 <= r_inner < r_outer");
                       }
                   },
                   [](const Disk& d) {
                       if (!(d.r > 0.0) || !std::isfinite(d.r)) {
                           throw std::domain_error("disk sector needs r > 0");
                       }
                   },
                   [](const Rect& r) {
                       if (!(r.x0 < r.x1) || !(r.y0 < r.y1) || !std::isfinite(r.x1 - r.x0) ||
                           !std::isfinite(r.y1 - r.y0)) {
                           throw std::domain_error("rect sector needs x0 < x1 and y0 < y1");
                       }
                   },
               },
               shape);
}

void validate_sector(const SectorSpec& sector)
{
    validate_shape(sector.shape);
    if (sector.n < 1) {
        throw std::domain_error("sector node count n must be >= 1");
    }
}

double shape_area(const Shape& shape)
{
    validate_shape(shape);
    return std::visit(overloaded{
                          [](const Annulus& a) { return annulus_area(a.r_inner, a.r_outer); },
                          [](const Disk& d) { return kPi * d.r * d.r; },
                          [](const Rect& r) { return (r.x1 - r.x0) * (r.y1 - r.y0); },
                      },
                      shape);
}

double sector_area(const SectorSpec& sector)
{
    validate_sector(sector);
    return shape_area(sector.shape);
}

double sector_density(const SectorSpec& sector)
{
    return static_cast<double>(sector.n) / sector_area(sector);
}

std::optional<Annulus> radial_bounds(const Shape& shape)
{
    return std::visit(overloaded{
                          [](const Annulus& a) -> std::optional<Annulus> { return a; },
                          [](const Disk& d) -> std::optional<Annulus> { return Annulus{0.0, d.r}; },
                          [](const Rect&) -> std::optional<Annulus> { return std::nullopt; },
                      },
                      shape);
}

bool shape_contains(const Shape& shape, double x, double y, double slack)
{
    if (const auto* r = std::get_if<Rect>(&shape)) {
        return x >= r->x0 - slack && x <= r->x1 + slack && y >= r->y0 - slack && y <= r->y1 + slack;
    }
    const Annulus bounds = *radial_bounds(shape);
    const double radius = std::hypot(x, y);
    return radius >= bounds.r_inner - slack && radius <= bounds.r_outer + slack;
}

double LayerSet::inner(int layer) const
{
    if (layer < 1 || layer > layer_count()) {
        throw std::out_of_range("LayerSet::inner: layer index out of range");
    }
    return layer == 1 ? 0.0 : radii[static_cast<std::size_t>(layer - 2)];
}

double LayerSet::outer(int layer) const
{
    if (layer < 1 || layer > layer_count()) {
        throw std::out_of_range("LayerSet::outer: layer index out of range");
    }
    return layer == layer_count() ? size : radii[static_cast<std::size_t>(layer - 1)];
}

int LayerSet::layer_of(double r) const
{
    if (!(r >= 0.0) || r > size) {
        return 0;
    }
    // first radius strictly greater than r closes the owning layer
    const auto it = std::upper_bound(radii.begin(), radii.end(), r);
    return static_cast<int>(it - radii.begin()) + 1;
}

Shape sector_shape(const Deployment& deployment, int index)
{
    if (deployment.layers) {
        const LayerSet& layers = *deployment.layers;
        return Annulus{layers.inner(index), layers.outer(index)};
    }
    const auto& plan = std::get<DeploymentPlan>(deployment.config);
    if (index < 1 || index > static_cast<int>(plan.sectors.size())) {
        throw std::out_of_range("sector index out of range");
    }
    return plan.sectors[static_cast<std::size_t>(index - 1)].shape;
}

int sector_total(const Deployment& deployment)
{
    if (deployment.layers) {
        return deployment.layers->layer_count();
    }
    return static_cast<int>(std::get<DeploymentPlan>(deployment.config).sectors.size());
}

}  // namespace asd
