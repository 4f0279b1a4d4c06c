// Designer-planned deployment: non-overlapping sectors, uniform placement
// inside each, results superimposed in sector order.
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include "asd/auto_deploy.hpp"
#include "asd/core.hpp"
#include "asd/rand.hpp"

namespace asd {

struct OverlapReport {
    bool disjoint = true;
    std::optional<std::pair<int, int>> first_pair;  // 1-based sector indices
    std::string message;
};

/// True when the interiors of two shapes are disjoint. Boundary contact is not overlap.
bool interiors_disjoint(const Shape& a, const Shape& b);

OverlapReport check_non_overlap(std::span<const SectorSpec> sectors);

/// Thrown by deploy_planned when the plan is rejected.
class PlanError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Annulus and disk go through the annulus inverse transform; rect draws x then y.
template <UniformSource S>
Point2 sample_point_in_sector(const SectorSpec& sector, S& source)
{
    validate_sector(sector);
    if (const auto* r = std::get_if<Rect>(&sector.shape)) {
        const double u = source.uniform01();
        const double v = source.uniform01();
        return {r->x0 + u * (r->x1 - r->x0), r->y0 + v * (r->y1 - r->y0)};
    }
    const Annulus bounds = *radial_bounds(sector.shape);
    return sample_point_in_annulus(bounds.r_inner, bounds.r_outer, source);
}

/// Substream for sector `index` (1-based) of batch run `run`.
constexpr std::uint64_t sector_stream_id(std::uint64_t run, int index) noexcept
{
    return (run << 32) | static_cast<std::uint32_t>(index);
}

/// Points of one sector, drawn from its own substream.
std::vector<NodePoint> deploy_sector(const SectorSpec& sector, int index, std::uint64_t seed, std::uint64_t run);

void validate_plan(const DeploymentPlan& plan);

/// Serial reference superposition.
Deployment deploy_planned(const DeploymentPlan& plan, std::uint64_t seed, std::uint64_t run = 0);

/// Sectors sampled concurrently; output identical to deploy_planned.
Deployment deploy_planned_parallel(const DeploymentPlan& plan, std::uint64_t seed, std::uint64_t run = 0);

}  // namespace asd
