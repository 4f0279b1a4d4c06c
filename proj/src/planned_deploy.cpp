#include "asd/planned_deploy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asd {

namespace {

bool radial_intervals_disjoint(const Annulus& a, const Annulus& b)
{
    return std::max(a.r_inner, b.r_inner) >= std::min(a.r_outer, b.r_outer);
}

bool rects_disjoint(const Rect& a, const Rect& b)
{
    return a.x1 <= b.x0 || b.x1 <= a.x0 || a.y1 <= b.y0 || b.y1 <= a.y0;
}

// Distances from the origin over a box fill [nearest, farthest]; the annulus
// interior is the open band (r_inner, r_outer).
bool annulus_rect_disjoint(const Annulus& a, const Rect& r)
{
    const double dx = std::max({r.x0, 0.0, -r.x1});
    const double dy = std::max({r.y0, 0.0, -r.y1});
    const double nearest = std::hypot(dx, dy);
    const double farthest = std::hypot(std::max(std::abs(r.x0), std::abs(r.x1)),
                                       std::max(std::abs(r.y0), std::abs(r.y1)));
    return nearest >= a.r_outer || farthest <= a.r_inner;
}

}  // namespace

bool interiors_disjoint(const Shape& a, const Shape& b)
{
    const auto ra = radial_bounds(a);
    const auto rb = radial_bounds(b);
    if (ra && rb) {
        return radial_intervals_disjoint(*ra, *rb);
    }
    if (ra) {
        return annulus_rect_disjoint(*ra, std::get<Rect>(b));
    }
    if (rb) {
        return annulus_rect_disjoint(*rb, std::get<Rect>(a));
    }
    return rects_disjoint(std::get<Rect>(a), std::get<Rect>(b));
}

OverlapReport check_non_overlap(std::span<const SectorSpec> sectors)
{
    for (std::size_t i = 0; i < sectors.size(); ++i) {
        for (std::size_t j = i + 1; j < sectors.size(); ++j) {
            if (!interiors_disjoint(sectors[i].shape, sectors[j].shape)) {
                OverlapReport report;
                report.disjoint = false;
                report.first_pair = std::pair{static_cast<int>(i + 1), static_cast<int>(j + 1)};
                std::ostringstream os;
                os << "sectors " << i + 1 << " and " << j + 1 << " overlap";
                report.message = os.str();
                return report;
            }
        }
    }
    return {};
}

void validate_plan(const DeploymentPlan& plan)
{
    if (plan.sectors.empty()) {
        throw PlanError("plan must contain at least one sector");
    }
    for (std::size_t i = 0; i < plan.sectors.size(); ++i) {
        try {
            validate_sector(plan.sectors[i]);
        } catch (const std::domain_error& e) {
            throw PlanError("sector " + std::to_string(i + 1) + ": " + e.what());
        }
    }
    const OverlapReport overlap = check_non_overlap(plan.sectors);
    if (!overlap.disjoint) {
        throw PlanError(overlap.message);
    }
}

std::vector<NodePoint> deploy_sector(const SectorSpec& sector, int index, std::uint64_t seed, std::uint64_t run)
{
    RandomStream stream(seed, sector_stream_id(run, index));
    std::vector<NodePoint> points;
    points.reserve(static_cast<std::size_t>(sector.n));
    for (std::int64_t m = 0; m < sector.n; ++m) {
        const Point2 p = sample_point_in_sector(sector, stream);
        points.push_back({p.x, p.y, index});
    }
    return points;
}

namespace {

Deployment planned_shell(const DeploymentPlan& plan, std::uint64_t seed, std::uint64_t run)
{
    validate_plan(plan);
    Deployment out;
    out.config = plan;
    out.seed = seed;
    out.run = run;
    return out;
}

}  // namespace

Deployment deploy_planned(const DeploymentPlan& plan, std::uint64_t seed, std::uint64_t run)
{
    Deployment out = planned_shell(plan, seed, run);
    for (std::size_t i = 0; i < plan.sectors.size(); ++i) {
        auto points = deploy_sector(plan.sectors[i], static_cast<int>(i + 1), seed, run);
        out.points.insert(out.points.end(), points.begin(), points.end());
    }
    return out;
}

Deployment deploy_planned_parallel(const DeploymentPlan& plan, std::uint64_t seed, std::uint64_t run)
{
    Deployment out = planned_shell(plan, seed, run);
    const auto count = static_cast<std::int64_t>(plan.sectors.size());

    std::vector<std::size_t> offsets(plan.sectors.size() + 1, 0);
    for (std::size_t i = 0; i < plan.sectors.size(); ++i) {
        offsets[i + 1] = offsets[i] + static_cast<std::size_t>(plan.sectors[i].n);
    }
    out.points.resize(offsets.back());

#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        const auto points = deploy_sector(plan.sectors[k], static_cast<int>(i + 1), seed, run);
        std::copy(points.begin(), points.end(), out.points.begin() + static_cast<std::ptrdiff_t>(offsets[k]));
    }
    return out;
}

}  // namespace asd
