#include "asd/auto_deploy.hpp"

#include <omp.h>

namespace asd {

NodeSplit split_nodes(std::int64_t nodes, int layer_count)
{
    if (layer_count < 2) {
        throw std::domain_error("split_nodes: need n_L >= 2");
    }
    if (nodes < layer_count) {
        throw std::domain_error("split_nodes: n_S < n_L would leave outer layers empty");
    }
    const std::int64_t n_out = nodes / layer_count;
    const std::int64_t n_in = nodes - (layer_count - 1) * n_out;
    return {n_in, n_out};
}

void check_annulus_bounds(double inner, double outer)
{
    if (!(inner >= 0.0) || !(inner < outer)) {
        throw std::domain_error("annulus sampling: need 0 <= L1 < L2");
    }
}

Point2 annulus_point_from_variates(double inner, double outer, double u_radial, double u_angle) noexcept
{
    const double inner_sq = inner * inner;
    const double r = std::sqrt(inner_sq + u_radial * (outer * outer - inner_sq));
    const double theta = 2.0 * kPi * u_angle;
    return {r * std::cos(theta), r * std::sin(theta)};
}

Deployment make_automatic_deployment(const NetworkConfig& config, const AutoDeploymentPlan& plan)
{
    Deployment out;
    out.config = config;
    out.layers = plan.layers;
    out.n_in = plan.split.n_in;
    out.n_out = plan.split.n_out;
    out.seed = config.seed;
    return out;
}

Deployment deploy_automatic_parallel(const NetworkConfig& config, std::uint64_t stream_id, LayerCountMode mode)
{
    RandomStream planner(config.seed, stream_id);
    const AutoDeploymentPlan plan = plan_automatic(config, planner, mode);
    const std::uint64_t base = planner.position();

    Deployment out = make_automatic_deployment(config, plan);
    const auto total = static_cast<std::int64_t>(config.nodes);
    out.points.resize(static_cast<std::size_t>(total));

    const std::int64_t n_in = plan.split.n_in;
    const std::int64_t n_out = plan.split.n_out;
    NodePoint* const points = out.points.data();

#pragma omp parallel
    {
        const std::int64_t threads = omp_get_num_threads();
        const std::int64_t tid = omp_get_thread_num();
        const std::int64_t begin = total * tid / threads;
        const std::int64_t end = total * (tid + 1) / threads;

        RandomStream stream(config.seed, stream_id);
        stream.seek(base + 2 * static_cast<std::uint64_t>(begin));

        for (std::int64_t m = begin; m < end; ++m) {
            const int layer = m < n_in ? 1 : 2 + static_cast<int>((m - n_in) / n_out);
            const double inner = plan.layers.inner(layer);
            const double outer = plan.layers.outer(layer);
            const double u_radial = stream.uniform01();
            const double u_angle = stream.uniform01();
            const Point2 p = annulus_point_from_variates(inner, inner < outer ? outer : inner, u_radial, u_angle);
            points[m] = {p.x, p.y, layer};
        }
    }
    return out;
}

}  // namespace asd
