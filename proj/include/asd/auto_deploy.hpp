// Automatic inhomogeneous deployment over a disk of radius L.
//
// Draw order is fixed: one variate for the layer count, one per layer
// radius, then two per node (radial, angular), innermost layer first. The
// serial `deploy_automatic` is the reference implementation; the OpenMP
// kernel `deploy_automatic_parallel` seeks each thread to its offset in the
// same counter-based stream and must reproduce it bit for bit.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "asd/core.hpp"
#include "asd/rand.hpp"

namespace asd {

struct NodeSplit {
    std::int64_t n_in;   // innermost layer
    std::int64_t n_out;  // every other layer

    bool operator==(const NodeSplit&) const = default;
};

/// n_out = floor(n_S / n_L), n_in = n_S - (n_L - 1) n_out.
/// Throws std::domain_error unless n_S >= n_L >= 2.
NodeSplit split_nodes(std::int64_t nodes, int layer_count);

/// Inverse transform for an area-uniform point of the annulus [L1, L2).
Point2 annulus_point_from_variates(double inner, double outer, double u_radial, double u_angle) noexcept;

void check_annulus_bounds(double inner, double outer);

template <UniformSource S>
int sample_layer_count(int max_layers, S& source)
{
    if (max_layers < 2) {
        throw std::domain_error("sample_layer_count: need n_Lmax >= 2");
    }
    return discrete_uniform_via_threshold(source, max_layers);
}

/// n_L - 1 radii drawn from U[0, L) in stream order, then sorted ascending.
template <UniformSource S>
LayerSet sample_layer_radii(double size, int layer_count, S& source)
{
    if (!(size > 0.0)) {
        throw std::domain_error("sample_layer_radii: need L > 0");
    }
    if (layer_count < 2) {
        throw std::domain_error("sample_layer_radii: need n_L >= 2");
    }
    LayerSet layers;
    layers.size = size;
    layers.radii.reserve(static_cast<std::size_t>(layer_count - 1));
    for (int j = 1; j < layer_count; ++j) {
        layers.radii.push_back(source.uniform01() * size);
    }
    std::sort(layers.radii.begin(), layers.radii.end());
    return layers;
}

/// Consumes the radial variate then the angular variate.
template <UniformSource S>
Point2 sample_point_in_annulus(double inner, double outer, S& source)
{
    check_annulus_bounds(inner, outer);
    const double u_radial = source.uniform01();
    const double u_angle = source.uniform01();
    return annulus_point_from_variates(inner, outer, u_radial, u_angle);
}

/// `forced_max` pins n_L to n_Lmax (the worst case for cost measurements).
/// The layer-count variate is still consumed so later draws keep their offsets.
enum class LayerCountMode { sampled, forced_max };

struct AutoDeploymentPlan {
    int layer_count;
    NodeSplit split;
    LayerSet layers;

    std::int64_t quota(int layer) const noexcept { return layer == 1 ? split.n_in : split.n_out; }
};

template <UniformSource S>
AutoDeploymentPlan plan_automatic(const NetworkConfig& config, S& source,
                                  LayerCountMode mode = LayerCountMode::sampled)
{
    validate_config(config);
    int layer_count = sample_layer_count(config.max_layers, source);
    if (mode == LayerCountMode::forced_max) {
        layer_count = config.max_layers;
    }
    const NodeSplit split = split_nodes(config.nodes, layer_count);
    LayerSet layers = sample_layer_radii(config.size, layer_count, source);
    return {layer_count, split, std::move(layers)};
}

Deployment make_automatic_deployment(const NetworkConfig& config, const AutoDeploymentPlan& plan);

/// Serial reference: the full automatic algorithm from one variate source.
template <UniformSource S>
Deployment deploy_automatic(const NetworkConfig& config, S& source,
                            LayerCountMode mode = LayerCountMode::sampled)
{
    const AutoDeploymentPlan plan = plan_automatic(config, source, mode);
    Deployment out = make_automatic_deployment(config, plan);
    out.points.reserve(static_cast<std::size_t>(config.nodes));
    for (int layer = 1; layer <= plan.layer_count; ++layer) {
        const double inner = plan.layers.inner(layer);
        const double outer = plan.layers.outer(layer);
        for (std::int64_t m = 0; m < plan.quota(layer); ++m) {
            Point2 p;
            if (inner < outer) {
                p = sample_point_in_annulus(inner, outer, source);
            } else {
                // zero-width layer from colliding radii: nodes sit on r = L1
                const double u_radial = source.uniform01();
                const double u_angle = source.uniform01();
                p = annulus_point_from_variates(inner, inner, u_radial, u_angle);
            }
            out.points.push_back({p.x, p.y, layer});
        }
    }
    return out;
}

/// OpenMP kernel over the nodes; output identical to
/// deploy_automatic(config, RandomStream(config.seed, stream_id), mode).
Deployment deploy_automatic_parallel(const NetworkConfig& config, std::uint64_t stream_id,
                                     LayerCountMode mode = LayerCountMode::sampled);

}  // namespace asd
