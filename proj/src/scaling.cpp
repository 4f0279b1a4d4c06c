#include "asd/scaling.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "asd/auto_deploy.hpp"

namespace asd {

double time_worst_case(std::int64_t nodes, int max_layers, std::uint64_t seed, int repeats, Kernel kernel)
{
    const NetworkConfig config = validate_config({1.0, max_layers, nodes, seed});
    std::vector<double> samples;
    volatile double sink = 0.0;
    for (int rep = 0; rep < std::max(repeats, 1); ++rep) {
        const auto start = std::chrono::steady_clock::now();
        Deployment d;
        if (kernel == Kernel::serial) {
            RandomStream stream(seed, static_cast<std::uint64_t>(rep));
            d = deploy_automatic(config, stream, LayerCountMode::forced_max);
        } else {
            d = deploy_automatic_parallel(config, static_cast<std::uint64_t>(rep), LayerCountMode::forced_max);
        }
        const auto stop = std::chrono::steady_clock::now();
        sink = sink + d.points.back().x;
        samples.push_back(std::chrono::duration<double>(stop - start).count());
    }
    std::nth_element(samples.begin(), samples.begin() + static_cast<std::ptrdiff_t>(samples.size() / 2),
                     samples.end());
    return samples[samples.size() / 2];
}

std::vector<TimingRow> sweep(std::span<const std::int64_t> nodes, std::span<const int> max_layers,
                             std::uint64_t seed, int repeats, Kernel kernel)
{
    std::vector<TimingRow> rows;
    for (std::int64_t n : nodes) {
        for (int m : max_layers) {
            rows.push_back({n, m, time_worst_case(n, m, seed, repeats, kernel)});
        }
    }
    return rows;
}

double fit_exponent(std::span<const TimingRow> rows, const std::function<double(const TimingRow&)>& x)
{
    if (rows.size() < 2) {
        throw std::invalid_argument("fit_exponent: need at least two rows");
    }
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (const TimingRow& row : rows) {
        const double lx = std::log(x(row));
        const double ly = std::log(std::max(row.seconds, 1e-12));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(rows.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("fit_exponent: x values are all equal");
    }
    return (n * sxy - sx * sy) / denom;
}

std::vector<std::int64_t> decade_ladder(int lo, int hi)
{
    std::vector<std::int64_t> out;
    std::int64_t v = 1;
    for (int e = 0; e <= hi; ++e) {
        if (e >= lo) {
            out.push_back(v);
        }
        v *= 10;
    }
    return out;
}

}  // namespace asd
