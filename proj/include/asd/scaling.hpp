// Worst-case cost measurements of the automatic deployment (n_L pinned to n_Lmax).
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace asd {

struct TimingRow {
    std::int64_t nodes;
    int max_layers;
    double seconds;
};

enum class Kernel { serial, parallel };

/// Median wall time of `repeats` worst-case deployments.
double time_worst_case(std::int64_t nodes, int max_layers, std::uint64_t seed, int repeats,
                       Kernel kernel = Kernel::serial);

std::vector<TimingRow> sweep(std::span<const std::int64_t> nodes, std::span<const int> max_layers,
                             std::uint64_t seed, int repeats, Kernel kernel = Kernel::serial);

/// Least-squares slope of log(seconds) against log(x(row)).
double fit_exponent(std::span<const TimingRow> rows, const std::function<double(const TimingRow&)>& x);

/// 10^lo, 10^(lo+1), ..., 10^hi.
std::vector<std::int64_t> decade_ladder(int lo, int hi);

}  // namespace asd
