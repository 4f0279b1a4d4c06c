// Deterministic, seekable random source and the uniform-variate transforms
// every sampler builds on.
//
// The generator is Philox4x32-10 keyed by the 64-bit seed. The 128-bit
// counter holds (variate block, stream_id), so variate k of any stream can be
// produced in O(1) and substreams never overlap. Each block yields two
// doubles, taken from the top 53 bits of its two 64-bit halves.
#pragma once

#include <array>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace asd {

using PhiloxCounter = std::array<std::uint32_t, 4>;
using PhiloxKey = std::array<std::uint32_t, 2>;

/// Ten-round Philox4x32 bijection.
PhiloxCounter philox4x32_10(PhiloxCounter counter, PhiloxKey key) noexcept;

/// Something that hands out U[0,1) variates in order. RandomStream is the
/// production source; VariateReplay lets tests inject exact variates.
template <class S>
concept UniformSource = requires(S& s) {
    { s.uniform01() } -> std::convertible_to<double>;
};

class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed, std::uint64_t stream_id = 0) noexcept;

    /// Next variate in [0, 1).
    double uniform01() noexcept;

    /// Position the stream so the next draw is variate number `index` (0-based).
    void seek(std::uint64_t index) noexcept;
    void discard(std::uint64_t count) noexcept { seek(position_ + count); }

    std::uint64_t position() const noexcept { return position_; }
    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

  private:
    void refill(std::uint64_t block) noexcept;

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::uint64_t position_ = 0;
    std::uint64_t cached_block_ = ~std::uint64_t{0};
    std::array<double, 2> cache_{};
};

/// Replays a fixed list of variates; throws std::out_of_range when exhausted.
class VariateReplay {
  public:
    explicit VariateReplay(std::vector<double> variates) : variates_(std::move(variates)) {}

    double uniform01()
    {
        if (next_ >= variates_.size()) {
            throw std::out_of_range("VariateReplay: variate script exhausted");
        }
        return variates_[next_++];
    }

    std::size_t consumed() const noexcept { return next_; }

  private:
    std::vector<double> variates_;
    std::size_t next_ = 0;
};

/// Map 64 random bits to [0, 1) with 53-bit resolution.
constexpr double bits_to_unit(std::uint64_t bits) noexcept
{
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

/// a + u (b - a); throws std::domain_error unless a < b.
template <UniformSource S>
double uniform_real(S& source, double a, double b)
{
    if (!(a < b)) {
        throw std::domain_error("uniform_real: need a < b");
    }
    return a + source.uniform01() * (b - a);
}

/// Discrete-uniform layer count from a single variate u0 by the threshold
/// loop: v = 3/2 + u0 (n_max - 1), return the first i in 2..n_max with
/// v - i <= 1/2.
int threshold_index(double u0, int n_max);

/// Draws one variate and returns threshold_index of it, uniform on {2..n_max}.
template <UniformSource S>
int discrete_uniform_via_threshold(S& source, int n_max)
{
    if (n_max < 2) {
        throw std::domain_error("discrete_uniform_via_threshold: need n_max >= 2");
    }
    return threshold_index(source.uniform01(), n_max);
}

}  // namespace asd
