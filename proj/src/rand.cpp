#include "asd/rand.hpp"

namespace asd {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept
{
    const std::uint64_t product = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(product >> 32);
    lo = static_cast<std::uint32_t>(product);
}

inline std::uint32_t lo32(std::uint64_t v) noexcept { return static_cast<std::uint32_t>(v); }
inline std::uint32_t hi32(std::uint64_t v) noexcept { return static_cast<std::uint32_t>(v >> 32); }

}  // namespace

PhiloxCounter philox4x32_10(PhiloxCounter ctr, PhiloxKey key) noexcept
{
    for (int round = 0; round < 10; ++round) {
        if (round != 0) {
            key[0] += kPhiloxW0;
            key[1] += kPhiloxW1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kPhiloxM0, ctr[0], hi0, lo0);
        mulhilo(kPhiloxM1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : seed_(seed), stream_id_(stream_id)
{
}

void RandomStream::refill(std::uint64_t block) noexcept
{
    const PhiloxCounter out = philox4x32_10({lo32(block), hi32(block), lo32(stream_id_), hi32(stream_id_)},
                                            {lo32(seed_), hi32(seed_)});
    const std::uint64_t first = (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
    const std::uint64_t second = (static_cast<std::uint64_t>(out[3]) << 32) | out[2];
    cache_ = {bits_to_unit(first), bits_to_unit(second)};
    cached_block_ = block;
}

double RandomStream::uniform01() noexcept
{
    const std::uint64_t block = position_ >> 1;
    if (block != cached_block_) {
        refill(block);
    }
    return cache_[position_++ & 1U];
}

void RandomStream::seek(std::uint64_t index) noexcept { position_ = index; }

int threshold_index(double u0, int n_max)
{
    if (n_max < 2) {
        throw std::domain_error("threshold_index: need n_max >= 2");
    }
    if (!(u0 >= 0.0 && u0 < 1.0)) {
        throw std::domain_error("threshold_index: u0 must lie in [0, 1)");
    }
    const double v0 = 1.5 + u0 * static_cast<double>(n_max - 1);
    for (int i = 2; i <= n_max; ++i) {
        if (v0 - static_cast<double>(i) <= 0.5) {
            return i;
        }
    }
    // v0 < n_max + 1/2 for u0 < 1, so the loop always returns
    return n_max;
}

}  // namespace asd
