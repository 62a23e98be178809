#include "qcl/rng.hpp"

#include <cmath>
#include <numbers>

namespace qcl {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RngStream RngStream::derive(std::uint64_t master_seed, std::uint64_t index, std::uint64_t salt) {
    RngStream r;
    std::uint64_t state = master_seed;
    (void)splitmix64(state);
    state ^= 0xA0761D6478BD642FULL * (index + 1);
    (void)splitmix64(state);
    state ^= 0xE7037ED1A0B428DBULL * (salt + 1);
    for (auto& word : r.s_) word = splitmix64(state);
    return r;
}

std::uint64_t RngStream::next_u64() {
    const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
}

double RngStream::next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

double RngStream::next_gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    // u1 in (0,1] so the log is finite.
    const double u1 = 1.0 - next_double();
    const double u2 = next_double();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

}  // namespace qcl
