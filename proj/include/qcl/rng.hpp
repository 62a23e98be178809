#pragma once

#include <cstdint>

namespace qcl {

/// SplitMix64 step; used for seeding and stream derivation.
std::uint64_t splitmix64(std::uint64_t& state);

/// xoshiro256++ with Box-Muller gaussians. Streams are derived by hashing
/// (master_seed, index, salt) through SplitMix64, so any (seed, index) pair
/// names the same stream no matter which worker draws from it or when.
class RngStream {
  public:
    RngStream() = default;

    static RngStream derive(std::uint64_t master_seed, std::uint64_t index, std::uint64_t salt = 0);

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double();

    /// Standard normal via Box-Muller (the spare deviate is cached).
    double next_gaussian();

    double next_gaussian(double mean, double std_dev) { return mean + std_dev * next_gaussian(); }

  private:
    std::uint64_t s_[4] = {1, 2, 3, 4};
    double spare_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace qcl
