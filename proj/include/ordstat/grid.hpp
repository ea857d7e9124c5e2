#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace ordstat {

/**
 * Inclusive evaluation grid [lo, hi] with n points.
 *
 * Points are linearly spaced: x_i = lo + i*(hi-lo)/(n-1).  Comparison and
 * figure grids in this library are linear; condition-check grids (which hug a
 * support edge) are built with log_spaced() instead.
 */
struct GridSpec {
    double lo = 0.0;
    double hi = 1.0;
    int n = 512;

    GridSpec() = default;
    GridSpec(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
        if (!(lo < hi) || n < 2) throw std::invalid_argument("GridSpec: need lo < hi and n >= 2");
    }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<size_t>(n));
        const double step = (hi - lo) / static_cast<double>(n - 1);
        for (int i = 0; i < n; ++i) xs[static_cast<size_t>(i)] = lo + step * i;
        xs.back() = hi;
        return xs;
    }
};

/** n points geometrically spaced on [lo, hi]; requires 0 < lo < hi. */
std::vector<double> log_spaced(double lo, double hi, int n);

/** n points linearly spaced on [lo, hi]. */
std::vector<double> lin_spaced(double lo, double hi, int n);

/**
 * SplitMix64 stream: mixes a 64-bit counter into a well-distributed 64-bit
 * output.  Used for all Monte Carlo sampling because the mapping is a pure
 * function of (seed, index), which makes estimates reproducible bit-for-bit
 * and independent of how samples are partitioned across workers.
 */
inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/** Stateful SplitMix64 generator (the stream form of splitmix64). */
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    /** Uniform double in [0, 1) with 53 random bits. */
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  private:
    std::uint64_t state_;
};

/** Monte Carlo seed: ORDSTAT_SEED environment variable if set, else a fixed default. */
std::uint64_t default_mc_seed();

}  // namespace ordstat
