#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

namespace chainstat {

/// Counter-based deterministic RNG. Each logical stream is keyed by (seed,
/// stream id); Monte Carlo samples get one stream each, so results do not
/// depend on how samples are split across workers.
class Rng {
  public:
    Rng(std::uint64_t seed, std::uint64_t stream) {
        state_ = mix(seed ^ 0x8000000000000000ull) ^ mix(stream * 0x9e3779b97f4a7c15ull + 1);
        if (state_ == 0) state_ = 0x106689d45497fdb5ull;
        next();
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

    /// Index into a cumulative table (first k with cdf[k] >= u * total).
    std::size_t pick_cdf(std::span<const double> cdf, double total) {
        const double u = uniform() * total;
        std::size_t lo = 0, hi = cdf.size();
        while (lo < hi) {
            const std::size_t mid = (lo + hi) / 2;
            if (cdf[mid] < u)
                lo = mid + 1;
            else
                hi = mid;
        }
        return lo < cdf.size() ? lo : cdf.size() - 1;
    }

  private:
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 33)) * 0xff51afd7ed558ccdull;
        z = (z ^ (z >> 33)) * 0xc4ceb9fe1a85ec53ull;
        return z ^ (z >> 33);
    }
    std::uint64_t state_;
};

}  // namespace chainstat
