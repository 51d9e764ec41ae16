#pragma once

// Brute-force oracles used by the tests. These stay independent of the
// library paths they check: pmfs by dense matrix powers, walk enumeration
// with explicit counter tallies, and closed-form geometric laws.

#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "chainstat/counted_matrix.hpp"

namespace oracle {

// pmf of min/max of two independent processes from their pmfs
inline std::vector<double> pmf_of_min(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<double> cdf_a(n, 0.0), cdf_b(n, 0.0), out(n, 0.0);
    double sa = 0.0, sb = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        sa += a[t];
        sb += b[t];
        cdf_a[t] = sa;
        cdf_b[t] = sb;
    }
    for (std::size_t t = 0; t < n; ++t) {
        const double prev = t == 0 ? 0.0 : (1.0 - cdf_a[t - 1]) * (1.0 - cdf_b[t - 1]);
        out[t] = prev - (1.0 - cdf_a[t]) * (1.0 - cdf_b[t]);
    }
    return out;
}

inline std::vector<double> pmf_of_max(const std::vector<double>& a, const std::vector<double>& b) {
    const std::size_t n = std::min(a.size(), b.size());
    std::vector<double> out(n, 0.0);
    double ca = 0.0, cb = 0.0, prev = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        ca += a[t];
        cb += b[t];
        out[t] = ca * cb - prev;
        prev = ca * cb;
    }
    return out;
}

// pmf of a-then-b with a one-step bridge
inline std::vector<double> pmf_of_seq(const std::vector<double>& a, const std::vector<double>& b,
                                      std::size_t n) {
    std::vector<double> out(n, 0.0);
    for (std::size_t ta = 0; ta < std::min(a.size(), n); ++ta)
        for (std::size_t tb = 0; tb < std::min(b.size(), n); ++tb) {
            const std::size_t t = ta + 1 + tb;
            if (t < n) out[t] += a[ta] * b[tb];
        }
    return out;
}

inline double geometric_pmf(double p, long t) {
    return t < 1 ? 0.0 : p * std::pow(1.0 - p, static_cast<double>(t - 1));
}

// Exhaustive walk enumeration: joint distribution of counter passes at time
// t, for matrices small enough to expand every path.
inline std::map<std::vector<std::uint32_t>, double> enumerate_walks(
    const chainstat::CountedMatrix& m, int t) {
    using chainstat::CounterPoly;
    const std::size_t nc = m.counters().size();
    std::map<std::vector<std::uint32_t>, double> acc;
    struct Frame {
        int state;
        double prob;
        std::vector<std::uint32_t> counts;
    };
    std::function<void(int, int, double, std::vector<std::uint32_t>&)> walk =
        [&](int state, int depth, double prob, std::vector<std::uint32_t>& counts) {
            if (depth == t) {
                if (m.is_terminal(state)) acc[counts] += prob;
                return;
            }
            if (m.is_terminal(state)) return;  // absorbed too early
            for (const auto& [key, poly] : m.entries()) {
                if (key.first != state) continue;
                for (const auto& [exps, coeff] : poly.terms()) {
                    auto next = counts;
                    for (std::size_t i = 0; i < exps.size(); ++i) next[i] += exps[i];
                    walk(key.second, depth + 1, prob * coeff, next);
                }
            }
        };
    std::vector<std::uint32_t> zero(nc, 0);
    walk(0, 0, 1.0, zero);
    return acc;
}

// simple deterministic RNG for sampling oracles
struct SplitMix {
    std::uint64_t state;
    explicit SplitMix(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

inline long sample_geometric(SplitMix& rng, double p) {
    const double u = rng.uniform();
    return 1 + static_cast<long>(std::floor(std::log1p(-u) / std::log1p(-p)));
}

}  // namespace oracle
