#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"
#include "chainstat/fft.hpp"

namespace chainstat {

/// Conditional error-count distribution p(k|t) (or joint over several
/// counters), plus the unconditioned completion probability p_t.
struct ErrorDistribution {
    long t = 0;
    std::vector<std::size_t> shape;   // one extent per counter axis
    std::vector<double> probs;        // row-major over shape; sums to 1
    double total = 0.0;               // p_t at counters = 1

    double p(std::size_t k) const { return k < probs.size() ? probs[k] : 0.0; }

    double p(const std::vector<std::size_t>& ks) const {
        std::size_t idx = 0;
        for (std::size_t a = 0; a < shape.size(); ++a) {
            if (ks[a] >= shape[a]) return 0.0;
            idx = idx * shape[a] + ks[a];
        }
        return probs[idx];
    }
};

/// Multiply the listed (row, col) entries by the counting variable `var`.
inline CountedMatrix attach_counter(const CountedMatrix& m,
                                    const std::vector<std::pair<int, int>>& edges,
                                    const std::string& var) {
    CountedMatrix r = m;
    const std::size_t slot = r.ensure_counter(var);
    const CounterPoly w = CounterPoly::monomial(1.0, slot);
    for (const auto& [row, col] : edges) {
        if (m.at(row, col).is_zero())
            throw UnknownEdge("no edge at (" + std::to_string(row) + "," + std::to_string(col) +
                              ")");
        r.set(row, col, m.at(row, col) * w);
    }
    return r;
}

namespace detail {

inline void clamp_probs(std::vector<double>& probs) {
    for (auto& x : probs) {
        if (x < 0.0) {
            if (x < -1e-9) throw NegativeCoefficient("coefficient " + std::to_string(x));
            x = 0.0;
        }
    }
}

}  // namespace detail

/// p(k|t) for one counter by evaluating p_t on the N-th roots of unity and
/// inverse-transforming; N is the next power of two at or above
/// t * d_max + 1, the degree bound of p_t(w).
inline ErrorDistribution error_pmf(const CountedMatrix& m, long t, std::size_t var = 0,
                                   std::size_t min_grid = 0) {
    if (m.counters().empty()) throw ConfigError("error_pmf: matrix has no counters");
    if (t < 1) throw ConfigError("error_pmf: need t >= 1");
    const std::uint32_t d = std::max<std::uint32_t>(1, m.max_step_degree_of(var));
    const std::size_t n = std::max(min_grid,
                                   next_pow2(static_cast<std::size_t>(t) * d + 1));

    std::vector<Complex> values(m.counters().size(), Complex(1.0));
    std::vector<Complex> evals(n);
    // conjugate symmetry: p_t has real coefficients
    for (std::size_t k = 0; k <= n / 2; ++k) {
        const double ang = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n);
        values[var] = {std::cos(ang), std::sin(ang)};
        evals[k] = pmf_by_power(m, static_cast<int>(t), values);
        if (k != 0 && k != n / 2) evals[n - k] = std::conj(evals[k]);
    }
    const double total = evals[0].real();
    if (total < 1e-300) throw ZeroMass("p_t = 0: cannot condition on this completion time");

    fft_inplace(evals, true);
    ErrorDistribution dist;
    dist.t = t;
    dist.total = total;
    dist.shape = {n};
    dist.probs.resize(n);
    for (std::size_t k = 0; k < n; ++k) dist.probs[k] = evals[k].real() / total;
    detail::clamp_probs(dist.probs);
    return dist;
}

/// Joint p(k_0,...,k_{m-1}|t) by a multi-dimensional transform, one axis of
/// roots of unity per counter.
inline ErrorDistribution joint_error_pmf(const CountedMatrix& m, long t,
                                         std::size_t grid_budget = (1u << 24)) {
    const std::size_t nc = m.counters().size();
    if (nc < 2) throw ConfigError("joint_error_pmf: need at least two counters");
    if (t < 1) throw ConfigError("joint_error_pmf: need t >= 1");

    std::vector<std::size_t> shape(nc);
    std::size_t total_points = 1;
    for (std::size_t a = 0; a < nc; ++a) {
        const std::uint32_t d = std::max<std::uint32_t>(1, m.max_step_degree_of(a));
        shape[a] = next_pow2(static_cast<std::size_t>(t) * d + 1);
        total_points *= shape[a];
    }
    if (total_points > grid_budget)
        throw GridTooLarge("evaluation grid of " + std::to_string(total_points) +
                           " points exceeds budget");

    std::vector<Complex> grid(total_points);
    std::vector<Complex> values(nc);
    std::vector<std::size_t> idx(nc, 0);
    for (std::size_t flat = 0; flat < total_points; ++flat) {
        std::size_t rem = flat;
        for (std::size_t a = nc; a-- > 0;) {
            idx[a] = rem % shape[a];
            rem /= shape[a];
        }
        for (std::size_t a = 0; a < nc; ++a) {
            const double ang =
                2.0 * std::numbers::pi * static_cast<double>(idx[a]) / static_cast<double>(shape[a]);
            values[a] = {std::cos(ang), std::sin(ang)};
        }
        grid[flat] = pmf_by_power(m, static_cast<int>(t), values);
    }
    const double total = grid[0].real();
    if (total < 1e-300) throw ZeroMass("p_t = 0: cannot condition on this completion time");

    ifft_grid(grid, shape);
    ErrorDistribution dist;
    dist.t = t;
    dist.total = total;
    dist.shape = shape;
    dist.probs.resize(total_points);
    for (std::size_t k = 0; k < total_points; ++k) dist.probs[k] = grid[k].real() / total;
    detail::clamp_probs(dist.probs);
    return dist;
}

/// Eq.-(21) heralded error for a known pass count.
inline double heralded_error(long k, double eps) {
    return 1.0 - std::pow(1.0 - eps, static_cast<double>(k));
}

/// 1 - p_t(1-eps)/p_t(1): the error probability averaged over the unknown
/// pass count.
inline double nonheralded_error(const CountedMatrix& m, long t, double eps,
                                std::size_t var = 0) {
    std::vector<Complex> values(m.counters().size(), Complex(1.0));
    const double total = pmf_by_power(m, static_cast<int>(t), values).real();
    if (total < 1e-300) throw ZeroMass("p_t = 0: cannot condition on this completion time");
    values[var] = Complex(1.0 - eps);
    const double re = pmf_by_power(m, static_cast<int>(t), values).real();
    return 1.0 - re / total;
}

}  // namespace chainstat
