#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"

namespace chainstat {

/// Ordered partition of the state indices 0..dim-1 into disjoint blocks.
struct Partition {
    std::vector<std::vector<int>> blocks;

    void validate(const CountedMatrix& m) const {
        std::vector<int> seen(m.dim(), 0);
        for (const auto& b : blocks) {
            bool any_term = false, any_nonterm = false;
            for (int i : b) {
                if (i < 0 || i >= m.dim()) throw ConfigError("partition index out of range");
                if (seen[i]++) throw ConfigError("partition blocks overlap");
                (m.is_terminal(i) ? any_term : any_nonterm) = true;
            }
            if (any_term && any_nonterm)
                throw ConfigError("partition lumps terminal with non-terminal states");
        }
        for (int i = 0; i < m.dim(); ++i)
            if (!seen[i]) throw ConfigError("partition does not cover all states");
    }

    int block_of(int state) const {
        for (std::size_t b = 0; b < blocks.size(); ++b)
            for (int i : blocks[b])
                if (i == state) return static_cast<int>(b);
        throw ConfigError("state not covered by partition");
    }
};

/// Lumpability test: for every block pair (A_m, A_n), the block-summed
/// entries must be the same polynomial for every source state in A_n.
inline bool check_lumpable(const CountedMatrix& m, const Partition& part, double tol = 1e-12) {
    part.validate(m);
    for (const auto& target : part.blocks) {
        for (const auto& source : part.blocks) {
            CounterPoly ref;
            bool have_ref = false;
            for (int j : source) {
                CounterPoly sum;
                for (int i : target) sum += m.at(i, j);
                if (!have_ref) {
                    ref = sum;
                    have_ref = true;
                } else if (!sum.approx_equal(ref, tol)) {
                    return false;
                }
            }
        }
    }
    return true;
}

/// In-set maximal mixing matrix: block diagonal, each block of size n filled
/// with 1/n. Column-stochastic by construction.
inline CountedMatrix mixing_matrix(const Partition& part, int dim) {
    CountedMatrix m(dim, {});
    for (const auto& b : part.blocks) {
        const double w = 1.0 / static_cast<double>(b.size());
        for (int i : b)
            for (int j : b) m.add(i, j, CounterPoly(w));
    }
    return m;
}

/// Lump a (pre-mixed) matrix down to one state per block. The mixing matrix
/// is applied on the left each step, which restores the symmetry broken by
/// counting variables without changing the counters-at-1 marginals.
inline CountedMatrix lump(const CountedMatrix& m, const Partition& part, double tol = 1e-12) {
    part.validate(m);
    CountedMatrix mixed = mixing_matrix(part, m.dim()).multiply(m);
    if (!check_lumpable(mixed, part, tol))
        throw NotLumpable("matrix is not lumpable under the given partition even after mixing");

    // order blocks so the block containing state 0 comes first
    std::vector<std::size_t> order(part.blocks.size());
    for (std::size_t b = 0; b < order.size(); ++b) order[b] = b;
    const int start_block = part.block_of(0);
    std::stable_partition(order.begin(), order.end(),
                          [&](std::size_t b) { return static_cast<int>(b) == start_block; });

    std::vector<int> terminals;
    for (std::size_t pos = 0; pos < order.size(); ++pos) {
        const auto& blk = part.blocks[order[pos]];
        if (m.is_terminal(blk.front())) terminals.push_back(static_cast<int>(pos));
    }
    CountedMatrix r(static_cast<int>(part.blocks.size()), terminals, m.counters());
    for (std::size_t bi = 0; bi < order.size(); ++bi) {
        for (std::size_t bj = 0; bj < order.size(); ++bj) {
            const int j_rep = part.blocks[order[bj]].front();
            CounterPoly sum;
            for (int i : part.blocks[order[bi]]) sum += mixed.at(i, j_rep);
            r.set(static_cast<int>(bi), static_cast<int>(bj), sum);
        }
    }
    return r;
}

/// Closed-form lumped section matrix for q parallel pair connections with a
/// counting variable on one representative pair's terminal hold. State j =
/// number of connected pairs; state q is the sole terminal. Transition
/// j -> i carries C(q-j, i-j) p^{i-j} (1-p)^{q-i} [q + (w-1) j]/q.
inline CountedMatrix lumped_section_matrix(int q, double p, const std::string& counter = "w0") {
    if (q < 1) throw ConfigError("need q >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw ConfigError("need 0 < p <= 1");
    if (q == 1) return [&] {
        CountedMatrix m(2, {1});
        if (p < 1.0) m.set(0, 0, CounterPoly(1.0 - p));
        m.set(1, 0, CounterPoly(p));
        return m;
    }();

    CountedMatrix m(q + 1, {q});
    const std::size_t w = m.ensure_counter(counter);
    auto choose = [](int n, int k) {
        double c = 1.0;
        for (int i = 1; i <= k; ++i) c = c * static_cast<double>(n - k + i) / i;
        return c;
    };
    for (int j = 0; j < q; ++j) {
        for (int i = j; i <= q; ++i) {
            const double base = choose(q - j, i - j) * std::pow(p, i - j) *
                                std::pow(1.0 - p, q - i);
            if (base == 0.0) continue;
            // [q + (w-1) j]/q = (q-j)/q + (j/q) w
            CounterPoly poly(base * static_cast<double>(q - j) / q);
            if (j > 0)
                poly += CounterPoly::monomial(base * static_cast<double>(j) / q, w);
            m.set(i, j, poly);
        }
    }
    return m;
}

/// Partition of the full 2^q tensor state space by number of connected pairs,
/// for the q-parallel-pairs process in the tensor index convention.
inline Partition pairs_connected_partition(int q) {
    Partition part;
    part.blocks.resize(q + 1);
    for (int s = 0; s < (1 << q); ++s) {
        int connected = 0;
        for (int b = 0; b < q; ++b)
            if (s & (1 << b)) ++connected;
        part.blocks[connected].push_back(s);
    }
    return part;
}

}  // namespace chainstat
