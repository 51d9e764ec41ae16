#pragma once

#include <complex>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "chainstat/counter_poly.hpp"
#include "chainstat/errors.hpp"

namespace chainstat {

using Complex = std::complex<double>;

/// A counted process matrix bound to fixed complex counter values: plain
/// sparse complex entries in column-major order, ready for power sweeps.
class BoundMatrix {
  public:
    BoundMatrix(int dim, std::vector<int> terminals)
        : dim_(dim), terminals_(std::move(terminals)), cols_(dim) {}

    void add_entry(int row, int col, Complex v) {
        if (v != Complex(0.0)) cols_[col].emplace_back(row, v);
    }

    int dim() const { return dim_; }
    const std::vector<int>& terminals() const { return terminals_; }

    /// One step: out = M * in.
    void apply(std::span<const Complex> in, std::span<Complex> out) const {
        std::fill(out.begin(), out.end(), Complex(0.0));
        for (int j = 0; j < dim_; ++j) {
            const Complex x = in[j];
            if (x == Complex(0.0)) continue;
            for (const auto& [i, v] : cols_[j]) out[i] += v * x;
        }
    }

    /// Mass sitting on terminal states of a distribution vector. Terminal
    /// columns are zero, so after t steps this is exactly the probability of
    /// finishing at t: arrivals vanish on the next multiplication.
    Complex terminal_mass(std::span<const Complex> v) const {
        Complex s = 0.0;
        for (int i : terminals_) s += v[i];
        return s;
    }

    /// p_t for t = 0..t_max starting from state 0.
    std::vector<Complex> pmf_sweep(int t_max) const {
        std::vector<Complex> p(static_cast<std::size_t>(t_max) + 1);
        std::vector<Complex> v(dim_, 0.0), w(dim_, 0.0);
        v[0] = 1.0;
        p[0] = terminal_mass(v);
        for (int t = 1; t <= t_max; ++t) {
            apply(v, w);
            std::swap(v, w);
            p[t] = terminal_mass(v);
        }
        return p;
    }

  private:
    int dim_;
    std::vector<int> terminals_;
    std::vector<std::vector<std::pair<int, Complex>>> cols_;
};

/// Square column-substochastic matrix whose entries are polynomials in the
/// counting variables. Column convention: entry (i, j) weights the transition
/// from state j to state i; state 0 is the start; terminal columns are empty.
class CountedMatrix {
  public:
    CountedMatrix(int dim, std::vector<int> terminals,
                  std::vector<std::string> counters = {})
        : dim_(dim), terminals_(std::move(terminals)), counters_(std::move(counters)),
          is_terminal_(dim, false) {
        std::sort(terminals_.begin(), terminals_.end());
        for (int t : terminals_) is_terminal_[t] = true;
    }

    int dim() const { return dim_; }
    const std::vector<int>& terminals() const { return terminals_; }
    bool is_terminal(int i) const { return is_terminal_[i]; }
    const std::vector<std::string>& counters() const { return counters_; }

    std::size_t counter_index(const std::string& name) const {
        for (std::size_t i = 0; i < counters_.size(); ++i)
            if (counters_[i] == name) return i;
        throw ConfigError("unknown counter: " + name);
    }

    std::size_t ensure_counter(const std::string& name) {
        for (std::size_t i = 0; i < counters_.size(); ++i)
            if (counters_[i] == name) return i;
        counters_.push_back(name);
        return counters_.size() - 1;
    }

    const CounterPoly& at(int row, int col) const {
        static const CounterPoly zero;
        auto it = entries_.find({col, row});
        return it == entries_.end() ? zero : it->second;
    }

    void set(int row, int col, CounterPoly p) {
        if (p.is_zero())
            entries_.erase({col, row});
        else
            entries_[{col, row}] = std::move(p);
    }

    void add(int row, int col, const CounterPoly& p) {
        auto it = entries_.find({col, row});
        if (it == entries_.end()) {
            if (!p.is_zero()) entries_[{col, row}] = p;
        } else {
            it->second += p;
            if (it->second.is_zero()) entries_.erase(it);
        }
    }

    /// Entries in deterministic (column, row) order.
    const std::map<std::pair<int, int>, CounterPoly>& entries() const { return entries_; }

    std::size_t nnz() const { return entries_.size(); }

    CounterPoly column_sum(int col) const {
        CounterPoly s;
        auto lo = entries_.lower_bound({col, 0});
        auto hi = entries_.upper_bound({col, dim_});
        for (auto it = lo; it != hi; ++it) s += it->second;
        return s;
    }

    /// Column sums at counters = 1 must be 1 (non-terminal) or 0 (terminal),
    /// and every coefficient nonnegative.
    void validate(double tol = 1e-12) const {
        for (const auto& [key, poly] : entries_) {
            if (is_terminal_[key.first])
                throw SelfLoopOnTerminal("terminal state " + std::to_string(key.first) +
                                         " has an outgoing edge");
            for (const auto& [e, c] : poly.terms())
                if (c < -tol)
                    throw NonStochasticGraph("negative coefficient in entry (" +
                                             std::to_string(key.second) + "," +
                                             std::to_string(key.first) + ")");
        }
        for (int j = 0; j < dim_; ++j) {
            const double s = column_sum(j).at_ones();
            const double want = is_terminal_[j] ? 0.0 : 1.0;
            if (std::abs(s - want) > tol)
                throw NonStochasticGraph("column " + std::to_string(j) + " sums to " +
                                         std::to_string(s));
        }
    }

    /// Max total counter degree over single entries (one step of the walk).
    std::uint32_t max_step_degree() const {
        std::uint32_t d = 0;
        for (const auto& [key, poly] : entries_) d = std::max(d, poly.total_degree());
        return d;
    }

    std::uint32_t max_step_degree_of(std::size_t var) const {
        std::uint32_t d = 0;
        for (const auto& [key, poly] : entries_) d = std::max(d, poly.degree_of(var));
        return d;
    }

    BoundMatrix bind(std::span<const Complex> values) const {
        BoundMatrix b(dim_, terminals_);
        for (const auto& [key, poly] : entries_)
            b.add_entry(key.second, key.first, poly.eval(values));
        return b;
    }

    BoundMatrix bind_ones() const {
        std::vector<Complex> ones(counters_.size(), Complex(1.0));
        return bind(ones);
    }

    /// Fix one counter to a real value, keeping the registry slot.
    CountedMatrix bind_counter(const std::string& name, double value) const {
        std::size_t var = counter_index(name);
        CountedMatrix r(dim_, terminals_, counters_);
        for (const auto& [key, poly] : entries_) r.set(key.second, key.first, poly.bind(var, value));
        return r;
    }

    /// Polynomial matrix product (this * other), used by lumping. The factors
    /// must agree on counter slots; the larger registry is kept.
    CountedMatrix multiply(const CountedMatrix& other) const {
        CountedMatrix r(dim_, other.terminals_,
                        counters_.size() >= other.counters_.size() ? counters_
                                                                   : other.counters_);
        for (const auto& [key_b, poly_b] : other.entries_) {
            const auto [j, k] = key_b;  // other: column j, row k
            auto lo = entries_.lower_bound({k, 0});
            auto hi = entries_.upper_bound({k, dim_});
            for (auto it = lo; it != hi; ++it)
                r.add(it->first.second, j, it->second * poly_b);
        }
        return r;
    }

  private:
    int dim_;
    std::vector<int> terminals_;
    std::vector<std::string> counters_;
    std::vector<bool> is_terminal_;
    // keyed (col, row) so a column's entries are contiguous
    std::map<std::pair<int, int>, CounterPoly> entries_;
};

/// Eq.-(1)-style readout: total mass on terminal states of M^t applied to the
/// start state, entries evaluated at the given counter values.
inline Complex pmf_by_power(const CountedMatrix& m, int t,
                            std::span<const Complex> counter_values) {
    BoundMatrix b = m.bind(counter_values);
    std::vector<Complex> v(b.dim(), 0.0), w(b.dim(), 0.0);
    v[0] = 1.0;
    for (int s = 0; s < t; ++s) {
        b.apply(v, w);
        std::swap(v, w);
    }
    return b.terminal_mass(v);
}

inline double pmf_by_power(const CountedMatrix& m, int t) {
    std::vector<Complex> ones(m.counters().size(), Complex(1.0));
    return pmf_by_power(m, t, ones).real();
}

}  // namespace chainstat
