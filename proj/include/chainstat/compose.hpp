#pragma once

#include <vector>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"

namespace chainstat {

namespace detail {

/// Union of two counter registries plus the slot remaps into the union.
struct MergedCounters {
    std::vector<std::string> names;
    std::vector<std::size_t> map_a;
    std::vector<std::size_t> map_b;
};

inline MergedCounters merge_counters(const CountedMatrix& a, const CountedMatrix& b) {
    MergedCounters m;
    m.names = a.counters();
    m.map_a.resize(a.counters().size());
    for (std::size_t i = 0; i < m.map_a.size(); ++i) m.map_a[i] = i;
    m.map_b.resize(b.counters().size());
    for (std::size_t i = 0; i < b.counters().size(); ++i) {
        const auto& name = b.counters()[i];
        std::size_t j = 0;
        for (; j < m.names.size(); ++j)
            if (m.names[j] == name) break;
        if (j == m.names.size()) m.names.push_back(name);
        m.map_b[i] = j;
    }
    return m;
}

/// Composite index convention: (i_a, i_b) -> i_a * dim(b) + i_b.
inline int composite(int ia, int ib, int dim_b) { return ia * dim_b + ib; }

/// Tensor product of [a + hold_a * diag(I_a)] and [b + hold_b * diag(I_b)]
/// minus hold_a * hold_b * diag(I_a (x) I_b): the AND composition with
/// optionally counted terminal holds. hold weights of 1 give Eq.-(3) exactly.
inline CountedMatrix and_compose_weighted(const CountedMatrix& a, const CountedMatrix& b,
                                          const CounterPoly& hold_a, const CounterPoly& hold_b,
                                          const MergedCounters& mc) {
    const int na = a.dim(), nb = b.dim();
    std::vector<int> terminals;
    for (int ta : a.terminals())
        for (int tb : b.terminals()) terminals.push_back(composite(ta, tb, nb));
    CountedMatrix r(na * nb, terminals, mc.names);

    // held copies, remapped into the merged registry
    struct Entry {
        int row, col;
        CounterPoly poly;
    };
    auto held = [](const CountedMatrix& m, const CounterPoly& hold,
                   const std::vector<std::size_t>& slot_map) {
        std::vector<Entry> out;
        for (const auto& [key, poly] : m.entries())
            out.push_back({key.second, key.first, poly.remap(slot_map)});
        for (int t : m.terminals()) out.push_back({t, t, hold});
        return out;
    };
    const auto ea = held(a, hold_a, mc.map_a);
    const auto eb = held(b, hold_b, mc.map_b);

    for (const auto& xa : ea)
        for (const auto& xb : eb)
            r.add(composite(xa.row, xb.row, nb), composite(xa.col, xb.col, nb),
                  xa.poly * xb.poly);
    const CounterPoly joint_hold = hold_a * hold_b;
    for (int t : terminals) r.add(t, t, CounterPoly() - joint_hold);
    return r;
}

}  // namespace detail

/// Run both processes in parallel; done when either finishes (Eq. (2)).
inline CountedMatrix compose_or(const CountedMatrix& a, const CountedMatrix& b) {
    const auto mc = detail::merge_counters(a, b);
    const int na = a.dim(), nb = b.dim();
    std::vector<int> terminals;
    for (int i = 0; i < na * nb; ++i) {
        if (a.is_terminal(i / nb) || b.is_terminal(i % nb)) terminals.push_back(i);
    }
    CountedMatrix r(na * nb, terminals, mc.names);
    for (const auto& [ka, pa] : a.entries())
        for (const auto& [kb, pb] : b.entries())
            r.add(detail::composite(ka.second, kb.second, nb),
                  detail::composite(ka.first, kb.first, nb),
                  pa.remap(mc.map_a) * pb.remap(mc.map_b));
    return r;
}

/// Run both in parallel; done when both have finished (Eq. (3)). Each factor
/// holds on its terminal until the other completes.
inline CountedMatrix compose_and(const CountedMatrix& a, const CountedMatrix& b) {
    const auto mc = detail::merge_counters(a, b);
    return detail::and_compose_weighted(a, b, CounterPoly(1.0), CounterPoly(1.0), mc);
}

/// AND composition where the first factor's terminal hold is multiplied by
/// the counting variable `hold_var` (registered on the result). This is the
/// Eq. (22)/(Sec. V.A) form used to count waiting steps of one component.
inline CountedMatrix compose_and_counted(const CountedMatrix& a, const CountedMatrix& b,
                                         const std::string& hold_var) {
    auto mc = detail::merge_counters(a, b);
    std::size_t var = mc.names.size();
    for (std::size_t i = 0; i < mc.names.size(); ++i)
        if (mc.names[i] == hold_var) var = i;
    if (var == mc.names.size()) mc.names.push_back(hold_var);
    return detail::and_compose_weighted(a, b, CounterPoly::monomial(1.0, var),
                                        CounterPoly(1.0), mc);
}

/// Process a followed by process b (Eq. (4)): direct sum plus a one-step
/// unit-probability bridge from each terminal of a to the start of b.
inline CountedMatrix compose_seq(const CountedMatrix& a, const CountedMatrix& b) {
    const auto mc = detail::merge_counters(a, b);
    const int na = a.dim(), nb = b.dim();
    std::vector<int> terminals;
    for (int tb : b.terminals()) terminals.push_back(na + tb);
    CountedMatrix r(na + nb, terminals, mc.names);
    for (const auto& [k, p] : a.entries()) r.add(k.second, k.first, p.remap(mc.map_a));
    for (const auto& [k, p] : b.entries()) r.add(na + k.second, na + k.first, p.remap(mc.map_b));
    for (int ta : a.terminals()) r.add(na, ta, CounterPoly(1.0));
    return r;
}

/// Eq. (5): rescale a process whose edges split into a fast part (duration
/// k1) and a slow part (duration k2 >= k1). Each step of the result is one
/// application of the slow part followed by ceil(k2/k1) fast attempts;
/// leftover column mass self-holds so the result stays (sub)stochastic.
inline CountedMatrix rescale_timing(const CountedMatrix& fast, const CountedMatrix& slow,
                                    double k1, double k2) {
    if (fast.dim() != slow.dim()) throw InvalidSplit("fast/slow dimensions differ");
    if (!(k2 >= k1 && k1 > 0.0)) throw InvalidSplit("need k2 >= k1 > 0");
    const int n = fast.dim();
    CountedMatrix total(n, fast.terminals(), fast.counters());
    for (const auto& [k, p] : fast.entries()) total.add(k.second, k.first, p);
    for (const auto& [k, p] : slow.entries()) {
        // registries must agree; remap slow into fast's registry by name
        CounterPoly q = p;
        if (!slow.counters().empty()) {
            std::vector<std::size_t> map(slow.counters().size());
            CountedMatrix& t = total;
            for (std::size_t i = 0; i < slow.counters().size(); ++i)
                map[i] = t.ensure_counter(slow.counters()[i]);
            q = p.remap(map);
        }
        total.add(k.second, k.first, q);
    }
    try {
        total.validate();
    } catch (const std::runtime_error& e) {
        throw InvalidSplit(std::string("fast + slow is not a valid process matrix: ") + e.what());
    }

    const int m = static_cast<int>(std::ceil(k2 / k1));
    auto with_holds = [&](const CountedMatrix& part, bool hold_terminals) {
        CountedMatrix h(n, part.terminals(), total.counters());
        for (const auto& [k, p] : part.entries()) {
            std::vector<std::size_t> map(part.counters().size());
            for (std::size_t i = 0; i < part.counters().size(); ++i) {
                // total carries the merged registry already
                const auto& name = part.counters()[i];
                for (std::size_t j = 0; j < total.counters().size(); ++j)
                    if (total.counters()[j] == name) map[i] = j;
            }
            h.add(k.second, k.first, p.remap(map));
        }
        for (int j = 0; j < n; ++j) {
            if (part.is_terminal(j) && !hold_terminals) continue;
            CounterPoly leftover = CounterPoly(1.0) - h.column_sum(j);
            h.add(j, j, leftover);
        }
        return h;
    };

    // fast part: holds everywhere (mass parked mid-power must stay put)
    CountedMatrix hf(n, {}, total.counters());
    hf = with_holds(fast, true);
    CountedMatrix power = hf;
    for (int s = 1; s < m; ++s) power = hf.multiply(power);
    // slow part: holds on non-terminal columns only, terminals stay absorbing
    CountedMatrix hs = with_holds(slow, false);

    CountedMatrix prod = power.multiply(hs);
    CountedMatrix result(n, fast.terminals(), total.counters());
    for (const auto& [k, p] : prod.entries()) result.add(k.second, k.first, p);
    return result;
}

}  // namespace chainstat
