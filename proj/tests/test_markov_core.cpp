#include <catch2/catch_amalgamated.hpp>

#include "chainstat/compose.hpp"
#include "chainstat/counted_matrix.hpp"
#include "chainstat/process_graph.hpp"
#include "support/oracles.hpp"

using namespace chainstat;
using Catch::Approx;

namespace {

std::vector<double> pmf_table(const CountedMatrix& m, int t_max) {
    auto p = m.bind_ones().pmf_sweep(t_max);
    std::vector<double> out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) out[i] = p[i].real();
    return out;
}

ProcessGraph single_pair_graph(double p) {
    ProcessGraph g;
    g.nodes = {"try", "done"};
    g.edges = {{"try", "try", 1.0 - p, {}}, {"try", "done", p, {}}};
    g.terminals = {"done"};
    return g;
}

}  // namespace

TEST_CASE("build_process reproduces the single-pair matrix") {
    auto m = build_process(single_pair_graph(0.3));
    REQUIRE(m.dim() == 2);
    CHECK(m.at(0, 0).at_ones() == Approx(0.7).margin(1e-15));
    CHECK(m.at(1, 0).at_ones() == Approx(0.3).margin(1e-15));
    CHECK(m.at(0, 1).is_zero());
    CHECK(m.at(1, 1).is_zero());
    CHECK(m.terminals() == std::vector<int>{1});
}

TEST_CASE("build_process: p = 1 gives one-step absorption") {
    auto m = build_process(single_pair_graph(1.0));
    CHECK(m.at(0, 0).is_zero());
    CHECK(m.at(1, 0).at_ones() == Approx(1.0));
    CHECK(pmf_by_power(m, 1) == Approx(1.0));
}

TEST_CASE("build_process rejects a non-stochastic column") {
    ProcessGraph g;
    g.nodes = {"a", "b", "c"};
    g.edges = {{"a", "b", 1.0, {}}, {"b", "c", 0.9, {}}};
    g.terminals = {"c"};
    CHECK_THROWS_AS(build_process(g), NonStochasticGraph);
}

TEST_CASE("build_process rejects edges out of terminals") {
    ProcessGraph g;
    g.nodes = {"a", "b"};
    g.edges = {{"a", "b", 1.0, {}}, {"b", "a", 1.0, {}}};
    g.terminals = {"b"};
    CHECK_THROWS_AS(build_process(g), SelfLoopOnTerminal);
}

TEST_CASE("pmf_by_power: geometric law and normalization") {
    auto m = bell_pair_matrix(0.3);
    CHECK(pmf_by_power(m, 2) == Approx(0.21).margin(1e-15));
    CHECK(pmf_by_power(m, 0) == 0.0);

    auto half = bell_pair_matrix(0.5);
    double sum = 0.0;
    for (int t = 1; t <= 200; ++t) sum += pmf_by_power(half, t);
    CHECK(sum == Approx(1.0).margin(1e-12));
}

TEST_CASE("compose_or: min of completion times") {
    auto a = bell_pair_matrix(0.5);
    auto c = compose_or(a, a);
    c.validate();
    CHECK(c.dim() == 4);
    CHECK(pmf_by_power(c, 1) == Approx(0.75).margin(1e-15));

    auto pa = pmf_table(a, 30);
    auto want = oracle::pmf_of_min(pa, pa);
    auto got = pmf_table(c, 30);
    for (int t = 0; t <= 30; ++t) CHECK(got[t] == Approx(want[t]).margin(1e-12));
}

TEST_CASE("compose_or with a terminal-only process absorbs immediately") {
    auto a = bell_pair_matrix(0.5);
    CountedMatrix term(1, {0});
    auto c = compose_or(a, term);
    REQUIRE(c.dim() == 2);
    CHECK(c.terminals().size() == 2);
    CHECK(pmf_by_power(c, 0) == Approx(1.0));
}

TEST_CASE("compose_and: max of completion times") {
    auto a = bell_pair_matrix(0.5);
    auto c = compose_and(a, a);
    c.validate();
    CHECK(pmf_by_power(c, 1) == Approx(0.25).margin(1e-15));
    CHECK(pmf_by_power(c, 2) == Approx(0.3125).margin(1e-15));

    auto pa = pmf_table(a, 30);
    auto want = oracle::pmf_of_max(pa, pa);
    auto got = pmf_table(c, 30);
    for (int t = 0; t <= 30; ++t) CHECK(got[t] == Approx(want[t]).margin(1e-12));
}

TEST_CASE("compose_and with a deterministic one-step process") {
    auto a = bell_pair_matrix(0.4);
    auto det = bell_pair_matrix(1.0);
    auto c = compose_and(a, det);
    c.validate();
    // max(T_a, 1): t=1 requires T_a = 1, later times follow a exactly
    auto pa = pmf_table(a, 25);
    auto got = pmf_table(c, 25);
    CHECK(got[1] == Approx(pa[1]).margin(1e-12));
    for (int t = 2; t <= 25; ++t) CHECK(got[t] == Approx(pa[t]).margin(1e-12));
}

TEST_CASE("compose_seq: convolution shifted by the one-step bridge") {
    auto a = bell_pair_matrix(0.5);
    auto c = compose_seq(a, a);
    c.validate();
    CHECK(pmf_by_power(c, 1) == 0.0);
    CHECK(pmf_by_power(c, 2) == 0.0);
    CHECK(pmf_by_power(c, 3) == Approx(0.25).margin(1e-15));

    auto pa = pmf_table(a, 40);
    auto want = oracle::pmf_of_seq(pa, pa, 41);
    auto got = pmf_table(c, 40);
    for (int t = 0; t <= 40; ++t) CHECK(got[t] == Approx(want[t]).margin(1e-12));

    // mean = 2 mean(a) + 1
    double mean = 0.0, mean_a = 0.0;
    for (int t = 1; t <= 200; ++t) {
        mean += t * pmf_by_power(c, t);
        mean_a += t * pmf_by_power(a, t);
    }
    CHECK(mean == Approx(2.0 * mean_a + 1.0).margin(1e-9));
}

TEST_CASE("compose_seq of two deterministic processes completes at t = 3") {
    auto det = bell_pair_matrix(1.0);
    auto c = compose_seq(det, det);
    CHECK(pmf_by_power(c, 3) == Approx(1.0));
    CHECK(pmf_by_power(c, 2) == 0.0);
}

TEST_CASE("kronecker associativity of compose_or pmfs") {
    auto a = bell_pair_matrix(0.3);
    auto b = bell_pair_matrix(0.5);
    auto c = bell_pair_matrix(0.8);
    auto left = pmf_table(compose_or(compose_or(a, b), c), 25);
    auto right = pmf_table(compose_or(a, compose_or(b, c)), 25);
    for (int t = 0; t <= 25; ++t) CHECK(left[t] == Approx(right[t]).margin(1e-13));
}

TEST_CASE("rescale_timing compounds fast attempts") {
    auto fast = bell_pair_matrix(0.5);
    CountedMatrix slow(2, {1});  // no slow edges
    auto m = rescale_timing(fast, slow, 1.0, 2.0);
    m.validate();
    CHECK(pmf_by_power(m, 1) == Approx(0.75).margin(1e-15));
    CHECK(m.at(1, 0).at_ones() == Approx(0.75).margin(1e-15));
}

TEST_CASE("rescale_timing with k1 = k2 applies the fast part once") {
    // split the single-pair matrix: retry edge is fast, success edge is slow
    CountedMatrix fast(2, {1}), slow(2, {1});
    fast.set(0, 0, CounterPoly(0.5));
    slow.set(1, 0, CounterPoly(0.5));
    auto m = rescale_timing(fast, slow, 2.0, 2.0);
    m.validate();
    // slow applies first: success 0.5; else hold, then one fast retry-hold
    CHECK(m.column_sum(0).at_ones() == Approx(1.0).margin(1e-12));
    CHECK(m.column_sum(1).at_ones() == Approx(0.0).margin(1e-12));
}

TEST_CASE("rescale_timing rejects an invalid split") {
    CountedMatrix fast(2, {1}), slow(2, {1});
    fast.set(0, 0, CounterPoly(0.5));
    slow.set(1, 0, CounterPoly(0.2));  // column sums to 0.7
    CHECK_THROWS_AS(rescale_timing(fast, slow, 1.0, 2.0), InvalidSplit);
}

TEST_CASE("process graph json round trip") {
    const char* text = R"({
      "nodes": ["s", "d"],
      "edges": [
        {"from": "s", "to": "s", "prob": 0.5, "counters": {"w": 1}},
        {"from": "s", "to": "d", "prob": 0.5}
      ],
      "terminals": ["d"]
    })";
    auto g = ProcessGraph::from_json(nlohmann::json::parse(text));
    auto m = build_process(g);
    CHECK(m.counters() == std::vector<std::string>{"w"});
    CHECK(m.at(0, 0).degree_of(0) == 1);
    CHECK(pmf_by_power(m, 3) == Approx(0.125).margin(1e-15));
}
