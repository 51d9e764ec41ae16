#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "chainstat/counted_matrix.hpp"
#include "chainstat/errors.hpp"

namespace chainstat {

/// Directed-graph description of a process: nodes, weighted edges with
/// optional counter exponents, and the set of terminating nodes. The first
/// node is the start.
struct ProcessGraph {
    struct Edge {
        std::string from;
        std::string to;
        double prob = 0.0;
        std::map<std::string, std::uint32_t> counters;
    };

    std::vector<std::string> nodes;
    std::vector<Edge> edges;
    std::set<std::string> terminals;

    int node_index(const std::string& id) const {
        for (std::size_t i = 0; i < nodes.size(); ++i)
            if (nodes[i] == id) return static_cast<int>(i);
        throw ConfigError("unknown node id: " + id);
    }

    void validate(double tol = 1e-12) const {
        if (nodes.empty()) throw ConfigError("graph has no nodes");
        if (terminals.empty()) throw ConfigError("graph has no terminal nodes");
        for (const auto& t : terminals) node_index(t);
        std::map<std::string, double> out_sum;
        for (const auto& e : edges) {
            node_index(e.from);
            node_index(e.to);
            if (e.prob < 0.0 || e.prob > 1.0)
                throw NonStochasticGraph("edge probability out of [0,1]: " + e.from + "->" + e.to);
            if (terminals.count(e.from))
                throw SelfLoopOnTerminal("terminal node " + e.from + " has an outgoing edge");
            out_sum[e.from] += e.prob;
        }
        for (const auto& n : nodes) {
            if (terminals.count(n)) continue;
            auto it = out_sum.find(n);
            const double s = it == out_sum.end() ? 0.0 : it->second;
            if (std::abs(s - 1.0) > tol)
                throw NonStochasticGraph("outgoing probabilities of node " + n + " sum to " +
                                         std::to_string(s));
        }
    }

    static ProcessGraph from_json(const nlohmann::json& j) {
        ProcessGraph g;
        try {
            for (const auto& n : j.at("nodes")) g.nodes.push_back(n.get<std::string>());
            for (const auto& e : j.at("edges")) {
                Edge edge;
                edge.from = e.at("from").get<std::string>();
                edge.to = e.at("to").get<std::string>();
                edge.prob = e.at("prob").get<double>();
                if (e.contains("counters"))
                    for (const auto& [name, exp] : e.at("counters").items())
                        edge.counters[name] = exp.get<std::uint32_t>();
                g.edges.push_back(std::move(edge));
            }
            for (const auto& t : j.at("terminals")) g.terminals.insert(t.get<std::string>());
        } catch (const nlohmann::json::exception& e) {
            throw ConfigError(std::string("bad process-graph JSON: ") + e.what());
        }
        return g;
    }
};

/// Adjacency-matrix form of the graph: M[i,j] = weight of the edge j -> i
/// times the counter monomial of that edge.
inline CountedMatrix build_process(const ProcessGraph& g) {
    g.validate();
    std::vector<int> terminals;
    for (const auto& t : g.terminals) terminals.push_back(g.node_index(t));
    CountedMatrix m(static_cast<int>(g.nodes.size()), terminals);
    for (const auto& e : g.edges) {
        CounterPoly p(e.prob);
        for (const auto& [name, exp] : e.counters)
            p = p * CounterPoly::monomial(1.0, m.ensure_counter(name), exp);
        m.add(g.node_index(e.to), g.node_index(e.from), p);
    }
    m.validate();
    return m;
}

/// The one-pair generation process: try with success probability p each step.
inline CountedMatrix bell_pair_matrix(double p) {
    CountedMatrix m(2, {1});
    if (p < 1.0) m.set(0, 0, CounterPoly(1.0 - p));
    m.set(1, 0, CounterPoly(p));
    m.validate();
    return m;
}

}  // namespace chainstat
