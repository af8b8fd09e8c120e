#include "gt/grammar.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace gt {

bool is_terminally_labelled(const Grammar& g, const Graph& graph) {
    const auto& nv = g.system.alphabet.nonTerminalNodeLabels;
    const auto& ne = g.system.alphabet.nonTerminalEdgeLabels;
    for (Id v : graph.nodeIds()) {
        const auto& l = graph.node(v).label;
        if (l && nv.count(*l)) return false;
    }
    for (Id e : graph.edgeIds())
        if (ne.count(graph.edge(e).label)) return false;
    return true;
}

MemberVerdict member(const Grammar& grammar, const Graph& g, long long budget) {
    if (!is_terminally_labelled(grammar, g)) return MemberVerdict::No;
    GTSystem inverse = invert_system(grammar.system);
    std::vector<Graph> visited{g};
    std::vector<Graph> frontier{g};
    long long used = 0;
    bool truncated = false;
    auto seen = [&](const Graph& x) {
        for (const auto& v : visited)
            if (isomorphic(v, x)) return true;
        return false;
    };
    while (!frontier.empty()) {
        Graph cur = std::move(frontier.back());
        frontier.pop_back();
        if (isomorphic(cur, grammar.start)) return MemberVerdict::Yes;
        for (const auto& rule : inverse.rules) {
            for (const auto& match : find_matches(rule.lhs, cur)) {
                if (!satisfies_dangling(rule, match, cur)) continue;
                if (used >= budget) { truncated = true; continue; }
                ++used;
                DerivationStep step = apply(rule, match.morphism, cur);
                if (!seen(step.result)) {
                    visited.push_back(step.result);
                    frontier.push_back(std::move(step.result));
                }
            }
        }
    }
    return truncated ? MemberVerdict::BudgetExceeded : MemberVerdict::No;
}

Grammar tree_grammar() {
    Grammar g;
    g.system.alphabet.nodeLabels = {"box"};
    g.system.alphabet.edgeLabels = {"box"};

    // rule r: attach a fresh leaf below an existing node.
    Rule r;
    r.name = "r";
    r.lhs.addNodeWithId(1, Symbol("box"), false);
    r.interface.addNodeWithId(1, Symbol("box"), false);
    r.rhs.addNodeWithId(1, Symbol("box"), false);
    r.rhs.addNodeWithId(2, Symbol("box"), false);
    r.rhs.addEdgeWithId(1, 1, 2, "box");
    g.system.rules.push_back(r);

    g.start.addNodeWithId(1, Symbol("box"), false);
    return g;
}

GTSystem tree_recognition_system() {
    GTSystem t;
    t.alphabet.nodeLabels = {"box", "tri"};
    t.alphabet.edgeLabels = {"box"};

    // r0: a box parent with a rooted box leaf child; delete the leaf and its
    // edge, move the root up to the parent.
    {
        Rule r;
        r.name = "r0";
        r.lhs.addNodeWithId(1, Symbol("box"), false);
        r.lhs.addNodeWithId(2, Symbol("box"), true);
        r.lhs.addEdgeWithId(1, 1, 2, "box");
        r.interface.addNodeWithId(1);  // unlabelled, rootedness undefined
        r.rhs.addNodeWithId(1, Symbol("box"), true);
        t.rules.push_back(r);
    }
    // r1: as r0 but the parent is tri and is relabelled to box.
    {
        Rule r;
        r.name = "r1";
        r.lhs.addNodeWithId(1, Symbol("tri"), false);
        r.lhs.addNodeWithId(2, Symbol("box"), true);
        r.lhs.addEdgeWithId(1, 1, 2, "box");
        r.interface.addNodeWithId(1);
        r.rhs.addNodeWithId(1, Symbol("box"), true);
        t.rules.push_back(r);
    }
    // r2: push the root down one edge; the old root is relabelled to tri.
    {
        Rule r;
        r.name = "r2";
        r.lhs.addNodeWithId(1, Symbol("box"), true);
        r.lhs.addNodeWithId(2, Symbol("box"), false);
        r.lhs.addEdgeWithId(1, 1, 2, "box");
        r.interface.addNodeWithId(1);
        r.interface.addNodeWithId(2);
        r.interface.addEdgeWithId(1, 1, 2, "box");
        r.rhs.addNodeWithId(1, Symbol("tri"), false);
        r.rhs.addNodeWithId(2, Symbol("box"), true);
        r.rhs.addEdgeWithId(1, 1, 2, "box");
        t.rules.push_back(r);
    }
    return t;
}

bool is_input_graph(const Graph& g) {
    if (g.roots().size() != 1) return false;
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        if (!n.label || *n.label != "box") return false;
        if (!n.rooted) return false;
    }
    for (Id e : g.edgeIds())
        if (g.edge(e).label != "box") return false;
    return true;
}

Graph make_input_graph(const Graph& g) {
    Graph out;
    auto ids = g.nodeIds();
    for (Id v : ids) out.addNodeWithId(v, Symbol("box"), false);
    if (!ids.empty()) out.setRooted(ids.front(), true);
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        out.addEdgeWithId(e, ed.src, ed.tgt, "box");
    }
    return out;
}

namespace {

/// First applicable (rule, match) in rule order then match order, or nothing.
std::optional<std::pair<std::size_t, Match>> first_applicable(const GTSystem& t, const Graph& g) {
    for (std::size_t i = 0; i < t.rules.size(); ++i) {
        const Rule& rule = t.rules[i];
        auto matches = is_fast_lhs(rule.lhs) ? find_matches_fast(rule.lhs, g)
                                             : find_matches(rule.lhs, g);
        for (const auto& m : matches)
            if (satisfies_dangling(rule, m, g)) return std::make_pair(i, m);
    }
    return std::nullopt;
}

}  // namespace

bool recognize_tree(const Graph& g, GreedyRunStats* stats) {
    if (!is_input_graph(g)) throw std::invalid_argument("recognize_tree: not an input graph");
    GTSystem t = tree_recognition_system();
    Graph cur = g;
    long long steps = 0;
    while (auto next = first_applicable(t, cur)) {
        apply_in_place(t.rules[next->first], next->second.morphism, cur);
        ++steps;
    }
    if (stats) stats->steps = steps;
    return cur.nodeCount() == 1 && cur.edgeCount() == 0 && cur.roots().size() == 1 &&
           cur.node(cur.nodeIds().front()).label == Symbol("box");
}

std::vector<GreedyStep> derive_greedy(const GTSystem& t, const Graph& g, long long maxSteps,
                                      unsigned strategySeed) {
    std::vector<GreedyStep> trace;
    Graph cur = g;
    std::mt19937 rng(strategySeed);
    for (long long i = 0; i < maxSteps; ++i) {
        std::optional<std::pair<std::size_t, Match>> pick;
        if (strategySeed == 0) {
            pick = first_applicable(t, cur);
        } else {
            std::vector<std::pair<std::size_t, Match>> all;
            for (std::size_t ri = 0; ri < t.rules.size(); ++ri)
                for (const auto& m : find_matches(t.rules[ri].lhs, cur))
                    if (satisfies_dangling(t.rules[ri], m, cur)) all.push_back({ri, m});
            if (!all.empty())
                pick = all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)];
        }
        if (!pick) break;
        apply_in_place(t.rules[pick->first], pick->second.morphism, cur);
        trace.push_back(GreedyStep{t.rules[pick->first].name, cur});
    }
    return trace;
}

}  // namespace gt
