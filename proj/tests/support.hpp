#ifndef GT_TESTS_SUPPORT_HPP
#define GT_TESTS_SUPPORT_HPP

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "gt/genbench.hpp"
#include "gt/graph.hpp"
#include "gt/grammar.hpp"
#include "gt/matching.hpp"
#include "gt/rewrite.hpp"

namespace gt::test {

inline std::string data_dir() { return GT_DATA_DIR; }

inline int pick(std::mt19937& rng, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool chance(std::mt19937& rng, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p;
}

/// Random tree: node 1 is the root of the hierarchy, every later node gets a
/// random earlier parent. All labels box, no rootedness.
inline Graph random_tree(std::mt19937& rng, int n) {
    Graph g;
    for (int v = 1; v <= n; ++v) g.addNodeWithId(v, Symbol("box"));
    for (int v = 2; v <= n; ++v) g.addEdgeWithId(v - 1, pick(rng, 1, v - 1), v, "box");
    return g;
}

/// Random all-box graph (generally not a tree): random edge count up to ~1.4n.
inline Graph random_box_graph(std::mt19937& rng, int n) {
    Graph g;
    for (int v = 1; v <= n; ++v) g.addNodeWithId(v, Symbol("box"));
    int m = pick(rng, 0, std::max(1, n + n / 2));
    for (int e = 1; e <= m; ++e) g.addEdgeWithId(e, pick(rng, 1, n), pick(rng, 1, n), "box");
    return g;
}

/// Mixed sample for recognizer-vs-oracle testing; >= 40% trees by construction.
inline Graph random_tree_or_graph(std::mt19937& rng, int maxNodes, bool* wasTree = nullptr) {
    int n = pick(rng, 1, maxNodes);
    bool tree = chance(rng, 0.5);
    if (wasTree) *wasTree = tree;
    return tree ? random_tree(rng, n) : random_box_graph(rng, n);
}

inline const std::vector<Symbol>& small_node_labels() {
    static const std::vector<Symbol> l = {"a", "b"};
    return l;
}

inline const std::vector<Symbol>& small_edge_labels() {
    static const std::vector<Symbol> l = {"x", "y"};
    return l;
}

inline LabelAlphabet small_alphabet() {
    LabelAlphabet a;
    a.nodeLabels = {"a", "b"};
    a.edgeLabels = {"x", "y"};
    return a;
}

/// Random host graph over the small alphabet. If `rooted`, the host is a TLRG
/// (total labels and rootedness, a few roots); otherwise rootedness is
/// undefined everywhere (the unrooted setting used by the label encoding).
inline Graph random_host(std::mt19937& rng, int maxNodes, bool rooted) {
    Graph g;
    int n = pick(rng, 1, maxNodes);
    for (int v = 1; v <= n; ++v) {
        Symbol l = small_node_labels()[pick(rng, 0, 1)];
        if (rooted)
            g.addNodeWithId(v, l, chance(rng, 0.3));
        else
            g.addNodeWithId(v, l);
    }
    int m = pick(rng, 0, n + n / 2);
    for (int e = 1; e <= m; ++e)
        g.addEdgeWithId(e, pick(rng, 1, n), pick(rng, 1, n),
                        small_edge_labels()[pick(rng, 0, 1)]);
    return g;
}

/// Random well-formed rule over the small alphabet: K is a common sub-id set
/// of L and R; K may drop labels (and rootedness when `rooted`) to express
/// relabelling; L and R are totally labelled (and totally rooted if `rooted`).
inline Rule random_rule(std::mt19937& rng, int maxSideNodes, bool rooted) {
    Rule r;
    r.name = "rnd";
    int nk = pick(rng, 0, std::max(0, maxSideNodes - 1));
    int nl = pick(rng, nk, maxSideNodes);
    int nr = pick(rng, nk, maxSideNodes);
    if (nl == 0 && nr == 0 && nk == 0) nl = 1;  // avoid the empty identity rule

    auto label = [&] { return small_node_labels()[pick(rng, 0, 1)]; };
    auto elabel = [&] { return small_edge_labels()[pick(rng, 0, 1)]; };

    struct KNode { Symbol lab; bool root; bool keepLab; bool keepRoot; };
    std::vector<KNode> knodes;
    for (int v = 1; v <= nk; ++v) {
        KNode k{label(), chance(rng, 0.3), chance(rng, 0.5), chance(rng, 0.5)};
        knodes.push_back(k);
        r.interface.addNodeWithId(v,
                                  k.keepLab ? std::optional<Symbol>(k.lab) : std::nullopt,
                                  rooted && k.keepRoot ? std::optional<bool>(k.root)
                                                       : std::nullopt);
    }
    auto addSide = [&](Graph& side, int total, bool isRight) {
        for (int v = 1; v <= nk; ++v) {
            const KNode& k = knodes[v - 1];
            // where K keeps the attribute, both sides must agree with it;
            // where it drops the attribute the sides are free (relabelling).
            Symbol lab = k.keepLab ? k.lab : label();
            bool root = k.keepRoot ? k.root : chance(rng, 0.3);
            (void)isRight;
            side.addNodeWithId(v, lab, rooted ? std::optional<bool>(root) : std::nullopt);
        }
        for (int v = nk + 1; v <= total; ++v)
            side.addNodeWithId(v, label(),
                               rooted ? std::optional<bool>(chance(rng, 0.3)) : std::nullopt);
        int m = pick(rng, 0, total);
        for (int e = 1; e <= m; ++e)
            side.addEdgeWithId(100 + e, pick(rng, 1, total), pick(rng, 1, total), elabel());
    };
    addSide(r.lhs, nl, false);
    addSide(r.rhs, nr, true);
    // K edges: edges present with identical id/incidence/label in both sides.
    for (Id e : r.lhs.edgeIds()) {
        if (!r.rhs.hasEdge(e)) continue;
        const Edge& a = r.lhs.edge(e);
        const Edge& b = r.rhs.edge(e);
        if (a.src == b.src && a.tgt == b.tgt && a.label == b.label && a.src <= nk &&
            a.tgt <= nk && chance(rng, 0.7))
            r.interface.addEdgeWithId(e, a.src, a.tgt, a.label);
    }
    return r;
}

/// Random rule together with a host admitting at least one applicable match.
/// Returns false if none was found within the attempt budget.
inline bool random_applicable(std::mt19937& rng, int maxSideNodes, int maxHostNodes, bool rooted,
                              Rule& ruleOut, Graph& hostOut, Morphism& matchOut) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        Rule r = random_rule(rng, maxSideNodes, rooted);
        if (!validate_rule(r, false).empty()) continue;
        Graph h = random_host(rng, maxHostNodes, rooted);
        auto ms = find_matches(r.lhs, h);
        std::vector<Morphism> ok;
        for (const auto& m : ms)
            if (satisfies_dangling(r, m, h)) ok.push_back(m.morphism);
        if (ok.empty()) continue;
        ruleOut = r;
        hostOut = h;
        matchOut = ok[pick(rng, 0, static_cast<int>(ok.size()) - 1)];
        return true;
    }
    return false;
}

/// The five-node input tree of the worked reduction figure (root on node 2).
inline Graph figure_tree_input() {
    Graph t;
    for (Id v : {1, 2, 3, 4, 5}) t.addNodeWithId(v, Symbol("box"), v == 2);
    t.addEdgeWithId(1, 1, 2, "box");
    t.addEdgeWithId(2, 1, 3, "box");
    t.addEdgeWithId(3, 2, 4, "box");
    t.addEdgeWithId(4, 3, 5, "box");
    return t;
}

inline Graph figure_cycle_input() {
    Graph t;
    for (Id v : {1, 2, 3}) t.addNodeWithId(v, Symbol("box"), v == 2);
    t.addEdgeWithId(1, 1, 2, "box");
    t.addEdgeWithId(2, 2, 3, "box");
    t.addEdgeWithId(3, 3, 1, "box");
    return t;
}

inline Graph figure_forest_input() {
    Graph t;
    for (Id v : {1, 2, 3, 4}) t.addNodeWithId(v, Symbol("box"), v == 1);
    t.addEdgeWithId(1, 1, 3, "box");
    t.addEdgeWithId(2, 2, 4, "box");
    return t;
}

/// Frames of the three worked reductions (including the start graph), used to
/// check the greedy derivation step-for-step up to isomorphism.
std::vector<Graph> figure_tree_frames();
std::vector<Graph> figure_cycle_frames();
std::vector<Graph> figure_forest_frames();

inline Graph make_frame(const std::vector<std::tuple<Id, const char*, int>>& nodes,
                        const std::vector<std::tuple<Id, Id, Id>>& edges) {
    Graph g;
    for (const auto& [id, lab, root] : nodes) g.addNodeWithId(id, Symbol(lab), root != 0);
    for (const auto& [id, s, t] : edges) g.addEdgeWithId(id, s, t, "box");
    return g;
}

inline std::vector<Graph> figure_tree_frames() {
    // a=1 b=2 c=3 d=4 e=5 ; edges a->b, a->c, b->d, c->e
    return {
        make_frame({{1, "box", 0}, {2, "box", 1}, {3, "box", 0}, {4, "box", 0}, {5, "box", 0}},
                   {{1, 1, 2}, {2, 1, 3}, {3, 2, 4}, {4, 3, 5}}),
        make_frame({{1, "box", 0}, {2, "tri", 0}, {3, "box", 0}, {4, "box", 1}, {5, "box", 0}},
                   {{1, 1, 2}, {2, 1, 3}, {3, 2, 4}, {4, 3, 5}}),
        make_frame({{1, "box", 0}, {2, "box", 1}, {3, "box", 0}, {5, "box", 0}},
                   {{1, 1, 2}, {2, 1, 3}, {4, 3, 5}}),
        make_frame({{1, "box", 1}, {3, "box", 0}, {5, "box", 0}}, {{2, 1, 3}, {4, 3, 5}}),
        make_frame({{1, "tri", 0}, {3, "box", 1}, {5, "box", 0}}, {{2, 1, 3}, {4, 3, 5}}),
        make_frame({{1, "tri", 0}, {3, "tri", 0}, {5, "box", 1}}, {{2, 1, 3}, {4, 3, 5}}),
        make_frame({{1, "tri", 0}, {3, "box", 1}}, {{2, 1, 3}}),
        make_frame({{1, "box", 1}}, {}),
    };
}

inline std::vector<Graph> figure_cycle_frames() {
    return {
        make_frame({{1, "box", 0}, {2, "box", 1}, {3, "box", 0}},
                   {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}}),
        make_frame({{1, "box", 0}, {2, "tri", 0}, {3, "box", 1}},
                   {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}}),
        make_frame({{1, "box", 1}, {2, "tri", 0}, {3, "tri", 0}},
                   {{1, 1, 2}, {2, 2, 3}, {3, 3, 1}}),
    };
}

inline std::vector<Graph> figure_forest_frames() {
    return {
        make_frame({{1, "box", 1}, {2, "box", 0}, {3, "box", 0}, {4, "box", 0}},
                   {{1, 1, 3}, {2, 2, 4}}),
        make_frame({{1, "tri", 0}, {2, "box", 0}, {3, "box", 1}, {4, "box", 0}},
                   {{1, 1, 3}, {2, 2, 4}}),
        make_frame({{1, "box", 1}, {2, "box", 0}, {4, "box", 0}}, {{2, 2, 4}}),
    };
}

/// Checks a greedy trace against expected frames (frame 0 is the input).
inline bool matches_frames(const Graph& input, const std::vector<GreedyStep>& steps,
                           const std::vector<Graph>& frames) {
    if (steps.size() + 1 != frames.size()) return false;
    if (!isomorphic(input, frames[0])) return false;
    for (std::size_t i = 0; i < steps.size(); ++i)
        if (!isomorphic(steps[i].result, frames[i + 1])) return false;
    return true;
}

}  // namespace gt::test

#endif
