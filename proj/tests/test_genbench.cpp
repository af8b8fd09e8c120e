#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "gt/genbench.hpp"
#include "gt/grammar.hpp"
#include "support.hpp"

using namespace gt;
using namespace gt::test;

TEST_CASE("linked list generator") {
    Graph one = gen_linked_list(1);
    CHECK(one.nodeCount() == 1);
    CHECK(one.edgeCount() == 0);
    Graph l = gen_linked_list(10);
    CHECK(l.nodeCount() == 10);
    CHECK(l.edgeCount() == 9);
    CHECK(tree_oracle(l));
    // a path: every node has in- and out-degree at most one
    for (Id v : l.nodeIds()) {
        CHECK(l.indegree(v) <= 1);
        CHECK(l.outdegree(v) <= 1);
    }
}

TEST_CASE("perfect binary tree generator") {
    Graph t = gen_perfect_binary_tree(4);  // depth 4: 15 nodes
    CHECK(t.nodeCount() == 15);
    CHECK(t.edgeCount() == 14);
    CHECK(tree_oracle(t));
    int leaves = 0;
    for (Id v : t.nodeIds())
        if (t.outdegree(v) == 0) ++leaves;
    CHECK(leaves == 8);
}

TEST_CASE("grid generator") {
    Graph g = gen_grid(2, 2);
    CHECK(g.nodeCount() == 4);
    CHECK(g.edgeCount() == 4);
    CHECK(!tree_oracle(g));  // a 2x2 grid has an undirected cycle
    Graph g33 = gen_grid(3, 3);
    CHECK(g33.nodeCount() == 9);
    CHECK(g33.edgeCount() == 12);
    Graph row = gen_grid(1, 5);
    CHECK(tree_oracle(row));  // a 1xN grid is a path
}

TEST_CASE("star generator") {
    Graph s = gen_star(8);
    CHECK(s.nodeCount() == 9);
    CHECK(s.edgeCount() == 8);
    // spokes alternate direction, so the centre has several incoming edges
    // and the star is not a tree in the single-parent sense
    CHECK(!tree_oracle(s));
    int centres = 0;
    for (Id v : s.nodeIds())
        if (s.degree(v) == 8) ++centres;
    CHECK(centres == 1);
    // a one-spoke star is a single edge, which is a tree
    CHECK(tree_oracle(gen_star(1)));
}

TEST_CASE("tree oracle ground truth") {
    CHECK(tree_oracle(figure_tree_input()));
    CHECK(!tree_oracle(figure_cycle_input()));
    CHECK(!tree_oracle(figure_forest_input()));  // disconnected
    Graph empty;
    CHECK(!tree_oracle(empty));
    Graph shared;  // two parents of one child
    shared.addNodeWithId(1, Symbol("box"));
    shared.addNodeWithId(2, Symbol("box"));
    shared.addNodeWithId(3, Symbol("box"));
    shared.addEdgeWithId(1, 1, 3, "box");
    shared.addEdgeWithId(2, 2, 3, "box");
    CHECK(!tree_oracle(shared));
}

TEST_CASE("oracle agrees with an independent recount on random graphs") {
    std::mt19937 rng(21);
    for (int t = 0; t < 100; ++t) {
        Graph g = random_tree_or_graph(rng, 20);
        bool oracle = tree_oracle(g);
        // independent definition: connected, n-1 edges, indegrees <= 1
        bool indeg = true;
        for (Id v : g.nodeIds())
            if (g.indegree(v) > 1) indeg = false;
        bool alt = g.nodeCount() > 0 && g.edgeCount() == g.nodeCount() - 1 && is_connected(g) &&
                   indeg;
        CHECK(oracle == alt);
    }
}

TEST_CASE("recognition on generated classes with step bound") {
    for (long long n : {1, 2, 17, 64}) {
        Graph l = make_input_graph(gen_linked_list(n));
        GreedyRunStats st;
        CHECK(recognize_tree(l, &st));
        CHECK(st.steps <= 2 * n);
    }
    Graph s = make_input_graph(gen_star(30));
    GreedyRunStats st;
    CHECK(!recognize_tree(s, &st));  // alternating star is not a tree
    CHECK(st.steps <= 2 * 31);
    CHECK(!recognize_tree(make_input_graph(gen_grid(3, 3))));
}

TEST_CASE("benchmark harness produces records and a slope") {
    BenchSummary s = run_benchmark("list", {200, 400, 800}, 3);
    CHECK(s.graphClass == "list");
    CHECK(s.records.size() == 9);
    for (const auto& r : s.records) {
        CHECK(r.seconds >= 0.0);
        CHECK(r.steps > 0);
        CHECK(r.nodeCount > 0);
    }
    // a slope is computed (value checked in the long-running acceptance run)
    CHECK(std::isfinite(s.slope));
}

TEST_CASE("doubling list size roughly doubles greedy steps") {
    GreedyRunStats a, b;
    recognize_tree(make_input_graph(gen_linked_list(2000)), &a);
    recognize_tree(make_input_graph(gen_linked_list(4000)), &b);
    double ratio = static_cast<double>(b.steps) / static_cast<double>(a.steps);
    CHECK(ratio > 1.9);
    CHECK(ratio < 2.1);
}

TEST_CASE("benchmark CSV format") {
    CHECK(bench_csv_header() == "class,nodes,trial,seconds,steps");
    BenchRecord r{"star", 1001, 2, 0.5, 42};
    std::string row = bench_csv_row(r);
    CHECK(row.substr(0, 5) == "star,");
    std::istringstream is(row);
    std::string field;
    int fields = 0;
    while (std::getline(is, field, ',')) ++fields;
    CHECK(fields == 5);
}
