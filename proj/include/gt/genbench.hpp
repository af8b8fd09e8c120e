#ifndef GT_GENBENCH_HPP
#define GT_GENBENCH_HPP

#include <string>
#include <vector>

#include "gt/graph.hpp"

namespace gt {

// Graph-class generators. All output unlabelled-structure graphs with every
// label box and no rootedness defined (callers plant roots as needed).
Graph gen_linked_list(long long n);
Graph gen_perfect_binary_tree(int depth);   // depth 1 = single node
Graph gen_grid(long long n, long long m);
Graph gen_star(long long n);                // n spokes, centre is node n

/// Structural tree check, independent of the rewriting engine:
/// non-empty, connected, no undirected cycles, at most one incoming edge
/// per node. Ignores labels and rootedness.
bool tree_oracle(const Graph& g);

struct BenchRecord {
    std::string graphClass;
    long long nodeCount = 0;
    int trial = 0;
    double seconds = 0.0;
    long long steps = 0;
};

struct BenchSummary {
    std::string graphClass;
    double slope = 0.0;     // least-squares log-log slope of median seconds
    double r2 = 0.0;
    std::vector<BenchRecord> records;
};

/// Times recognize_tree on generated instances of the given class
/// ("list", "tree", "grid", "star"); sizes are node counts (approximate for
/// tree/grid, which round to the nearest constructible instance).
BenchSummary run_benchmark(const std::string& graphClass, const std::vector<long long>& sizes,
                           int trials);

std::string bench_csv_header();
std::string bench_csv_row(const BenchRecord& r);

}  // namespace gt

#endif
