#include "gt/genbench.hpp"

#include <ctime>

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "gt/grammar.hpp"

namespace gt {

Graph gen_linked_list(long long n) {
    if (n < 1) throw std::invalid_argument("gen_linked_list: n >= 1");
    Graph g;
    for (long long i = 0; i < n; ++i) g.addNodeWithId(i, Symbol("box"));
    for (long long i = 0; i + 1 < n; ++i) g.addEdgeWithId(i, i, i + 1, "box");
    return g;
}

Graph gen_perfect_binary_tree(int depth) {
    if (depth < 1) throw std::invalid_argument("gen_perfect_binary_tree: depth >= 1");
    Graph g;
    long long n = (1ll << depth) - 1;
    for (long long i = 0; i < n; ++i) g.addNodeWithId(i, Symbol("box"));
    Id e = 0;
    for (long long i = 0; 2 * i + 2 < n || 2 * i + 1 < n; ++i) {
        if (2 * i + 1 < n) g.addEdgeWithId(e++, i, 2 * i + 1, "box");
        if (2 * i + 2 < n) g.addEdgeWithId(e++, i, 2 * i + 2, "box");
    }
    return g;
}

Graph gen_grid(long long n, long long m) {
    if (n < 1 || m < 1) throw std::invalid_argument("gen_grid: n,m >= 1");
    Graph g;
    auto id = [m](long long i, long long j) { return i * m + j; };
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j < m; ++j) g.addNodeWithId(id(i, j), Symbol("box"));
    Id e = 0;
    // d=0: (i,j) -> (i, j+1); d=1: (i,j) -> (i+1, j)
    for (long long i = 0; i < n; ++i)
        for (long long j = 0; j + 1 < m; ++j) g.addEdgeWithId(e++, id(i, j), id(i, j + 1), "box");
    for (long long i = 0; i + 1 < n; ++i)
        for (long long j = 0; j < m; ++j) g.addEdgeWithId(e++, id(i, j), id(i + 1, j), "box");
    return g;
}

Graph gen_star(long long n) {
    if (n < 1) throw std::invalid_argument("gen_star: n >= 1");
    Graph g;
    for (long long i = 0; i <= n; ++i) g.addNodeWithId(i, Symbol("box"));
    // centre is node n; spokes alternate direction: even spokes point outward.
    for (long long i = 0; i < n; ++i) {
        if (i % 2 == 0) g.addEdgeWithId(i, n, i, "box");
        else g.addEdgeWithId(i, i, n, "box");
    }
    return g;
}

bool tree_oracle(const Graph& g) {
    if (g.nodeCount() == 0) return false;
    if (!is_connected(g)) return false;
    if (has_undirected_cycle(g)) return false;
    for (Id v : g.nodeIds())
        if (g.indegree(v) > 1) return false;
    return true;
}

namespace {

Graph instance_for(const std::string& graphClass, long long size) {
    if (graphClass == "list") return gen_linked_list(size);
    if (graphClass == "star") return gen_star(std::max<long long>(1, size - 1));
    if (graphClass == "tree") {
        int depth = 1;
        while (((1ll << (depth + 1)) - 1) <= size) ++depth;
        return gen_perfect_binary_tree(depth);
    }
    if (graphClass == "grid") {
        long long side = std::max<long long>(1, std::llround(std::sqrt(double(size))));
        return gen_grid(side, side);
    }
    throw std::invalid_argument("unknown graph class: " + graphClass);
}

}  // namespace

BenchSummary run_benchmark(const std::string& graphClass, const std::vector<long long>& sizes,
                           int trials) {
    BenchSummary summary;
    summary.graphClass = graphClass;
    std::vector<double> logN, logT;
    for (long long size : sizes) {
        Graph base = instance_for(graphClass, size);
        Graph input = make_input_graph(base);
        std::vector<double> times;
        for (int trial = 0; trial < trials; ++trial) {
            GreedyRunStats stats;
            // CPU time of this thread, so concurrent load does not skew the fit.
            timespec ts0, ts1;
            clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts0);
            recognize_tree(input, &stats);
            clock_gettime(CLOCK_THREAD_CPUTIME_ID, &ts1);
            BenchRecord rec;
            rec.graphClass = graphClass;
            rec.nodeCount = static_cast<long long>(input.nodeCount());
            rec.trial = trial;
            rec.seconds = (ts1.tv_sec - ts0.tv_sec) + (ts1.tv_nsec - ts0.tv_nsec) * 1e-9;
            rec.steps = stats.steps;
            times.push_back(rec.seconds);
            summary.records.push_back(rec);
        }
        std::sort(times.begin(), times.end());
        double median = times[times.size() / 2];
        logN.push_back(std::log(static_cast<double>(input.nodeCount())));
        logT.push_back(std::log(std::max(median, 1e-9)));
    }
    // least-squares fit of logT against logN
    double n = static_cast<double>(logN.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < logN.size(); ++i) {
        sx += logN[i]; sy += logT[i];
        sxx += logN[i] * logN[i]; sxy += logN[i] * logT[i]; syy += logT[i] * logT[i];
    }
    double denom = n * sxx - sx * sx;
    if (denom > 0) {
        summary.slope = (n * sxy - sx * sy) / denom;
        double ssTot = syy - sy * sy / n;
        double ssRes = 0;
        double intercept = (sy - summary.slope * sx) / n;
        for (std::size_t i = 0; i < logN.size(); ++i) {
            double pred = summary.slope * logN[i] + intercept;
            ssRes += (logT[i] - pred) * (logT[i] - pred);
        }
        summary.r2 = ssTot > 0 ? 1.0 - ssRes / ssTot : 1.0;
    }
    return summary;
}

std::string bench_csv_header() { return "class,nodes,trial,seconds,steps"; }

std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream os;
    os << r.graphClass << "," << r.nodeCount << "," << r.trial << "," << r.seconds << ","
       << r.steps;
    return os.str();
}

}  // namespace gt
