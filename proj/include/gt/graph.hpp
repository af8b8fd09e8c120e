#ifndef GT_GRAPH_HPP
#define GT_GRAPH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

namespace gt {

using Id = long long;
using Symbol = std::string;

/// Finite node/edge label alphabet with optional non-terminal subalphabets.
struct LabelAlphabet {
    std::set<Symbol> nodeLabels;
    std::set<Symbol> edgeLabels;
    std::set<Symbol> nonTerminalNodeLabels;
    std::set<Symbol> nonTerminalEdgeLabels;
};

struct Node {
    std::optional<Symbol> label;   // absent = unlabelled
    std::optional<bool> rooted;    // absent = rootedness undefined
};

struct Edge {
    Id src = 0;
    Id tgt = 0;
    Symbol label;  // edge labels are total
};

/// Directed graph with partial node labelling and partial rootedness.
/// Node and edge ids are opaque non-negative integers in separate id spaces.
/// Adjacency lists and the root-node set are maintained on every mutation.
class Graph {
public:
    Graph() = default;

    // --- construction / mutation ---
    Id addNode(std::optional<Symbol> label = {}, std::optional<bool> rooted = {});
    void addNodeWithId(Id id, std::optional<Symbol> label = {}, std::optional<bool> rooted = {});
    Id addEdge(Id src, Id tgt, const Symbol& label);
    void addEdgeWithId(Id id, Id src, Id tgt, const Symbol& label);
    void removeEdge(Id id);
    void removeNode(Id id);  // node must have no incident edges
    void setNodeLabel(Id id, const Symbol& label);
    void clearNodeLabel(Id id);
    void setRooted(Id id, bool rooted);
    void clearRooted(Id id);

    // --- queries ---
    bool hasNode(Id id) const { return nodes_.count(id) != 0; }
    bool hasEdge(Id id) const { return edges_.count(id) != 0; }
    const Node& node(Id id) const { return nodes_.at(id); }
    const Edge& edge(Id id) const { return edges_.at(id); }
    std::size_t nodeCount() const { return nodes_.size(); }
    std::size_t edgeCount() const { return edges_.size(); }
    std::size_t size() const { return nodes_.size() + edges_.size(); }  // |G|

    std::vector<Id> nodeIds() const;  // ascending
    std::vector<Id> edgeIds() const;  // ascending
    const std::vector<Id>& outEdges(Id node) const;  // edge ids, insertion order
    const std::vector<Id>& inEdges(Id node) const;
    const std::set<Id>& roots() const { return roots_; }  // nodes with rooted == 1

    int indegree(Id node) const { return static_cast<int>(inEdges(node).size()); }
    int outdegree(Id node) const { return static_cast<int>(outEdges(node).size()); }
    int degree(Id node) const { return indegree(node) + outdegree(node); }

    bool totallyLabelled() const;
    bool totallyRooted() const;

    Id nextNodeId() const { return nextNodeId_; }
    Id nextEdgeId() const { return nextEdgeId_; }

private:
    std::unordered_map<Id, Node> nodes_;
    std::unordered_map<Id, Edge> edges_;
    std::unordered_map<Id, std::vector<Id>> out_;
    std::unordered_map<Id, std::vector<Id>> in_;
    std::set<Id> roots_;
    Id nextNodeId_ = 0;
    Id nextEdgeId_ = 0;
};

/// Node map + edge map between two graphs. Graphs are referenced, not owned.
struct Morphism {
    const Graph* src = nullptr;
    const Graph* dst = nullptr;
    std::map<Id, Id> nmap;
    std::map<Id, Id> emap;
};

// --- validation / morphism predicates ---
std::vector<std::string> validate_graph(const Graph& g, const LabelAlphabet& a);
bool is_morphism(const Morphism& m);
bool is_injective(const Morphism& m);
bool is_surjective(const Morphism& m);
bool is_subgraph(const Graph& h, const Graph& g);

/// Brute-force enumeration of all (not necessarily injective) morphisms g -> h.
/// Intended for small graphs; deterministic order.
std::vector<Morphism> enumerate_morphisms(const Graph& g, const Graph& h);

/// Deterministic isomorphism search. Returns a bijective morphism whose
/// inverse is also a morphism, or nothing.
std::optional<Morphism> find_isomorphism(const Graph& g, const Graph& h);
bool isomorphic(const Graph& g, const Graph& h);

/// Isomorphism search with forced node assignments (seed map g-node -> h-node).
/// Used for track-compatible isomorphism checks.
std::optional<Morphism> find_isomorphism_seeded(const Graph& g, const Graph& h,
                                                const std::map<Id, Id>& seed);

/// Enumerate all isomorphisms g -> h (nodes and edge assignments).
std::vector<Morphism> enumerate_isomorphisms(const Graph& g, const Graph& h);

/// Cheap iso-invariant fingerprint for bucketing graphs before full iso checks.
std::size_t iso_signature(const Graph& g);

// --- structural queries (graph-theoretic definitions) ---
std::set<Id> neighbourhood(const Graph& g, Id v);  // s(t^-1(v)) ∪ t(s^-1(v))
std::set<Id> children(const Graph& g, Id v);       // t(s^-1(v))
std::set<Id> parents(const Graph& g, Id v);        // s(t^-1(v))
std::vector<Graph> connected_components(const Graph& g);
std::vector<std::set<Id>> component_node_sets(const Graph& g);
bool is_acyclic(const Graph& g);                // no directed cycles
bool has_undirected_cycle(const Graph& g);
bool is_connected(const Graph& g);              // empty graph counts as connected

/// Induced subgraph on the given node set plus all edges between them.
Graph induced_subgraph(const Graph& g, const std::set<Id>& nodeSet);
/// Subgraph with exactly the given nodes and edges (must be consistent).
Graph subgraph_of(const Graph& g, const std::set<Id>& nodeSet, const std::set<Id>& edgeSet);

}  // namespace gt

#endif
