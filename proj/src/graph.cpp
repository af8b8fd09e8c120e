#include "gt/graph.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace gt {

static const std::vector<Id> kEmptyIdVec;

Id Graph::addNode(std::optional<Symbol> label, std::optional<bool> rooted) {
    Id id = nextNodeId_++;
    addNodeWithId(id, std::move(label), rooted);
    return id;
}

void Graph::addNodeWithId(Id id, std::optional<Symbol> label, std::optional<bool> rooted) {
    if (id < 0) throw std::invalid_argument("negative node id");
    if (nodes_.count(id)) throw std::invalid_argument("duplicate node id " + std::to_string(id));
    nodes_[id] = Node{std::move(label), rooted};
    nextNodeId_ = std::max(nextNodeId_, id + 1);
    if (rooted && *rooted) roots_.insert(id);
}

Id Graph::addEdge(Id src, Id tgt, const Symbol& label) {
    Id id = nextEdgeId_++;
    addEdgeWithId(id, src, tgt, label);
    return id;
}

void Graph::addEdgeWithId(Id id, Id src, Id tgt, const Symbol& label) {
    if (id < 0) throw std::invalid_argument("negative edge id");
    if (edges_.count(id)) throw std::invalid_argument("duplicate edge id " + std::to_string(id));
    if (!nodes_.count(src) || !nodes_.count(tgt))
        throw std::invalid_argument("edge endpoint missing for edge " + std::to_string(id));
    edges_[id] = Edge{src, tgt, label};
    out_[src].push_back(id);
    in_[tgt].push_back(id);
    nextEdgeId_ = std::max(nextEdgeId_, id + 1);
}

void Graph::removeEdge(Id id) {
    auto it = edges_.find(id);
    if (it == edges_.end()) throw std::invalid_argument("no such edge " + std::to_string(id));
    auto& ov = out_[it->second.src];
    ov.erase(std::remove(ov.begin(), ov.end(), id), ov.end());
    auto& iv = in_[it->second.tgt];
    iv.erase(std::remove(iv.begin(), iv.end(), id), iv.end());
    edges_.erase(it);
}

void Graph::removeNode(Id id) {
    auto it = nodes_.find(id);
    if (it == nodes_.end()) throw std::invalid_argument("no such node " + std::to_string(id));
    if (!outEdges(id).empty() || !inEdges(id).empty())
        throw std::logic_error("removing node with incident edges: " + std::to_string(id));
    out_.erase(id);
    in_.erase(id);
    roots_.erase(id);
    nodes_.erase(it);
}

void Graph::setNodeLabel(Id id, const Symbol& label) { nodes_.at(id).label = label; }
void Graph::clearNodeLabel(Id id) { nodes_.at(id).label.reset(); }

void Graph::setRooted(Id id, bool rooted) {
    nodes_.at(id).rooted = rooted;
    if (rooted) roots_.insert(id); else roots_.erase(id);
}

void Graph::clearRooted(Id id) {
    nodes_.at(id).rooted.reset();
    roots_.erase(id);
}

std::vector<Id> Graph::nodeIds() const {
    std::vector<Id> ids;
    ids.reserve(nodes_.size());
    for (const auto& [id, n] : nodes_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

std::vector<Id> Graph::edgeIds() const {
    std::vector<Id> ids;
    ids.reserve(edges_.size());
    for (const auto& [id, e] : edges_) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    return ids;
}

const std::vector<Id>& Graph::outEdges(Id node) const {
    auto it = out_.find(node);
    return it == out_.end() ? kEmptyIdVec : it->second;
}

const std::vector<Id>& Graph::inEdges(Id node) const {
    auto it = in_.find(node);
    return it == in_.end() ? kEmptyIdVec : it->second;
}

bool Graph::totallyLabelled() const {
    for (const auto& [id, n] : nodes_)
        if (!n.label) return false;
    return true;
}

bool Graph::totallyRooted() const {
    for (const auto& [id, n] : nodes_)
        if (!n.rooted) return false;
    return true;
}

std::vector<std::string> validate_graph(const Graph& g, const LabelAlphabet& a) {
    std::vector<std::string> issues;
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        if (n.label && !a.nodeLabels.count(*n.label))
            issues.push_back("node " + std::to_string(v) + ": unknown label '" + *n.label + "'");
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        if (!g.hasNode(ed.src))
            issues.push_back("edge " + std::to_string(e) + ": dangling source");
        if (!g.hasNode(ed.tgt))
            issues.push_back("edge " + std::to_string(e) + ": dangling target");
        if (!a.edgeLabels.count(ed.label))
            issues.push_back("edge " + std::to_string(e) + ": unknown label '" + ed.label + "'");
    }
    return issues;
}

bool is_morphism(const Morphism& m) {
    if (!m.src || !m.dst) return false;
    const Graph& g = *m.src;
    const Graph& h = *m.dst;
    for (Id v : g.nodeIds()) {
        auto it = m.nmap.find(v);
        if (it == m.nmap.end() || !h.hasNode(it->second)) return false;
        const Node& nv = g.node(v);
        const Node& nw = h.node(it->second);
        if (nv.label && (!nw.label || *nw.label != *nv.label)) return false;
        if (nv.rooted && (!nw.rooted || *nw.rooted != *nv.rooted)) return false;
    }
    for (Id e : g.edgeIds()) {
        auto it = m.emap.find(e);
        if (it == m.emap.end() || !h.hasEdge(it->second)) return false;
        const Edge& eg = g.edge(e);
        const Edge& eh = h.edge(it->second);
        if (eh.label != eg.label) return false;
        if (m.nmap.at(eg.src) != eh.src) return false;
        if (m.nmap.at(eg.tgt) != eh.tgt) return false;
    }
    return true;
}

template <typename Map>
static bool injective_map(const Map& m) {
    std::set<Id> seen;
    for (const auto& [k, v] : m)
        if (!seen.insert(v).second) return false;
    return true;
}

bool is_injective(const Morphism& m) {
    return injective_map(m.nmap) && injective_map(m.emap);
}

bool is_surjective(const Morphism& m) {
    std::set<Id> nimg, eimg;
    for (const auto& [k, v] : m.nmap) nimg.insert(v);
    for (const auto& [k, v] : m.emap) eimg.insert(v);
    return nimg.size() == m.dst->nodeCount() && eimg.size() == m.dst->edgeCount();
}

bool is_subgraph(const Graph& h, const Graph& g) {
    for (Id v : h.nodeIds()) {
        if (!g.hasNode(v)) return false;
        const Node& nh = h.node(v);
        const Node& ng = g.node(v);
        if (nh.label && (!ng.label || *ng.label != *nh.label)) return false;
        if (nh.rooted && (!ng.rooted || *ng.rooted != *nh.rooted)) return false;
    }
    for (Id e : h.edgeIds()) {
        if (!g.hasEdge(e)) return false;
        const Edge& eh = h.edge(e);
        const Edge& eg = g.edge(e);
        if (eh.src != eg.src || eh.tgt != eg.tgt || eh.label != eg.label) return false;
    }
    return true;
}

std::vector<Morphism> enumerate_morphisms(const Graph& g, const Graph& h) {
    std::vector<Morphism> result;
    std::vector<Id> gn = g.nodeIds(), hn = h.nodeIds();
    std::vector<Id> ge = g.edgeIds(), he = h.edgeIds();
    if ((!gn.empty() && hn.empty()) || (!ge.empty() && he.empty())) return result;

    Morphism m;
    m.src = &g;
    m.dst = &h;
    std::function<void(std::size_t)> assignEdges = [&](std::size_t i) {
        if (i == ge.size()) {
            if (is_morphism(m)) result.push_back(m);
            return;
        }
        for (Id cand : he) {
            m.emap[ge[i]] = cand;
            assignEdges(i + 1);
        }
        m.emap.erase(ge[i]);
    };
    std::function<void(std::size_t)> assignNodes = [&](std::size_t i) {
        if (i == gn.size()) {
            assignEdges(0);
            return;
        }
        for (Id cand : hn) {
            m.nmap[gn[i]] = cand;
            assignNodes(i + 1);
        }
        m.nmap.erase(gn[i]);
    };
    assignNodes(0);
    return result;
}

// Exact-equality node compatibility used for isomorphism (the inverse must be
// a morphism too, so partial labels/rootedness must agree exactly).
static bool iso_node_compatible(const Node& a, const Node& b) {
    return a.label == b.label && a.rooted == b.rooted;
}

namespace {

// Backtracking node-bijection search; edge correspondence is resolved per
// (src,tgt,label) class. `emitAll` collects every iso (including distinct
// edge assignments within parallel classes); otherwise the first is returned.
struct IsoSearch {
    const Graph& g;
    const Graph& h;
    std::map<Id, Id> nmap;      // g node -> h node
    std::set<Id> used;          // h nodes used
    std::vector<Id> gnodes;
    std::vector<Id> hnodes;
    bool emitAll = false;
    std::vector<Morphism> found;

    IsoSearch(const Graph& g_, const Graph& h_) : g(g_), h(h_) {
        gnodes = g.nodeIds();
        hnodes = h.nodeIds();
    }

    bool edgeClassesMatch() {
        // group g edges and h edges by (mapped src, mapped tgt, label)
        std::map<std::tuple<Id, Id, Symbol>, std::vector<Id>> gc, hc;
        for (Id e : g.edgeIds()) {
            const Edge& ed = g.edge(e);
            gc[{nmap.at(ed.src), nmap.at(ed.tgt), ed.label}].push_back(e);
        }
        for (Id e : h.edgeIds()) {
            const Edge& ed = h.edge(e);
            hc[{ed.src, ed.tgt, ed.label}].push_back(e);
        }
        if (gc.size() != hc.size()) return false;
        for (const auto& [key, v] : gc) {
            auto it = hc.find(key);
            if (it == hc.end() || it->second.size() != v.size()) return false;
        }
        return true;
    }

    void emitEdgeAssignments() {
        std::map<std::tuple<Id, Id, Symbol>, std::vector<Id>> gc, hc;
        for (Id e : g.edgeIds()) {
            const Edge& ed = g.edge(e);
            gc[{nmap.at(ed.src), nmap.at(ed.tgt), ed.label}].push_back(e);
        }
        for (Id e : h.edgeIds()) {
            const Edge& ed = h.edge(e);
            hc[{ed.src, ed.tgt, ed.label}].push_back(e);
        }
        // enumerate permutations within each class
        std::vector<std::pair<std::vector<Id>, std::vector<Id>>> classes;
        for (auto& [key, v] : gc) classes.push_back({v, hc.at(key)});
        std::map<Id, Id> emap;
        std::function<void(std::size_t)> rec = [&](std::size_t ci) {
            if (ci == classes.size()) {
                Morphism m;
                m.src = &g;
                m.dst = &h;
                m.nmap = nmap;
                m.emap = emap;
                found.push_back(std::move(m));
                return;
            }
            auto& [ge, he] = classes[ci];
            std::vector<Id> perm = he;
            std::sort(perm.begin(), perm.end());
            do {
                for (std::size_t i = 0; i < ge.size(); ++i) emap[ge[i]] = perm[i];
                rec(ci + 1);
                if (!emitAll && !found.empty()) return;
            } while (emitAll && std::next_permutation(perm.begin(), perm.end()));
            for (Id e : ge) emap.erase(e);
        };
        rec(0);
    }

    bool nodeFeasible(Id gv, Id hv) {
        if (used.count(hv)) return false;
        if (!iso_node_compatible(g.node(gv), h.node(hv))) return false;
        if (g.indegree(gv) != h.indegree(hv) || g.outdegree(gv) != h.outdegree(hv)) return false;
        return true;
    }

    void search(std::size_t i) {
        if (!emitAll && !found.empty()) return;
        if (i == gnodes.size()) {
            if (edgeClassesMatch()) emitEdgeAssignments();
            return;
        }
        Id gv = gnodes[i];
        if (nmap.count(gv)) {  // seeded
            search(i + 1);
            return;
        }
        for (Id hv : hnodes) {
            if (!nodeFeasible(gv, hv)) continue;
            nmap[gv] = hv;
            used.insert(hv);
            search(i + 1);
            used.erase(hv);
            nmap.erase(gv);
            if (!emitAll && !found.empty()) return;
        }
    }
};

}  // namespace

std::optional<Morphism> find_isomorphism(const Graph& g, const Graph& h) {
    return find_isomorphism_seeded(g, h, {});
}

std::optional<Morphism> find_isomorphism_seeded(const Graph& g, const Graph& h,
                                                const std::map<Id, Id>& seed) {
    if (g.nodeCount() != h.nodeCount() || g.edgeCount() != h.edgeCount()) return std::nullopt;
    IsoSearch s(g, h);
    for (const auto& [gv, hv] : seed) {
        if (!g.hasNode(gv) || !h.hasNode(hv)) return std::nullopt;
        if (!s.nodeFeasible(gv, hv)) return std::nullopt;
        s.nmap[gv] = hv;
        s.used.insert(hv);
    }
    if (s.used.size() != seed.size()) return std::nullopt;  // seed not injective
    s.search(0);
    if (s.found.empty()) return std::nullopt;
    return s.found.front();
}

bool isomorphic(const Graph& g, const Graph& h) { return find_isomorphism(g, h).has_value(); }

std::vector<Morphism> enumerate_isomorphisms(const Graph& g, const Graph& h) {
    if (g.nodeCount() != h.nodeCount() || g.edgeCount() != h.edgeCount()) return {};
    IsoSearch s(g, h);
    s.emitAll = true;
    s.search(0);
    return s.found;
}

std::size_t iso_signature(const Graph& g) {
    // multiset of node signatures and edge-class signatures, order-independent
    std::vector<std::string> parts;
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        std::ostringstream os;
        os << "n:" << (n.label ? *n.label : "?") << ":"
           << (n.rooted ? (*n.rooted ? "1" : "0") : "?") << ":" << g.indegree(v) << ":"
           << g.outdegree(v);
        parts.push_back(os.str());
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        const Node& a = g.node(ed.src);
        const Node& b = g.node(ed.tgt);
        std::ostringstream os;
        os << "e:" << ed.label << ":" << (a.label ? *a.label : "?") << ":"
           << (b.label ? *b.label : "?") << ":" << (ed.src == ed.tgt);
        parts.push_back(os.str());
    }
    std::sort(parts.begin(), parts.end());
    std::size_t hash = 1469598103934665603ull;
    for (const auto& p : parts) {
        for (char c : p) {
            hash ^= static_cast<unsigned char>(c);
            hash *= 1099511628211ull;
        }
        hash ^= '|';
        hash *= 1099511628211ull;
    }
    return hash;
}

std::set<Id> neighbourhood(const Graph& g, Id v) {
    std::set<Id> result;
    for (Id e : g.inEdges(v)) result.insert(g.edge(e).src);
    for (Id e : g.outEdges(v)) result.insert(g.edge(e).tgt);
    return result;
}

std::set<Id> children(const Graph& g, Id v) {
    std::set<Id> result;
    for (Id e : g.outEdges(v)) result.insert(g.edge(e).tgt);
    return result;
}

std::set<Id> parents(const Graph& g, Id v) {
    std::set<Id> result;
    for (Id e : g.inEdges(v)) result.insert(g.edge(e).src);
    return result;
}

std::vector<std::set<Id>> component_node_sets(const Graph& g) {
    std::vector<std::set<Id>> comps;
    std::set<Id> visited;
    for (Id start : g.nodeIds()) {
        if (visited.count(start)) continue;
        std::set<Id> comp;
        std::queue<Id> q;
        q.push(start);
        visited.insert(start);
        while (!q.empty()) {
            Id v = q.front();
            q.pop();
            comp.insert(v);
            for (Id w : neighbourhood(g, v)) {
                if (visited.insert(w).second) q.push(w);
            }
        }
        comps.push_back(std::move(comp));
    }
    return comps;
}

Graph induced_subgraph(const Graph& g, const std::set<Id>& nodeSet) {
    std::set<Id> edgeSet;
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        if (nodeSet.count(ed.src) && nodeSet.count(ed.tgt)) edgeSet.insert(e);
    }
    return subgraph_of(g, nodeSet, edgeSet);
}

Graph subgraph_of(const Graph& g, const std::set<Id>& nodeSet, const std::set<Id>& edgeSet) {
    Graph s;
    for (Id v : nodeSet) {
        const Node& n = g.node(v);
        s.addNodeWithId(v, n.label, n.rooted);
    }
    for (Id e : edgeSet) {
        const Edge& ed = g.edge(e);
        s.addEdgeWithId(e, ed.src, ed.tgt, ed.label);
    }
    return s;
}

std::vector<Graph> connected_components(const Graph& g) {
    std::vector<Graph> result;
    for (const auto& comp : component_node_sets(g)) result.push_back(induced_subgraph(g, comp));
    return result;
}

bool is_acyclic(const Graph& g) {
    // Kahn's algorithm
    std::unordered_map<Id, int> indeg;
    std::queue<Id> q;
    for (Id v : g.nodeIds()) {
        indeg[v] = g.indegree(v);
        if (indeg[v] == 0) q.push(v);
    }
    std::size_t seen = 0;
    while (!q.empty()) {
        Id v = q.front();
        q.pop();
        ++seen;
        for (Id e : g.outEdges(v)) {
            Id w = g.edge(e).tgt;
            if (--indeg[w] == 0) q.push(w);
        }
    }
    return seen == g.nodeCount();
}

bool has_undirected_cycle(const Graph& g) {
    // A graph has no undirected cycles iff every component satisfies
    // |E| = |V| - 1 (and no self-loops / parallel edges, which |E| counts).
    for (const auto& comp : component_node_sets(g)) {
        std::size_t edgeCount = 0;
        for (Id v : comp)
            edgeCount += g.outEdges(v).size();
        if (edgeCount + 1 != comp.size()) return true;
    }
    return false;
}

bool is_connected(const Graph& g) { return component_node_sets(g).size() <= 1; }

}  // namespace gt
