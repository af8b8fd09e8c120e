#include "gt/matching.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "gt/rewrite.hpp"

namespace gt {

namespace {

thread_local long long g_matchWork = 0;

/// Can L-node `lv` be mapped to host node `hv`?
bool node_compatible(const Graph& l, Id lv, const Graph& host, Id hv) {
    const Node& a = l.node(lv);
    const Node& b = host.node(hv);
    if (a.label && (!b.label || *b.label != *a.label)) return false;
    if (a.rooted && (!b.rooted || *b.rooted != *a.rooted)) return false;
    if (l.indegree(lv) > host.indegree(hv)) return false;
    if (l.outdegree(lv) > host.outdegree(hv)) return false;
    return true;
}

struct MatchSearch {
    const Graph& l;
    const Graph& host;
    std::map<Id, Id> nmap;
    std::map<Id, Id> emap;
    std::set<Id> usedNodes, usedEdges;
    std::vector<Match> out;

    MatchSearch(const Graph& l_, const Graph& host_) : l(l_), host(host_) {}

    // L nodes in assignment order: components in ascending order of their
    // anchor node, each traversed DFS from the anchor.
    // anchorsFromRoots: anchor = lowest-id rooted node, candidates = host roots.
    std::vector<std::pair<Id, bool>> order;  // (node, isAnchor)
    bool anchorsFromRoots = false;

    void buildOrder(bool fast) {
        anchorsFromRoots = fast;
        std::set<Id> seen;
        for (const auto& comp : component_node_sets(l)) {
            Id anchor = -1;
            if (fast) {
                for (Id v : comp)
                    if (l.node(v).rooted && *l.node(v).rooted) { anchor = v; break; }
                if (anchor < 0) throw std::invalid_argument("left-hand side is not fast");
            } else {
                anchor = *comp.begin();
            }
            // DFS from anchor
            std::vector<Id> stack{anchor};
            bool first = true;
            std::set<Id> inComp;
            while (!stack.empty()) {
                Id v = stack.back();
                stack.pop_back();
                if (!inComp.insert(v).second) continue;
                order.push_back({v, first});
                first = false;
                std::set<Id> nbrSet = neighbourhood(l, v);
                std::vector<Id> nbrs(nbrSet.begin(), nbrSet.end());
                std::sort(nbrs.rbegin(), nbrs.rend());
                for (Id w : nbrs)
                    if (!inComp.count(w)) stack.push_back(w);
            }
        }
    }

    // After all nodes are mapped, injectively assign L edges to host edges.
    void assignEdges(const std::vector<Id>& ledges, std::size_t i) {
        if (i == ledges.size()) {
            Match m;
            m.morphism.src = &l;
            m.morphism.dst = &host;
            m.morphism.nmap = nmap;
            m.morphism.emap = emap;
            out.push_back(std::move(m));
            return;
        }
        Id le = ledges[i];
        const Edge& ed = l.edge(le);
        Id hs = nmap.at(ed.src), ht = nmap.at(ed.tgt);
        // Scan the smaller of the two endpoint adjacency lists.
        const auto& outs = host.outEdges(hs);
        const auto& ins = host.inEdges(ht);
        for (Id he : (outs.size() <= ins.size() ? outs : ins)) {
            ++g_matchWork;
            const Edge& hd = host.edge(he);
            if (hd.src != hs || hd.tgt != ht || hd.label != ed.label || usedEdges.count(he))
                continue;
            emap[le] = he;
            usedEdges.insert(he);
            assignEdges(ledges, i + 1);
            usedEdges.erase(he);
            emap.erase(le);
        }
    }

    void candidates(Id lv, std::size_t idx, std::vector<Id>& cands) {
        // If lv has a neighbour already mapped, use adjacency to enumerate.
        for (Id e : l.inEdges(lv)) {
            Id u = l.edge(e).src;
            if (u == lv) continue;
            auto it = nmap.find(u);
            if (it == nmap.end()) continue;
            for (Id he : host.outEdges(it->second)) {
                if (host.edge(he).label == l.edge(e).label) cands.push_back(host.edge(he).tgt);
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            return;
        }
        for (Id e : l.outEdges(lv)) {
            Id u = l.edge(e).tgt;
            if (u == lv) continue;
            auto it = nmap.find(u);
            if (it == nmap.end()) continue;
            for (Id he : host.inEdges(it->second)) {
                if (host.edge(he).label == l.edge(e).label) cands.push_back(host.edge(he).src);
            }
            std::sort(cands.begin(), cands.end());
            cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
            return;
        }
        bool isAnchor = order[idx].second;
        if (isAnchor && anchorsFromRoots) {
            cands.assign(host.roots().begin(), host.roots().end());
        } else {
            cands = host.nodeIds();
        }
    }

    void search(std::size_t i) {
        if (i == order.size()) {
            assignEdges(l.edgeIds(), 0);
            return;
        }
        Id lv = order[i].first;
        std::vector<Id> cands;
        candidates(lv, i, cands);
        for (Id hv : cands) {
            ++g_matchWork;
            if (usedNodes.count(hv)) continue;
            if (!node_compatible(l, lv, host, hv)) continue;
            nmap[lv] = hv;
            usedNodes.insert(hv);
            search(i + 1);
            usedNodes.erase(hv);
            nmap.erase(lv);
        }
    }
};

bool match_less(const Match& a, const Match& b) {
    if (a.morphism.nmap != b.morphism.nmap) return a.morphism.nmap < b.morphism.nmap;
    return a.morphism.emap < b.morphism.emap;
}

std::vector<Match> run_search(const Graph& l, const Graph& host, bool fast) {
    g_matchWork = 0;
    MatchSearch s(l, host);
    s.buildOrder(fast);
    s.search(0);
    std::sort(s.out.begin(), s.out.end(), match_less);
    return std::move(s.out);
}

}  // namespace

std::vector<Match> find_matches(const Graph& l, const Graph& host) {
    return run_search(l, host, false);
}

std::vector<Match> find_matches_fast(const Graph& l, const Graph& host) {
    return run_search(l, host, true);
}

bool is_fast_lhs(const Graph& l) {
    for (const auto& comp : component_node_sets(l)) {
        bool hasRoot = false;
        for (Id v : comp)
            if (l.node(v).rooted && *l.node(v).rooted) { hasRoot = true; break; }
        if (!hasRoot) return false;
    }
    return true;
}

bool satisfies_dangling(const Rule& rule, const Match& match, const Graph& host) {
    // The match is injective and total on L's edges, so the host edges
    // incident to the image of a deleted node that lie inside the match image
    // correspond one-to-one to the L-edges incident to that node. The
    // dangling condition therefore holds iff the degree counts agree.
    for (Id lv : rule.lhs.nodeIds()) {
        if (rule.interface.hasNode(lv)) continue;  // not deleted
        Id hv = match.morphism.nmap.at(lv);
        if (host.indegree(hv) != rule.lhs.indegree(lv)) return false;
        if (host.outdegree(hv) != rule.lhs.outdegree(lv)) return false;
    }
    return true;
}

long long last_match_work() { return g_matchWork; }

}  // namespace gt
