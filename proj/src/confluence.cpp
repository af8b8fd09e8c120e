#include "gt/confluence.hpp"

#include <algorithm>
#include <deque>

#include "gt/encoding.hpp"
#include "gt/genbench.hpp"

namespace gt {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::Yes: return "yes";
        case Verdict::No: return "no";
        case Verdict::NoWithinBudget: return "no-within-budget";
    }
    return "?";
}

namespace {

struct ItemSet {
    std::set<Id> nodes, edges;
};

ItemSet image_of(const std::map<Id, Id>& nmap, const std::map<Id, Id>& emap) {
    ItemSet s;
    for (const auto& [k, v] : nmap) s.nodes.insert(v);
    for (const auto& [k, v] : emap) s.edges.insert(v);
    return s;
}

ItemSet interface_image(const Rule& r, const std::map<Id, Id>& nmap,
                        const std::map<Id, Id>& emap) {
    ItemSet s;
    for (Id v : r.interface.nodeIds()) s.nodes.insert(nmap.at(v));
    for (Id e : r.interface.edgeIds()) s.edges.insert(emap.at(e));
    return s;
}

bool intersection_within(const ItemSet& a, const ItemSet& b, const ItemSet& ka,
                         const ItemSet& kb) {
    for (Id v : a.nodes)
        if (b.nodes.count(v) && !(ka.nodes.count(v) && kb.nodes.count(v))) return false;
    for (Id e : a.edges)
        if (b.edges.count(e) && !(ka.edges.count(e) && kb.edges.count(e))) return false;
    return true;
}

}  // namespace

bool parallelly_independent(const DerivationStep& s1, const DerivationStep& s2) {
    ItemSet i1 = image_of(s1.match.nmap, s1.match.emap);
    ItemSet i2 = image_of(s2.match.nmap, s2.match.emap);
    ItemSet k1 = interface_image(s1.rule, s1.match.nmap, s1.match.emap);
    ItemSet k2 = interface_image(s2.rule, s2.match.nmap, s2.match.emap);
    return intersection_within(i1, i2, k1, k2);
}

bool sequentially_independent(const DerivationStep& s1, const DerivationStep& s2) {
    ItemSet h1 = image_of(s1.comatchNodes, s1.comatchEdges);
    ItemSet i2 = image_of(s2.match.nmap, s2.match.emap);
    ItemSet k1 = interface_image(s1.rule, s1.comatchNodes, s1.comatchEdges);
    ItemSet k2 = interface_image(s2.rule, s2.match.nmap, s2.match.emap);
    return intersection_within(h1, i2, k1, k2);
}

const std::map<Id, Id>& track(const DerivationStep& step) { return step.track; }

std::map<Id, Id> track_seq(const std::vector<DerivationStep>& steps) {
    std::map<Id, Id> acc;
    bool first = true;
    for (const auto& s : steps) {
        if (first) {
            acc = s.track;
            first = false;
            continue;
        }
        std::map<Id, Id> next;
        for (const auto& [v, w] : acc) {
            auto it = s.track.find(w);
            if (it != s.track.end()) next[v] = it->second;
        }
        acc = std::move(next);
    }
    return acc;
}

namespace {

/// Node compatibility for identification in an overlap: partial labels /
/// rootedness must agree where both are defined.
bool glue_compatible(const Node& a, const Node& b) {
    if (a.label && b.label && *a.label != *b.label) return false;
    if (a.rooted && b.rooted && *a.rooted != *b.rooted) return false;
    return true;
}

struct Overlap {
    Graph h;
    std::map<Id, Id> n1, e1;  // L1 -> H
    std::map<Id, Id> n2, e2;  // L2 -> H
};

/// Enumerate all gluings of l1 and l2: partial injective correspondences on
/// nodes and edges (at least one identification), materialized as H with
/// both matches.
std::vector<Overlap> enumerate_overlaps(const Graph& l1, const Graph& l2) {
    std::vector<Overlap> out;
    std::vector<Id> n1 = l1.nodeIds(), n2 = l2.nodeIds();
    std::vector<Id> e1 = l1.edgeIds(), e2 = l2.edgeIds();
    std::map<Id, Id> nphi;  // L1 node -> L2 node
    std::set<Id> usedN;
    std::map<Id, Id> ephi;
    std::set<Id> usedE;

    auto materialize = [&]() {
        if (nphi.empty()) return;  // disjoint overlap: always independent
        Overlap o;
        // H ids: L1 items keep ids; unidentified L2 items get offset ids.
        Id nodeOff = 0, edgeOff = 0;
        for (Id v : n1) nodeOff = std::max(nodeOff, v + 1);
        for (Id e : e1) edgeOff = std::max(edgeOff, e + 1);
        std::map<Id, Id> m2n, m2e;  // L2 -> H
        std::map<Id, Id> inv;       // L2 node identified -> L1 node
        for (const auto& [a, b] : nphi) inv[b] = a;
        for (Id v : n1) {
            const Node& na = l1.node(v);
            std::optional<Symbol> label = na.label;
            std::optional<bool> rooted = na.rooted;
            auto it = nphi.find(v);
            if (it != nphi.end()) {
                const Node& nb = l2.node(it->second);
                if (!label) label = nb.label;
                if (!rooted) rooted = nb.rooted;
            }
            o.h.addNodeWithId(v, label, rooted);
            o.n1[v] = v;
        }
        for (Id w : n2) {
            auto it = inv.find(w);
            if (it != inv.end()) {
                m2n[w] = it->second;
            } else {
                const Node& nb = l2.node(w);
                o.h.addNodeWithId(nodeOff + w, nb.label, nb.rooted);
                m2n[w] = nodeOff + w;
            }
        }
        std::map<Id, Id> einv;
        for (const auto& [a, b] : ephi) einv[b] = a;
        for (Id e : e1) {
            const Edge& ed = l1.edge(e);
            o.h.addEdgeWithId(e, ed.src, ed.tgt, ed.label);
            o.e1[e] = e;
        }
        for (Id f : e2) {
            auto it = einv.find(f);
            if (it != einv.end()) {
                m2e[f] = it->second;
            } else {
                const Edge& ed = l2.edge(f);
                o.h.addEdgeWithId(edgeOff + f, m2n.at(ed.src), m2n.at(ed.tgt), ed.label);
                m2e[f] = edgeOff + f;
            }
        }
        o.n2 = std::move(m2n);
        o.e2 = std::move(m2e);
        out.push_back(std::move(o));
    };

    std::function<void(std::size_t)> assignEdges = [&](std::size_t i) {
        if (i == e1.size()) {
            materialize();
            return;
        }
        Id a = e1[i];
        const Edge& ea = l1.edge(a);
        // option: unidentified
        assignEdges(i + 1);
        auto sIt = nphi.find(ea.src);
        auto tIt = nphi.find(ea.tgt);
        if (sIt == nphi.end() || tIt == nphi.end()) return;
        for (Id b : e2) {
            if (usedE.count(b)) continue;
            const Edge& eb = l2.edge(b);
            if (eb.label != ea.label || eb.src != sIt->second || eb.tgt != tIt->second) continue;
            ephi[a] = b;
            usedE.insert(b);
            assignEdges(i + 1);
            usedE.erase(b);
            ephi.erase(a);
        }
    };
    std::function<void(std::size_t)> assignNodes = [&](std::size_t i) {
        if (i == n1.size()) {
            assignEdges(0);
            return;
        }
        Id a = n1[i];
        assignNodes(i + 1);  // unidentified
        for (Id b : n2) {
            if (usedN.count(b)) continue;
            if (!glue_compatible(l1.node(a), l2.node(b))) continue;
            nphi[a] = b;
            usedN.insert(b);
            assignNodes(i + 1);
            usedN.erase(b);
            nphi.erase(a);
        }
    };
    assignNodes(0);
    return out;
}

/// Is there an iso H -> H' commuting with both matches (in the given pairing)?
bool pairs_equivalent_oriented(const CriticalPair& a, const CriticalPair& b, bool swapped) {
    const auto& b1n = swapped ? b.step2.match.nmap : b.step1.match.nmap;
    const auto& b2n = swapped ? b.step1.match.nmap : b.step2.match.nmap;
    const auto& b1e = swapped ? b.step2.match.emap : b.step1.match.emap;
    const auto& b2e = swapped ? b.step1.match.emap : b.step2.match.emap;
    // forced map from joint surjectivity
    std::map<Id, Id> fn, fe;
    auto force = [](std::map<Id, Id>& f, const std::map<Id, Id>& fromA,
                    const std::map<Id, Id>& fromB) {
        for (const auto& [l, ha] : fromA) {
            auto it = fromB.find(l);
            if (it == fromB.end()) return false;
            auto ins = f.emplace(ha, it->second);
            if (!ins.second && ins.first->second != it->second) return false;
        }
        return true;
    };
    if (!force(fn, a.step1.match.nmap, b1n)) return false;
    if (!force(fn, a.step2.match.nmap, b2n)) return false;
    if (!force(fe, a.step1.match.emap, b1e)) return false;
    if (!force(fe, a.step2.match.emap, b2e)) return false;
    if (fn.size() != a.overlap.nodeCount() || fe.size() != a.overlap.edgeCount()) return false;
    if (a.overlap.nodeCount() != b.overlap.nodeCount() ||
        a.overlap.edgeCount() != b.overlap.edgeCount())
        return false;
    // injectivity
    std::set<Id> nImg, eImg;
    for (const auto& [k, v] : fn) nImg.insert(v);
    for (const auto& [k, v] : fe) eImg.insert(v);
    if (nImg.size() != fn.size() || eImg.size() != fe.size()) return false;
    // structure + exact label/rootedness preservation both ways
    for (const auto& [va, vb] : fn) {
        const Node& na = a.overlap.node(va);
        const Node& nb = b.overlap.node(vb);
        if (na.label != nb.label || na.rooted != nb.rooted) return false;
    }
    for (const auto& [ea, eb] : fe) {
        const Edge& da = a.overlap.edge(ea);
        const Edge& db = b.overlap.edge(eb);
        if (da.label != db.label) return false;
        if (fn.at(da.src) != db.src || fn.at(da.tgt) != db.tgt) return false;
    }
    return true;
}

bool pairs_equivalent(const CriticalPair& a, const CriticalPair& b) {
    if (a.ruleIndex1 != b.ruleIndex1 || a.ruleIndex2 != b.ruleIndex2) return false;
    if (pairs_equivalent_oriented(a, b, false)) return true;
    if (a.ruleIndex1 == a.ruleIndex2 && pairs_equivalent_oriented(a, b, true)) return true;
    return false;
}

bool same_match(const Overlap& o) {
    return o.n1 == o.n2 && o.e1 == o.e2;
}

}  // namespace

std::vector<CriticalPair> critical_pairs(const GTSystem& t) {
    std::vector<CriticalPair> pairs;
    for (std::size_t i = 0; i < t.rules.size(); ++i) {
        for (std::size_t j = i; j < t.rules.size(); ++j) {
            const Rule& r1 = t.rules[i];
            const Rule& r2 = t.rules[j];
            for (const auto& o : enumerate_overlaps(r1.lhs, r2.lhs)) {
                if (i == j && same_match(o)) continue;
                Match m1{Morphism{&r1.lhs, &o.h, o.n1, o.e1}, r1.name};
                Match m2{Morphism{&r2.lhs, &o.h, o.n2, o.e2}, r2.name};
                if (!satisfies_dangling(r1, m1, o.h)) continue;
                if (!satisfies_dangling(r2, m2, o.h)) continue;
                CriticalPair p;
                p.overlap = o.h;
                p.ruleIndex1 = i;
                p.ruleIndex2 = j;
                p.step1 = apply(r1, m1.morphism, o.h);
                p.step2 = apply(r2, m2.morphism, o.h);
                if (parallelly_independent(p.step1, p.step2)) continue;
                for (const auto& [v, w] : p.step1.track)
                    if (p.step2.track.count(v)) p.persistent.insert(v);
                bool dup = false;
                for (const auto& q : pairs)
                    if (pairs_equivalent(q, p)) { dup = true; break; }
                if (!dup) pairs.push_back(std::move(p));
            }
        }
    }
    return pairs;
}

bool factors_through(const GTSystem& t, const DerivationStep& s1, const DerivationStep& s2,
                     const std::vector<CriticalPair>& pairs) {
    auto ruleIndex = [&](const DerivationStep& s) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < t.rules.size(); ++i)
            if (t.rules[i].name == s.rule.name) return i;
        return std::nullopt;
    };
    auto i1 = ruleIndex(s1), i2 = ruleIndex(s2);
    if (!i1 || !i2) return false;
    const Graph& host = s1.host;
    auto embeds = [&](const CriticalPair& q, const DerivationStep& a, const DerivationStep& b) {
        // forced map overlap -> host from commutation with both matches
        std::map<Id, Id> fn, fe;
        auto force = [](std::map<Id, Id>& f, const std::map<Id, Id>& fromQ,
                        const std::map<Id, Id>& fromS) {
            for (const auto& [l, hq] : fromQ) {
                auto it = fromS.find(l);
                if (it == fromS.end()) return false;
                auto ins = f.emplace(hq, it->second);
                if (!ins.second && ins.first->second != it->second) return false;
            }
            return true;
        };
        if (!force(fn, q.step1.match.nmap, a.match.nmap)) return false;
        if (!force(fn, q.step2.match.nmap, b.match.nmap)) return false;
        if (!force(fe, q.step1.match.emap, a.match.emap)) return false;
        if (!force(fe, q.step2.match.emap, b.match.emap)) return false;
        if (fn.size() != q.overlap.nodeCount() || fe.size() != q.overlap.edgeCount()) return false;
        std::set<Id> nImg, eImg;
        for (const auto& [k, v] : fn) nImg.insert(v);
        for (const auto& [k, v] : fe) eImg.insert(v);
        if (nImg.size() != fn.size() || eImg.size() != fe.size()) return false;
        for (const auto& [vq, vh] : fn) {
            const Node& nq = q.overlap.node(vq);
            const Node& nh = host.node(vh);
            if (nq.label && nq.label != nh.label) return false;
            if (nq.rooted && nq.rooted != nh.rooted) return false;
        }
        for (const auto& [eq, eh] : fe) {
            const Edge& dq = q.overlap.edge(eq);
            const Edge& dh = host.edge(eh);
            if (dq.label != dh.label) return false;
            if (fn.at(dq.src) != dh.src || fn.at(dq.tgt) != dh.tgt) return false;
        }
        return true;
    };
    for (const auto& q : pairs) {
        if (q.ruleIndex1 == *i1 && q.ruleIndex2 == *i2 && embeds(q, s1, s2)) return true;
        if (q.ruleIndex1 == *i2 && q.ruleIndex2 == *i1 && embeds(q, s2, s1)) return true;
    }
    return false;
}

namespace {

struct TrackedState {
    Graph g;
    std::map<Id, Id> tr;  // persistent overlap node -> node of g (total on kept set)
    std::vector<DerivationStep> unusedPath;  // not stored; placeholder
};

/// Explore successors of `start` with composed tracks on the persistent set.
/// States whose track loses a persistent node are kept for plain joinability
/// but marked incomplete for strong joinability.
struct LegExploration {
    std::vector<Graph> all;                       // reachable graphs (for joinable)
    std::vector<TrackedState> tracked;            // with full persistent track
    bool exhausted = true;
};

LegExploration explore_leg(const GTSystem& t, const Graph& start,
                           const std::map<Id, Id>& startTrack, const std::set<Id>& persistent,
                           long long budget) {
    LegExploration res;
    std::deque<TrackedState> frontier;
    TrackedState s0{start, startTrack, {}};
    frontier.push_back(s0);
    res.all.push_back(start);
    res.tracked.push_back(s0);
    long long used = 0;
    auto seenTracked = [&](const TrackedState& st) {
        for (const auto& prev : res.tracked) {
            if (prev.tr.size() != st.tr.size()) continue;
            std::map<Id, Id> seed;
            bool ok = true;
            for (const auto& [v, w] : prev.tr) {
                auto it = st.tr.find(v);
                if (it == st.tr.end()) { ok = false; break; }
                auto ins = seed.emplace(w, it->second);
                if (!ins.second && ins.first->second != it->second) { ok = false; break; }
            }
            if (!ok) continue;
            if (find_isomorphism_seeded(prev.g, st.g, seed)) return true;
        }
        return false;
    };
    while (!frontier.empty()) {
        TrackedState cur = std::move(frontier.front());
        frontier.pop_front();
        for (const auto& rule : t.rules) {
            for (const auto& match : find_matches(rule.lhs, cur.g)) {
                if (!satisfies_dangling(rule, match, cur.g)) continue;
                if (used >= budget) {
                    res.exhausted = false;
                    continue;
                }
                ++used;
                DerivationStep step = apply(rule, match.morphism, cur.g);
                TrackedState next;
                next.g = step.result;
                bool full = true;
                for (const auto& [v, w] : cur.tr) {
                    auto it = step.track.find(w);
                    if (it == step.track.end()) { full = false; continue; }
                    next.tr[v] = it->second;
                }
                // record for plain joinability
                bool seenPlain = false;
                for (const auto& g : res.all)
                    if (isomorphic(g, next.g)) { seenPlain = true; break; }
                if (!seenPlain) res.all.push_back(next.g);
                if (full && cur.tr.size() == persistent.size()) {
                    if (!seenTracked(next)) {
                        res.tracked.push_back(next);
                        frontier.push_back(std::move(next));
                    }
                } else {
                    // keep exploring for plain joinability along a reduced track
                    next.tr.clear();
                    if (!seenPlain) frontier.push_back(std::move(next));
                }
            }
        }
    }
    return res;
}

std::map<Id, Id> restrict_to(const std::map<Id, Id>& m, const std::set<Id>& dom) {
    std::map<Id, Id> out;
    for (Id v : dom) {
        auto it = m.find(v);
        if (it != m.end()) out[v] = it->second;
    }
    return out;
}

}  // namespace

Verdict joinable(CriticalPair& p, const GTSystem& t, long long budgetPerLeg) {
    auto leg1 = explore_leg(t, p.step1.result, restrict_to(p.step1.track, p.persistent),
                            p.persistent, budgetPerLeg);
    auto leg2 = explore_leg(t, p.step2.result, restrict_to(p.step2.track, p.persistent),
                            p.persistent, budgetPerLeg);
    for (const auto& a : leg1.all)
        for (const auto& b : leg2.all)
            if (isomorphic(a, b)) {
                p.joinable = Verdict::Yes;
                return p.joinable;
            }
    p.joinable = (leg1.exhausted && leg2.exhausted) ? Verdict::No : Verdict::NoWithinBudget;
    return p.joinable;
}

Verdict strongly_joinable(CriticalPair& p, const GTSystem& t, long long budgetPerLeg) {
    auto leg1 = explore_leg(t, p.step1.result, restrict_to(p.step1.track, p.persistent),
                            p.persistent, budgetPerLeg);
    auto leg2 = explore_leg(t, p.step2.result, restrict_to(p.step2.track, p.persistent),
                            p.persistent, budgetPerLeg);
    for (const auto& a : leg1.tracked) {
        if (a.tr.size() != p.persistent.size()) continue;
        for (const auto& b : leg2.tracked) {
            if (b.tr.size() != p.persistent.size()) continue;
            std::map<Id, Id> seed;
            bool ok = true;
            for (Id v : p.persistent) {
                auto ins = seed.emplace(a.tr.at(v), b.tr.at(v));
                if (!ins.second && ins.first->second != b.tr.at(v)) { ok = false; break; }
            }
            if (!ok) continue;
            if (find_isomorphism_seeded(a.g, b.g, seed)) {
                p.stronglyJoinable = Verdict::Yes;
                return p.stronglyJoinable;
            }
        }
    }
    p.stronglyJoinable =
        (leg1.exhausted && leg2.exhausted) ? Verdict::No : Verdict::NoWithinBudget;
    return p.stronglyJoinable;
}

std::vector<CriticalPair> non_garbage_pairs(const GTSystem& t, const GarbagePredicate& d) {
    std::vector<CriticalPair> out;
    for (auto& p : critical_pairs(t)) {
        if (d.closureMember(p.overlap)) {
            p.garbage = false;
            out.push_back(std::move(p));
        }
    }
    return out;
}

SeparationReport check_weak_garbage_separation(const GTSystem& t, const GarbagePredicate& d,
                                               const std::function<Graph(std::mt19937&)>& sampler,
                                               int trials, unsigned seed) {
    SeparationReport rep;
    rep.trials = trials;
    std::mt19937 rng(seed);
    for (int i = 0; i < trials; ++i) {
        Graph g = sampler(rng);
        if (!d.member(g)) continue;  // sampler contract violation; skip quietly
        for (const auto& step : successors(t, g)) {
            if (!d.member(step.result)) {
                rep.counterexamples.push_back({g, step.result});
                break;
            }
        }
    }
    return rep;
}

ConfluenceReport confluence_mod_garbage_report(const GTSystem& t, const GarbagePredicate& d,
                                               long long budgetPerLeg, bool terminationEvidence,
                                               bool separationEvidence) {
    ConfluenceReport rep;
    auto pairs = critical_pairs(t);
    rep.totalPairs = static_cast<int>(pairs.size());
    for (auto& p : pairs) {
        PairRecord rec;
        rec.nonGarbage = d.closureMember(p.overlap);
        p.garbage = !rec.nonGarbage;
        if (rec.nonGarbage) {
            ++rep.nonGarbagePairs;
            joinable(p, t, budgetPerLeg);
            strongly_joinable(p, t, budgetPerLeg);
            if (p.joinable == Verdict::Yes) ++rep.joinablePairs;
            if (p.stronglyJoinable == Verdict::Yes) ++rep.stronglyJoinablePairs;
            if (p.joinable == Verdict::NoWithinBudget ||
                p.stronglyJoinable == Verdict::NoWithinBudget)
                rep.allSearchesExhaustive = false;
        }
        rec.pair = std::move(p);
        rep.pairs.push_back(std::move(rec));
    }
    if (rep.stronglyJoinablePairs == rep.nonGarbagePairs) {
        rep.conclusion = "locally confluent modulo garbage";
        rep.justification.push_back(
            "every non-garbage critical pair is strongly joinable (non-garbage critical pair lemma)");
        if (terminationEvidence && separationEvidence) {
            rep.conclusion = "confluent modulo garbage (evidence-based)";
            rep.justification.push_back(
                "termination and weak garbage separation evidence supplied; Newman-style argument "
                "lifts local confluence modulo garbage");
        }
    } else if (rep.joinablePairs == rep.nonGarbagePairs) {
        rep.conclusion = "inconclusive (all non-garbage pairs joinable, but not all strongly)";
        rep.justification.push_back(
            "strong joinability fails on a non-garbage critical pair; the critical pair lemma "
            "does not apply");
    } else {
        rep.conclusion = "not locally confluent modulo garbage candidates found";
        rep.justification.push_back("a non-garbage critical pair is not joinable within budget");
    }
    return rep;
}

GarbagePredicate all_graphs_predicate() {
    GarbagePredicate d;
    d.name = "all-graphs";
    d.member = [](const Graph&) { return true; };
    d.closureMember = [](const Graph&) { return true; };
    return d;
}

namespace {

bool forest_check(const Graph& g) {
    if (has_undirected_cycle(g)) return false;
    for (Id v : g.nodeIds())
        if (g.indegree(v) > 1) return false;
    return true;
}

}  // namespace

GarbagePredicate trees_predicate() {
    GarbagePredicate d;
    d.name = "trees";
    d.member = [](const Graph& g) { return tree_oracle(g); };
    d.closureMember = [](const Graph& g) { return forest_check(g); };
    return d;
}

GarbagePredicate acyclic_predicate() {
    GarbagePredicate d;
    d.name = "acyclic";
    d.member = [](const Graph& g) { return is_acyclic(g); };
    d.closureMember = [](const Graph& g) { return is_acyclic(g); };
    return d;
}

GarbagePredicate t_cycle_predicate() {
    GarbagePredicate d;
    d.name = "t-edge-cycle";
    auto check = [](const Graph& g) {
        // every directed cycle contains a t-edge <=> dropping t-edges is acyclic
        Graph h;
        for (Id v : g.nodeIds()) h.addNodeWithId(v);
        for (Id e : g.edgeIds()) {
            const Edge& ed = g.edge(e);
            if (ed.label != "t") h.addEdgeWithId(e, ed.src, ed.tgt, ed.label);
        }
        return is_acyclic(h);
    };
    d.member = check;
    d.closureMember = check;
    return d;
}

GarbagePredicate encoded_input_tree_predicate() {
    GarbagePredicate d;
    d.name = "encoded-input-tree";
    auto analyse = [](const Graph& g, bool closure) {
        int rLoops = 0;
        Graph flow;  // tri-edge structure
        for (Id v : g.nodeIds()) {
            const Node& n = g.node(v);
            if (!n.label || *n.label != kSentinel || n.rooted) return false;
            flow.addNodeWithId(v);
        }
        std::map<Id, int> markerCount;
        for (Id e : g.edgeIds()) {
            const Edge& ed = g.edge(e);
            if (ed.label == "R" || ed.label == "N" || ed.label == "M") {
                if (ed.src != ed.tgt) return false;
                if (++markerCount[ed.src] > 1) return false;
                if (ed.label == "R" && ++rLoops > 1) return false;
            } else if (ed.label == "tri") {
                if (ed.src == ed.tgt) return false;  // no flow loops in trees
                flow.addEdgeWithId(e, ed.src, ed.tgt, "tri");
            } else {
                return false;
            }
        }
        if (!forest_check(flow)) return false;
        if (!closure) {
            // full members: every node marked, exactly one root, structure a tree
            if (rLoops != 1) return false;
            for (Id v : g.nodeIds())
                if (markerCount[v] != 1) return false;
            if (!tree_oracle(flow)) return false;
        }
        return true;
    };
    d.member = [analyse](const Graph& g) { return analyse(g, false); };
    d.closureMember = [analyse](const Graph& g) { return analyse(g, true); };
    return d;
}

namespace {

// Flow-diagram grammar: reconstructed reduction semantics; see data/efd for
// the same rules in the text format.
Rule make_efd_rule(const std::string& name, const std::function<void(Rule&)>& build) {
    Rule r;
    r.name = name;
    build(r);
    return r;
}

}  // namespace

GTSystem efd_system() {
    GTSystem t;
    t.alphabet.nodeLabels = {"dot", "box", "dia"};
    t.alphabet.edgeLabels = {"t", "f", "box"};

    // Common left-hand side: a statement between two control points --
    // exactly the shape of the start graph. K keeps the control points.
    auto baseLK = [](Rule& r) {
        r.lhs.addNodeWithId(1, Symbol("dot"), std::nullopt);
        r.lhs.addNodeWithId(2, Symbol("box"), std::nullopt);
        r.lhs.addNodeWithId(3, Symbol("dot"), std::nullopt);
        r.lhs.addEdgeWithId(1, 1, 2, "box");
        r.lhs.addEdgeWithId(2, 2, 3, "box");
        r.interface.addNodeWithId(1, Symbol("dot"), std::nullopt);
        r.interface.addNodeWithId(3, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(1, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(3, Symbol("dot"), std::nullopt);
    };

    // seq: the statement becomes two statements separated by a control point.
    t.rules.push_back(make_efd_rule("seq", [&](Rule& r) {
        baseLK(r);
        r.rhs.addNodeWithId(4, Symbol("box"), std::nullopt);
        r.rhs.addNodeWithId(5, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(6, Symbol("box"), std::nullopt);
        r.rhs.addEdgeWithId(3, 1, 4, "box");
        r.rhs.addEdgeWithId(4, 4, 5, "box");
        r.rhs.addEdgeWithId(5, 5, 6, "box");
        r.rhs.addEdgeWithId(6, 6, 3, "box");
    }));
    // while: a loop whose body runs back to the entry control point.
    t.rules.push_back(make_efd_rule("while", [&](Rule& r) {
        baseLK(r);
        r.rhs.addNodeWithId(4, Symbol("dia"), std::nullopt);
        r.rhs.addNodeWithId(5, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(6, Symbol("box"), std::nullopt);
        r.rhs.addEdgeWithId(3, 1, 4, "box");
        r.rhs.addEdgeWithId(4, 4, 5, "t");
        r.rhs.addEdgeWithId(5, 5, 6, "box");
        r.rhs.addEdgeWithId(6, 6, 1, "box");
        r.rhs.addEdgeWithId(7, 4, 3, "f");
    }));
    // ddec: a decision with a statement on both branches.
    t.rules.push_back(make_efd_rule("ddec", [&](Rule& r) {
        baseLK(r);
        r.rhs.addNodeWithId(4, Symbol("dia"), std::nullopt);
        r.rhs.addNodeWithId(5, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(6, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(7, Symbol("box"), std::nullopt);
        r.rhs.addNodeWithId(8, Symbol("box"), std::nullopt);
        r.rhs.addEdgeWithId(3, 1, 4, "box");
        r.rhs.addEdgeWithId(4, 4, 5, "t");
        r.rhs.addEdgeWithId(5, 5, 7, "box");
        r.rhs.addEdgeWithId(6, 7, 3, "box");
        r.rhs.addEdgeWithId(7, 4, 6, "f");
        r.rhs.addEdgeWithId(8, 6, 8, "box");
        r.rhs.addEdgeWithId(9, 8, 3, "box");
    }));
    // dec1: a decision with a statement on the true branch only.
    t.rules.push_back(make_efd_rule("dec1", [&](Rule& r) {
        baseLK(r);
        r.rhs.addNodeWithId(4, Symbol("dia"), std::nullopt);
        r.rhs.addNodeWithId(5, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(6, Symbol("box"), std::nullopt);
        r.rhs.addEdgeWithId(3, 1, 4, "box");
        r.rhs.addEdgeWithId(4, 4, 5, "t");
        r.rhs.addEdgeWithId(5, 5, 6, "box");
        r.rhs.addEdgeWithId(6, 6, 3, "box");
        r.rhs.addEdgeWithId(7, 4, 3, "f");
    }));
    // dec2: a decision with a statement on the false branch only.
    t.rules.push_back(make_efd_rule("dec2", [&](Rule& r) {
        baseLK(r);
        r.rhs.addNodeWithId(4, Symbol("dia"), std::nullopt);
        r.rhs.addNodeWithId(5, Symbol("dot"), std::nullopt);
        r.rhs.addNodeWithId(6, Symbol("box"), std::nullopt);
        r.rhs.addEdgeWithId(3, 1, 4, "box");
        r.rhs.addEdgeWithId(4, 4, 5, "f");
        r.rhs.addEdgeWithId(5, 5, 6, "box");
        r.rhs.addEdgeWithId(6, 6, 3, "box");
        r.rhs.addEdgeWithId(7, 4, 3, "t");
    }));
    return t;
}

GTSystem efd_inverse_system() { return invert_system(efd_system()); }

Graph efd_start_graph() {
    Graph s;
    s.addNodeWithId(1, Symbol("dot"));
    s.addNodeWithId(2, Symbol("box"));
    s.addNodeWithId(3, Symbol("dot"));
    s.addEdgeWithId(1, 1, 2, "box");
    s.addEdgeWithId(2, 2, 3, "box");
    return s;
}

}  // namespace gt
