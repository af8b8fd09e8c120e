#include "gt/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>

namespace gt {

std::vector<std::string> validate_rule(const Rule& r, bool requireTotallyLabelledSides) {
    std::vector<std::string> issues;
    auto checkInclusion = [&](const Graph& big, const char* name) {
        for (Id v : r.interface.nodeIds()) {
            if (!big.hasNode(v)) {
                issues.push_back("interface node " + std::to_string(v) + " missing from " + name);
                continue;
            }
            const Node& kn = r.interface.node(v);
            const Node& bn = big.node(v);
            if (kn.label && (!bn.label || *bn.label != *kn.label))
                issues.push_back("interface node " + std::to_string(v) + " label conflicts with " + name);
            if (kn.rooted && (!bn.rooted || *bn.rooted != *kn.rooted))
                issues.push_back("interface node " + std::to_string(v) + " rootedness conflicts with " + name);
        }
        for (Id e : r.interface.edgeIds()) {
            if (!big.hasEdge(e)) {
                issues.push_back("interface edge " + std::to_string(e) + " missing from " + name);
                continue;
            }
            const Edge& ke = r.interface.edge(e);
            const Edge& be = big.edge(e);
            if (ke.src != be.src || ke.tgt != be.tgt || ke.label != be.label)
                issues.push_back("interface edge " + std::to_string(e) + " inconsistent with " + name);
        }
    };
    checkInclusion(r.lhs, "left");
    checkInclusion(r.rhs, "right");
    if (requireTotallyLabelledSides) {
        if (!r.lhs.totallyLabelled()) issues.push_back("left-hand side not totally labelled");
        if (!r.rhs.totallyLabelled()) issues.push_back("right-hand side not totally labelled");
    }
    return issues;
}

DerivationStep apply(const Rule& rule, const Morphism& match, const Graph& host) {
    DerivationStep step;
    step.rule = rule;
    step.host = host;
    step.match = match;

    Graph h = host;

    // (1) delete g(L\K): edges first, then nodes; clear labels/rootedness on
    // images of interface nodes where the interface leaves them undefined.
    for (Id le : rule.lhs.edgeIds())
        if (!rule.interface.hasEdge(le)) h.removeEdge(match.emap.at(le));
    for (Id lv : rule.lhs.nodeIds())
        if (!rule.interface.hasNode(lv)) h.removeNode(match.nmap.at(lv));
    for (Id kv : rule.interface.nodeIds()) {
        Id hv = match.nmap.at(kv);
        if (!rule.interface.node(kv).label) h.clearNodeLabel(hv);
        if (!rule.interface.node(kv).rooted) h.clearRooted(hv);
    }
    step.intermediate = h;

    // (2) add R\K disjointly (fresh ids in ascending R-id order), then restore
    // labels/rootedness from R on the cleared interface-node images.
    std::map<Id, Id> cn, ce;  // comatch
    for (Id kv : rule.interface.nodeIds()) cn[kv] = match.nmap.at(kv);
    for (Id ke : rule.interface.edgeIds()) ce[ke] = match.emap.at(ke);
    for (Id rv : rule.rhs.nodeIds()) {
        if (rule.interface.hasNode(rv)) continue;
        const Node& n = rule.rhs.node(rv);
        cn[rv] = h.addNode(n.label, n.rooted);
    }
    for (Id re : rule.rhs.edgeIds()) {
        if (rule.interface.hasEdge(re)) continue;
        const Edge& e = rule.rhs.edge(re);
        ce[re] = h.addEdge(cn.at(e.src), cn.at(e.tgt), e.label);
    }
    for (Id kv : rule.interface.nodeIds()) {
        Id hv = cn.at(kv);
        if (!rule.interface.node(kv).label && rule.rhs.node(kv).label)
            h.setNodeLabel(hv, *rule.rhs.node(kv).label);
        if (!rule.interface.node(kv).rooted && rule.rhs.node(kv).rooted)
            h.setRooted(hv, *rule.rhs.node(kv).rooted);
    }

    step.result = h;
    step.comatchNodes = std::move(cn);
    step.comatchEdges = std::move(ce);
    for (Id v : step.intermediate.nodeIds()) step.track[v] = v;  // preserved nodes keep ids
    return step;
}

std::map<Id, Id> apply_in_place(const Rule& rule, const Morphism& match, Graph& h) {
    for (Id le : rule.lhs.edgeIds())
        if (!rule.interface.hasEdge(le)) h.removeEdge(match.emap.at(le));
    for (Id lv : rule.lhs.nodeIds())
        if (!rule.interface.hasNode(lv)) h.removeNode(match.nmap.at(lv));
    std::map<Id, Id> cn;
    for (Id kv : rule.interface.nodeIds()) {
        Id hv = match.nmap.at(kv);
        cn[kv] = hv;
        const Node& kn = rule.interface.node(kv);
        const Node& rn = rule.rhs.node(kv);
        if (!kn.label) {
            if (rn.label) h.setNodeLabel(hv, *rn.label); else h.clearNodeLabel(hv);
        }
        if (!kn.rooted) {
            if (rn.rooted) h.setRooted(hv, *rn.rooted); else h.clearRooted(hv);
        }
    }
    for (Id rv : rule.rhs.nodeIds()) {
        if (rule.interface.hasNode(rv)) continue;
        const Node& n = rule.rhs.node(rv);
        cn[rv] = h.addNode(n.label, n.rooted);
    }
    for (Id re : rule.rhs.edgeIds()) {
        if (rule.interface.hasEdge(re)) continue;
        const Edge& e = rule.rhs.edge(re);
        h.addEdge(cn.at(e.src), cn.at(e.tgt), e.label);
    }
    return cn;
}

Rule invert_rule(const Rule& r) {
    Rule inv;
    inv.name = r.name + "^-1";
    if (r.name.size() >= 3 && r.name.compare(r.name.size() - 3, 3, "^-1") == 0)
        inv.name = r.name.substr(0, r.name.size() - 3);
    inv.lhs = r.rhs;
    inv.interface = r.interface;
    inv.rhs = r.lhs;
    return inv;
}

GTSystem invert_system(const GTSystem& t) {
    GTSystem inv;
    inv.alphabet = t.alphabet;
    for (const auto& r : t.rules) inv.rules.push_back(invert_rule(r));
    return inv;
}

DerivationStep invert_step(const DerivationStep& step) {
    Rule inv = invert_rule(step.rule);
    Morphism m;
    m.src = nullptr;  // filled by apply below via copies; build maps first
    Morphism comatch;
    comatch.nmap = step.comatchNodes;
    comatch.emap = step.comatchEdges;
    // apply() copies graphs; the morphism only needs the maps plus src/dst for
    // validation-free use here.
    comatch.src = &inv.lhs;
    comatch.dst = &step.result;
    return apply(inv, comatch, step.result);
}

std::vector<DerivationStep> successors(const GTSystem& t, const Graph& g, bool dedupe) {
    std::vector<DerivationStep> steps;
    for (const auto& rule : t.rules) {
        for (const auto& match : find_matches(rule.lhs, g)) {
            if (!satisfies_dangling(rule, match, g)) continue;
            DerivationStep step = apply(rule, match.morphism, g);
            if (dedupe) {
                bool dup = false;
                for (const auto& prev : steps)
                    if (isomorphic(prev.result, step.result)) { dup = true; break; }
                if (dup) continue;
            }
            steps.push_back(std::move(step));
        }
    }
    return steps;
}

std::vector<Graph> successor_graphs(const GTSystem& t, const Graph& g) {
    std::vector<Graph> out;
    for (auto& s : successors(t, g, true)) out.push_back(std::move(s.result));
    return out;
}

NormalFormsResult normal_forms(const GTSystem& t, const Graph& g, long long maxSteps) {
    NormalFormsResult res;
    std::vector<Graph> visited;
    std::vector<Graph> frontier{g};
    visited.push_back(g);
    auto seen = [&](const Graph& x) {
        for (const auto& v : visited)
            if (isomorphic(v, x)) return true;
        return false;
    };
    while (!frontier.empty()) {
        Graph cur = std::move(frontier.back());
        frontier.pop_back();
        std::vector<DerivationStep> steps;
        bool truncated = false;
        for (const auto& rule : t.rules) {
            for (const auto& match : find_matches(rule.lhs, cur)) {
                if (!satisfies_dangling(rule, match, cur)) continue;
                if (res.derivationsUsed >= maxSteps) { truncated = true; break; }
                ++res.derivationsUsed;
                steps.push_back(apply(rule, match.morphism, cur));
            }
            if (truncated) break;
        }
        if (truncated) {
            res.budgetExceeded = true;
            continue;
        }
        if (steps.empty()) {
            bool dup = false;
            for (const auto& nf : res.normalForms)
                if (isomorphic(nf, cur)) { dup = true; break; }
            if (!dup) res.normalForms.push_back(cur);
            continue;
        }
        for (auto& s : steps) {
            if (!seen(s.result)) {
                visited.push_back(s.result);
                frontier.push_back(std::move(s.result));
            }
        }
    }
    return res;
}

RuleClass classify_rule(const Rule& r, int n) {
    RuleClass c;
    c.fast = is_fast_lhs(r.lhs);
    c.rootNonIncreasing = r.lhs.roots().size() >= r.rhs.roots().size();
    c.degreeNonIncreasing = true;
    for (Id v : r.rhs.nodeIds()) {
        if (!r.interface.hasNode(v)) {
            if (r.rhs.degree(v) > n) c.degreeNonIncreasing = false;
        } else {
            if (r.lhs.degree(v) < r.rhs.degree(v)) c.degreeNonIncreasing = false;
        }
    }
    return c;
}

Rule normalize_rule(const Rule& r) {
    Rule nf = r;
    nf.interface = Graph();
    for (Id v : r.interface.nodeIds()) nf.interface.addNodeWithId(v);
    return nf;
}

bool rules_isomorphic(const Rule& r1, const Rule& r2) {
    auto lIsos = enumerate_isomorphisms(r1.lhs, r2.lhs);
    if (lIsos.empty()) return false;
    auto rIsos = enumerate_isomorphisms(r1.rhs, r2.rhs);
    if (rIsos.empty()) return false;
    const auto k2nv = r2.interface.nodeIds();
    const auto k2ev = r2.interface.edgeIds();
    std::set<Id> k2n(k2nv.begin(), k2nv.end());
    std::set<Id> k2e(k2ev.begin(), k2ev.end());
    for (const auto& f : lIsos) {
        // f must map K1 exactly onto K2
        bool ok = true;
        std::set<Id> img;
        for (Id v : r1.interface.nodeIds()) {
            if (!k2n.count(f.nmap.at(v))) { ok = false; break; }
            img.insert(f.nmap.at(v));
        }
        if (!ok || img.size() != k2n.size()) continue;
        std::set<Id> eimg;
        for (Id e : r1.interface.edgeIds()) {
            if (!k2e.count(f.emap.at(e))) { ok = false; break; }
            eimg.insert(f.emap.at(e));
        }
        if (!ok || eimg.size() != k2e.size()) continue;
        for (const auto& g : rIsos) {
            bool agree = true;
            for (Id v : r1.interface.nodeIds())
                if (g.nmap.at(v) != f.nmap.at(v)) { agree = false; break; }
            if (agree)
                for (Id e : r1.interface.edgeIds())
                    if (g.emap.at(e) != f.emap.at(e)) { agree = false; break; }
            if (agree) return true;
        }
    }
    return false;
}

namespace {

bool rule_sets_match(const std::vector<Rule>& a, const std::vector<Rule>& b,
                     const std::function<bool(const Rule&, const Rule&)>& eq) {
    // every rule of a has an equivalent in b and vice versa (quotient equality)
    for (const auto& ra : a) {
        bool found = false;
        for (const auto& rb : b)
            if (eq(ra, rb)) { found = true; break; }
        if (!found) return false;
    }
    for (const auto& rb : b) {
        bool found = false;
        for (const auto& ra : a)
            if (eq(ra, rb)) { found = true; break; }
        if (!found) return false;
    }
    return true;
}

}  // namespace

std::vector<Graph> enumerate_graphs(const LabelAlphabet& alphabet, int bound) {
    // node kinds: (label or none) x (rooted 0/1 or none)
    std::vector<Node> kinds;
    std::vector<std::optional<Symbol>> labels{std::nullopt};
    for (const auto& s : alphabet.nodeLabels) labels.push_back(s);
    std::vector<std::optional<bool>> rootOpts{std::nullopt, false, true};
    for (const auto& l : labels)
        for (const auto& r : rootOpts) kinds.push_back(Node{l, r});

    std::vector<Symbol> elabels(alphabet.edgeLabels.begin(), alphabet.edgeLabels.end());

    std::vector<Graph> out;
    auto tryAdd = [&](const Graph& g) {
        for (const auto& prev : out)
            if (isomorphic(prev, g)) return;
        out.push_back(g);
    };

    // enumerate node multisets then edge sets recursively
    std::function<void(Graph&, int, std::size_t)> addEdges = [&](Graph& g, int budget,
                                                                 std::size_t minSlot) {
        tryAdd(g);
        if (budget <= 0 || elabels.empty()) return;
        auto nodes = g.nodeIds();
        // slot = (srcIdx, tgtIdx, labelIdx) linearized; enforce non-decreasing
        // slot order to cut duplicates (parallel edges allowed by repetition)
        std::size_t nSlots = nodes.size() * nodes.size() * elabels.size();
        for (std::size_t slot = minSlot; slot < nSlots; ++slot) {
            std::size_t li = slot % elabels.size();
            std::size_t rest = slot / elabels.size();
            Id src = nodes[rest / nodes.size()];
            Id tgt = nodes[rest % nodes.size()];
            Id e = g.addEdge(src, tgt, elabels[li]);
            addEdges(g, budget - 1, slot);
            g.removeEdge(e);
        }
    };
    std::function<void(Graph&, int, std::size_t)> addNodes = [&](Graph& g, int budget,
                                                                 std::size_t minKind) {
        addEdges(g, budget, 0);
        if (budget <= 0) return;
        for (std::size_t k = minKind; k < kinds.size(); ++k) {
            Id v = g.addNode(kinds[k].label, kinds[k].rooted);
            addNodes(g, budget - 1, k);
            g.removeNode(v);
        }
    };
    Graph empty;
    addNodes(empty, bound, 0);
    return out;
}

bool systems_equivalent(const GTSystem& t1, const GTSystem& t2, EquivalenceMode mode,
                        int stepwiseBound) {
    switch (mode) {
        case EquivalenceMode::Iso:
            return rule_sets_match(t1.rules, t2.rules, rules_isomorphic);
        case EquivalenceMode::Normalisation: {
            auto norm = [](const GTSystem& t) {
                std::vector<Rule> out;
                for (const auto& r : t.rules) out.push_back(normalize_rule(r));
                return out;
            };
            return rule_sets_match(norm(t1), norm(t2), rules_isomorphic);
        }
        case EquivalenceMode::Stepwise: {
            for (const auto& g : enumerate_graphs(t1.alphabet, stepwiseBound)) {
                auto s1 = successor_graphs(t1, g);
                auto s2 = successor_graphs(t2, g);
                if (s1.size() != s2.size()) return false;
                for (const auto& a : s1) {
                    bool found = false;
                    for (const auto& b : s2)
                        if (isomorphic(a, b)) { found = true; break; }
                    if (!found) return false;
                }
            }
            return true;
        }
    }
    return false;
}

}  // namespace gt
