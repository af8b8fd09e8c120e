#include "gt/encoding.hpp"

#include <algorithm>
#include <stdexcept>

#include "gt/grammar.hpp"

namespace gt {

Id loop_band_base(const Graph& g) {
    Id base = kLoopBand;
    for (Id e : g.edgeIds()) base = std::max(base, e + 1);
    return base;
}

LabelAlphabet encode_alphabet(const LabelAlphabet& a) {
    LabelAlphabet out;
    out.nodeLabels = {kSentinel};
    for (const auto& s : a.nodeLabels) {
        if (a.edgeLabels.count(s))
            throw std::invalid_argument("encoding requires disjoint node/edge alphabets");
        out.edgeLabels.insert(s);
    }
    for (const auto& s : a.edgeLabels) out.edgeLabels.insert(s);
    if (out.edgeLabels.count(kSentinel) || a.nodeLabels.count(kSentinel))
        throw std::invalid_argument("sentinel label already in use");
    return out;
}

Graph encode_graph(const Graph& g) { return encode_graph_with_band(g, loop_band_base(g)); }

Graph encode_graph_with_band(const Graph& g, Id band) {
    Graph out;
    for (Id v : g.nodeIds()) {
        if (g.node(v).rooted)
            throw std::invalid_argument("encode_graph: rootedness must be undefined (node " +
                                        std::to_string(v) + ")");
        out.addNodeWithId(v, kSentinel);
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        out.addEdgeWithId(e, ed.src, ed.tgt, ed.label);
    }
    for (Id v : g.nodeIds())
        if (g.node(v).label) out.addEdgeWithId(band + v, v, v, *g.node(v).label);
    return out;
}

Morphism encode_morphism(const Morphism& m, const Graph& encSrc, const Graph& encDst) {
    Morphism out;
    out.src = &encSrc;
    out.dst = &encDst;
    out.nmap = m.nmap;
    out.emap = m.emap;
    auto findLoop = [](const Graph& enc, Id v, const Symbol& label) -> Id {
        for (Id e : enc.outEdges(v)) {
            const Edge& ed = enc.edge(e);
            if (ed.tgt == v && ed.label == label) return e;
        }
        throw std::logic_error("missing label loop in encoded graph");
    };
    for (Id v : m.src->nodeIds()) {
        const auto& label = m.src->node(v).label;
        if (!label) continue;
        out.emap[findLoop(encSrc, v, *label)] = findLoop(encDst, m.nmap.at(v), *label);
    }
    return out;
}

std::optional<Graph> decode_graph(const Graph& g, const LabelAlphabet& original) {
    Graph out;
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        if (!n.label || *n.label != kSentinel || n.rooted) return std::nullopt;
        out.addNodeWithId(v);
    }
    for (Id v : g.nodeIds()) {
        int labelLoops = 0;
        for (Id e : g.outEdges(v)) {
            const Edge& ed = g.edge(e);
            if (original.nodeLabels.count(ed.label)) {
                if (ed.tgt != v) return std::nullopt;  // node label on a non-loop
                if (++labelLoops > 1) return std::nullopt;
                out.setNodeLabel(v, ed.label);
            }
        }
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        if (original.nodeLabels.count(ed.label)) {
            if (ed.src != ed.tgt) return std::nullopt;
            continue;  // consumed as a node label
        }
        if (!original.edgeLabels.count(ed.label)) return std::nullopt;
        out.addEdgeWithId(e, ed.src, ed.tgt, ed.label);
    }
    return out;
}

Rule encode_rule(const Rule& r) {
    Id band = std::max(loop_band_base(r.lhs), loop_band_base(r.rhs));
    Rule out;
    out.name = "e(" + r.name + ")";
    out.lhs = encode_graph_with_band(r.lhs, band);
    out.interface = encode_graph_with_band(r.interface, band);
    out.rhs = encode_graph_with_band(r.rhs, band);
    auto issues = validate_rule(out, false);
    if (!issues.empty()) throw std::logic_error("encode_rule produced invalid rule: " + issues.front());
    return out;
}

GTSystem encode_system(const GTSystem& t) {
    GTSystem out;
    out.alphabet = encode_alphabet(t.alphabet);
    for (const auto& r : t.rules) out.rules.push_back(encode_rule(r));
    return out;
}

RootMarkerNaming default_rooted_naming() {
    RootMarkerNaming n;
    n.marker = [](const Symbol& label, bool rooted) {
        return (rooted ? "R:" : "N:") + label;
    };
    n.edgeRename = [](const Symbol& label) { return "E:" + label; };
    return n;
}

RootMarkerNaming tree3_naming() {
    RootMarkerNaming n;
    n.marker = [](const Symbol& label, bool rooted) -> Symbol {
        if (label == "box") return rooted ? "R" : "N";
        if (label == "tri" && !rooted) return "M";
        return rooted ? "R:" + label : "N:" + label;
    };
    n.edgeRename = [](const Symbol& label) -> Symbol {
        return label == "box" ? "tri" : "E:" + label;
    };
    return n;
}

Graph encode_rooted_graph(const Graph& g, const RootMarkerNaming& naming) {
    return encode_rooted_graph_with_band(g, naming, loop_band_base(g));
}

Graph encode_rooted_graph_with_band(const Graph& g, const RootMarkerNaming& naming, Id band) {
    Graph out;
    for (Id v : g.nodeIds()) out.addNodeWithId(v, kSentinel);
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        out.addEdgeWithId(e, ed.src, ed.tgt, naming.edgeRename(ed.label));
    }
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        if (n.label && n.rooted) {
            out.addEdgeWithId(band + v, v, v, naming.marker(*n.label, *n.rooted));
        } else if (n.label || n.rooted) {
            throw std::invalid_argument(
                "rooted encoding requires label and rootedness to be defined together (node " +
                std::to_string(v) + ")");
        }
    }
    return out;
}

Rule encode_rooted_rule(const Rule& r, const RootMarkerNaming& naming) {
    Id band = std::max(loop_band_base(r.lhs), loop_band_base(r.rhs));
    Rule out;
    out.name = "e(" + r.name + ")";
    out.lhs = encode_rooted_graph_with_band(r.lhs, naming, band);
    out.interface = encode_rooted_graph_with_band(r.interface, naming, band);
    out.rhs = encode_rooted_graph_with_band(r.rhs, naming, band);
    auto issues = validate_rule(out, false);
    if (!issues.empty())
        throw std::logic_error("encode_rooted_rule produced invalid rule: " + issues.front());
    return out;
}

GTSystem encode_rooted_system(const GTSystem& t) {
    return encode_rooted_system(t, default_rooted_naming());
}

GTSystem encode_rooted_system(const GTSystem& t, const RootMarkerNaming& naming) {
    GTSystem out;
    // encoded alphabet: sentinel node label; markers for every used
    // (label, rootedness) combination plus renamed edge labels.
    out.alphabet.nodeLabels = {kSentinel};
    for (const auto& l : t.alphabet.nodeLabels) {
        for (bool b : {false, true}) {
            Symbol m = naming.marker(l, b);
            if (t.alphabet.nodeLabels.count(m) || t.alphabet.edgeLabels.count(m))
                throw std::invalid_argument("marker label '" + m + "' already used by the system");
            out.alphabet.edgeLabels.insert(m);
        }
    }
    for (const auto& l : t.alphabet.edgeLabels) out.alphabet.edgeLabels.insert(naming.edgeRename(l));
    for (const auto& r : t.rules) out.rules.push_back(encode_rooted_rule(r, naming));
    return out;
}

GTSystem encoded_tree_recognition_system() {
    GTSystem enc = encode_rooted_system(tree_recognition_system(), tree3_naming());
    for (std::size_t i = 0; i < enc.rules.size(); ++i) enc.rules[i].name = "e" + std::to_string(i);
    // prune unreachable marker names from the alphabet for a tidy report
    enc.alphabet.edgeLabels = {"R", "N", "M", "tri"};
    return enc;
}

std::optional<Graph> decode_rooted_graph(const Graph& g, const LabelAlphabet& original,
                                         const RootMarkerNaming& naming) {
    std::map<Symbol, std::pair<Symbol, bool>> markerToState;
    for (const auto& l : original.nodeLabels)
        for (bool b : {false, true}) markerToState[naming.marker(l, b)] = {l, b};
    std::map<Symbol, Symbol> edgeBack;
    for (const auto& l : original.edgeLabels) edgeBack[naming.edgeRename(l)] = l;

    Graph out;
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        if (!n.label || *n.label != kSentinel || n.rooted) return std::nullopt;
        out.addNodeWithId(v);
    }
    for (Id v : g.nodeIds()) {
        int markers = 0;
        for (Id e : g.outEdges(v)) {
            const Edge& ed = g.edge(e);
            auto it = markerToState.find(ed.label);
            if (it == markerToState.end()) continue;
            if (ed.tgt != v) return std::nullopt;
            if (++markers > 1) return std::nullopt;
            out.setNodeLabel(v, it->second.first);
            out.setRooted(v, it->second.second);
        }
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        if (markerToState.count(ed.label)) continue;
        auto it = edgeBack.find(ed.label);
        if (it == edgeBack.end()) return std::nullopt;
        out.addEdgeWithId(e, ed.src, ed.tgt, it->second);
    }
    return out;
}

}  // namespace gt
