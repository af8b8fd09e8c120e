#include "gt/io.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace gt {

namespace {

struct Token {
    std::string text;
    int line;
};

std::vector<Token> tokenize(const std::string& text, const std::string& file) {
    std::vector<Token> toks;
    int line = 1;
    std::string cur;
    auto flush = [&]() {
        if (!cur.empty()) {
            toks.push_back({cur, line});
            cur.clear();
        }
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (c == '#') {
            flush();
            while (i < text.size() && text[i] != '\n') ++i;
            ++line;
            continue;
        }
        if (c == '\n') {
            flush();
            ++line;
            continue;
        }
        if (std::isspace(static_cast<unsigned char>(c))) {
            flush();
            continue;
        }
        if (c == '{' || c == '}') {
            flush();
            toks.push_back({std::string(1, c), line});
            continue;
        }
        cur += c;
    }
    flush();
    (void)file;
    return toks;
}

struct Parser {
    std::vector<Token> toks;
    std::size_t pos = 0;
    std::string file;

    [[noreturn]] void fail(const std::string& msg) {
        int line = pos < toks.size() ? toks[pos].line : (toks.empty() ? 1 : toks.back().line);
        throw ParseError(file, line, msg);
    }
    bool atEnd() const { return pos >= toks.size(); }
    const std::string& peek() {
        if (atEnd()) fail("unexpected end of input");
        return toks[pos].text;
    }
    std::string next() {
        if (atEnd()) fail("unexpected end of input");
        return toks[pos++].text;
    }
    void expect(const std::string& t) {
        std::string got = next();
        if (got != t) fail("expected '" + t + "', got '" + got + "'");
    }
    Id parseId(const std::string& s) {
        if (s.empty() || !std::all_of(s.begin(), s.end(),
                                      [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
            fail("expected a decimal id, got '" + s + "'");
        return std::stoll(s);
    }

    // Parses the body between '{' and '}' of a graph block into g.
    void parseGraphBody(Graph& g) {
        expect("{");
        while (peek() != "}") {
            std::string kw = next();
            if (kw == "node") {
                Id id = parseId(next());
                std::optional<Symbol> label;
                std::optional<bool> rooted;
                while (!atEnd() && peek() != "}" && peek() != "node" && peek() != "edge") {
                    std::string attr = next();
                    auto eq = attr.find('=');
                    if (eq == std::string::npos) fail("expected attr=value, got '" + attr + "'");
                    std::string key = attr.substr(0, eq), val = attr.substr(eq + 1);
                    if (key == "label") label = val;
                    else if (key == "root") {
                        if (val != "0" && val != "1") fail("root must be 0 or 1");
                        rooted = (val == "1");
                    } else fail("unknown node attribute '" + key + "'");
                }
                if (g.hasNode(id)) fail("duplicate node id " + std::to_string(id));
                g.addNodeWithId(id, label, rooted);
            } else if (kw == "edge") {
                Id id = parseId(next());
                Id src = parseId(next());
                expect("->");
                Id tgt = parseId(next());
                std::string attr = next();
                if (attr.rfind("label=", 0) != 0) fail("edge requires label=<sym>");
                if (!g.hasNode(src) || !g.hasNode(tgt))
                    fail("edge " + std::to_string(id) + " references undeclared node");
                if (g.hasEdge(id)) fail("duplicate edge id " + std::to_string(id));
                g.addEdgeWithId(id, src, tgt, attr.substr(6));
            } else {
                fail("expected 'node' or 'edge', got '" + kw + "'");
            }
        }
        expect("}");
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

NamedGraph parse_graph(const std::string& text, const std::string& filename) {
    Parser p{tokenize(text, filename), 0, filename};
    p.expect("graph");
    NamedGraph ng;
    ng.name = p.next();
    p.parseGraphBody(ng.graph);
    if (!p.atEnd()) p.fail("trailing input after graph block");
    return ng;
}

NamedGraph load_graph(const std::string& path) { return parse_graph(read_file(path), path); }

static void print_graph_body(std::ostringstream& os, const Graph& g, const std::string& indent) {
    for (Id v : g.nodeIds()) {
        const Node& n = g.node(v);
        os << indent << "node " << v;
        if (n.label) os << " label=" << *n.label;
        if (n.rooted) os << " root=" << (*n.rooted ? 1 : 0);
        os << "\n";
    }
    for (Id e : g.edgeIds()) {
        const Edge& ed = g.edge(e);
        os << indent << "edge " << e << " " << ed.src << " -> " << ed.tgt << " label=" << ed.label
           << "\n";
    }
}

std::string print_graph(const std::string& name, const Graph& g) {
    std::ostringstream os;
    os << "graph " << name << " {\n";
    print_graph_body(os, g, "  ");
    os << "}\n";
    return os.str();
}

Rule parse_rule(const std::string& text, const std::string& filename) {
    Parser p{tokenize(text, filename), 0, filename};
    p.expect("rule");
    Rule r;
    r.name = p.next();
    p.expect("{");
    while (p.peek() != "}") {
        std::string section = p.next();
        Graph* target = nullptr;
        if (section == "left") target = &r.lhs;
        else if (section == "interface") target = &r.interface;
        else if (section == "right") target = &r.rhs;
        else p.fail("expected left/interface/right, got '" + section + "'");
        p.parseGraphBody(*target);
    }
    p.expect("}");
    if (!p.atEnd()) p.fail("trailing input after rule block");
    auto issues = validate_rule(r, false);
    if (!issues.empty()) throw ParseError(filename, 1, "invalid rule: " + issues.front());
    return r;
}

Rule load_rule(const std::string& path) { return parse_rule(read_file(path), path); }

std::string print_rule(const Rule& r) {
    std::ostringstream os;
    os << "rule " << r.name << " {\n";
    for (const auto& [name, g] :
         std::initializer_list<std::pair<const char*, const Graph*>>{
             {"left", &r.lhs}, {"interface", &r.interface}, {"right", &r.rhs}}) {
        os << "  " << name << " {\n";
        print_graph_body(os, *g, "    ");
        os << "  }\n";
    }
    os << "}\n";
    return os.str();
}

Grammar load_grammar(const std::string& path) {
    std::string text = read_file(path);
    Parser p{tokenize(text, path), 0, path};
    p.expect("grammar");
    p.expect("{");
    std::filesystem::path dir = std::filesystem::path(path).parent_path();
    auto resolve = [&](const std::string& rel) {
        std::filesystem::path q(rel);
        return q.is_absolute() ? q.string() : (dir / q).string();
    };
    Grammar g;
    bool haveStart = false;
    while (p.peek() != "}") {
        std::string attr = p.next();
        auto eq = attr.find('=');
        if (eq == std::string::npos) p.fail("expected key=value, got '" + attr + "'");
        std::string key = attr.substr(0, eq), val = attr.substr(eq + 1);
        auto splitCommas = [](const std::string& s) {
            std::vector<std::string> parts;
            std::stringstream ss(s);
            std::string item;
            while (std::getline(ss, item, ','))
                if (!item.empty()) parts.push_back(item);
            return parts;
        };
        if (key == "start") {
            g.start = load_graph(resolve(val)).graph;
            haveStart = true;
        } else if (key == "rules") {
            for (const auto& f : splitCommas(val)) g.system.rules.push_back(load_rule(resolve(f)));
        } else if (key == "nonterminal-nodes") {
            for (const auto& s : splitCommas(val)) g.system.alphabet.nonTerminalNodeLabels.insert(s);
        } else if (key == "nonterminal-edges") {
            for (const auto& s : splitCommas(val)) g.system.alphabet.nonTerminalEdgeLabels.insert(s);
        } else {
            p.fail("unknown grammar attribute '" + key + "'");
        }
    }
    p.expect("}");
    if (!haveStart) throw ParseError(path, 1, "grammar manifest missing start=<file>");
    // derive the alphabet from the rules and start graph
    auto absorb = [&](const Graph& gr) {
        for (Id v : gr.nodeIds())
            if (gr.node(v).label) g.system.alphabet.nodeLabels.insert(*gr.node(v).label);
        for (Id e : gr.edgeIds()) g.system.alphabet.edgeLabels.insert(gr.edge(e).label);
    };
    absorb(g.start);
    for (const auto& r : g.system.rules) {
        absorb(r.lhs);
        absorb(r.rhs);
    }
    for (const auto& s : g.system.alphabet.nonTerminalNodeLabels) g.system.alphabet.nodeLabels.insert(s);
    for (const auto& s : g.system.alphabet.nonTerminalEdgeLabels) g.system.alphabet.edgeLabels.insert(s);
    return g;
}

}  // namespace gt
