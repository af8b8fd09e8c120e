#ifndef GT_IO_HPP
#define GT_IO_HPP

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "gt/graph.hpp"
#include "gt/rewrite.hpp"
#include "gt/grammar.hpp"

namespace gt {

struct ParseError : std::runtime_error {
    ParseError(const std::string& file, int line, const std::string& what)
        : std::runtime_error(file + ":" + std::to_string(line) + ": " + what),
          file(file), line(line) {}
    std::string file;
    int line;
};

struct NamedGraph {
    std::string name;
    Graph graph;
};

// graph <name> { node <id> [label=<sym>] [root=0|1] ... edge <id> <src> -> <tgt> label=<sym> ... }
NamedGraph parse_graph(const std::string& text, const std::string& filename = "<string>");
NamedGraph load_graph(const std::string& path);
std::string print_graph(const std::string& name, const Graph& g);

// rule <name> { left { ... } interface { ... } right { ... } }
Rule parse_rule(const std::string& text, const std::string& filename = "<string>");
Rule load_rule(const std::string& path);
std::string print_rule(const Rule& r);

// grammar { start=<file> rules=<file>,<file>,... nonterminal-nodes=<syms> nonterminal-edges=<syms> }
// Relative paths resolve against the manifest's directory.
Grammar load_grammar(const std::string& path);

}  // namespace gt

#endif
