#ifndef GT_GRAMMAR_HPP
#define GT_GRAMMAR_HPP

#include <optional>
#include <string>
#include <vector>

#include "gt/rewrite.hpp"

namespace gt {

struct Grammar {
    GTSystem system;
    Graph start;
};

bool is_terminally_labelled(const Grammar& g, const Graph& graph);

enum class MemberVerdict { Yes, No, BudgetExceeded };

/// Language membership: g ∈ L(grammar) iff g reduces to the start graph under
/// the inverse rules and is terminally labelled. The search is exhaustive with
/// an iso-visited set; `budget` bounds the number of direct derivations.
MemberVerdict member(const Grammar& grammar, const Graph& g, long long budget);

/// The tree grammar: alphabet ({box},{box}), no non-terminals, start = single
/// unrooted box node, one rule adding a leaf under an existing node.
Grammar tree_grammar();

/// The rooted tree-recognition system over ({box,tri},{box}) with rules
/// r0 (prune leaf-root below a box parent, moving the root up),
/// r1 (prune leaf-root below a tri parent, relabelling it box), and
/// r2 (push the root down one edge, relabelling the parent box -> tri).
GTSystem tree_recognition_system();

/// An input graph: all node and edge labels box, exactly one root.
bool is_input_graph(const Graph& g);

/// Relabels every node/edge to box and plants a root at the lowest-id node
/// (all other nodes become non-roots).
Graph make_input_graph(const Graph& g);

struct GreedyStep {
    std::string ruleName;
    Graph result;  // snapshot after the step (only kept when tracing)
};

struct GreedyRunStats {
    long long steps = 0;
};

/// Greedy derivation with the tree-recognition system: repeatedly applies the
/// first applicable match (rule order r0, r1, r2; match order as returned by
/// the fast matcher) until no rule applies. Precondition: is_input_graph(g).
/// Mutates a working copy in place; linear time on bounded-degree inputs.
bool recognize_tree(const Graph& g, GreedyRunStats* stats = nullptr);

/// Same greedy strategy, recording every intermediate graph (for traces).
std::vector<GreedyStep> derive_greedy(const GTSystem& t, const Graph& g, long long maxSteps,
                                      unsigned strategySeed = 0);

}  // namespace gt

#endif
