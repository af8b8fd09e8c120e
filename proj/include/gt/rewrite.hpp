#ifndef GT_REWRITE_HPP
#define GT_REWRITE_HPP

#include <optional>
#include <string>
#include <vector>

#include "gt/graph.hpp"
#include "gt/matching.hpp"

namespace gt {

/// Rule <L <- K -> R>. The interface K is included in both L and R by
/// sharing ids: every K node/edge id exists in L and in R with consistent
/// structure; K may leave labels and rootedness undefined.
struct Rule {
    std::string name;
    Graph lhs;
    Graph interface;
    Graph rhs;

    std::size_t size() const { return std::max(lhs.size(), rhs.size()); }  // |r|
};

/// Checks the inclusion conditions K ⊆ L, K ⊆ R (shared ids, consistent
/// incidence/labels) and that L, R carry labels everywhere they must.
/// Returns human-readable violations; empty means well-formed.
std::vector<std::string> validate_rule(const Rule& r, bool requireTotallyLabelledSides = true);

/// One direct derivation G ⇒_{r,g} H.
struct DerivationStep {
    Rule rule;
    Morphism match;        // L -> G (graphs referenced via stored copies below)
    Graph host;            // G
    Graph intermediate;    // D
    Graph result;          // H
    std::map<Id, Id> comatchNodes;  // R node -> H node
    std::map<Id, Id> comatchEdges;  // R edge -> H edge
    std::map<Id, Id> track;         // partial: G node -> H node (preserved nodes)
};

struct GTSystem {
    LabelAlphabet alphabet;
    std::vector<Rule> rules;
};

/// Applies `rule` at `match` (injective, dangling-satisfying) to `host`.
/// Construction: delete g(L\K); clear labels/rootedness of images of K-nodes
/// where K leaves them undefined; then add R\K disjointly with fresh ids and
/// restore labels/rootedness from R on the cleared nodes.
DerivationStep apply(const Rule& rule, const Morphism& match, const Graph& host);

/// In-place variant used by performance-sensitive derivation loops.
/// Returns the mapping R node -> host node (comatch on nodes).
std::map<Id, Id> apply_in_place(const Rule& rule, const Morphism& match, Graph& host);

Rule invert_rule(const Rule& r);
GTSystem invert_system(const GTSystem& t);
DerivationStep invert_step(const DerivationStep& step);

/// All direct derivations of g under all rules of t, in deterministic order
/// (rule order, then match order). If dedupe, drops steps whose results are
/// isomorphic to an earlier step's result.
std::vector<DerivationStep> successors(const GTSystem& t, const Graph& g, bool dedupe = false);

/// Result graphs of successors, deduplicated up to isomorphism.
std::vector<Graph> successor_graphs(const GTSystem& t, const Graph& g);

struct NormalFormsResult {
    std::vector<Graph> normalForms;  // pairwise non-isomorphic
    bool budgetExceeded = false;
    long long derivationsUsed = 0;
};

/// Exhaustive search for normal forms reachable from g, up to iso, with the
/// budget counted in direct derivations.
NormalFormsResult normal_forms(const GTSystem& t, const Graph& g, long long maxSteps);

struct RuleClass {
    bool fast = false;                // every component of L contains a root
    bool rootNonIncreasing = false;   // |roots(L)| >= |roots(R)|
    bool degreeNonIncreasing = false; // w.r.t. bound N, see below
};

/// degreeNonIncreasing: every node created by R has degree <= n in R, and
/// every interface node has deg_L(v) >= deg_R(v).
RuleClass classify_rule(const Rule& r, int n);

/// Normal form r↓: interface stripped to the bare node set.
Rule normalize_rule(const Rule& r);

bool rules_isomorphic(const Rule& r1, const Rule& r2);

enum class EquivalenceMode { Iso, Normalisation, Stepwise };

/// Stepwise mode compares successor relations on all graphs of total size
/// <= bound over the alphabet; this is a bounded check only.
bool systems_equivalent(const GTSystem& t1, const GTSystem& t2, EquivalenceMode mode,
                        int stepwiseBound = 3);

/// Enumerates representatives of all graphs (up to iso) over the alphabet
/// with |V|+|E| <= bound, including partially labelled/rooted ones.
std::vector<Graph> enumerate_graphs(const LabelAlphabet& alphabet, int bound);

}  // namespace gt

#endif
