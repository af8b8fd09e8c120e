#ifndef GT_CONFLUENCE_HPP
#define GT_CONFLUENCE_HPP

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "gt/rewrite.hpp"

namespace gt {

/// Designated good-input set D together with a computable membership test
/// for its subgraph closure. closureMember must hold on every subgraph of
/// every member of D (the author certifies this; spot-tested in tests).
struct GarbagePredicate {
    std::string name;
    std::function<bool(const Graph&)> member;         // g ∈ D?
    std::function<bool(const Graph&)> closureMember;  // g ∈ closure(D)?
};

enum class Verdict { Yes, No, NoWithinBudget };
std::string to_string(Verdict v);

struct CriticalPair {
    Graph overlap;                 // H = g1(L1) ∪ g2(L2)
    std::size_t ruleIndex1 = 0, ruleIndex2 = 0;
    DerivationStep step1, step2;   // both from overlap
    std::set<Id> persistent;       // overlap nodes preserved by both steps
    Verdict joinable = Verdict::NoWithinBudget;
    Verdict stronglyJoinable = Verdict::NoWithinBudget;
    bool garbage = false;          // overlap outside closure(D) (set by filters)
};

bool parallelly_independent(const DerivationStep& s1, const DerivationStep& s2);
bool sequentially_independent(const DerivationStep& s1, const DerivationStep& s2);

/// Complete enumeration of critical pairs up to isomorphism, deterministic
/// order. Pairs of distinct rules are reported once ((i,j) with i <= j).
std::vector<CriticalPair> critical_pairs(const GTSystem& t);

/// Does a parallelly dependent pair of steps on a common host factor through
/// one of the enumerated critical pairs? True iff some pair's overlap embeds
/// into the host commuting with both matches (in either orientation).
bool factors_through(const GTSystem& t, const DerivationStep& s1, const DerivationStep& s2,
                     const std::vector<CriticalPair>& pairs);

/// Track morphisms as partial node maps.
const std::map<Id, Id>& track(const DerivationStep& step);
std::map<Id, Id> track_seq(const std::vector<DerivationStep>& steps);

Verdict joinable(CriticalPair& p, const GTSystem& t, long long budgetPerLeg = 200);
Verdict strongly_joinable(CriticalPair& p, const GTSystem& t, long long budgetPerLeg = 200);

/// critical_pairs filtered by closureMember on the overlap; dropped pairs
/// are garbage. Also returned pairs have `garbage == false`.
std::vector<CriticalPair> non_garbage_pairs(const GTSystem& t, const GarbagePredicate& d);

struct SeparationReport {
    int trials = 0;
    std::vector<std::pair<Graph, Graph>> counterexamples;  // (G in D, successor not in D)
    bool ok() const { return counterexamples.empty(); }
};

/// Statistical falsifier for weak garbage separation: samples members of D
/// and checks every successor stays in D.
SeparationReport check_weak_garbage_separation(const GTSystem& t, const GarbagePredicate& d,
                                               const std::function<Graph(std::mt19937&)>& sampler,
                                               int trials, unsigned seed = 0);

struct PairRecord {
    CriticalPair pair;
    bool nonGarbage = false;
};

struct ConfluenceReport {
    std::vector<PairRecord> pairs;
    int totalPairs = 0;
    int nonGarbagePairs = 0;
    int stronglyJoinablePairs = 0;   // among non-garbage
    int joinablePairs = 0;           // among non-garbage
    bool allSearchesExhaustive = true;  // every verdict definitive within budget
    std::string conclusion;
    std::vector<std::string> justification;
};

/// Runs non-garbage critical pair analysis and emits the strongest sound
/// conclusion: strong joinability of all non-garbage pairs gives local
/// confluence modulo garbage; combined with termination and weak-separation
/// evidence (caller-provided flags) confluence modulo garbage.
ConfluenceReport confluence_mod_garbage_report(const GTSystem& t, const GarbagePredicate& d,
                                               long long budgetPerLeg = 200,
                                               bool terminationEvidence = false,
                                               bool separationEvidence = false);

// Built-in predicates.
GarbagePredicate all_graphs_predicate();
GarbagePredicate trees_predicate();          // D = trees; closure = forests
GarbagePredicate acyclic_predicate();
GarbagePredicate t_cycle_predicate();        // every directed cycle has a t-edge
GarbagePredicate encoded_input_tree_predicate();  // rooted tree encoding, markers R/N/M

/// EFD flow-diagram grammar (the same rules ship as data files under
/// data/efd; the engine treats those as ordinary input).
GTSystem efd_system();          // generating direction
GTSystem efd_inverse_system();  // reduction direction
Graph efd_start_graph();

}  // namespace gt

#endif
