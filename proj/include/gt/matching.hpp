#ifndef GT_MATCHING_HPP
#define GT_MATCHING_HPP

#include <optional>
#include <string>
#include <vector>

#include "gt/graph.hpp"

namespace gt {

struct Rule;  // rewrite.hpp

struct Match {
    Morphism morphism;  // L -> host, injective
    std::string ruleId;
};

/// All injective morphisms L -> host, duplicate-free, deterministic order.
std::vector<Match> find_matches(const Graph& l, const Graph& host);

/// Root-anchored matching. Requires every connected component of L to
/// contain a rooted node; anchor candidates are drawn from the host's root
/// set only. Returns the same set as find_matches for such L.
/// Throws std::invalid_argument if L is not fast.
std::vector<Match> find_matches_fast(const Graph& l, const Graph& host);

bool is_fast_lhs(const Graph& l);

/// Dangling condition: no host edge outside the match image is incident to
/// the image of a node deleted by the rule (L\K).
bool satisfies_dangling(const Rule& rule, const Match& match, const Graph& host);

/// Instrumentation: number of partial-assignment extensions explored by the
/// most recent find_matches/find_matches_fast call on this thread.
long long last_match_work();

}  // namespace gt

#endif
