#ifndef GT_ENCODING_HPP
#define GT_ENCODING_HPP

#include <functional>
#include <optional>
#include <string>

#include "gt/rewrite.hpp"

namespace gt {

/// Sentinel node label used by all encodings.
inline const Symbol kSentinel = "s";

/// First edge id of the reserved band used for label-loops; the loop for
/// node v gets edge id kLoopBand + v (shifted up if the graph already uses
/// ids that high, see loop_band_base).
inline constexpr Id kLoopBand = 1000000;

Id loop_band_base(const Graph& g);

LabelAlphabet encode_alphabet(const LabelAlphabet& a);

/// Encoding of a partially labelled, unrooted graph: every labelled node
/// gains a self-loop carrying its former node label; all nodes are
/// relabelled to the sentinel. Rootedness must be undefined everywhere.
Graph encode_graph(const Graph& g);
Graph encode_graph_with_band(const Graph& g, Id band);

Morphism encode_morphism(const Morphism& m, const Graph& encSrc, const Graph& encDst);

/// Partial inverses. decode_graph needs the original alphabet to recognise
/// which loop labels are node labels; returns nothing if g is outside the
/// encoding's range.
std::optional<Graph> decode_graph(const Graph& g, const LabelAlphabet& original);

Rule encode_rule(const Rule& r);
GTSystem encode_system(const GTSystem& t);

/// Rooted encoding: marker loops carry the combined (label, rootedness)
/// state of a node. Marker names come from `RootMarkerNaming`; the default
/// is systematic ("R:<label>" / "N:<label>"), and `tree3_naming()` gives the
/// compact names used by the encoded tree-recognition system (R, N, M with
/// the flow edge renamed to tri). Interface nodes with undefined label and
/// rootedness become bare sentinel nodes.
struct RootMarkerNaming {
    // marker for (label, rooted); must be injective over used combinations
    std::function<Symbol(const Symbol&, bool)> marker;
    // rename applied to original edge labels
    std::function<Symbol(const Symbol&)> edgeRename;
};

RootMarkerNaming default_rooted_naming();
RootMarkerNaming tree3_naming();

Graph encode_rooted_graph(const Graph& g, const RootMarkerNaming& naming);
Graph encode_rooted_graph_with_band(const Graph& g, const RootMarkerNaming& naming, Id band);
Rule encode_rooted_rule(const Rule& r, const RootMarkerNaming& naming);
GTSystem encode_rooted_system(const GTSystem& t);
GTSystem encode_rooted_system(const GTSystem& t, const RootMarkerNaming& naming);

/// The encoded tree-recognition rules e0, e1, e2 (markers R, N, M; flow
/// edges relabelled tri), i.e. encode_rooted_system(tree_recognition_system())
/// under tree3_naming().
GTSystem encoded_tree_recognition_system();

std::optional<Graph> decode_rooted_graph(const Graph& g, const LabelAlphabet& original,
                                         const RootMarkerNaming& naming);

}  // namespace gt

#endif
