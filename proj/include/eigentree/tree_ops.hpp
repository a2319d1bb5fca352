#pragma once

#include <utility>
#include <vector>

#include "eigentree/tree.hpp"

namespace eigentree {

// --- abstract (order-insensitive) operations --------------------------------

// Break every infinite-weight internal edge. The root component comes
// first, then daughter components in preorder of their broken edges. Broken
// edge j (1-based, preorder) leaves a fresh leaf labeled -j in its parent
// component; the daughter component is rooted at a vertex with root label -j.
std::vector<MetricTree> degeneration(const MetricTree& tree);

// Label- and weight-preserving isomorphism via canonical encodings.
// Requires equal leaf counts.
bool isomorphic(const MetricTree& a, const MetricTree& b);

// --- planar operations -------------------------------------------------------

// Mirror the planar embedding of the subtree hanging below `edge` (an
// internal edge given by its lower node id); labels travel with their
// leaves. Returns the new tree and the permutation of mark positions 0..n
// (old position -> new position); it reverses the contiguous arc of leaf
// positions spanned by the subtree and is an involution.
std::pair<PlanarMetricTree, std::vector<int>> reverse_at_edge(const PlanarMetricTree& tree,
                                                              int edge);

// One-step clockwise rotation of the n+1 marks: the first leaf mark becomes
// the root mark and the old root mark becomes the last leaf. Applying it
// n+1 times is the identity.
PlanarMetricTree rotate_root(const PlanarMetricTree& tree);

// Global mirror (reverse child order at every vertex); involution fixing
// the root mark.
PlanarMetricTree reflect(const PlanarMetricTree& tree);

// Drop the planar structure.
MetricTree forget_planarity(const PlanarMetricTree& tree);

// --- enumerations (canonical order, deterministic) ---------------------------

// All (2n-3)!! rooted binary topologies on leaves {1..n}, weights 0,
// sorted by canonical encoding.
std::vector<MetricTree> enumerate_binary_topologies(int n);

// All C_{n-1} planar binary trees with leaves 1..n in planar order,
// in recursive-split order.
std::vector<PlanarMetricTree> planar_binary_trees(int n);

// All planar trees with leaves 1..n in planar order (the faces of the
// associahedron; every internal edge weight is set to `edge_weight`).
std::vector<PlanarMetricTree> planar_trees(int n, ExtWeight edge_weight = ExtWeight{});

// --- structure helpers --------------------------------------------------------

// Contract one internal edge (planar splice of the children into the
// parent). `edge_map` receives, for every other internal edge of `tree`
// (keyed by lower node id), the lower node id of the matching edge in the
// result.
PlanarMetricTree contract_edge(const PlanarMetricTree& tree, int edge,
                               std::vector<std::pair<int, int>>* edge_map = nullptr);

// Contiguous arc [first..last] of leaf mark positions (1-based) spanned by
// the subtree below an internal edge.
std::pair<int, int> edge_leaf_arc(const PlanarMetricTree& tree, int edge);

// Internal edge whose subtree spans exactly the given leaf-position arc,
// or -1 if none.
int edge_with_leaf_arc(const PlanarMetricTree& tree, std::pair<int, int> arc);

// Leaf-label set (as sorted vector) below each internal edge: the clades of
// a rooted tree, in internal_edges() order.
std::vector<std::vector<int>> clades(const MetricTree& tree);

}  // namespace eigentree
