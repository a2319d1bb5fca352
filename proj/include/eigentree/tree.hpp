#pragma once

#include <string>
#include <vector>

#include "eigentree/ext_weight.hpp"

namespace eigentree {

constexpr int kInternalLabel = -1;

// Node of a rooted tree stored in a flat vector. `weight` is the weight of
// the edge to the parent; it is meaningful only on internal non-root nodes
// (terminal edges have no stored weight).
struct TreeNode {
  int parent = -1;
  std::vector<int> children;
  int label = kInternalLabel;  // leaf label; kInternalLabel on internal nodes
  ExtWeight weight{};
};

// Rooted tree with labeled leaves and weighted internal edges. Child order
// is the storage order; MetricTree semantics ignore it (isomorphic() and
// canonical_encoding() sort children), the planar wrapper below keeps it.
//
// Leaf labels are integers. Ordinary trees use {1..n}; when the root is
// treated as a zeroth mark its label (root_label, default 0) joins the leaf
// labels to form a permutation of {0..n}. Negative labels are reserved for
// the fresh marks created by degeneration().
class MetricTree {
 public:
  MetricTree() = default;

  // --- construction -------------------------------------------------------
  int add_root(int root_label = 0);
  int add_leaf(int parent, int label);
  int add_internal(int parent, ExtWeight weight);
  // Corolla on labels 1..n.
  static MetricTree corolla(int n);

  // --- access --------------------------------------------------------------
  int root() const { return root_; }
  int root_label() const { return root_label_; }
  void set_root_label(int label) { root_label_ = label; }
  int node_count() const { return static_cast<int>(nodes_.size()); }
  const TreeNode& node(int v) const { return nodes_[v]; }
  TreeNode& node(int v) { return nodes_[v]; }
  bool is_leaf(int v) const { return nodes_[v].children.empty(); }
  bool is_root(int v) const { return v == root_; }

  int leaf_count() const;
  // Leaves in depth-first (planar) order.
  std::vector<int> leaves_in_order() const;
  std::vector<int> leaf_labels_in_order() const;
  // Internal non-root nodes in preorder; each is the lower endpoint of one
  // internal edge, which is how edges are identified throughout.
  std::vector<int> internal_edges() const;
  ExtWeight edge_weight(int lower_node) const { return nodes_[lower_node].weight; }
  void set_edge_weight(int lower_node, ExtWeight w) { nodes_[lower_node].weight = w; }

  bool is_binary() const;  // every internal node (root included) has 2 children

  // Structural sanity: connectedness by construction, label bijectivity,
  // degree bounds (root >= 2 children, other internal nodes >= 2 children),
  // nonnegative weights. Throws ValidationError.
  void validate() const;

  // Order-insensitive canonical encoding; two trees are label- and
  // weight-preserving isomorphic iff their encodings are equal. Weight
  // handling: Exact compares bit patterns, Ignore drops weights (pure
  // topology), ContractZeros contracts zero-weight edges first.
  enum class WeightMode { Exact, Ignore, ContractZeros };
  std::string canonical_encoding(WeightMode mode = WeightMode::Exact) const;

  // Order-sensitive encoding of the planar structure (used as hash key for
  // planar objects; includes labels and the infinite/finite status plus bit
  // pattern of each weight).
  std::string planar_encoding() const;

  // Copy with zero-weight internal edges contracted.
  MetricTree contract_zero_edges() const;

 private:
  std::vector<TreeNode> nodes_;
  int root_ = -1;
  int root_label_ = 0;
};

// Planar rooted tree: same data, but child order is meaningful and the root
// counts as a zeroth mark. Reading marks clockwise gives the labeling
// (root_label, leaf labels in depth-first order).
struct PlanarMetricTree {
  MetricTree underlying;

  int leaf_count() const { return underlying.leaf_count(); }
  // Labeling sigma on marks 0..n: position 0 is the root mark.
  std::vector<int> mark_labels() const;
  std::string planar_encoding() const { return underlying.planar_encoding(); }

  friend bool operator==(const PlanarMetricTree& a, const PlanarMetricTree& b) {
    return a.underlying.planar_encoding() == b.underlying.planar_encoding();
  }
};

}  // namespace eigentree
