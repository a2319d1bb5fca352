#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "eigentree/graph_cert.hpp"
#include "eigentree/tree.hpp"

namespace eigentree {
namespace treespace {

// Point of BHV_n: a binary rooted topology on leaves {1..n} whose internal
// edge weights are the coordinates. Zero weights put the point on shared
// orthant faces; equality compares after contracting them.
struct BhvPoint {
  MetricTree tree;

  bool is_cone_point() const;  // all weights zero (corolla class)
  static BhvPoint cone_point(int n);
  std::vector<double> weights() const;  // in internal_edges() order

  friend bool operator==(const BhvPoint& a, const BhvPoint& b) {
    return a.tree.canonical_encoding(MetricTree::WeightMode::ContractZeros) ==
           b.tree.canonical_encoding(MetricTree::WeightMode::ContractZeros);
  }
};

// Perfect matching on labels {1..2n-2}: n-1 unordered pairs, normalized
// (each pair sorted, pairs sorted).
struct Matching {
  std::vector<std::pair<int, int>> pairs;

  void normalize();
  friend bool operator==(const Matching& a, const Matching& b) { return a.pairs == b.pairs; }
  friend bool operator<(const Matching& a, const Matching& b) { return a.pairs < b.pairs; }
};

// (2n-3)!! — the number of binary rooted topologies on n labeled leaves.
std::int64_t count_binary_topologies(int n);

// Matching of a binary tree: repeatedly take the matched-ready sibling pair
// containing the smallest label, record it, and replace it by its parent
// carrying the next unused label (n+1, n+2, ...). The root never receives
// a recorded label.
Matching dh_matching(const MetricTree& tree);

// Inverse: greedy reconstruction. Any perfect matching on {1..2n-2}
// decodes; malformed input throws ValidationError naming the offending pair.
MetricTree dh_tree(const Matching& m, int n);

// BHV_n as a cone over the fully-grown trees: split a point into its
// maximal weight and the rescaled (max weight 1) tree. The corolla class
// maps to (0, cone point).
std::pair<double, BhvPoint> smash_split(const BhvPoint& p);
BhvPoint smash_join(double scale, const BhvPoint& grown);

// ---- T_n and the suspension --------------------------------------------------

// Sum-normalized T_n: the simplicial complex whose vertices are clades
// (proper subsets of {1..n} of size >= 2) and whose k-simplices are laminar
// families of k+1 clades. Top simplices correspond to binary topologies.
struct TnComplex {
  int n = 0;
  std::vector<std::uint32_t> vertex_clades;           // bitmask over bits 1..n
  std::vector<std::vector<std::vector<int>>> simplices;  // [dim][cell] = vertex ids
  SmallGraph one_skeleton() const;
  std::vector<std::int64_t> cell_counts() const;
  int euler_characteristic() const;
};

TnComplex tn_skeleton(int n);  // 3 <= n <= 6

// Cell of the unreduced suspension S T_n: two cone points, the equator
// cells of T_n, and one cone cell per (sign, T_n cell).
struct SuspensionCell {
  enum class Kind { ConeNeg, ConePos, Equator, Cone };
  Kind kind = Kind::ConeNeg;
  int sign = 0;                              // -1 / +1 for Cone cells
  std::vector<std::uint32_t> tn_cell;        // sorted clade bitmasks (empty for cone points)

  std::string key() const;
  friend bool operator==(const SuspensionCell& a, const SuspensionCell& b) {
    return a.key() == b.key();
  }
};

// Cell counts by dimension of S T_n: the equator keeps every cell of T_n
// and each k-cell of T_n adds one (k+1)-cell per cone point.
std::vector<std::int64_t> suspension_cells(int n);  // 3 <= n <= 6

// All top-dimensional suspension cells (sign x binary topology), in
// canonical order.
std::vector<SuspensionCell> suspension_top_cells(int n);

}  // namespace treespace
}  // namespace eigentree
