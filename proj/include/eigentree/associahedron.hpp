#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eigentree/rng.hpp"
#include "eigentree/tree.hpp"

namespace eigentree {
namespace assoc {

// C_{n-1}, the number of planar binary trees with n leaves.
std::int64_t catalan(int n);
// Exact double factorial (2n-3)!! * 2^{n-1} identity partner lives in tests.

// Vertices of K_n: all planar binary trees, leaves 1..n in planar order.
std::vector<PlanarMetricTree> vertices(int n);  // 2 <= n <= 10

// Face of K_n as a proper laminar family of intervals of [1..n].
struct Bracketing {
  int n = 0;
  std::vector<std::pair<int, int>> brackets;  // sorted; 2 <= len <= n-1
  int dim() const { return n - 2 - static_cast<int>(brackets.size()); }
  void validate() const;  // proper intervals, laminar
  friend bool operator==(const Bracketing& a, const Bracketing& b) {
    return a.n == b.n && a.brackets == b.brackets;
  }
  friend bool operator<(const Bracketing& a, const Bracketing& b) {
    return a.brackets < b.brackets;
  }
};

Bracketing bracketing_of_tree(const PlanarMetricTree& tree);
PlanarMetricTree tree_of_bracketing(const Bracketing& b, ExtWeight edge_weight);

// Face poset of K_n ordered by reverse bracket inclusion (adding brackets
// moves down). Faces are grouped by dimension; hasse lists cover pairs
// (smaller face index, larger face index) as indices into `faces`.
struct FacePoset {
  int n = 0;
  std::vector<Bracketing> faces;                 // sorted by (codim, brackets)
  std::vector<std::vector<int>> faces_by_dim;    // [dim] -> face indices
  std::vector<std::pair<int, int>> hasse;
  std::vector<std::int64_t> f_vector() const;
};

FacePoset face_poset(int n);  // 2 <= n <= 7

// Boardman-Vogt cube chart: one cube [0, inf]^{n-2} per planar binary tree,
// one coordinate per internal edge (in internal_edges() order).
struct CubeChart {
  PlanarMetricTree topology;
  std::vector<double> coords;  // weights in [0, inf]
};

// Charts of K_n with gluing data and a consistent orientation. Adjacent
// charts share the face where a contracted edge's coordinate is 0; walls are
// matched by the leaf arcs of the surviving edges. `orientation[c]` is the
// sign of chart c's coordinate frame against the global orientation fixed
// by chart 0.
struct CubeDecomposition {
  int n = 0;
  std::vector<PlanarMetricTree> charts;
  struct Gluing {
    int chart_a, edge_a;  // edge indices into internal_edges() order
    int chart_b, edge_b;
  };
  std::vector<Gluing> gluings;
  std::vector<int> orientation;
};

CubeDecomposition cube_decomposition(int n);  // 2 <= n <= 7

// Aff+-normalized configuration: nondecreasing, first point 0.
struct Configuration {
  std::vector<double> points;
  void validate() const;
};

// The configuration-space chart of K_n: v_1 = 0 and
// v_{k+1} = v_k + exp(-W_k), where W_k is the total weight of the internal
// edges shared by the root paths of leaves k and k+1. Infinite weights
// produce exact coincidences. Requires leaves labeled 1..n in planar order.
Configuration embed_config(const PlanarMetricTree& tree);
// The gap exponents W_1..W_{n-1} themselves.
std::vector<double> gap_exponents(const PlanarMetricTree& tree);

// Dihedral action D_{n+1} on planar trees: word over {'r' (rotation),
// 'e' (reflection)}, applied left to right.
PlanarMetricTree dihedral_act(const std::string& word, const PlanarMetricTree& tree);

// The boundary-collapse fold of K_n onto [0,1]^{n-2}. Charts are rescaled
// to [0,1]^{n-2} via u = 1 - exp(-w); 2^{n-2} charts map straight (flipped
// in the first coordinate where needed to preserve orientation) and the
// remaining charts fold flat through a degree-zero zigzag in the first
// coordinate. The boundary of K_n lands in the boundary of the target cube,
// so the map descends to K_n/dK_n -> I^{n-2}/dI^{n-2}.
struct FoldMap {
  CubeDecomposition decomp;
  std::vector<int> role;  // +1/-1: straight chart with that Jacobian sign; 0: zigzag

  int n() const { return decomp.n; }
  // Image of a point given in [0,1] chart coordinates.
  std::vector<double> apply(int chart, const std::vector<double>& u) const;
  // Signed preimage count of a generic target point.
  int signed_preimages(const std::vector<double>& target) const;
};

FoldMap collapse_fold_map(int n);  // 3 <= n <= 5

// Absolute degree of K_n/dK_n -> S^{n-2}: counts signed preimages of
// `samples` generic points; throws NumericError if any two disagree.
int folding_degree(int n, int samples, std::uint64_t seed);

}  // namespace assoc
}  // namespace eigentree
