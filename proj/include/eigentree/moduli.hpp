#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "eigentree/tree.hpp"
#include "eigentree/treespace.hpp"

namespace eigentree {
namespace moduli {

// Generator sets for the three quotients of K_n x S_{n+1}:
//   Kapranov    - twists at infinite internal edges only
//   Orientation - twists + root rotation (no reflections)
//   Full        - twists + rotation + root reflection
enum class CoverKind { Kapranov, Orientation, Full };

std::string cover_name(CoverKind k);
CoverKind cover_from_name(const std::string& name);

// A face of one associahedron tile together with its labeling: a planar
// tree whose internal edges all carry infinite weight, marks labeled by a
// permutation of {0..n} (position 0 = root). The face's dimension is
// n - 2 - (#internal edges).
struct CellLabel {
  PlanarMetricTree tree;

  int dim() const;
  std::string key() const { return tree.planar_encoding(); }
};

// Quotient complex of K_n x S_{n+1} by the morphisms of a cover. Cells are
// equivalence classes of CellLabels under the generator closure; the class
// representative is the lexicographically least member key.
struct QuotientComplex {
  int n = 0;
  CoverKind cover = CoverKind::Full;

  // All objects, BFS forest and class structure.
  std::vector<CellLabel> objects;
  std::vector<int> object_class;            // object -> class id
  std::vector<int> class_rep;               // class id -> object index of the representative
  std::vector<int> class_dim;
  std::vector<std::vector<int>> classes_by_dim;

  // Mod-2 boundary: for each class, the incidence counts onto classes one
  // dimension down (computed on representatives, verified class-invariant).
  std::vector<std::map<int, int>> boundary;  // class -> {lower class -> count}

  // Spanning forest for transporting refinements along morphism paths.
  struct ForestEdge {
    int pred = -1;      // predecessor object (-1 at roots)
    int gen_kind = -1;  // 0 twist, 1 rotation, 2 reflection
    std::pair<int, int> twist_arc{0, 0};
  };
  std::vector<ForestEdge> forest;

  std::vector<std::int64_t> cell_counts() const;
  int class_size(int cls) const;
};

// Enumerate the quotient complex; 3 <= n <= 5 (cell counts grow as the
// Schroeder number times (n+1)!).
QuotientComplex enumerate_complex(int n, CoverKind cover);

std::int64_t euler_characteristic(const QuotientComplex& c);

// Number of top-dimensional tiles (classes of the corolla face).
std::int64_t tile_count(const QuotientComplex& c);

// Top cube classes: pairs (planar binary tree, labeling) modulo rotation.
// Only defined for the orientation cover, where the count equals
// tile_count * catalan(n) = 2^{n-1} (2n-3)!!.
struct CubeClasses {
  int n = 0;
  std::vector<PlanarMetricTree> reps;  // rooted at label 0
};
CubeClasses enumerate_cubes(const QuotientComplex& c);
std::int64_t cube_count(const QuotientComplex& c);

// Number of tile corners meeting at a vertex class of the orientation
// cover (each corner is one free rotation orbit of labeled binary trees).
std::int64_t vertex_figure(const QuotientComplex& c, int vertex_class);

// Image of a cell under the fold onto the suspension of T_n. Top cubes map
// to cone cells with a sign given by the parity of the planar embedding
// against the min-label-sorted embedding; the corolla face maps to the
// scale-zero cone point; faces with infinite edges map to cone cells on the
// compactification side.
treespace::SuspensionCell fold_cell(const CellLabel& cell);
treespace::SuspensionCell fold_cube(const PlanarMetricTree& cube_rep);

// Number of top cube classes folding onto a given top suspension cell.
std::int64_t fiber_count(const QuotientComplex& c, const treespace::SuspensionCell& target);

// Orientability of the closed surface case (n = 4): propagate tile
// orientations across shared edges, transporting edge directions along the
// morphism forest. Throws for n != 4.
bool orientability(const QuotientComplex& c);

}  // namespace moduli
}  // namespace eigentree
