#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace eigentree {

// Simple undirected graph on vertices 0..n-1.
struct SmallGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // sorted neighbor lists

  explicit SmallGraph(int n_ = 0) : n(n_), adj(n_) {}
  void add_edge(int a, int b);
  int edge_count() const;
  bool is_regular(int degree) const;
  int girth() const;  // length of shortest cycle; -1 if acyclic
};

// Canonical certificate: the lexicographically smallest adjacency-matrix
// bitstring over all vertex orderings, found by refinement-guided
// backtracking. Two graphs are isomorphic iff certificates are equal.
// Intended for small graphs (tens of vertices).
std::string graph_certificate(const SmallGraph& g);

// Kneser graph K(m, 2): vertices are 2-subsets of {1..m}, edges join
// disjoint pairs. K(5, 2) is the Petersen graph.
SmallGraph kneser_graph_2(int m);

}  // namespace eigentree
