#pragma once

#include <utility>
#include <vector>

#include "eigentree/tree.hpp"

namespace eigentree {
namespace spectra {

// Dense real symmetric matrix (row-major).
struct SymmetricMatrix {
  int n = 0;
  std::vector<double> a;  // n*n entries

  double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
  double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
  static SymmetricMatrix diagonal(const std::vector<double>& d);
  // Checks |Q_ij - Q_ji| <= 1e-12 * max|Q|.
  void validate() const;
};

struct Spectrum {
  std::vector<double> values;  // nondecreasing
  int n() const { return static_cast<int>(values.size()); }
};

// Orthogonal frame accumulated by the eigensolver (columns = eigenvectors).
struct EigenResult {
  Spectrum spectrum;
  std::vector<double> frame;  // n*n, column k pairs with values[k]
};

// Row-cyclic Jacobi sweeps until the off-diagonal Frobenius mass drops
// below tol * ||Q||_F. Deterministic sweep order; throws NumericError after
// 60 sweeps without convergence, ValidationError for asymmetric input.
EigenResult eigenvalues(const SymmetricMatrix& q, double tol = 1e-13);

struct GapVector {
  std::vector<double> deltas;  // n-1 entries, sum exactly 1
};

// delta_k = (lambda_{k+1} - lambda_k) / (lambda_n - lambda_1); the last
// entry is 1 minus the partial sum, which makes the left-to-right total
// exactly 1.0. Throws NumericError on a scalar spectrum.
GapVector gap_vector(const Spectrum& s);

struct NormalForm {
  double offset = 0.0;  // lambda_1
  double scale = 0.0;   // lambda_n - lambda_1
  GapVector delta;
};

NormalForm normal_form(const Spectrum& s);
Spectrum spectrum_from_normal_form(const NormalForm& nf);

// Split a tuple of distinct reals into its intrinsic order and normal form:
// sigma[k] is the (1-based) index of the k-th smallest entry.
struct ConfigSplit {
  NormalForm form;
  std::vector<int> sigma;
};
ConfigSplit config_split(const std::vector<double>& v);
std::vector<double> config_join(const ConfigSplit& s);

// Elementary symmetric values e_1..e_n of a tuple (e_0 = 1 implicit),
// by stable polynomial multiplication.
struct SymCoeffs {
  std::vector<double> e;
};
SymCoeffs elem_symmetric(const std::vector<double>& v);

// Induced affine action on symmetric coefficients:
// e_k -> sum_{l<=k} binom(n-l, n-k) a^l b^{k-l} e_l, matching
// elem_symmetric(a*v + b). Requires a > 0.
SymCoeffs affine_on_e(const SymCoeffs& e, double a, double b);

// prod_{i<k} (v_i - v_k)^2; with ordered_pairs the product runs over all
// i != k (the square of the default).
double discriminant(const std::vector<double>& v, bool ordered_pairs = false);

// Maximal runs of eigenvalues whose normalized gaps are <= rel_tol.
struct StratumPartition {
  std::vector<std::vector<int>> blocks;  // consecutive 1-based index blocks
  double tolerance = 0.0;
};
StratumPartition stratum(const Spectrum& s, double rel_tol);

// Single-linkage dendrogram of the normalized eigenvalues. Merge heights
// are exactly the gap-vector entries, so cutting at height h reproduces
// stratum(s, h) for every h. Ties merge leftmost-first.
struct Dendrogram {
  MetricTree tree;                   // internal edge weights = height gaps
  std::vector<double> merge_heights;  // per internal node id in `tree`
  std::vector<std::vector<int>> cut(double h) const;
};
Dendrogram resolve_dendrogram(const Spectrum& s);
MetricTree resolve_tree(const Spectrum& s);

// Sheet of the n!-fold configuration cover over a matrix with distinct
// eigenvalues: the tuple v with v_{sigma(k)} = lambda_k, so config_split
// recovers sigma. Throws NumericError when the minimal normalized gap is
// below tol (the point lies over the discriminant).
std::vector<double> lift_config(const SymmetricMatrix& q, const std::vector<int>& sigma,
                                double tol);

}  // namespace spectra
}  // namespace eigentree
