#include "eigentree/associahedron.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "eigentree/errors.hpp"
#include "eigentree/tree_ops.hpp"

namespace eigentree {
namespace assoc {

std::int64_t catalan(int n) {
  if (n < 2) throw ValidationError("catalan: need n >= 2");
  // C_{n-1} by the Pascal recurrence, exact in 64 bits for n <= 33.
  std::int64_t c = 1;
  for (int k = 1; k < n - 1; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
  return c;
}

std::vector<PlanarMetricTree> vertices(int n) {
  if (n < 2 || n > 10) throw ValidationError("vertices: n out of range");
  return planar_binary_trees(n);
}

void Bracketing::validate() const {
  for (auto [a, b] : brackets) {
    int len = b - a + 1;
    if (a < 1 || b > n || len < 2 || len > n - 1)
      throw ValidationError("bracketing: improper bracket");
  }
  for (std::size_t i = 0; i < brackets.size(); ++i) {
    for (std::size_t j = i + 1; j < brackets.size(); ++j) {
      auto [a, b] = brackets[i];
      auto [c, d] = brackets[j];
      if (a == c && b == d) throw ValidationError("bracketing: duplicate bracket");
      bool nested = (a <= c && d <= b) || (c <= a && b <= d);
      bool disjoint = b < c || d < a;
      if (!nested && !disjoint) throw ValidationError("bracketing: crossing brackets");
    }
  }
}

Bracketing bracketing_of_tree(const PlanarMetricTree& tree) {
  Bracketing b;
  b.n = tree.leaf_count();
  for (int e : tree.underlying.internal_edges()) b.brackets.push_back(edge_leaf_arc(tree, e));
  std::sort(b.brackets.begin(), b.brackets.end());
  return b;
}

PlanarMetricTree tree_of_bracketing(const Bracketing& b, ExtWeight edge_weight) {
  b.validate();
  // Nest brackets: sort by (start, -length) so parents precede children.
  auto brackets = b.brackets;
  std::sort(brackets.begin(), brackets.end(),
            [](const std::pair<int, int>& x, const std::pair<int, int>& y) {
              if (x.first != y.first) return x.first < y.first;
              return x.second > y.second;
            });
  PlanarMetricTree out;
  MetricTree& t = out.underlying;
  t.add_root();
  // For each leaf position, the innermost enclosing node; build by scanning.
  std::function<int(int, int, int, std::size_t&)> build = [&](int lo, int hi, int parent,
                                                              std::size_t& idx) -> int {
    int node = parent;
    int pos = lo;
    while (pos <= hi) {
      if (idx < brackets.size() && brackets[idx].first == pos && brackets[idx].second <= hi) {
        auto [a, bb] = brackets[idx];
        ++idx;
        int id = t.add_internal(node, edge_weight);
        std::size_t inner = idx;
        // Children brackets of [a..bb] follow in sorted order.
        int done = build(a, bb, id, inner);
        idx = inner;
        pos = done + 1;
      } else {
        t.add_leaf(node, pos);
        ++pos;
      }
    }
    return hi;
  };
  std::size_t idx = 0;
  build(1, b.n, t.root(), idx);
  return out;
}

FacePoset face_poset(int n) {
  if (n < 2 || n > 7) throw ValidationError("face_poset: n out of range");
  FacePoset out;
  out.n = n;
  for (const auto& t : planar_trees(n)) out.faces.push_back(bracketing_of_tree(t));
  std::sort(out.faces.begin(), out.faces.end(), [](const Bracketing& a, const Bracketing& b) {
    if (a.brackets.size() != b.brackets.size()) return a.brackets.size() < b.brackets.size();
    return a.brackets < b.brackets;
  });
  out.faces_by_dim.assign(n - 1 > 0 ? n - 1 : 1, {});
  std::map<std::vector<std::pair<int, int>>, int> index;
  for (int i = 0; i < static_cast<int>(out.faces.size()); ++i) {
    out.faces_by_dim[out.faces[i].dim()].push_back(i);
    index[out.faces[i].brackets] = i;
  }
  // Covers: remove one bracket from the smaller face.
  for (int i = 0; i < static_cast<int>(out.faces.size()); ++i) {
    const auto& f = out.faces[i];
    for (std::size_t k = 0; k < f.brackets.size(); ++k) {
      auto sub = f.brackets;
      sub.erase(sub.begin() + static_cast<long>(k));
      auto it = index.find(sub);
      if (it != index.end()) out.hasse.emplace_back(i, it->second);
    }
  }
  std::sort(out.hasse.begin(), out.hasse.end());
  return out;
}

std::vector<std::int64_t> FacePoset::f_vector() const {
  std::vector<std::int64_t> out;
  for (const auto& d : faces_by_dim) out.push_back(static_cast<std::int64_t>(d.size()));
  return out;
}

CubeDecomposition cube_decomposition(int n) {
  if (n < 2 || n > 7) throw ValidationError("cube_decomposition: n out of range");
  CubeDecomposition out;
  out.n = n;
  out.charts = planar_binary_trees(n);
  if (n == 2) {
    out.orientation = {1};
    return out;
  }

  // Group (chart, edge) wall slots by the contracted face.
  std::map<std::string, std::vector<std::pair<int, int>>> walls;
  for (int c = 0; c < static_cast<int>(out.charts.size()); ++c) {
    auto edges = out.charts[c].underlying.internal_edges();
    for (int ei = 0; ei < static_cast<int>(edges.size()); ++ei) {
      auto face = contract_edge(out.charts[c], edges[ei]);
      walls[face.planar_encoding()].emplace_back(c, ei);
    }
  }
  for (const auto& [key, slots] : walls) {
    if (slots.size() != 2)
      throw NumericError("cube_decomposition: wall shared by " + std::to_string(slots.size()) +
                         " charts");
    out.gluings.push_back({slots[0].first, slots[0].second, slots[1].first, slots[1].second});
  }

  // Orientation propagation. Crossing a wall relates chart frames by
  // flipping the transverse coordinate and matching the surviving edges by
  // their leaf arcs;
  //   o(B') = -o(B) * (-1)^{i+i'} * sign(pi)
  // with i, i' the transverse positions and pi the induced permutation of
  // the surviving coordinates.
  auto arcs_of = [](const PlanarMetricTree& t) {
    std::vector<std::pair<int, int>> arcs;
    for (int e : t.underlying.internal_edges()) arcs.push_back(edge_leaf_arc(t, e));
    return arcs;
  };
  std::vector<std::vector<std::pair<int, int>>> chart_arcs;
  for (const auto& c : out.charts) chart_arcs.push_back(arcs_of(c));

  auto crossing_sign = [&](int ca, int ea, int cb, int eb) {
    const auto& A = chart_arcs[ca];
    const auto& B = chart_arcs[cb];
    std::vector<std::pair<int, int>> ra, rb;
    for (int i = 0; i < static_cast<int>(A.size()); ++i)
      if (i != ea) ra.push_back(A[i]);
    for (int i = 0; i < static_cast<int>(B.size()); ++i)
      if (i != eb) rb.push_back(B[i]);
    // pi: position in ra -> position in rb of the same arc.
    std::vector<int> pi(ra.size());
    for (std::size_t i = 0; i < ra.size(); ++i) {
      auto it = std::find(rb.begin(), rb.end(), ra[i]);
      if (it == rb.end()) throw NumericError("cube_decomposition: wall arc mismatch");
      pi[i] = static_cast<int>(it - rb.begin());
    }
    int parity = 0;
    for (std::size_t i = 0; i < pi.size(); ++i)
      for (std::size_t j = i + 1; j < pi.size(); ++j)
        if (pi[i] > pi[j]) ++parity;
    int sign = (parity % 2 == 0) ? 1 : -1;
    int ii = ((ea + 1) + (eb + 1)) % 2 == 0 ? 1 : -1;
    return -1 * ii * sign;
  };

  out.orientation.assign(out.charts.size(), 0);
  out.orientation[0] = 1;
  std::queue<int> q;
  q.push(0);
  // Adjacency from gluings.
  std::vector<std::vector<const CubeDecomposition::Gluing*>> by_chart(out.charts.size());
  for (const auto& g : out.gluings) {
    by_chart[g.chart_a].push_back(&g);
    by_chart[g.chart_b].push_back(&g);
  }
  while (!q.empty()) {
    int c = q.front();
    q.pop();
    for (const auto* g : by_chart[c]) {
      int other = g->chart_a == c ? g->chart_b : g->chart_a;
      int sign = g->chart_a == c ? crossing_sign(g->chart_a, g->edge_a, g->chart_b, g->edge_b)
                                 : crossing_sign(g->chart_b, g->edge_b, g->chart_a, g->edge_a);
      int expected = out.orientation[c] * sign;
      if (out.orientation[other] == 0) {
        out.orientation[other] = expected;
        q.push(other);
      } else if (out.orientation[other] != expected) {
        throw NumericError("cube_decomposition: inconsistent chart orientations");
      }
    }
  }
  for (int o : out.orientation)
    if (o == 0) throw NumericError("cube_decomposition: chart graph not connected");
  return out;
}

void Configuration::validate() const {
  if (points.empty()) throw ValidationError("configuration: empty");
  if (points[0] != 0.0) throw ValidationError("configuration: first point must be 0");
  for (std::size_t i = 1; i < points.size(); ++i)
    if (points[i] < points[i - 1]) throw ValidationError("configuration: not nondecreasing");
}

std::vector<double> gap_exponents(const PlanarMetricTree& tree) {
  const MetricTree& t = tree.underlying;
  int n = t.leaf_count();
  if (n < 2) throw ValidationError("embed_config: need n >= 2");
  auto labels = t.leaf_labels_in_order();
  for (int i = 0; i < n; ++i)
    if (labels[i] != i + 1)
      throw ValidationError("embed_config: leaves must be labeled 1..n in planar order");
  auto leaves = t.leaves_in_order();

  auto depth_chain = [&](int v) {
    std::vector<int> chain;
    while (v >= 0) {
      chain.push_back(v);
      v = t.node(v).parent;
    }
    return chain;  // leaf .. root
  };
  std::vector<double> w(n - 1, 0.0);
  for (int k = 0; k + 1 < n; ++k) {
    auto a = depth_chain(leaves[k]);
    auto b = depth_chain(leaves[k + 1]);
    std::set<int> in_b(b.begin(), b.end());
    int lca = -1;
    for (int v : a)
      if (in_b.count(v)) {
        lca = v;
        break;
      }
    double sum = 0.0;
    for (int v = lca; !t.is_root(v); v = t.node(v).parent) sum += t.node(v).weight.value;
    w[k] = sum;
  }
  return w;
}

Configuration embed_config(const PlanarMetricTree& tree) {
  auto w = gap_exponents(tree);
  Configuration out;
  out.points.push_back(0.0);
  for (double wk : w) out.points.push_back(out.points.back() + std::exp(-wk));
  out.validate();
  return out;
}

PlanarMetricTree dihedral_act(const std::string& word, const PlanarMetricTree& tree) {
  PlanarMetricTree t = tree;
  for (char ch : word) {
    if (ch == 'r') {
      t = rotate_root(t);
    } else if (ch == 'e') {
      t = reflect(t);
    } else {
      throw ValidationError("dihedral_act: word must use 'r' and 'e'");
    }
  }
  return t;
}

namespace {

// Degree-zero zigzag through (0,0), (.2,1), (.4,0), (.6,1), (1,0): four
// monotone pieces with alternating slopes, interior-valued at 1/2.
constexpr double kZigX[5] = {0.0, 0.2, 0.4, 0.6, 1.0};
constexpr double kZigY[5] = {0.0, 1.0, 0.0, 1.0, 0.0};

double zig_eval(double u) {
  for (int i = 0; i < 4; ++i) {
    if (u <= kZigX[i + 1] || i == 3) {
      double s = (u - kZigX[i]) / (kZigX[i + 1] - kZigX[i]);
      return kZigY[i] + s * (kZigY[i + 1] - kZigY[i]);
    }
  }
  return 0.0;
}

// Preimages of t in (0,1) with slope signs.
std::vector<std::pair<double, int>> zig_preimages(double t) {
  std::vector<std::pair<double, int>> out;
  for (int i = 0; i < 4; ++i) {
    double y0 = kZigY[i], y1 = kZigY[i + 1];
    double s = (t - y0) / (y1 - y0);
    if (s > 0.0 && s < 1.0)
      out.emplace_back(kZigX[i] + s * (kZigX[i + 1] - kZigX[i]), y1 > y0 ? 1 : -1);
  }
  return out;
}

}  // namespace

std::vector<double> FoldMap::apply(int chart, const std::vector<double>& u) const {
  int d = n() - 2;
  if (chart < 0 || chart >= static_cast<int>(decomp.charts.size()))
    throw ValidationError("collapse_fold: chart out of range");
  if (static_cast<int>(u.size()) != d)
    throw ValidationError("collapse_fold: wrong coordinate count");
  for (double x : u)
    if (!(x >= 0.0 && x <= 1.0))
      throw ValidationError("collapse_fold: coordinates outside the chart");
  std::vector<double> out = u;
  if (role[chart] == 0) {
    out[0] = zig_eval(u[0]);
  } else if (role[chart] < 0) {
    out[0] = 1.0 - u[0];
  }
  return out;
}

int FoldMap::signed_preimages(const std::vector<double>& target) const {
  int d = n() - 2;
  if (static_cast<int>(target.size()) != d)
    throw ValidationError("fold degree: wrong target dimension");
  for (double t : target)
    if (!(t > 0.0 && t < 1.0)) throw ValidationError("fold degree: target not generic");
  int total = 0;
  for (int c = 0; c < static_cast<int>(decomp.charts.size()); ++c) {
    int o = decomp.orientation[c];
    if (role[c] == 0) {
      for (const auto& [u0, slope_sign] : zig_preimages(target[0])) {
        (void)u0;
        total += o * slope_sign;  // other coordinates are identity
      }
    } else {
      // Unique preimage; Jacobian sign is role[c] (the first coordinate may
      // be flipped).
      total += o * role[c];
    }
  }
  return total;
}

FoldMap collapse_fold_map(int n) {
  if (n < 3 || n > 5) throw ValidationError("collapse_fold: supported for 3 <= n <= 5");
  FoldMap f;
  f.decomp = cube_decomposition(n);
  int straight = 1 << (n - 2);
  f.role.assign(f.decomp.charts.size(), 0);
  for (int c = 0; c < straight; ++c) {
    // Flip the first coordinate where needed so each straight chart covers
    // the target positively.
    f.role[c] = f.decomp.orientation[c];
  }
  return f;
}

int folding_degree(int n, int samples, std::uint64_t seed) {
  if (samples < 1) throw ValidationError("folding_degree: need samples >= 1");
  FoldMap f = collapse_fold_map(n);
  Rng rng(seed);
  int degree = 0;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> t;
    for (int i = 0; i < n - 2; ++i) {
      double x = rng.next_open01();
      // Stay away from the zigzag breakpoint values to keep the point generic.
      t.push_back(0.05 + 0.9 * x);
    }
    int deg = f.signed_preimages(t);
    if (s == 0) {
      degree = deg;
    } else if (deg != degree) {
      throw NumericError("folding_degree: sample points disagree (" + std::to_string(degree) +
                         " vs " + std::to_string(deg) + ")");
    }
  }
  return std::abs(degree);
}

}  // namespace assoc
}  // namespace eigentree
