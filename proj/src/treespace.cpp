#include "eigentree/treespace.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "eigentree/errors.hpp"
#include "eigentree/tree_ops.hpp"

namespace eigentree {
namespace treespace {

bool BhvPoint::is_cone_point() const {
  for (int e : tree.internal_edges())
    if (!tree.edge_weight(e).is_zero()) return false;
  return true;
}

BhvPoint BhvPoint::cone_point(int n) { return BhvPoint{MetricTree::corolla(n)}; }

std::vector<double> BhvPoint::weights() const {
  std::vector<double> out;
  for (int e : tree.internal_edges()) out.push_back(tree.edge_weight(e).value);
  return out;
}

void Matching::normalize() {
  for (auto& p : pairs)
    if (p.first > p.second) std::swap(p.first, p.second);
  std::sort(pairs.begin(), pairs.end());
}

std::int64_t count_binary_topologies(int n) {
  if (n < 2) throw ValidationError("count_binary_topologies: need n >= 2");
  std::int64_t v = 1;
  for (int k = 3; k <= 2 * n - 3; k += 2) v *= k;
  return v;
}

Matching dh_matching(const MetricTree& tree) {
  if (!tree.is_binary()) throw ValidationError("dh_matching: tree is not binary");
  int n = tree.leaf_count();
  std::vector<int> label(tree.node_count(), 0);
  for (int v = 0; v < tree.node_count(); ++v)
    if (tree.is_leaf(v)) label[v] = tree.node(v).label;

  Matching m;
  int next_label = n + 1;
  for (int step = 0; step < n - 1; ++step) {
    // Matched-ready pair: an internal node whose two children both carry labels.
    int best = -1, best_min = 0;
    for (int v = 0; v < tree.node_count(); ++v) {
      if (tree.is_leaf(v) || label[v] != 0) continue;
      const auto& ch = tree.node(v).children;
      bool ready = true;
      int mn = 1 << 30;
      for (int c : ch) {
        if (label[c] == 0) ready = false;
        else mn = std::min(mn, label[c]);
      }
      if (!ready) continue;
      if (best < 0 || mn < best_min) {
        best = v;
        best_min = mn;
      }
    }
    const auto& ch = tree.node(best).children;
    m.pairs.emplace_back(label[ch[0]], label[ch[1]]);
    label[best] = next_label++;
  }
  m.normalize();
  return m;
}

MetricTree dh_tree(const Matching& m, int n) {
  int total = 2 * n - 2;
  if (static_cast<int>(m.pairs.size()) != n - 1)
    throw ValidationError("dh_tree: expected " + std::to_string(n - 1) + " pairs");
  std::vector<char> seen(total + 1, 0);
  for (auto [a, b] : m.pairs) {
    if (a < 1 || a > total || b < 1 || b > total || a == b)
      throw ValidationError("dh_tree: offending pair {" + std::to_string(a) + "," +
                            std::to_string(b) + "}");
    if (seen[a] || seen[b])
      throw ValidationError("dh_tree: offending pair {" + std::to_string(a) + "," +
                            std::to_string(b) + "} reuses a label");
    seen[a] = seen[b] = 1;
  }

  // Greedy inverse of dh_matching: a pair is ready when both labels exist;
  // join the ready pair containing the smallest label, creating labels
  // n+1, n+2, ... in order. Fragments are standalone trees whose node 0 is
  // the fragment top.
  std::map<int, MetricTree> fragment;  // label -> subtree
  for (int l = 1; l <= n; ++l) {
    MetricTree leaf;
    leaf.add_root();
    leaf.node(0).label = l;
    leaf.node(0).children.clear();
    fragment[l] = leaf;
  }
  std::vector<std::pair<int, int>> remaining = m.pairs;
  auto join = [&](const MetricTree& a, const MetricTree& b) {
    MetricTree t;
    t.add_root();
    std::function<void(const MetricTree&, int, int)> attach = [&](const MetricTree& sub, int v,
                                                                  int parent) {
      if (sub.node(v).children.empty()) {
        t.add_leaf(parent, sub.node(v).label);
      } else {
        int id = t.add_internal(parent, ExtWeight{});
        for (int c : sub.node(v).children) attach(sub, c, id);
      }
    };
    attach(a, 0, t.root());
    attach(b, 0, t.root());
    return t;
  };
  int next_label = n + 1;
  while (!remaining.empty()) {
    int pick = -1, pick_min = 1 << 30;
    for (int i = 0; i < static_cast<int>(remaining.size()); ++i) {
      auto [a, b] = remaining[i];
      if (fragment.count(a) && fragment.count(b)) {
        int mn = std::min(a, b);
        if (mn < pick_min) {
          pick = i;
          pick_min = mn;
        }
      }
    }
    if (pick < 0) {
      auto [a, b] = remaining.front();
      throw ValidationError("dh_tree: offending pair {" + std::to_string(a) + "," +
                            std::to_string(b) + "} never becomes ready");
    }
    auto [a, b] = remaining[pick];
    remaining.erase(remaining.begin() + pick);
    MetricTree joined = join(fragment[a], fragment[b]);
    fragment.erase(a);
    fragment.erase(b);
    fragment[next_label++] = std::move(joined);
  }
  if (fragment.size() != 1)
    throw ValidationError("dh_tree: matching does not assemble a single tree");
  MetricTree out = fragment.begin()->second;
  out.validate();
  return out;
}

std::pair<double, BhvPoint> smash_split(const BhvPoint& p) {
  double scale = 0.0;
  for (double w : p.weights()) scale = std::max(scale, w);
  if (scale == 0.0) return {0.0, BhvPoint::cone_point(p.tree.leaf_count())};
  BhvPoint grown = p;
  for (int e : grown.tree.internal_edges())
    grown.tree.set_edge_weight(e, ExtWeight(grown.tree.edge_weight(e).value / scale));
  return {scale, grown};
}

BhvPoint smash_join(double scale, const BhvPoint& grown) {
  if (grown.is_cone_point()) {
    if (scale != 0.0) throw ValidationError("smash_join: cone point requires scale 0");
    return grown;
  }
  if (!(scale >= 0.0)) throw ValidationError("smash_join: negative scale");
  BhvPoint out = grown;
  for (int e : out.tree.internal_edges())
    out.tree.set_edge_weight(e, ExtWeight(out.tree.edge_weight(e).value * scale));
  return out;
}

namespace {

std::uint32_t clade_mask(const std::vector<int>& clade) {
  std::uint32_t m = 0;
  for (int l : clade) m |= (1u << l);
  return m;
}

}  // namespace

TnComplex tn_skeleton(int n) {
  if (n < 3 || n > 6) throw ValidationError("tn_skeleton: supported for 3 <= n <= 6");
  TnComplex out;
  out.n = n;

  // Vertices: all clades, sorted by bitmask.
  std::set<std::uint32_t> clade_set;
  std::uint32_t full = 0;
  for (int l = 1; l <= n; ++l) full |= (1u << l);
  for (std::uint32_t m = 0; m <= full; ++m) {
    if ((m & ~full) || (m & 1u)) continue;
    int sz = __builtin_popcount(m);
    if (sz >= 2 && sz <= n - 1) clade_set.insert(m);
  }
  out.vertex_clades.assign(clade_set.begin(), clade_set.end());
  std::map<std::uint32_t, int> vid;
  for (int i = 0; i < static_cast<int>(out.vertex_clades.size()); ++i)
    vid[out.vertex_clades[i]] = i;

  // Simplices: every nonempty subfamily of the clade family of a binary
  // topology is laminar, and every laminar family arises this way.
  out.simplices.assign(n - 2, {});
  std::set<std::vector<int>> seen;
  for (const auto& topo : enumerate_binary_topologies(n)) {
    std::vector<int> verts;
    for (const auto& clade : clades(topo)) verts.push_back(vid.at(clade_mask(clade)));
    std::sort(verts.begin(), verts.end());
    int k = static_cast<int>(verts.size());  // n-2 clades
    for (std::uint32_t sub = 1; sub < (1u << k); ++sub) {
      std::vector<int> face;
      for (int i = 0; i < k; ++i)
        if (sub & (1u << i)) face.push_back(verts[i]);
      if (seen.insert(face).second)
        out.simplices[face.size() - 1].push_back(face);
    }
  }
  for (auto& dim : out.simplices) std::sort(dim.begin(), dim.end());
  return out;
}

SmallGraph TnComplex::one_skeleton() const {
  SmallGraph g(static_cast<int>(vertex_clades.size()));
  if (simplices.size() > 1)
    for (const auto& e : simplices[1]) g.add_edge(e[0], e[1]);
  return g;
}

std::vector<std::int64_t> TnComplex::cell_counts() const {
  std::vector<std::int64_t> out;
  for (const auto& dim : simplices) out.push_back(static_cast<std::int64_t>(dim.size()));
  return out;
}

int TnComplex::euler_characteristic() const {
  int chi = 0, sign = 1;
  for (const auto& dim : simplices) {
    chi += sign * static_cast<int>(dim.size());
    sign = -sign;
  }
  return chi;
}

std::string SuspensionCell::key() const {
  switch (kind) {
    case Kind::ConeNeg:
      return "cone-";
    case Kind::ConePos:
      return "cone+";
    default: {
      std::string s = kind == Kind::Equator ? "eq:" : (sign > 0 ? "c+:" : "c-:");
      for (auto m : tn_cell) s += std::to_string(m) + ".";
      return s;
    }
  }
}

std::vector<std::int64_t> suspension_cells(int n) {
  auto tn = tn_skeleton(n);
  auto counts = tn.cell_counts();
  std::vector<std::int64_t> out(counts.size() + 1, 0);
  out[0] = counts[0] + 2;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (k >= 1) out[k] += counts[k];
    out[k + 1] += 2 * counts[k];
  }
  return out;
}

std::vector<SuspensionCell> suspension_top_cells(int n) {
  std::vector<SuspensionCell> out;
  for (const auto& topo : enumerate_binary_topologies(n)) {
    std::vector<std::uint32_t> masks;
    for (const auto& clade : clades(topo)) masks.push_back(clade_mask(clade));
    std::sort(masks.begin(), masks.end());
    for (int sign : {-1, +1}) {
      SuspensionCell c;
      c.kind = SuspensionCell::Kind::Cone;
      c.sign = sign;
      c.tn_cell = masks;
      out.push_back(std::move(c));
    }
  }
  return out;
}

}  // namespace treespace
}  // namespace eigentree
