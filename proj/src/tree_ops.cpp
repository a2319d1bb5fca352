#include "eigentree/tree_ops.hpp"

#include <algorithm>
#include <functional>

#include "eigentree/errors.hpp"

namespace eigentree {

namespace {

// Copy the subtree of `src` rooted at `v` into `dst` under `dst_parent`,
// preserving child order and weights.
void copy_subtree(const MetricTree& src, int v, MetricTree& dst, int dst_parent) {
  if (src.is_leaf(v)) {
    dst.add_leaf(dst_parent, src.node(v).label);
    return;
  }
  int id = dst.add_internal(dst_parent, src.node(v).weight);
  for (int c : src.node(v).children) copy_subtree(src, c, dst, id);
}

}  // namespace

std::vector<MetricTree> degeneration(const MetricTree& tree) {
  tree.validate();
  int next_star = 0;
  std::vector<std::pair<int, int>> queue;  // (subtree top at break, star id)
  std::vector<MetricTree> out;

  std::function<void(int, MetricTree&, int)> copy_breaking = [&](int v, MetricTree& dst,
                                                                 int dst_parent) {
    for (int c : tree.node(v).children) {
      if (tree.is_leaf(c)) {
        dst.add_leaf(dst_parent, tree.node(c).label);
      } else if (tree.node(c).weight.is_infinite()) {
        int star = ++next_star;
        dst.add_leaf(dst_parent, -star);
        queue.emplace_back(c, star);
      } else {
        int id = dst.add_internal(dst_parent, tree.node(c).weight);
        copy_breaking(c, dst, id);
      }
    }
  };

  MetricTree root_comp;
  root_comp.add_root(tree.root_label());
  copy_breaking(tree.root(), root_comp, root_comp.root());
  out.push_back(std::move(root_comp));

  for (std::size_t i = 0; i < queue.size(); ++i) {
    auto [v, star] = queue[i];
    MetricTree comp;
    comp.add_root(-star);
    copy_breaking(v, comp, comp.root());
    out.push_back(std::move(comp));
  }
  return out;
}

bool isomorphic(const MetricTree& a, const MetricTree& b) {
  if (a.leaf_count() != b.leaf_count())
    throw ValidationError("isomorphic: mismatched leaf counts");
  return a.canonical_encoding() == b.canonical_encoding();
}

std::pair<PlanarMetricTree, std::vector<int>> reverse_at_edge(const PlanarMetricTree& tree,
                                                              int edge) {
  const MetricTree& t = tree.underlying;
  if (edge <= 0 || edge >= t.node_count() || t.is_leaf(edge) || t.is_root(edge))
    throw ValidationError("reverse_at_edge: not an internal edge");

  auto arc = edge_leaf_arc(tree, edge);
  int n = t.leaf_count();
  std::vector<int> perm(n + 1);
  for (int p = 0; p <= n; ++p) perm[p] = p;
  for (int p = arc.first; p <= arc.second; ++p) perm[p] = arc.first + arc.second - p;

  PlanarMetricTree out;
  MetricTree& d = out.underlying;
  d.add_root(t.root_label());
  std::function<void(int, int, bool)> build = [&](int v, int dst_parent, bool mirrored) {
    auto ch = t.node(v).children;
    if (mirrored) std::reverse(ch.begin(), ch.end());
    for (int c : ch) {
      if (t.is_leaf(c)) {
        d.add_leaf(dst_parent, t.node(c).label);
      } else {
        int id = d.add_internal(dst_parent, t.node(c).weight);
        build(c, id, mirrored || c == edge);
      }
    }
  };
  build(t.root(), d.root(), false);
  return {out, perm};
}

PlanarMetricTree rotate_root(const PlanarMetricTree& tree) {
  const MetricTree& t = tree.underlying;
  // Path root = u0 -> u1 -> ... -> uk = first leaf (always first children).
  std::vector<int> path{t.root()};
  while (!t.is_leaf(path.back())) path.push_back(t.node(path.back()).children.front());
  int k = static_cast<int>(path.size()) - 1;
  int new_root_label = t.node(path[k]).label;

  PlanarMetricTree out;
  MetricTree& d = out.underlying;
  d.add_root(new_root_label);

  // Re-root at the first leaf mark. Walking back up the old path, each u_i
  // keeps its non-path children (clockwise order after the arrival edge)
  // and then continues into its old parent; the old root finally emits a
  // fresh leaf carrying the old root label in the slot of the root mark.
  std::function<void(int, int)> build_down = [&](int i, int dst_parent) {
    int v = path[i];
    const auto& ch = t.node(v).children;
    for (std::size_t j = 1; j < ch.size(); ++j) copy_subtree(t, ch[j], d, dst_parent);
    if (i > 0) {
      // Edge (u_{i-1}, u_i) keeps its weight, now stored on the copy of u_{i-1}.
      int id = d.add_internal(dst_parent, t.node(v).weight);
      build_down(i - 1, id);
    } else {
      d.add_leaf(dst_parent, t.root_label());
    }
  };
  build_down(k - 1, d.root());
  return out;
}

PlanarMetricTree reflect(const PlanarMetricTree& tree) {
  const MetricTree& t = tree.underlying;
  PlanarMetricTree out;
  MetricTree& d = out.underlying;
  d.add_root(t.root_label());
  std::function<void(int, int)> build = [&](int v, int dst_parent) {
    auto ch = t.node(v).children;
    std::reverse(ch.begin(), ch.end());
    for (int c : ch) {
      if (t.is_leaf(c)) {
        d.add_leaf(dst_parent, t.node(c).label);
      } else {
        int id = d.add_internal(dst_parent, t.node(c).weight);
        build(c, id);
      }
    }
  };
  build(t.root(), d.root());
  return out;
}

MetricTree forget_planarity(const PlanarMetricTree& tree) { return tree.underlying; }

std::vector<MetricTree> enumerate_binary_topologies(int n) {
  if (n < 2) throw ValidationError("enumerate_binary_topologies: need n >= 2");
  // Start from the cherry (1,2); insert leaf m by subdividing any edge
  // (terminal or internal) or adding a new root above everything. That
  // gives 2m-3 insertion points into a tree with m-1 leaves.
  std::vector<MetricTree> current;
  {
    MetricTree t;
    t.add_root();
    t.add_leaf(t.root(), 1);
    t.add_leaf(t.root(), 2);
    current.push_back(t);
  }
  for (int m = 3; m <= n; ++m) {
    std::vector<MetricTree> next;
    for (const auto& t : current) {
      for (int v = 0; v < t.node_count(); ++v) {
        if (t.is_root(v)) continue;
        // Subdivide the edge above v; hang the new leaf beside it.
        MetricTree s;
        s.add_root();
        std::function<void(int, int)> build = [&](int src, int dst_parent) {
          for (int c : t.node(src).children) {
            int attach = dst_parent;
            if (c == v) attach = s.add_internal(dst_parent, ExtWeight{});
            if (t.is_leaf(c)) {
              s.add_leaf(attach, t.node(c).label);
            } else {
              int id = s.add_internal(attach, ExtWeight{});
              build(c, id);
            }
            if (c == v) s.add_leaf(attach, m);
          }
        };
        build(t.root(), s.root());
        next.push_back(std::move(s));
      }
      {
        MetricTree s;
        s.add_root();
        int id = s.add_internal(s.root(), ExtWeight{});
        std::function<void(int, int)> build = [&](int src, int dst_parent) {
          for (int c : t.node(src).children) {
            if (t.is_leaf(c)) {
              s.add_leaf(dst_parent, t.node(c).label);
            } else {
              int sub = s.add_internal(dst_parent, ExtWeight{});
              build(c, sub);
            }
          }
        };
        build(t.root(), id);
        s.add_leaf(s.root(), m);
        next.push_back(std::move(s));
      }
    }
    current = std::move(next);
  }
  std::sort(current.begin(), current.end(), [](const MetricTree& a, const MetricTree& b) {
    return a.canonical_encoding() < b.canonical_encoding();
  });
  return current;
}

namespace {

// Attach a copy of `sub` (a standalone tree whose node 0 may be a leaf) as
// a child block of `dst_parent`.
void attach_block(const MetricTree& sub, MetricTree& t, int dst_parent, ExtWeight edge_weight) {
  std::function<void(int, int)> attach = [&](int v, int parent) {
    if (sub.node(v).children.empty()) {
      t.add_leaf(parent, sub.node(v).label);
    } else {
      int id = t.add_internal(parent, edge_weight);
      for (int c : sub.node(v).children) attach(c, id);
    }
  };
  attach(0, dst_parent);
}

}  // namespace

std::vector<PlanarMetricTree> planar_binary_trees(int n) {
  if (n < 2 || n > 12) throw ValidationError("planar_binary_trees: n out of range");
  std::function<std::vector<MetricTree>(int, int)> build = [&](int lo,
                                                               int hi) -> std::vector<MetricTree> {
    std::vector<MetricTree> res;
    if (lo == hi) {
      MetricTree leaf;
      leaf.add_root();
      leaf.node(0).label = lo;
      res.push_back(leaf);
      return res;
    }
    for (int k = lo; k < hi; ++k) {
      for (const auto& l : build(lo, k)) {
        for (const auto& r : build(k + 1, hi)) {
          MetricTree t;
          t.add_root();
          attach_block(l, t, t.root(), ExtWeight{});
          attach_block(r, t, t.root(), ExtWeight{});
          res.push_back(std::move(t));
        }
      }
    }
    return res;
  };
  std::vector<PlanarMetricTree> out;
  for (auto& t : build(1, n)) out.push_back(PlanarMetricTree{std::move(t)});
  return out;
}

std::vector<PlanarMetricTree> planar_trees(int n, ExtWeight edge_weight) {
  if (n < 2 || n > 10) throw ValidationError("planar_trees: n out of range");
  // Schroeder recursion: the top vertex splits [lo..hi] into >= 2
  // contiguous blocks, each a leaf or recursively a planar tree.
  std::function<std::vector<MetricTree>(int, int)> build = [&](int lo,
                                                               int hi) -> std::vector<MetricTree> {
    std::vector<MetricTree> res;
    if (lo == hi) {
      MetricTree leaf;
      leaf.add_root();
      leaf.node(0).label = lo;
      res.push_back(leaf);
      return res;
    }
    std::vector<std::vector<std::pair<int, int>>> comps;
    std::vector<std::pair<int, int>> cur;
    std::function<void(int)> split = [&](int start) {
      if (start > hi) {
        if (cur.size() >= 2) comps.push_back(cur);
        return;
      }
      for (int end = start; end <= hi; ++end) {
        cur.emplace_back(start, end);
        split(end + 1);
        cur.pop_back();
      }
    };
    split(lo);
    for (const auto& comp : comps) {
      std::vector<std::vector<MetricTree>> options;
      for (auto [a, b] : comp) options.push_back(build(a, b));
      std::vector<std::size_t> idx(comp.size(), 0);
      for (;;) {
        MetricTree t;
        t.add_root();
        for (std::size_t i = 0; i < comp.size(); ++i)
          attach_block(options[i][idx[i]], t, t.root(), edge_weight);
        res.push_back(std::move(t));
        std::size_t i = 0;
        for (; i < idx.size(); ++i) {
          if (++idx[i] < options[i].size()) break;
          idx[i] = 0;
        }
        if (i == idx.size()) break;
      }
    }
    return res;
  };
  std::vector<PlanarMetricTree> out;
  for (auto& t : build(1, n)) out.push_back(PlanarMetricTree{std::move(t)});
  return out;
}

PlanarMetricTree contract_edge(const PlanarMetricTree& tree, int edge,
                               std::vector<std::pair<int, int>>* edge_map) {
  const MetricTree& t = tree.underlying;
  if (edge <= 0 || edge >= t.node_count() || t.is_leaf(edge) || t.is_root(edge))
    throw ValidationError("contract_edge: not an internal edge");
  PlanarMetricTree out;
  MetricTree& d = out.underlying;
  d.add_root(t.root_label());
  if (edge_map) edge_map->clear();
  std::function<void(int, int)> build = [&](int v, int dst_parent) {
    for (int c : t.node(v).children) {
      if (t.is_leaf(c)) {
        d.add_leaf(dst_parent, t.node(c).label);
      } else if (c == edge) {
        build(c, dst_parent);  // splice children in place
      } else {
        int id = d.add_internal(dst_parent, t.node(c).weight);
        if (edge_map) edge_map->emplace_back(c, id);
        build(c, id);
      }
    }
  };
  build(t.root(), d.root());
  return out;
}

std::pair<int, int> edge_leaf_arc(const PlanarMetricTree& tree, int edge) {
  const MetricTree& t = tree.underlying;
  std::vector<char> under(t.node_count(), 0);
  std::function<void(int)> mark = [&](int v) {
    under[v] = 1;
    for (int c : t.node(v).children) mark(c);
  };
  mark(edge);
  auto leaves = t.leaves_in_order();
  int first = -1, last = -1;
  for (int i = 0; i < static_cast<int>(leaves.size()); ++i) {
    if (under[leaves[i]]) {
      if (first < 0) first = i + 1;
      last = i + 1;
    }
  }
  return {first, last};
}

int edge_with_leaf_arc(const PlanarMetricTree& tree, std::pair<int, int> arc) {
  for (int e : tree.underlying.internal_edges()) {
    if (edge_leaf_arc(tree, e) == arc) return e;
  }
  return -1;
}

std::vector<std::vector<int>> clades(const MetricTree& tree) {
  std::vector<std::vector<int>> out;
  for (int e : tree.internal_edges()) {
    std::vector<int> clade;
    std::function<void(int)> walk = [&](int v) {
      if (tree.is_leaf(v)) {
        clade.push_back(tree.node(v).label);
        return;
      }
      for (int c : tree.node(v).children) walk(c);
    };
    walk(e);
    std::sort(clade.begin(), clade.end());
    out.push_back(std::move(clade));
  }
  return out;
}

}  // namespace eigentree
