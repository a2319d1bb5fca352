#include "eigentree/moduli.hpp"

// Quotients of K_n x S_{n+1} by generator closure.
//
// Objects are faces of the associahedron (planar trees with every internal
// edge infinite) carrying a labeling of the n+1 marks. Generators act on
// whole objects:
//   - twist: mirror the subtree beyond an infinite edge (labels ride along),
//   - rotation: shift the root mark one step clockwise,
//   - reflection: mirror the whole tree around the root mark.
// Classes are connected components of the generator graph, computed by BFS
// with a spanning forest kept for transporting incidences along morphism
// paths (used by the orientability check). Boundary incidence is computed
// on class representatives and asserted equal for every other member.
//
// Orientation cover caveat: each geometric wall between two tiles has two
// twist descriptions, one from each side of the split, and they land on
// opposite sheets of the double cover (composing both is the deck flip).
// Taking every twist as a morphism therefore collapses the two sheets on
// lower-dimensional cells. For the orientation cover we keep only the
// orientation-compatible twists: the sign of a twist gluing is computed in
// cube-chart coordinates, with each tile's frame anchored at its unique
// label-0-rooted description and rotation signs (the degree of the
// re-rooting self-map of K_n) folded in. The full cover is insensitive to
// the choice (the reflection identifies the sheets anyway) and keeps the
// unfiltered generators, as does the Kapranov cover, whose twists never
// leave a fixed root label.

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <queue>
#include <set>
#include <unordered_map>

#include "eigentree/associahedron.hpp"
#include "eigentree/errors.hpp"
#include "eigentree/tree_ops.hpp"

namespace eigentree {
namespace moduli {

std::string cover_name(CoverKind k) {
  switch (k) {
    case CoverKind::Kapranov:
      return "kapranov";
    case CoverKind::Orientation:
      return "orientation";
    default:
      return "full";
  }
}

CoverKind cover_from_name(const std::string& name) {
  if (name == "kapranov") return CoverKind::Kapranov;
  if (name == "orientation") return CoverKind::Orientation;
  if (name == "full") return CoverKind::Full;
  throw ValidationError("unknown cover '" + name + "'");
}

int CellLabel::dim() const {
  const MetricTree& t = tree.underlying;
  return t.leaf_count() - 2 - static_cast<int>(t.internal_edges().size());
}

namespace {

// Relabel a standard face shape (leaves 1..n in planar order, root 0) by a
// permutation sigma of {0..n}: mark at position i gets sigma[i].
PlanarMetricTree relabel(const PlanarMetricTree& shape, const std::vector<int>& sigma) {
  PlanarMetricTree out = shape;
  MetricTree& t = out.underlying;
  t.set_root_label(sigma[0]);
  int pos = 0;
  std::function<void(int)> walk = [&](int v) {
    if (t.is_leaf(v)) {
      t.node(v).label = sigma[++pos];
      return;
    }
    for (int c : t.node(v).children) walk(c);
  };
  walk(t.root());
  return out;
}

struct GenStep {
  int kind;  // 0 twist, 1 rotation, 2 reflection
  std::pair<int, int> arc;
};

PlanarMetricTree apply_gen(const PlanarMetricTree& t, const GenStep& g, bool inverse) {
  switch (g.kind) {
    case 0: {
      int e = edge_with_leaf_arc(t, g.arc);
      if (e < 0) throw NumericError("moduli: twist arc not present");
      return reverse_at_edge(t, e).first;
    }
    case 1: {
      if (!inverse) return rotate_root(t);
      PlanarMetricTree r = t;
      int n = t.leaf_count();
      for (int i = 0; i < n; ++i) r = rotate_root(r);
      return r;
    }
    default:
      return reflect(t);
  }
}

// One-bracket refinements: group a contiguous run of children (length 2 to
// child-count minus 1) under a fresh infinite edge.
std::vector<PlanarMetricTree> refinements(const PlanarMetricTree& tree) {
  const MetricTree& t = tree.underlying;
  std::vector<PlanarMetricTree> out;
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    int c = static_cast<int>(t.node(v).children.size());
    for (int i = 0; i < c; ++i) {
      for (int j = i + 1; j < c && j - i + 1 <= c - 1; ++j) {
        PlanarMetricTree r;
        MetricTree& d = r.underlying;
        d.add_root(t.root_label());
        std::function<void(int, int)> build = [&](int src, int dst_parent) {
          const auto& ch = t.node(src).children;
          int group = -1;
          for (int k = 0; k < static_cast<int>(ch.size()); ++k) {
            int attach = dst_parent;
            if (src == v && k >= i && k <= j) {
              if (k == i) group = d.add_internal(dst_parent, ExtWeight::infinite());
              attach = group;
            }
            int ck = ch[k];
            if (t.is_leaf(ck)) {
              d.add_leaf(attach, t.node(ck).label);
            } else {
              int id = d.add_internal(attach, t.node(ck).weight);
              build(ck, id);
            }
          }
        };
        build(t.root(), d.root());
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

std::vector<std::vector<int>> all_sigmas(int n) {
  std::vector<int> sigma(n + 1);
  for (int i = 0; i <= n; ++i) sigma[i] = i;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(sigma);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return out;
}

int perm_sign(const std::vector<int>& pi) {
  int inv = 0;
  for (std::size_t i = 0; i < pi.size(); ++i)
    for (std::size_t j = i + 1; j < pi.size(); ++j)
      if (pi[i] > pi[j]) ++inv;
  return inv % 2 == 0 ? 1 : -1;
}

// Strip the labeling: leaves renamed 1..n in planar order, root renamed 0,
// weights zeroed.
PlanarMetricTree standard_shape(const PlanarMetricTree& t) {
  PlanarMetricTree out = t;
  out.underlying.set_root_label(0);
  int pos = 0;
  std::function<void(int)> walk = [&](int v) {
    if (out.underlying.is_leaf(v)) {
      out.underlying.node(v).label = ++pos;
      return;
    }
    out.underlying.node(v).weight = ExtWeight{};
    for (int c : out.underlying.node(v).children) walk(c);
  };
  walk(out.underlying.root());
  return out;
}

// Left-comb refinement of a face shape to the binary chart containing it
// (all weights zeroed: charts are shapes, weights are coordinates).
PlanarMetricTree comb_completion(const PlanarMetricTree& face) {
  const MetricTree& t = face.underlying;
  PlanarMetricTree out;
  MetricTree& d = out.underlying;
  d.add_root(t.root_label());

  std::function<void(int, int)> attach;  // copy child subtree, combing
  std::function<void(int, int)> comb_children;

  attach = [&](int v, int dst_parent) {
    if (t.is_leaf(v)) {
      d.add_leaf(dst_parent, t.node(v).label);
      return;
    }
    int id = d.add_internal(dst_parent, ExtWeight{});
    comb_children(v, id);
  };
  comb_children = [&](int v, int dst) {
    const auto& ch = t.node(v).children;
    // Left comb: dst = ( comb(ch[0..m-2]), ch[m-1] ).
    std::function<void(std::size_t, int)> chain = [&](std::size_t hi, int node) {
      if (hi == 1) {
        attach(ch[0], node);
        attach(ch[1], node);
        return;
      }
      int inner = d.add_internal(node, ExtWeight{});
      chain(hi - 1, inner);
      attach(ch[hi], node);
    };
    if (ch.size() == 1) {
      attach(ch[0], dst);
    } else {
      chain(ch.size() - 1, dst);
    }
  };
  comb_children(t.root(), d.root());
  return out;
}

// Chart-frame data used to sign the orientation-cover gluings.
struct OrientationRules {
  int n = 0;
  assoc::CubeDecomposition charts;
  std::map<std::string, int> chart_index;
  int rho_sign = 0;
  std::map<std::string, int> twist_sign_cache;  // face key + arc

  explicit OrientationRules(int n_);

  int chart_of(const PlanarMetricTree& shape) const {
    auto it = chart_index.find(shape.planar_encoding());
    if (it == chart_index.end()) throw NumericError("orientation rules: unknown chart");
    return it->second;
  }

  // Degree sign of the re-rooting self-map of K_n, computed on one chart.
  int compute_rho_sign(int chart) const;

  // Gluing sign of the twist at the edge spanning `arc` on the face with
  // standard shape `face`.
  int twist_gluing_sign(const PlanarMetricTree& face, std::pair<int, int> arc);

  // Number of rotations taking `t` to its label-0-rooted description.
  static int rotations_to_root0(const PlanarMetricTree& t);

  // Whether the twist at `edge` of the labeled object `t` is an
  // orientation-compatible identification.
  bool twist_allowed(const PlanarMetricTree& t, int edge);
};

OrientationRules::OrientationRules(int n_) : n(n_), charts(assoc::cube_decomposition(n_)) {
  for (int c = 0; c < static_cast<int>(charts.charts.size()); ++c)
    chart_index[charts.charts[c].planar_encoding()] = c;
  rho_sign = compute_rho_sign(0);
  if (n >= 4 && compute_rho_sign(1) != rho_sign)
    throw NumericError("orientation rules: rotation sign is chart-dependent");
}

int OrientationRules::compute_rho_sign(int chart) const {
  const PlanarMetricTree& b = charts.charts[chart];
  PlanarMetricTree rotated = rotate_root(b);
  PlanarMetricTree image = standard_shape(rotated);
  int target = chart_of(image);

  // Match edges by their splits of the full mark set {0..n}; labels in the
  // rotated tree still name the original marks. Splits are keyed by the
  // side not containing mark 0.
  auto split_key = [&](std::vector<int> side) {
    std::sort(side.begin(), side.end());
    if (!side.empty() && side[0] == 0) {
      std::vector<int> comp;
      std::vector<char> in(n + 1, 0);
      for (int x : side) in[x] = 1;
      for (int m = 0; m <= n; ++m)
        if (!in[m]) comp.push_back(m);
      side = comp;
    }
    std::string key;
    for (int x : side) key += std::to_string(x) + ",";
    return key;
  };

  auto edge_splits = [&](const PlanarMetricTree& t) {
    std::vector<std::string> keys;
    for (const auto& clade : clades(t.underlying)) keys.push_back(split_key(clade));
    return keys;
  };

  auto src_keys = edge_splits(b);
  auto dst_keys = edge_splits(rotated);
  std::vector<int> pi(src_keys.size());
  for (std::size_t i = 0; i < src_keys.size(); ++i) {
    auto it = std::find(dst_keys.begin(), dst_keys.end(), src_keys[i]);
    if (it == dst_keys.end()) throw NumericError("orientation rules: rotation split mismatch");
    pi[i] = static_cast<int>(it - dst_keys.begin());
  }
  return charts.orientation[chart] * charts.orientation[target] * perm_sign(pi);
}

int OrientationRules::twist_gluing_sign(const PlanarMetricTree& face, std::pair<int, int> arc) {
  std::string key = face.planar_encoding() + "|" + std::to_string(arc.first) + "-" +
                    std::to_string(arc.second);
  auto cached = twist_sign_cache.find(key);
  if (cached != twist_sign_cache.end()) return cached->second;

  PlanarMetricTree b = comb_completion(face);
  int e = edge_with_leaf_arc(b, arc);
  if (e < 0) throw NumericError("orientation rules: completion lost the twist edge");
  PlanarMetricTree eb = standard_shape(reverse_at_edge(b, e).first);
  int cb = chart_of(standard_shape(b));
  int ceb = chart_of(eb);

  auto arcs_of = [](const PlanarMetricTree& t) {
    std::vector<std::pair<int, int>> arcs;
    for (int ed : t.underlying.internal_edges()) arcs.push_back(edge_leaf_arc(t, ed));
    return arcs;
  };
  auto a_src = arcs_of(b);
  auto a_dst = arcs_of(eb);
  auto reflect_arc = [&](std::pair<int, int> beta) {
    if (beta.first >= arc.first && beta.second <= arc.second)
      return std::make_pair(arc.first + arc.second - beta.second,
                            arc.first + arc.second - beta.first);
    return beta;
  };
  int pos_e = -1, pos_e_img = -1;
  std::vector<int> pi;
  for (std::size_t i = 0; i < a_src.size(); ++i) {
    auto img = reflect_arc(a_src[i]);
    auto it = std::find(a_dst.begin(), a_dst.end(), img);
    if (it == a_dst.end()) throw NumericError("orientation rules: twist arc mismatch");
    int j = static_cast<int>(it - a_dst.begin());
    if (a_src[i] == arc) {
      pos_e = static_cast<int>(i);
      pos_e_img = j;
    } else {
      pi.push_back(j);
    }
  }
  // Compress tangential image indices to ranks.
  std::vector<int> sorted = pi;
  std::sort(sorted.begin(), sorted.end());
  for (int& x : pi) x = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), x) - sorted.begin());

  int sign = -1 * charts.orientation[cb] * charts.orientation[ceb] *
             (((pos_e + pos_e_img) % 2 == 0) ? 1 : -1) * perm_sign(pi);
  twist_sign_cache[key] = sign;
  return sign;
}

int OrientationRules::rotations_to_root0(const PlanarMetricTree& t) {
  PlanarMetricTree cur = t;
  for (int k = 0; k <= cur.leaf_count() + 1; ++k) {
    if (cur.underlying.root_label() == 0) return k;
    cur = rotate_root(cur);
  }
  throw ValidationError("orientation rules: no mark labeled 0");
}

bool OrientationRules::twist_allowed(const PlanarMetricTree& t, int edge) {
  int chi = twist_gluing_sign(standard_shape(t), edge_leaf_arc(t, edge));
  if (rho_sign == -1) {
    int k = rotations_to_root0(t);
    int kp = rotations_to_root0(reverse_at_edge(t, edge).first);
    if ((k + kp) % 2 == 1) chi = -chi;
  }
  return chi == +1;
}

}  // namespace

QuotientComplex enumerate_complex(int n, CoverKind cover) {
  if (n < 3 || n > 5)
    throw ResourceError("enumerate_complex: supported for 3 <= n <= 5");

  QuotientComplex c;
  c.n = n;
  c.cover = cover;

  auto shapes = planar_trees(n, ExtWeight::infinite());
  auto sigmas = all_sigmas(n);
  std::unordered_map<std::string, int> index;
  for (const auto& shape : shapes) {
    for (const auto& sigma : sigmas) {
      CellLabel cell{relabel(shape, sigma)};
      std::string key = cell.key();
      if (index.emplace(key, static_cast<int>(c.objects.size())).second)
        c.objects.push_back(std::move(cell));
    }
  }
  int total = static_cast<int>(c.objects.size());
  c.forest.assign(total, {});
  c.object_class.assign(total, -1);

  std::unique_ptr<OrientationRules> rules;
  if (cover == CoverKind::Orientation) rules = std::make_unique<OrientationRules>(n);

  auto neighbors = [&](int oi, std::vector<std::pair<int, GenStep>>& out) {
    out.clear();
    const PlanarMetricTree& t = c.objects[oi].tree;
    for (int e : t.underlying.internal_edges()) {
      if (!t.underlying.edge_weight(e).is_infinite()) continue;
      if (rules && !rules->twist_allowed(t, e)) continue;
      GenStep g{0, edge_leaf_arc(t, e)};
      auto img = reverse_at_edge(t, e).first;
      auto it = index.find(img.planar_encoding());
      if (it == index.end()) throw NumericError("moduli: twist image missing");
      out.emplace_back(it->second, g);
    }
    if (cover != CoverKind::Kapranov) {
      auto img = rotate_root(t);
      auto it = index.find(img.planar_encoding());
      if (it == index.end()) throw NumericError("moduli: rotation image missing");
      out.emplace_back(it->second, GenStep{1, {0, 0}});
    }
    if (cover == CoverKind::Full) {
      auto img = reflect(t);
      auto it = index.find(img.planar_encoding());
      if (it == index.end()) throw NumericError("moduli: reflection image missing");
      out.emplace_back(it->second, GenStep{2, {0, 0}});
    }
  };

  // BFS over the generator graph.
  std::vector<int> component(total, -1);
  int comp_count = 0;
  std::vector<std::pair<int, GenStep>> nbrs;
  for (int start = 0; start < total; ++start) {
    if (component[start] >= 0) continue;
    int comp = comp_count++;
    std::queue<int> q;
    component[start] = comp;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      neighbors(v, nbrs);
      for (const auto& [w, gen] : nbrs) {
        if (component[w] < 0) {
          component[w] = comp;
          c.forest[w] = {v, gen.kind, gen.arc};
          q.push(w);
        }
      }
    }
  }

  // Classes sorted by (dimension, representative key) for determinism.
  std::vector<int> comp_rep(comp_count, -1);
  for (int oi = 0; oi < total; ++oi) {
    int& rep = comp_rep[component[oi]];
    if (rep < 0 || c.objects[oi].key() < c.objects[rep].key()) rep = oi;
  }
  std::vector<int> order(comp_count);
  for (int i = 0; i < comp_count; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    int da = c.objects[comp_rep[a]].dim(), db = c.objects[comp_rep[b]].dim();
    if (da != db) return da < db;
    return c.objects[comp_rep[a]].key() < c.objects[comp_rep[b]].key();
  });
  std::vector<int> comp_to_class(comp_count);
  for (int i = 0; i < comp_count; ++i) comp_to_class[order[i]] = i;
  c.class_rep.resize(comp_count);
  c.class_dim.resize(comp_count);
  c.classes_by_dim.assign(n - 1, {});
  for (int i = 0; i < comp_count; ++i) {
    int cls = comp_to_class[i];
    c.class_rep[cls] = comp_rep[i];
    c.class_dim[cls] = c.objects[comp_rep[i]].dim();
  }
  for (int oi = 0; oi < total; ++oi) c.object_class[oi] = comp_to_class[component[oi]];
  for (int cls = 0; cls < comp_count; ++cls) c.classes_by_dim[c.class_dim[cls]].push_back(cls);

  // Boundary on representatives, checked against every member.
  auto boundary_of = [&](int oi) {
    std::map<int, int> b;
    for (const auto& r : refinements(c.objects[oi].tree)) {
      auto it = index.find(r.planar_encoding());
      if (it == index.end()) throw NumericError("moduli: refinement image missing");
      b[c.object_class[it->second]]++;
    }
    return b;
  };
  c.boundary.resize(comp_count);
  for (int cls = 0; cls < comp_count; ++cls) c.boundary[cls] = boundary_of(c.class_rep[cls]);
  for (int oi = 0; oi < total; ++oi) {
    if (boundary_of(oi) != c.boundary[c.object_class[oi]])
      throw NumericError("moduli: boundary not class-invariant");
  }
  return c;
}

std::vector<std::int64_t> QuotientComplex::cell_counts() const {
  std::vector<std::int64_t> out;
  for (const auto& d : classes_by_dim) out.push_back(static_cast<std::int64_t>(d.size()));
  return out;
}

int QuotientComplex::class_size(int cls) const {
  int count = 0;
  for (int x : object_class)
    if (x == cls) ++count;
  return count;
}

std::int64_t euler_characteristic(const QuotientComplex& c) {
  std::int64_t chi = 0, sign = 1;
  for (const auto& d : c.classes_by_dim) {
    chi += sign * static_cast<std::int64_t>(d.size());
    sign = -sign;
  }
  return chi;
}

std::int64_t tile_count(const QuotientComplex& c) {
  return static_cast<std::int64_t>(c.classes_by_dim.back().size());
}

CubeClasses enumerate_cubes(const QuotientComplex& c) {
  if (c.cover != CoverKind::Orientation)
    throw ValidationError("cube classes are defined for the orientation cover");
  CubeClasses out;
  out.n = c.n;
  // A cube class is a rotation orbit of (binary planar tree, labeling); the
  // root mark carries a distinct label, so each orbit is free and contains
  // exactly one member rooted at label 0.
  std::set<std::string> seen;
  auto shapes = planar_binary_trees(c.n);
  auto sigmas = all_sigmas(c.n);
  for (const auto& shape : shapes) {
    for (const auto& sigma : sigmas) {
      PlanarMetricTree t = relabel(shape, sigma);
      int guard = 0;
      while (t.underlying.root_label() != 0) {
        t = rotate_root(t);
        if (++guard > c.n + 1) throw NumericError("cube normalization failed");
      }
      if (seen.insert(t.planar_encoding()).second) out.reps.push_back(std::move(t));
    }
  }
  std::sort(out.reps.begin(), out.reps.end(),
            [](const PlanarMetricTree& a, const PlanarMetricTree& b) {
              return a.planar_encoding() < b.planar_encoding();
            });
  return out;
}

std::int64_t cube_count(const QuotientComplex& c) {
  auto cubes = enumerate_cubes(c);
  std::int64_t count = static_cast<std::int64_t>(cubes.reps.size());
  std::int64_t expect = tile_count(c) * assoc::catalan(c.n);
  std::int64_t formula = (std::int64_t{1} << (c.n - 1)) * treespace::count_binary_topologies(c.n);
  if (count != expect || count != formula)
    throw NumericError("cube_count: enumeration disagrees with the tile x catalan identity");
  return count;
}

std::int64_t vertex_figure(const QuotientComplex& c, int vertex_class) {
  if (c.cover != CoverKind::Orientation)
    throw ValidationError("vertex_figure is defined for the orientation cover");
  if (vertex_class < 0 || vertex_class >= static_cast<int>(c.class_rep.size()) ||
      c.class_dim[vertex_class] != 0)
    throw ValidationError("vertex_figure: not a vertex class");
  int size = c.class_size(vertex_class);
  if (size % (c.n + 1) != 0)
    throw NumericError("vertex_figure: class size not divisible by n+1");
  return size / (c.n + 1);
}

namespace {

std::uint32_t mask_of(const std::vector<int>& clade) {
  std::uint32_t m = 0;
  for (int l : clade) m |= (1u << l);
  return m;
}

PlanarMetricTree rotate_to_root0(const PlanarMetricTree& tree) {
  PlanarMetricTree t = tree;
  int guard = 0;
  while (t.underlying.root_label() != 0) {
    t = rotate_root(t);
    if (++guard > t.leaf_count() + 2)
      throw ValidationError("fold: labeling does not contain mark 0");
  }
  return t;
}

// Parity of the embedding against the min-label-sorted embedding: the
// number of internal vertices whose child blocks are not in increasing
// order of minimal leaf label.
int embedding_sign(const MetricTree& t) {
  int inversions = 0;
  std::function<int(int)> min_leaf = [&](int v) -> int {
    if (t.is_leaf(v)) return t.node(v).label;
    int best = 1 << 30;
    for (int ch : t.node(v).children) best = std::min(best, min_leaf(ch));
    return best;
  };
  for (int v = 0; v < t.node_count(); ++v) {
    if (t.is_leaf(v)) continue;
    const auto& ch = t.node(v).children;
    for (std::size_t i = 0; i + 1 < ch.size(); ++i)
      if (min_leaf(ch[i]) > min_leaf(ch[i + 1])) ++inversions;
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace

treespace::SuspensionCell fold_cube(const PlanarMetricTree& cube_rep) {
  PlanarMetricTree t = rotate_to_root0(cube_rep);
  if (!t.underlying.is_binary()) throw ValidationError("fold_cube: not a binary tree");
  treespace::SuspensionCell cell;
  cell.kind = treespace::SuspensionCell::Kind::Cone;
  cell.sign = embedding_sign(t.underlying);
  for (const auto& clade : clades(t.underlying)) cell.tn_cell.push_back(mask_of(clade));
  std::sort(cell.tn_cell.begin(), cell.tn_cell.end());
  return cell;
}

treespace::SuspensionCell fold_cell(const CellLabel& cell) {
  PlanarMetricTree t = rotate_to_root0(cell.tree);
  const MetricTree& m = t.underlying;
  bool has_infinite = false;
  for (int e : m.internal_edges())
    if (m.edge_weight(e).is_infinite()) has_infinite = true;

  if (m.internal_edges().empty()) {
    treespace::SuspensionCell out;
    out.kind = treespace::SuspensionCell::Kind::ConeNeg;  // the corolla vertex of BHV+
    return out;
  }
  if (has_infinite) {
    // Contract finite edges; the surviving infinite edges name the T_n cell
    // on the compactification side.
    MetricTree contracted;
    contracted.add_root(m.root_label());
    std::function<void(int, int)> build = [&](int v, int parent) {
      for (int ch : m.node(v).children) {
        if (m.is_leaf(ch)) {
          contracted.add_leaf(parent, m.node(ch).label);
        } else if (!m.edge_weight(ch).is_infinite()) {
          build(ch, parent);
        } else {
          int id = contracted.add_internal(parent, ExtWeight::infinite());
          build(ch, id);
        }
      }
    };
    build(m.root(), contracted.root());
    treespace::SuspensionCell out;
    out.kind = treespace::SuspensionCell::Kind::Cone;
    out.sign = +1;
    for (const auto& clade : clades(contracted)) out.tn_cell.push_back(mask_of(clade));
    std::sort(out.tn_cell.begin(), out.tn_cell.end());
    return out;
  }
  if (m.is_binary()) return fold_cube(t);
  throw ValidationError("fold_cell: unsupported cell shape");
}

std::int64_t fiber_count(const QuotientComplex& c, const treespace::SuspensionCell& target) {
  auto cubes = enumerate_cubes(c);
  std::int64_t count = 0;
  for (const auto& rep : cubes.reps)
    if (fold_cube(rep) == target) ++count;
  return count;
}

bool orientability(const QuotientComplex& c) {
  if (c.n != 4) throw ValidationError("orientability: supported for n = 4 only");

  // Morphism transport along the BFS forest.
  auto path_from_root = [&](int obj) {
    std::vector<GenStep> steps;
    int v = obj;
    while (c.forest[v].pred >= 0) {
      steps.push_back(GenStep{c.forest[v].gen_kind, c.forest[v].twist_arc});
      v = c.forest[v].pred;
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };
  auto transport = [&](const PlanarMetricTree& refined, int from_obj, int to_obj) {
    PlanarMetricTree t = refined;
    auto up = path_from_root(from_obj);
    for (auto it = up.rbegin(); it != up.rend(); ++it) t = apply_gen(t, *it, true);
    for (const auto& g : path_from_root(to_obj)) t = apply_gen(t, g, false);
    return t;
  };

  // Boundary walk of each tile: vertices and edges are the 2- and 1-bracket
  // refinements of the tile representative.
  struct Side {
    int tile_cls;
    int side_index;
    int edge_obj;      // object index of this side's edge label
    std::string start_key, end_key;
    PlanarMetricTree start_tree, end_tree;
  };
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(c.objects.size()); ++i)
    index[c.objects[i].key()] = i;

  std::map<int, std::vector<Side>> sides_by_edge_class;
  const auto& tiles = c.classes_by_dim.back();
  for (int ti = 0; ti < static_cast<int>(tiles.size()); ++ti) {
    int cls = tiles[ti];
    const PlanarMetricTree& rep = c.objects[c.class_rep[cls]].tree;
    auto edge_objs = refinements(rep);
    std::vector<PlanarMetricTree> vert_objs;
    std::set<std::string> seen;
    for (const auto& e : edge_objs)
      for (const auto& v : refinements(e))
        if (seen.insert(v.planar_encoding()).second) vert_objs.push_back(v);
    if (edge_objs.size() != 5 || vert_objs.size() != 5)
      throw NumericError("orientability: tile is not a pentagon");

    // Pentagon incidence: edge i touches vertex j if j refines i.
    std::vector<std::vector<int>> edge_verts(5);
    for (int i = 0; i < 5; ++i) {
      std::set<std::string> vkeys;
      for (const auto& v : refinements(edge_objs[i])) vkeys.insert(v.planar_encoding());
      for (int j = 0; j < 5; ++j)
        if (vkeys.count(vert_objs[j].planar_encoding())) edge_verts[i].push_back(j);
      if (edge_verts[i].size() != 2) throw NumericError("orientability: bad pentagon edge");
    }
    // Walk the cycle.
    std::vector<int> edge_order{0};
    std::vector<int> vert_order{edge_verts[0][0], edge_verts[0][1]};
    std::vector<char> used(5, 0);
    used[0] = 1;
    while (edge_order.size() < 5) {
      int at = vert_order.back();
      bool advanced = false;
      for (int e = 0; e < 5 && !advanced; ++e) {
        if (used[e]) continue;
        if (edge_verts[e][0] == at || edge_verts[e][1] == at) {
          used[e] = 1;
          edge_order.push_back(e);
          vert_order.push_back(edge_verts[e][0] == at ? edge_verts[e][1] : edge_verts[e][0]);
          advanced = true;
        }
      }
      if (!advanced) throw NumericError("orientability: pentagon walk failed");
    }
    for (int s = 0; s < 5; ++s) {
      int e = edge_order[s];
      auto it = index.find(edge_objs[e].planar_encoding());
      if (it == index.end()) throw NumericError("orientability: edge object missing");
      Side side;
      side.tile_cls = ti;
      side.side_index = s;
      side.edge_obj = it->second;
      side.start_tree = vert_objs[vert_order[s]];
      side.end_tree = vert_objs[vert_order[s + 1]];
      side.start_key = side.start_tree.planar_encoding();
      side.end_key = side.end_tree.planar_encoding();
      sides_by_edge_class[c.object_class[it->second]].push_back(std::move(side));
    }
  }

  // Pair sides and build parity constraints between tiles.
  std::vector<std::vector<std::pair<int, int>>> constraints(tiles.size());  // (tile, relation)
  for (auto& [ecls, sides] : sides_by_edge_class) {
    if (sides.size() != 2) throw NumericError("orientability: edge not shared by two sides");
    const Side& s1 = sides[0];
    const Side& s2 = sides[1];
    PlanarMetricTree start1 = transport(s1.start_tree, s1.edge_obj, s2.edge_obj);
    PlanarMetricTree end1 = transport(s1.end_tree, s1.edge_obj, s2.edge_obj);
    std::string a = start1.planar_encoding(), b = end1.planar_encoding();
    int relation;
    if (a == s2.start_key && b == s2.end_key) {
      relation = -1;  // same traversal direction: tiles must take opposite signs
    } else if (a == s2.end_key && b == s2.start_key) {
      relation = +1;
    } else {
      throw NumericError("orientability: transported endpoints do not match");
    }
    constraints[s1.tile_cls].emplace_back(s2.tile_cls, relation);
    constraints[s2.tile_cls].emplace_back(s1.tile_cls, relation);
  }

  std::vector<int> color(tiles.size(), 0);
  for (std::size_t start = 0; start < tiles.size(); ++start) {
    if (color[start] != 0) continue;
    color[start] = 1;
    std::queue<std::size_t> q;
    q.push(start);
    while (!q.empty()) {
      std::size_t v = q.front();
      q.pop();
      for (auto [w, rel] : constraints[v]) {
        int expect = color[v] * rel;
        if (color[w] == 0) {
          color[w] = expect;
          q.push(static_cast<std::size_t>(w));
        } else if (color[w] != expect) {
          return false;
        }
      }
    }
  }
  return true;
}

}  // namespace moduli
}  // namespace eigentree
