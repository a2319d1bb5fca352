#include "eigentree/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "eigentree/errors.hpp"

namespace eigentree {
namespace spectra {

SymmetricMatrix SymmetricMatrix::diagonal(const std::vector<double>& d) {
  SymmetricMatrix q;
  q.n = static_cast<int>(d.size());
  q.a.assign(static_cast<std::size_t>(q.n) * q.n, 0.0);
  for (int i = 0; i < q.n; ++i) q.at(i, i) = d[i];
  return q;
}

void SymmetricMatrix::validate() const {
  if (n < 2) throw ValidationError("matrix: need n >= 2");
  if (static_cast<int>(a.size()) != n * n) throw ValidationError("matrix: bad storage size");
  double mx = 0.0;
  for (double x : a) mx = std::max(mx, std::abs(x));
  double tol = 1e-12 * mx;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(at(i, j) - at(j, i)) > tol)
        throw ValidationError("matrix: not symmetric within tolerance");
}

EigenResult eigenvalues(const SymmetricMatrix& q, double tol) {
  q.validate();
  int n = q.n;
  std::vector<double> a = q.a;
  // Symmetrize exactly so the sweeps preserve symmetry bit-for-bit.
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 0.5 * (a[i * n + j] + a[j * n + i]);
      a[i * n + j] = a[j * n + i] = v;
    }
  std::vector<double> v(static_cast<std::size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;

  double norm = 0.0;
  for (double x : a) norm += x * x;
  norm = std::sqrt(norm);
  auto off = [&]() {
    double s = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) s += a[i * n + j] * a[i * n + j];
    return std::sqrt(s);
  };

  const int max_sweeps = 60;
  int sweep = 0;
  while (off() > tol * std::max(norm, 1e-300)) {
    if (++sweep > max_sweeps) throw NumericError("eigenvalues: Jacobi did not converge");
    for (int p = 0; p < n - 1; ++p) {
      for (int r = p + 1; r < n; ++r) {
        double apq = a[p * n + r];
        if (apq == 0.0) continue;
        double app = a[p * n + p], aqq = a[r * n + r];
        double theta = (aqq - app) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) /
                   (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double cs = 1.0 / std::sqrt(t * t + 1.0);
        double sn = t * cs;
        for (int k = 0; k < n; ++k) {
          double akp = a[k * n + p], akq = a[k * n + r];
          a[k * n + p] = cs * akp - sn * akq;
          a[k * n + r] = sn * akp + cs * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a[p * n + k], aqk = a[r * n + k];
          a[p * n + k] = cs * apk - sn * aqk;
          a[r * n + k] = sn * apk + cs * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = v[k * n + p], vkq = v[k * n + r];
          v[k * n + p] = cs * vkp - sn * vkq;
          v[k * n + r] = sn * vkp + cs * vkq;
        }
      }
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a[i * n + i] < a[j * n + j]; });
  EigenResult out;
  out.spectrum.values.resize(n);
  out.frame.assign(static_cast<std::size_t>(n) * n, 0.0);
  for (int k = 0; k < n; ++k) {
    out.spectrum.values[k] = a[order[k] * n + order[k]];
    for (int i = 0; i < n; ++i) out.frame[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

GapVector gap_vector(const Spectrum& s) {
  int n = s.n();
  if (n < 2) throw ValidationError("gap_vector: need n >= 2");
  double range = s.values[n - 1] - s.values[0];
  if (range <= 0.0) throw NumericError("gap_vector: degenerate spectrum (scalar matrix)");
  GapVector g;
  g.deltas.resize(n - 1);
  double partial = 0.0;
  for (int k = 0; k + 2 < n; ++k) {
    g.deltas[k] = (s.values[k + 1] - s.values[k]) / range;
    partial += g.deltas[k];
  }
  // The residual makes the running total land on exactly 1.0.
  double last = 1.0 - partial;
  g.deltas[n - 2] = last < 0.0 ? 0.0 : last;
  return g;
}

NormalForm normal_form(const Spectrum& s) {
  NormalForm nf;
  nf.delta = gap_vector(s);  // throws on degenerate input
  nf.offset = s.values.front();
  nf.scale = s.values.back() - s.values.front();
  return nf;
}

Spectrum spectrum_from_normal_form(const NormalForm& nf) {
  Spectrum s;
  s.values.push_back(nf.offset);
  for (double d : nf.delta.deltas) s.values.push_back(s.values.back() + d * nf.scale);
  return s;
}

ConfigSplit config_split(const std::vector<double>& v) {
  int n = static_cast<int>(v.size());
  if (n < 2) throw ValidationError("config_split: need n >= 2");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](int i, int j) { return v[i] < v[j]; });
  for (int k = 0; k + 1 < n; ++k)
    if (v[idx[k]] == v[idx[k + 1]])
      throw ValidationError("config_split: coincident entries are not in configuration space");
  ConfigSplit out;
  Spectrum s;
  for (int k = 0; k < n; ++k) {
    s.values.push_back(v[idx[k]]);
    out.sigma.push_back(idx[k] + 1);
  }
  out.form = normal_form(s);
  return out;
}

std::vector<double> config_join(const ConfigSplit& s) {
  Spectrum sp = spectrum_from_normal_form(s.form);
  std::vector<double> v(sp.values.size());
  for (std::size_t k = 0; k < sp.values.size(); ++k) v[s.sigma[k] - 1] = sp.values[k];
  return v;
}

SymCoeffs elem_symmetric(const std::vector<double>& v) {
  SymCoeffs out;
  out.e.assign(v.size(), 0.0);
  // Multiply out prod (t - v_k), tracking e_1..e_n.
  for (std::size_t k = 0; k < v.size(); ++k) {
    for (std::size_t j = k + 1; j-- > 1;) out.e[j] += v[k] * out.e[j - 1];
    out.e[0] += v[k];
  }
  return out;
}

namespace {

double binom(int n, int k) {
  if (k < 0 || k > n) return 0.0;
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

SymCoeffs affine_on_e(const SymCoeffs& e, double a, double b) {
  if (!(a > 0.0)) throw ValidationError("affine_on_e: need a > 0");
  int n = static_cast<int>(e.e.size());
  SymCoeffs out;
  out.e.assign(n, 0.0);
  for (int k = 1; k <= n; ++k) {
    double sum = 0.0;
    for (int l = 0; l <= k; ++l) {
      double el = l == 0 ? 1.0 : e.e[l - 1];
      sum += binom(n - l, n - k) * std::pow(a, l) * std::pow(b, k - l) * el;
    }
    out.e[k - 1] = sum;
  }
  return out;
}

double discriminant(const std::vector<double>& v, bool ordered_pairs) {
  if (v.size() < 2) throw ValidationError("discriminant: need n >= 2");
  double prod = 1.0;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t k = i + 1; k < v.size(); ++k) {
      double d = v[i] - v[k];
      prod *= d * d;
    }
  return ordered_pairs ? prod * prod : prod;
}

StratumPartition stratum(const Spectrum& s, double rel_tol) {
  if (!(rel_tol >= 0.0 && rel_tol < 1.0)) throw ValidationError("stratum: rel_tol in [0,1)");
  int n = s.n();
  if (n < 1) throw ValidationError("stratum: empty spectrum");
  StratumPartition out;
  out.tolerance = rel_tol;
  if (n == 1 || s.values.back() == s.values.front()) {
    std::vector<int> all(n);
    std::iota(all.begin(), all.end(), 1);
    out.blocks.push_back(all);
    return out;
  }
  GapVector g = gap_vector(s);
  std::vector<int> block{1};
  for (int k = 0; k + 1 < n; ++k) {
    if (g.deltas[k] <= rel_tol) {
      block.push_back(k + 2);
    } else {
      out.blocks.push_back(block);
      block = {k + 2};
    }
  }
  out.blocks.push_back(block);
  return out;
}

Dendrogram resolve_dendrogram(const Spectrum& s) {
  int n = s.n();
  if (n < 2) throw ValidationError("resolve_tree: need n >= 2");
  GapVector g = gap_vector(s);  // throws on degenerate input

  // Single linkage on the line: adjacent clusters merge at exactly their
  // separating gap, in increasing gap order, leftmost first on ties.
  struct Cluster {
    int node;       // node id in the output tree (-1 while pending)
    double height;  // merge height of that node (0 for leaves)
    std::vector<int> members;
  };

  // Build bottom-up with an id scheme, then convert to MetricTree.
  struct Proto {
    int left = -1, right = -1;  // proto indices, -1 for leaves
    int leaf_label = 0;
    double height = 0.0;
  };
  std::vector<Proto> protos;
  std::vector<int> active;  // proto index per current cluster, left to right
  for (int i = 0; i < n; ++i) {
    protos.push_back(Proto{-1, -1, i + 1, 0.0});
    active.push_back(i);
  }
  std::vector<double> gaps(g.deltas);
  std::vector<int> gap_pos(n - 1);
  std::iota(gap_pos.begin(), gap_pos.end(), 0);
  while (active.size() > 1) {
    // Smallest remaining gap; ties leftmost.
    std::size_t best = 0;
    for (std::size_t i = 1; i < gaps.size(); ++i)
      if (gaps[i] < gaps[best]) best = i;
    Proto p;
    p.left = active[best];
    p.right = active[best + 1];
    p.height = gaps[best];
    int id = static_cast<int>(protos.size());
    protos.push_back(p);
    active[best] = id;
    active.erase(active.begin() + static_cast<long>(best) + 1);
    gaps.erase(gaps.begin() + static_cast<long>(best));
  }

  Dendrogram out;
  out.tree.add_root();
  out.merge_heights.assign(1, protos.back().height);
  std::function<void(int, int)> build = [&](int proto, int parent) {
    const Proto& p = protos[proto];
    for (int side : {p.left, p.right}) {
      const Proto& q = protos[side];
      if (q.left < 0) {
        out.tree.add_leaf(parent, q.leaf_label);
      } else {
        int id = out.tree.add_internal(parent, ExtWeight(p.height - q.height));
        out.merge_heights.resize(out.tree.node_count(), 0.0);
        out.merge_heights[id] = q.height;
        build(side, id);
      }
    }
  };
  build(static_cast<int>(protos.size()) - 1, out.tree.root());
  out.merge_heights.resize(out.tree.node_count(), 0.0);
  return out;
}

std::vector<std::vector<int>> Dendrogram::cut(double h) const {
  // Components after removing internal nodes whose merge height exceeds h.
  std::vector<std::vector<int>> blocks;
  std::function<void(int, std::vector<int>*)> walk = [&](int v, std::vector<int>* acc) {
    if (tree.is_leaf(v)) {
      if (acc) {
        acc->push_back(tree.node(v).label);
      } else {
        blocks.push_back({tree.node(v).label});
      }
      return;
    }
    bool joined = merge_heights[v] <= h;
    std::vector<int>* next = acc;
    std::vector<int> local;
    if (!acc && joined) next = &local;
    for (int c : tree.node(v).children) walk(c, joined ? next : nullptr);
    if (!acc && joined) blocks.push_back(local);
  };
  walk(tree.root(), nullptr);
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end());
  return blocks;
}

MetricTree resolve_tree(const Spectrum& s) { return resolve_dendrogram(s).tree; }

std::vector<double> lift_config(const SymmetricMatrix& q, const std::vector<int>& sigma,
                                double tol) {
  EigenResult r = eigenvalues(q);
  int n = r.spectrum.n();
  if (static_cast<int>(sigma.size()) != n) throw ValidationError("lift_config: bad permutation");
  std::vector<char> seen(n + 1, 0);
  for (int x : sigma) {
    if (x < 1 || x > n || seen[x]) throw ValidationError("lift_config: bad permutation");
    seen[x] = 1;
  }
  double range = r.spectrum.values.back() - r.spectrum.values.front();
  if (range <= 0.0) throw NumericError("lift_config: on the discriminant (scalar matrix)");
  for (int k = 0; k + 1 < n; ++k) {
    double gap = r.spectrum.values[k + 1] - r.spectrum.values[k];
    if (gap <= tol * range)
      throw NumericError("lift_config: on the discriminant (coincident eigenvalues)");
  }
  std::vector<double> v(n);
  for (int k = 0; k < n; ++k) v[sigma[k] - 1] = r.spectrum.values[k];
  return v;
}

}  // namespace spectra
}  // namespace eigentree
