#include "eigentree/graph_cert.hpp"

#include <algorithm>
#include <map>
#include <queue>

namespace eigentree {

void SmallGraph::add_edge(int a, int b) {
  adj[a].push_back(b);
  adj[b].push_back(a);
  std::sort(adj[a].begin(), adj[a].end());
  std::sort(adj[b].begin(), adj[b].end());
}

int SmallGraph::edge_count() const {
  int s = 0;
  for (const auto& nb : adj) s += static_cast<int>(nb.size());
  return s / 2;
}

bool SmallGraph::is_regular(int degree) const {
  for (const auto& nb : adj)
    if (static_cast<int>(nb.size()) != degree) return false;
  return true;
}

int SmallGraph::girth() const {
  int best = -1;
  // BFS from every vertex; a non-tree edge closing at depths d1, d2 gives a
  // cycle of length d1 + d2 + 1.
  for (int s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1), parent(n, -1);
    std::queue<int> q;
    dist[s] = 0;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v]) {
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          q.push(w);
        } else if (w != parent[v]) {
          int len = dist[v] + dist[w] + 1;
          if (best < 0 || len < best) best = len;
        }
      }
    }
  }
  return best;
}

namespace {

// Iterated degree refinement (1-dimensional Weisfeiler-Leman).
std::vector<int> wl_colors(const SmallGraph& g) {
  std::vector<int> col(g.n, 0);
  for (;;) {
    std::map<std::pair<int, std::vector<int>>, int> next_ids;
    std::vector<int> next(g.n);
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> sig;
      for (int w : g.adj[v]) sig.push_back(col[w]);
      std::sort(sig.begin(), sig.end());
      auto key = std::make_pair(col[v], sig);
      auto it = next_ids.find(key);
      if (it == next_ids.end()) it = next_ids.emplace(key, static_cast<int>(next_ids.size())).first;
      next[v] = it->second;
    }
    if (next == col) return col;
    col = std::move(next);
  }
}

struct CertSearch {
  const SmallGraph& g;
  std::vector<int> colors;
  std::vector<int> order;       // partial vertex ordering
  std::vector<char> used;
  std::string best;             // best complete certificate so far
  std::string prefix;           // bits of the partial ordering

  explicit CertSearch(const SmallGraph& g_) : g(g_), used(g_.n, 0) { colors = wl_colors(g_); }

  // Adjacency bits of `order[k]` against order[0..k-1].
  std::string row_bits(int v, int k) const {
    std::string s(k, '0');
    for (int i = 0; i < k; ++i)
      if (std::binary_search(g.adj[v].begin(), g.adj[v].end(), order[i])) s[i] = '1';
    return s;
  }

  void search() {
    int k = static_cast<int>(order.size());
    if (k == g.n) {
      if (best.empty() || prefix < best) best = prefix;
      return;
    }
    // Candidates: unused vertices of the minimal remaining WL color.
    int min_color = -1;
    for (int v = 0; v < g.n; ++v)
      if (!used[v] && (min_color < 0 || colors[v] < min_color)) min_color = colors[v];
    for (int v = 0; v < g.n; ++v) {
      if (used[v] || colors[v] != min_color) continue;
      std::string bits = row_bits(v, k);
      std::string next_prefix = prefix + bits;
      // Prune orderings already worse than the best certificate.
      if (!best.empty() && next_prefix > best.substr(0, next_prefix.size())) continue;
      used[v] = 1;
      order.push_back(v);
      std::swap(prefix, next_prefix);
      search();
      std::swap(prefix, next_prefix);
      order.pop_back();
      used[v] = 0;
    }
  }
};

}  // namespace

std::string graph_certificate(const SmallGraph& g) {
  CertSearch s(g);
  s.search();
  // Prepend the color multiset so graphs with different refinements differ.
  std::vector<int> cols = s.colors;
  std::sort(cols.begin(), cols.end());
  std::string head = std::to_string(g.n) + ":";
  for (int c : cols) head += std::to_string(c) + ",";
  return head + "|" + s.best;
}

SmallGraph kneser_graph_2(int m) {
  std::vector<std::pair<int, int>> pairs;
  for (int a = 1; a <= m; ++a)
    for (int b = a + 1; b <= m; ++b) pairs.emplace_back(a, b);
  SmallGraph g(static_cast<int>(pairs.size()));
  for (int i = 0; i < g.n; ++i) {
    for (int j = i + 1; j < g.n; ++j) {
      auto [a, b] = pairs[i];
      auto [c, d] = pairs[j];
      if (a != c && a != d && b != c && b != d) g.add_edge(i, j);
    }
  }
  return g;
}

}  // namespace eigentree
