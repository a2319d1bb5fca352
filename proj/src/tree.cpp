#include "eigentree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <functional>
#include <set>

#include "eigentree/errors.hpp"

namespace eigentree {

std::string ext_weight_to_string(const ExtWeight& w) {
  if (w.is_infinite()) return "inf";
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), w.value);
  return std::string(buf, res.ptr);
}

bool ext_weight_from_string(const std::string& text, ExtWeight& out) {
  if (text == "inf") {
    out = ExtWeight::infinite();
    return true;
  }
  double v = 0.0;
  auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) return false;
  if (!(v >= 0.0)) return false;
  out = ExtWeight(v);
  return true;
}

int MetricTree::add_root(int root_label) {
  nodes_.clear();
  nodes_.push_back(TreeNode{});
  root_ = 0;
  root_label_ = root_label;
  return 0;
}

int MetricTree::add_leaf(int parent, int label) {
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(TreeNode{parent, {}, label, ExtWeight{}});
  nodes_[parent].children.push_back(id);
  return id;
}

int MetricTree::add_internal(int parent, ExtWeight weight) {
  int id = static_cast<int>(nodes_.size());
  nodes_.push_back(TreeNode{parent, {}, kInternalLabel, weight});
  nodes_[parent].children.push_back(id);
  return id;
}

MetricTree MetricTree::corolla(int n) {
  MetricTree t;
  t.add_root();
  for (int i = 1; i <= n; ++i) t.add_leaf(t.root(), i);
  return t;
}

int MetricTree::leaf_count() const {
  int c = 0;
  for (const auto& nd : nodes_)
    if (nd.children.empty()) ++c;
  return c;
}

std::vector<int> MetricTree::leaves_in_order() const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int v) {
    if (is_leaf(v)) {
      out.push_back(v);
      return;
    }
    for (int c : nodes_[v].children) walk(c);
  };
  if (root_ >= 0) walk(root_);
  return out;
}

std::vector<int> MetricTree::leaf_labels_in_order() const {
  std::vector<int> out;
  for (int v : leaves_in_order()) out.push_back(nodes_[v].label);
  return out;
}

std::vector<int> MetricTree::internal_edges() const {
  std::vector<int> out;
  std::function<void(int)> walk = [&](int v) {
    if (!is_root(v) && !is_leaf(v)) out.push_back(v);
    for (int c : nodes_[v].children) walk(c);
  };
  if (root_ >= 0) walk(root_);
  return out;
}

bool MetricTree::is_binary() const {
  for (const auto& nd : nodes_) {
    if (!nd.children.empty() && nd.children.size() != 2) return false;
  }
  return leaf_count() >= 2;
}

void MetricTree::validate() const {
  if (root_ < 0 || nodes_.empty()) throw ValidationError("tree: empty");
  std::set<int> labels;
  int leaves = 0;
  for (int v = 0; v < node_count(); ++v) {
    const auto& nd = nodes_[v];
    if (nd.children.empty()) {
      ++leaves;
      if (!labels.insert(nd.label).second)
        throw ValidationError("tree: duplicate leaf label " + std::to_string(nd.label));
    } else {
      if (nd.children.size() < 2)
        throw ValidationError("tree: internal vertex with fewer than two children");
      if (!is_root(v)) {
        if (!(nd.weight.value >= 0.0))
          throw ValidationError("tree: negative internal edge weight");
      }
    }
    for (int c : nd.children) {
      if (nodes_[c].parent != v) throw ValidationError("tree: broken parent link");
    }
  }
  if (labels.count(root_label_))
    throw ValidationError("tree: root label collides with a leaf label");
  if (leaves < 1) throw ValidationError("tree: no leaves");
}

namespace {

std::string weight_key(const ExtWeight& w) {
  if (w.is_infinite()) return "inf";
  // Bit-exact key; distinguishes weights that differ in the last ulp.
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%a", w.value);
  return buf;
}

std::string encode_rec(const MetricTree& t, int v, MetricTree::WeightMode mode, bool planar) {
  if (t.is_leaf(v)) return "l" + std::to_string(t.node(v).label);
  std::vector<std::string> parts;
  for (int c : t.node(v).children) {
    std::string s = encode_rec(t, c, mode, planar);
    if (!t.is_leaf(c) && mode != MetricTree::WeightMode::Ignore)
      s += "#" + weight_key(t.node(c).weight);
    parts.push_back(std::move(s));
  }
  if (!planar) std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ",";
    out += parts[i];
  }
  out += ")";
  return out;
}

}  // namespace

std::string MetricTree::canonical_encoding(WeightMode mode) const {
  const MetricTree* t = this;
  MetricTree contracted;
  if (mode == WeightMode::ContractZeros) {
    contracted = contract_zero_edges();
    t = &contracted;
    mode = WeightMode::Exact;
  }
  return "R" + std::to_string(t->root_label_) + encode_rec(*t, t->root_, mode, false);
}

std::string MetricTree::planar_encoding() const {
  return "R" + std::to_string(root_label_) + encode_rec(*this, root_, WeightMode::Exact, true);
}

MetricTree MetricTree::contract_zero_edges() const {
  MetricTree out;
  out.add_root(root_label_);
  std::function<void(int, int)> walk = [&](int src, int dst_parent) {
    for (int c : nodes_[src].children) {
      if (is_leaf(c)) {
        out.add_leaf(dst_parent, nodes_[c].label);
      } else if (nodes_[c].weight.is_zero()) {
        walk(c, dst_parent);  // splice children into dst_parent
      } else {
        int id = out.add_internal(dst_parent, nodes_[c].weight);
        walk(c, id);
      }
    }
  };
  walk(root_, out.root());
  return out;
}

std::vector<int> PlanarMetricTree::mark_labels() const {
  std::vector<int> out;
  out.push_back(underlying.root_label());
  for (int l : underlying.leaf_labels_in_order()) out.push_back(l);
  return out;
}

}  // namespace eigentree
