#include "eigentree/newick.hpp"

#include <cctype>
#include <functional>
#include <set>

#include "eigentree/errors.hpp"

namespace eigentree {

namespace {

class Parser {
 public:
  Parser(const std::string& text, NewickParseResult& out) : text_(text), out_(out) {}

  void run() {
    skip_ws();
    if (peek() != '(') fail("expected '('");
    MetricTree& t = out_.tree.underlying;
    t.add_root();
    parse_children(t, t.root());
    skip_ws();
    // Optional root name.
    if (pos_ < text_.size() && (std::isdigit(peek()) || peek() == '-')) {
      t.set_root_label(parse_int());
    }
    skip_ws();
    if (peek() == ':') {
      ++pos_;
      parse_length();  // tolerated, meaningless on the root
      out_.warnings.push_back("root branch length ignored");
    }
    skip_ws();
    if (peek() != ';') fail("expected ';'");
    ++pos_;
    validate_labels(t);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) { throw ParseError("newick: " + msg, pos_); }

  int parse_int() {
    skip_ws();
    std::size_t start = pos_;
    if (peek() == '-') ++pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer label");
    return std::stoi(text_.substr(start, pos_ - start));
  }

  ExtWeight parse_length() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                   text_[pos_] == '.' || text_[pos_] == '-' ||
                                   text_[pos_] == '+' || text_[pos_] == 'e')) {
      ++pos_;
    }
    ExtWeight w;
    std::string tok = text_.substr(start, pos_ - start);
    if (tok.empty() || !ext_weight_from_string(tok, w)) {
      pos_ = start;
      fail("bad branch length '" + tok + "'");
    }
    return w;
  }

  void parse_children(MetricTree& t, int parent) {
    if (peek() != '(') fail("expected '('");
    ++pos_;
    for (;;) {
      parse_node(t, parent);
      skip_ws();
      if (peek() == ',') {
        ++pos_;
        continue;
      }
      if (peek() == ')') {
        ++pos_;
        return;
      }
      fail("expected ',' or ')'");
    }
  }

  void parse_node(MetricTree& t, int parent) {
    skip_ws();
    if (peek() == '(') {
      int id = t.add_internal(parent, ExtWeight{});
      parse_children(t, id);
      skip_ws();
      if (pos_ < text_.size() && (std::isdigit(peek()) || peek() == '-'))
        fail("internal node names are not supported");
      if (peek() == ':') {
        ++pos_;
        t.set_edge_weight(id, parse_length());
      }
    } else {
      int label = parse_int();
      t.add_leaf(parent, label);
      skip_ws();
      if (peek() == ':') {
        ++pos_;
        parse_length();
        out_.warnings.push_back("leaf branch length ignored (leaf " + std::to_string(label) + ")");
      }
    }
  }

  void validate_labels(const MetricTree& t) {
    std::set<int> seen;
    for (int l : t.leaf_labels_in_order()) {
      if (l < 0) throw ValidationError("newick: negative leaf label");
      if (!seen.insert(l).second)
        throw ValidationError("newick: duplicate leaf label " + std::to_string(l));
    }
    if (seen.count(t.root_label()))
      throw ValidationError("newick: root label collides with leaf label");
  }

  const std::string& text_;
  NewickParseResult& out_;
  std::size_t pos_ = 0;
};

void write_rec(const MetricTree& t, int v, std::string& out) {
  if (t.is_leaf(v)) {
    out += std::to_string(t.node(v).label);
    return;
  }
  out += '(';
  const auto& ch = t.node(v).children;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (i) out += ',';
    write_rec(t, ch[i], out);
  }
  out += ')';
  if (!t.is_root(v)) {
    out += ':';
    out += ext_weight_to_string(t.node(v).weight);
  }
}

}  // namespace

NewickParseResult parse_newick(const std::string& text) {
  NewickParseResult out;
  Parser p(text, out);
  p.run();
  return out;
}

std::string write_newick(const PlanarMetricTree& tree) {
  std::string out;
  write_rec(tree.underlying, tree.underlying.root(), out);
  if (tree.underlying.root_label() != 0) out += std::to_string(tree.underlying.root_label());
  out += ';';
  return out;
}

}  // namespace eigentree
