#pragma once

#include <string>
#include <vector>

#include "eigentree/tree.hpp"

namespace eigentree {

struct NewickParseResult {
  PlanarMetricTree tree;
  std::vector<std::string> warnings;  // e.g. ignored leaf branch lengths
};

// Newick dialect: integer leaf names, optional branch lengths. Internal
// branch lengths become edge weights ("inf" is accepted); missing internal
// lengths default to 0. Leaf branch lengths are ignored with a warning. An
// optional integer name after the closing paren of the root sets the root
// label (default 0). Malformed input throws ParseError with a byte offset;
// duplicate labels throw ValidationError.
NewickParseResult parse_newick(const std::string& text);

// Inverse of parse_newick up to dropped leaf lengths: weights are printed
// as shortest-round-trip decimals so parse(write(t)) == t structurally and
// bit-exactly on weights. A root label of 0 is omitted.
std::string write_newick(const PlanarMetricTree& tree);

}  // namespace eigentree
