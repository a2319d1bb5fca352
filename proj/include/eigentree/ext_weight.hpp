#pragma once

#include <cmath>
#include <limits>
#include <string>

namespace eigentree {

// Edge weight in [0, +inf]. Terminal edges conceptually carry infinite
// weight and are never stored; ExtWeight appears on internal edges only.
struct ExtWeight {
  double value = 0.0;

  ExtWeight() = default;
  explicit ExtWeight(double v) : value(v) {}

  static ExtWeight infinite() { return ExtWeight(std::numeric_limits<double>::infinity()); }

  bool is_infinite() const { return std::isinf(value); }
  bool is_zero() const { return value == 0.0; }

  friend bool operator==(const ExtWeight& a, const ExtWeight& b) { return a.value == b.value; }
  friend bool operator!=(const ExtWeight& a, const ExtWeight& b) { return !(a == b); }
  friend bool operator<(const ExtWeight& a, const ExtWeight& b) { return a.value < b.value; }
};

// Shortest-round-trip decimal; "inf" for the infinite weight.
std::string ext_weight_to_string(const ExtWeight& w);

// Inverse of ext_weight_to_string; also accepts any finite decimal >= 0.
// Returns false on malformed text or negative values.
bool ext_weight_from_string(const std::string& text, ExtWeight& out);

}  // namespace eigentree
