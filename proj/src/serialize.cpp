#include "eigentree/serialize.hpp"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "eigentree/errors.hpp"
#include "eigentree/newick.hpp"
#include "eigentree/tree_ops.hpp"

namespace eigentree {

using nlohmann::json;

std::string format_double(double x, int digits) {
  if (digits <= 0) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
  }
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", digits, x);
  return buf;
}

json tree_to_json(const MetricTree& tree) {
  json nodes = json::array();
  for (int v = 0; v < tree.node_count(); ++v) {
    json nd;
    nd["id"] = v;
    nd["parent"] = tree.node(v).parent;
    if (tree.is_leaf(v)) {
      nd["label"] = tree.node(v).label;
    } else if (!tree.is_root(v)) {
      const ExtWeight& w = tree.node(v).weight;
      if (w.is_infinite())
        nd["weight"] = "inf";
      else
        nd["weight"] = w.value;
    }
    nodes.push_back(std::move(nd));
  }
  return json{{"schema_version", kSchemaVersion},
              {"root", tree.root()},
              {"root_label", tree.root_label()},
              {"nodes", std::move(nodes)}};
}

MetricTree tree_from_json(const json& j) {
  MetricTree t;
  t.add_root(j.at("root_label").get<int>());
  const auto& nodes = j.at("nodes");
  std::vector<int> remap(nodes.size(), -1);
  remap[j.at("root").get<int>()] = t.root();
  // Nodes are stored in preorder (parents precede children).
  for (const auto& nd : nodes) {
    int id = nd.at("id").get<int>();
    int parent = nd.at("parent").get<int>();
    if (parent < 0) continue;
    if (remap[parent] < 0) throw ValidationError("tree json: parent appears after child");
    if (nd.contains("label")) {
      remap[id] = t.add_leaf(remap[parent], nd.at("label").get<int>());
    } else {
      ExtWeight w;
      if (nd.contains("weight")) {
        if (nd.at("weight").is_string()) {
          if (!ext_weight_from_string(nd.at("weight").get<std::string>(), w))
            throw ValidationError("tree json: bad weight");
        } else {
          w = ExtWeight(nd.at("weight").get<double>());
        }
      }
      remap[id] = t.add_internal(remap[parent], w);
    }
  }
  t.validate();
  return t;
}

json matching_to_json(const treespace::Matching& m) {
  json pairs = json::array();
  for (auto [a, b] : m.pairs) pairs.push_back(json::array({a, b}));
  return json{{"schema_version", kSchemaVersion}, {"pairs", std::move(pairs)}};
}

namespace {

json clade_to_json(std::uint32_t mask) {
  json out = json::array();
  for (int l = 1; l < 32; ++l)
    if (mask & (1u << l)) out.push_back(l);
  return out;
}

}  // namespace

json tn_complex_to_json(const treespace::TnComplex& c) {
  json vertices = json::array();
  for (auto m : c.vertex_clades) vertices.push_back(clade_to_json(m));
  json simplices = json::array();
  for (const auto& dim : c.simplices) {
    json cells = json::array();
    for (const auto& s : dim) cells.push_back(s);
    simplices.push_back(std::move(cells));
  }
  return json{{"schema_version", kSchemaVersion},
              {"n", c.n},
              {"vertex_clades", std::move(vertices)},
              {"simplices_by_dim", std::move(simplices)},
              {"euler_characteristic", c.euler_characteristic()}};
}

std::string tn_graph_to_dot(const treespace::TnComplex& c) {
  std::ostringstream out;
  out << "graph tn_" << c.n << " {\n";
  for (std::size_t v = 0; v < c.vertex_clades.size(); ++v) {
    out << "  v" << v << " [label=\"{";
    bool first = true;
    for (int l = 1; l < 32; ++l)
      if (c.vertex_clades[v] & (1u << l)) {
        if (!first) out << ",";
        out << l;
        first = false;
      }
    out << "}\"];\n";
  }
  if (c.simplices.size() > 1)
    for (const auto& e : c.simplices[1]) out << "  v" << e[0] << " -- v" << e[1] << ";\n";
  out << "}\n";
  return out.str();
}

json face_poset_to_json(const assoc::FacePoset& p) {
  json faces = json::array();
  for (const auto& f : p.faces) {
    json brackets = json::array();
    for (auto [a, b] : f.brackets) brackets.push_back(json::array({a, b}));
    faces.push_back(json{{"dim", f.dim()}, {"brackets", std::move(brackets)}});
  }
  json hasse = json::array();
  for (auto [lo, hi] : p.hasse) hasse.push_back(json::array({lo, hi}));
  json fvec = json::array();
  for (auto v : p.f_vector()) fvec.push_back(v);
  return json{{"schema_version", kSchemaVersion},
              {"n", p.n},
              {"faces", std::move(faces)},
              {"hasse", std::move(hasse)},
              {"f_vector", std::move(fvec)}};
}

std::string configuration_to_csv(const assoc::Configuration& c, int digits) {
  std::string out;
  for (std::size_t i = 0; i < c.points.size(); ++i) {
    if (i) out += ",";
    out += format_double(c.points[i], digits);
  }
  out += "\n";
  return out;
}

json quotient_complex_to_json(const moduli::QuotientComplex& c) {
  json cells = json::array();
  for (std::size_t cls = 0; cls < c.class_rep.size(); ++cls) {
    json boundary = json::array();
    for (auto [lower, count] : c.boundary[cls])
      boundary.push_back(json{{"cell", lower}, {"count", count}});
    PlanarMetricTree rep = c.objects[c.class_rep[cls]].tree;
    cells.push_back(json{{"id", cls},
                         {"dim", c.class_dim[cls]},
                         {"representative", write_newick(rep)},
                         {"orbit_size", c.class_size(static_cast<int>(cls))},
                         {"boundary", std::move(boundary)}});
  }
  json counts = json::array();
  for (auto v : c.cell_counts()) counts.push_back(v);
  return json{{"schema_version", kSchemaVersion},
              {"n", c.n},
              {"cover", moduli::cover_name(c.cover)},
              {"cell_counts", std::move(counts)},
              {"euler_characteristic", euler_characteristic(c)},
              {"cells", std::move(cells)}};
}

std::string complex_summary_csv(int n) {
  auto full = moduli::enumerate_complex(n, moduli::CoverKind::Full);
  auto orient = moduli::enumerate_complex(n, moduli::CoverKind::Orientation);
  std::ostringstream out;
  out << "n,catalan,topologies,tiles_full,tiles_or,cubes_or,chi_or\n";
  out << n << "," << assoc::catalan(n) << "," << treespace::count_binary_topologies(n) << ","
      << moduli::tile_count(full) << "," << moduli::tile_count(orient) << ","
      << moduli::cube_count(orient) << "," << euler_characteristic(orient) << "\n";
  return out.str();
}

json period_to_json(const periods::PeriodEstimate& p) {
  json out{{"schema_version", kSchemaVersion},
           {"value", p.value},
           {"error_bound", p.error_bound},
           {"method", p.method}};
  if (p.method == "monte_carlo") {
    out["samples"] = p.samples_or_nodes;
    out["seed"] = p.seed;
    out["std_error"] = p.std_error;
  } else {
    out["nodes"] = p.samples_or_nodes;
  }
  return out;
}

spectra::SymmetricMatrix read_matrix(const std::string& text) {
  std::vector<std::vector<double>> rows;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    for (char& ch : line)
      if (ch == ',' || ch == ';' || ch == '\t') ch = ' ';
    std::istringstream fields(line);
    std::vector<double> row;
    double x;
    while (fields >> x) row.push_back(x);
    if (!fields.eof() && fields.fail()) throw ValidationError("matrix: non-numeric entry");
    if (!row.empty()) rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("matrix: empty input");
  int n = static_cast<int>(rows.size());
  spectra::SymmetricMatrix q;
  q.n = n;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) throw ValidationError("matrix: not square");
    for (double v : row) q.a.push_back(v);
  }
  q.validate();
  return q;
}

}  // namespace eigentree
