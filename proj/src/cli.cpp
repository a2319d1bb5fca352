#include "eigentree/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigentree/errors.hpp"
#include "eigentree/newick.hpp"
#include "eigentree/serialize.hpp"
#include "eigentree/tree_ops.hpp"

namespace eigentree {
namespace cli {

namespace {

using nlohmann::json;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Output {
  std::string path;  // empty = stdout
  void write(std::ostream& fallback, const std::string& text) const {
    if (path.empty()) {
      fallback << text;
    } else {
      std::ofstream out(path, std::ios::binary);
      if (!out) throw ValidationError("cannot write '" + path + "'");
      out << text;
    }
  }
};

std::string dump_json(const json& j) { return j.dump(2) + "\n"; }

treespace::Matching parse_matching(const std::string& text) {
  // "1-2,3-4" style.
  treespace::Matching m;
  std::istringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    auto dash = tok.find('-');
    if (dash == std::string::npos) throw ValidationError("matching: expected 'a-b' pairs");
    m.pairs.emplace_back(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
  }
  m.normalize();
  return m;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out_stream,
             std::ostream& err_stream) {
  CLI::App app{"eigentree: eigenvalue stratifications, tree spaces and their covers"};
  app.require_subcommand(1);

  Output output;
  int digits = 17;
  app.add_option("--out", output.path, "output file (default stdout)");
  app.add_option("--digits", digits, "significant digits for text output (default 17)");

  // eigen
  auto* eigen_cmd = app.add_subcommand("eigen", "spectrum, gap vector and resolved tree");
  std::string matrix_path;
  double stratum_tol = 1e-9;
  double solver_tol = 1e-13;
  eigen_cmd->add_option("--matrix", matrix_path, "matrix file (csv or whitespace grid)")
      ->required();
  eigen_cmd->add_option("--tol", stratum_tol, "relative gap tolerance for strata");
  eigen_cmd->add_option("--solver-tol", solver_tol, "Jacobi convergence tolerance");

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "configuration of a planar tree");
  std::string newick_text, newick_path;
  std::string embed_format = "csv";
  embed_cmd->add_option("--newick", newick_text, "tree in Newick");
  embed_cmd->add_option("--input", newick_path, "file with a Newick tree");
  embed_cmd->add_option("--format", embed_format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));

  // dh
  auto* dh_cmd = app.add_subcommand("dh", "tree <-> matching bijection");
  std::string dh_newick, dh_matching;
  int dh_n = 0;
  dh_cmd->add_option("--newick", dh_newick, "binary tree in Newick (tree -> matching)");
  dh_cmd->add_option("--matching", dh_matching, "pairs like 1-2,3-4 (matching -> tree)");
  dh_cmd->add_option("--n", dh_n, "leaf count (with --matching)");

  // tn-graph
  auto* tn_cmd = app.add_subcommand("tn-graph", "1-skeleton of the fully-grown tree space");
  int tn_n = 4;
  tn_cmd->add_option("--n", tn_n, "leaf count (3..6)")->required();

  // counts
  auto* counts_cmd = app.add_subcommand("counts", "summary counts for one n");
  int counts_n = 4;
  counts_cmd->add_option("--n", counts_n, "leaf count (3..5)")->required();

  // complex
  auto* complex_cmd = app.add_subcommand("complex", "quotient cell complex as JSON");
  int complex_n = 4;
  std::string cover_name = "full";
  complex_cmd->add_option("--n", complex_n, "leaf count (3..5)")->required();
  complex_cmd->add_option("--cover", cover_name, "kapranov | orientation | full");

  // fold
  auto* fold_cmd = app.add_subcommand("fold", "cube fibers over suspension top cells");
  int fold_n = 4;
  fold_cmd->add_option("--n", fold_n, "leaf count (3..5)")->required();

  // degree
  auto* degree_cmd = app.add_subcommand("degree", "degree of the boundary-collapse fold");
  int degree_n = 4, degree_samples = 100;
  std::uint64_t degree_seed = 2025;
  degree_cmd->add_option("--n", degree_n, "leaf count (3..5)")->required();
  degree_cmd->add_option("--samples", degree_samples, "sample points");
  degree_cmd->add_option("--seed", degree_seed, "rng seed");

  // period
  auto* period_cmd = app.add_subcommand("period", "zeta(2) period by graded quadrature");
  int period_nodes = 256;
  period_cmd->add_option("--nodes", period_nodes, "quadrature node budget (>= 16)");

  // volume
  auto* volume_cmd = app.add_subcommand("volume", "Monte Carlo cell volume");
  int volume_n = 4;
  std::int64_t volume_samples = 1000000;
  std::uint64_t volume_seed = 12345;
  volume_cmd->add_option("--n", volume_n, "leaf count (>= 4)")->required();
  volume_cmd->add_option("--samples", volume_samples, "sample count (>= 10^4)");
  volume_cmd->add_option("--seed", volume_seed, "rng seed");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      // --help
      out_stream << app.help();
      return 0;
    }
    err_stream << "error: " << e.what() << "\n";
    return 1;
  }

  try {
    if (*eigen_cmd) {
      auto q = read_matrix(slurp(matrix_path));
      auto r = spectra::eigenvalues(q, solver_tol);
      auto nf = spectra::normal_form(r.spectrum);
      auto blocks = spectra::stratum(r.spectrum, stratum_tol);
      auto dendro = spectra::resolve_dendrogram(r.spectrum);
      json j{{"schema_version", kSchemaVersion}};
      j["spectrum"] = r.spectrum.values;
      j["offset"] = nf.offset;
      j["scale"] = nf.scale;
      j["delta"] = nf.delta.deltas;
      j["stratum_blocks"] = blocks.blocks;
      // Planar reading of the dendrogram (children in construction order).
      PlanarMetricTree planar{dendro.tree};
      j["tree_newick"] = write_newick(planar);
      output.write(out_stream, dump_json(j));
    } else if (*embed_cmd) {
      std::string text = !newick_text.empty() ? newick_text : slurp(newick_path);
      auto parsed = parse_newick(text);
      for (const auto& w : parsed.warnings) err_stream << "warning: " << w << "\n";
      auto config = assoc::embed_config(parsed.tree);
      if (embed_format == "json") {
        json j{{"schema_version", kSchemaVersion}, {"points", config.points}};
        output.write(out_stream, dump_json(j));
      } else {
        output.write(out_stream, configuration_to_csv(config, digits));
      }
    } else if (*dh_cmd) {
      if (!dh_newick.empty()) {
        auto parsed = parse_newick(dh_newick);
        auto m = treespace::dh_matching(forget_planarity(parsed.tree));
        output.write(out_stream, dump_json(matching_to_json(m)));
      } else if (!dh_matching.empty()) {
        if (dh_n < 2) throw ValidationError("dh: --n required with --matching");
        auto tree = treespace::dh_tree(parse_matching(dh_matching), dh_n);
        output.write(out_stream, write_newick(PlanarMetricTree{tree}) + "\n");
      } else {
        throw ValidationError("dh: pass --newick or --matching");
      }
    } else if (*tn_cmd) {
      output.write(out_stream, tn_graph_to_dot(treespace::tn_skeleton(tn_n)));
    } else if (*counts_cmd) {
      output.write(out_stream, complex_summary_csv(counts_n));
    } else if (*complex_cmd) {
      auto c = moduli::enumerate_complex(complex_n, moduli::cover_from_name(cover_name));
      output.write(out_stream, dump_json(quotient_complex_to_json(c)));
    } else if (*fold_cmd) {
      auto c = moduli::enumerate_complex(fold_n, moduli::CoverKind::Orientation);
      json fibers = json::array();
      for (const auto& target : treespace::suspension_top_cells(fold_n)) {
        fibers.push_back(json{{"cell", target.key()},
                              {"fiber", moduli::fiber_count(c, target)}});
      }
      json j{{"schema_version", kSchemaVersion}, {"n", fold_n}, {"fibers", std::move(fibers)}};
      output.write(out_stream, dump_json(j));
    } else if (*degree_cmd) {
      int deg = assoc::folding_degree(degree_n, degree_samples, degree_seed);
      json j{{"schema_version", kSchemaVersion},
             {"n", degree_n},
             {"samples", degree_samples},
             {"seed", degree_seed},
             {"degree", deg}};
      output.write(out_stream, dump_json(j));
    } else if (*period_cmd) {
      output.write(out_stream, dump_json(period_to_json(periods::zeta2_period(period_nodes))));
    } else if (*volume_cmd) {
      output.write(out_stream,
                   dump_json(period_to_json(periods::cell_volume(volume_n, volume_samples,
                                                                  volume_seed))));
    }
  } catch (const ValidationError& e) {
    err_stream << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericError& e) {
    err_stream << "numeric error: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError& e) {
    err_stream << "resource error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}

}  // namespace cli
}  // namespace eigentree
