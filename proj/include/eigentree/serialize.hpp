#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "eigentree/associahedron.hpp"
#include "eigentree/moduli.hpp"
#include "eigentree/periods.hpp"
#include "eigentree/spectra.hpp"
#include "eigentree/tree.hpp"
#include "eigentree/treespace.hpp"

namespace eigentree {

constexpr int kSchemaVersion = 1;

// %.{digits}g with digits significant figures (digits <= 0: shortest
// round-trip decimal).
std::string format_double(double x, int digits);

nlohmann::json tree_to_json(const MetricTree& tree);
MetricTree tree_from_json(const nlohmann::json& j);

nlohmann::json matching_to_json(const treespace::Matching& m);
nlohmann::json tn_complex_to_json(const treespace::TnComplex& c);
std::string tn_graph_to_dot(const treespace::TnComplex& c);

nlohmann::json face_poset_to_json(const assoc::FacePoset& p);
std::string configuration_to_csv(const assoc::Configuration& c, int digits);

nlohmann::json quotient_complex_to_json(const moduli::QuotientComplex& c);
std::string complex_summary_csv(int n);

nlohmann::json period_to_json(const periods::PeriodEstimate& p);

// Whitespace- or comma-separated numeric grid; must be square.
spectra::SymmetricMatrix read_matrix(const std::string& text);

}  // namespace eigentree
