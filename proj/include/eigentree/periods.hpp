#pragma once

#include <cstdint>
#include <string>

namespace eigentree {
namespace periods {

struct PeriodEstimate {
  double value = 0.0;
  double error_bound = 0.0;
  std::string method;            // "tensor_quadrature" or "monte_carlo"
  std::int64_t samples_or_nodes = 0;
  std::uint64_t seed = 0;        // Monte Carlo only
  double std_error = 0.0;        // Monte Carlo only
};

// The dilogarithm-at-1 period: integral over 0 < t < s < 1 of
// ds dt / (s (1-t)), evaluated with the inner integral in closed form as
// int_0^1 -log(1-s)/s ds. Composite Gauss-Legendre panels, geometrically
// graded toward the logarithmic endpoint. `nodes` is the total node budget
// (>= 16); the error bound comes from comparison with a refined rule.
PeriodEstimate zeta2_period(int nodes);

// Monte Carlo volume of the open cell 0 < x_1 < ... < x_{n-2} < 1 under
// the pulled-back torus density: the smallest coordinate contributes
// 1/(1-x_1) and every other coordinate 1/x_i, matching the n = 4 period
// exactly. Sharded sampling with per-shard seeds derived from `seed`;
// reduction order is fixed, so results are reproducible (and identical for
// any worker count).
PeriodEstimate cell_volume(int n, std::int64_t samples, std::uint64_t seed);

// Cross-ratio (z0 - z2)(z1 - z3) / ((z0 - z3)(z1 - z2)) with projective
// handling of one infinite slot (pass infinity()).
double cross_ratio(double z0, double z1, double z2, double z3);

}  // namespace periods
}  // namespace eigentree
