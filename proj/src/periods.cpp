#include "eigentree/periods.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <thread>
#include <vector>

#include "eigentree/errors.hpp"
#include "eigentree/rng.hpp"

namespace eigentree {
namespace periods {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
// Legendre recurrence.
void gauss_legendre(int m, std::vector<double>& x, std::vector<double>& w) {
  x.assign(m, 0.0);
  w.assign(m, 0.0);
  int half = (m + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 1; j <= m; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      pp = m * (z * p1 - p2) / (z * z - 1.0);
      double dz = -p1 / pp;
      z += dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[m - 1 - i] = z;
    w[i] = w[m - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
  }
}

// -log1p(-s)/s with the removable singularity at 0 filled in.
double dilog_integrand(double s) {
  if (s < 1e-8) return 1.0 + s / 2.0 + s * s / 3.0;
  return -std::log1p(-s) / s;
}

double graded_quadrature(int panels, int pts) {
  std::vector<double> x, w;
  gauss_legendre(pts, x, w);
  // Geometric grading toward s = 1: breakpoints 1 - 2^{-j}.
  double total = 0.0;
  double a = 0.0;
  for (int j = 1; j <= panels; ++j) {
    double b = j == panels ? 1.0 : 1.0 - std::ldexp(1.0, -j);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double acc = 0.0;
    for (int i = 0; i < pts; ++i) acc += w[i] * dilog_integrand(mid + half * x[i]);
    total += acc * half;
    a = b;
  }
  return total;
}

int worker_cap() {
  if (const char* env = std::getenv("EIGENTREE_THREADS")) {
    int v = std::atoi(env);
    if (v >= 1) return v;
  }
  return 1;
}

}  // namespace

PeriodEstimate zeta2_period(int nodes) {
  if (nodes < 16) throw ValidationError("zeta2_period: need nodes >= 16");
  // 8-point panels geometrically graded toward s = 1; the last panel
  // [1 - 2^{-J}, 1] traps the logarithmic endpoint in a region whose mass
  // vanishes geometrically with the panel count J = nodes/8.
  int pts = 8;
  int panels = std::max(2, nodes / pts);
  double value = graded_quadrature(panels, pts);
  // A coarser grading overestimates the fine-rule error.
  double coarse = graded_quadrature(std::max(2, panels / 2), pts);
  PeriodEstimate out;
  out.value = value;
  out.error_bound = std::max(std::abs(value - coarse), 1e-15);
  out.method = "tensor_quadrature";
  out.samples_or_nodes = nodes;
  return out;
}

PeriodEstimate cell_volume(int n, std::int64_t samples, std::uint64_t seed) {
  if (n < 4) throw ValidationError("cell_volume: need n >= 4");
  if (samples < 10000) throw ValidationError("cell_volume: need samples >= 10^4");
  int d = n - 2;
  const std::int64_t shard_size = 1 << 20;
  std::int64_t shards = (samples + shard_size - 1) / shard_size;

  struct ShardSum {
    double sum = 0.0, sum_sq = 0.0;
  };
  auto run_shard = [&](std::int64_t shard) {
    std::int64_t lo = shard * shard_size;
    std::int64_t hi = std::min(samples, lo + shard_size);
    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(shard)));
    ShardSum acc;
    std::vector<double> x(d);
    for (std::int64_t i = lo; i < hi; ++i) {
      for (int k = 0; k < d; ++k) x[k] = rng.next_open01();
      std::sort(x.begin(), x.end());
      // Density on the ordered simplex: 1/(1-x_1) for the smallest
      // coordinate, 1/x_k for the others.
      double f = 1.0 / (1.0 - x[0]);
      for (int k = 1; k < d; ++k) f /= x[k];
      acc.sum += f;
      acc.sum_sq += f * f;
    }
    return acc;
  };

  int workers = worker_cap();
  std::vector<ShardSum> results(static_cast<std::size_t>(shards));
  if (workers <= 1) {
    for (std::int64_t s = 0; s < shards; ++s) results[static_cast<std::size_t>(s)] = run_shard(s);
  } else {
    std::int64_t next = 0;
    while (next < shards) {
      std::vector<std::future<ShardSum>> batch;
      for (int wkr = 0; wkr < workers && next < shards; ++wkr, ++next)
        batch.push_back(std::async(std::launch::async, run_shard, next));
      for (std::int64_t i = 0; i < static_cast<std::int64_t>(batch.size()); ++i)
        results[static_cast<std::size_t>(next - batch.size() + i)] = batch[static_cast<std::size_t>(i)].get();
    }
  }
  double sum = 0.0, sum_sq = 0.0;
  for (const auto& r : results) {  // fixed reduction order
    sum += r.sum;
    sum_sq += r.sum_sq;
  }

  // Sorted uniforms are uniform on the ordered simplex; the estimator is
  // vol(simplex) x mean = mean / d!.
  double fact = 1.0;
  for (int k = 2; k <= d; ++k) fact *= k;
  double mean = sum / static_cast<double>(samples);
  double var = std::max(0.0, sum_sq / static_cast<double>(samples) - mean * mean);
  double std_err = std::sqrt(var / static_cast<double>(samples));

  PeriodEstimate out;
  out.value = mean / fact;
  out.std_error = std_err / fact;
  out.error_bound = 3.0 * out.std_error;
  out.method = "monte_carlo";
  out.samples_or_nodes = samples;
  out.seed = seed;
  return out;
}

double cross_ratio(double z0, double z1, double z2, double z3) {
  auto finite = [](double z) { return std::isfinite(z); };
  // (z0-z2)(z1-z3) / ((z0-z3)(z1-z2)); factors with one infinite entry
  // cancel pairwise in the limit.
  int inf_count = !finite(z0) + !finite(z1) + !finite(z2) + !finite(z3);
  if (inf_count > 1) throw ValidationError("cross_ratio: at most one infinite slot");
  if (!finite(z0)) return (z1 - z3) / (z1 - z2);
  if (!finite(z1)) return (z0 - z2) / (z0 - z3);
  if (!finite(z2)) return (z1 - z3) / (z0 - z3);
  if (!finite(z3)) return (z0 - z2) / (z1 - z2);
  return ((z0 - z2) * (z1 - z3)) / ((z0 - z3) * (z1 - z2));
}

}  // namespace periods
}  // namespace eigentree
