#pragma once

// Terms-to-tolerance benchmark: for a series, an angle and a tolerance, the
// smallest term budget N whose partial evaluation lands within tolerance of a
// reference value, measured separately for direct and center evaluation.
// Term counts are the portable cost metric; no wall-clock timing.

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "centerseries/center.hpp"
#include "centerseries/corpus.hpp"

namespace centerseries {

struct BenchConfig {
  std::int64_t cap = 10'000'000;
  // Default grids keep this distance from every root angle; near-root cells
  // are added explicitly instead.
  double exclusion_window = 0.2;
  std::vector<double> tolerances = {1e-1, 1e-3, 1e-6};
};

struct BenchmarkResult {
  std::string series;
  double theta = 0;
  double tolerance = 0;
  // nullopt = the cap itself missed the tolerance (recorded, not thrown).
  std::optional<std::int64_t> terms_direct;
  std::optional<std::int64_t> terms_center;
  // terms_direct / terms_center, when both are finite.
  std::optional<double> speedup;
  std::complex<double> reference{0, 0};
  // "closed-form", "center-10x-cap", or "mixed" (one component each).
  std::string reference_kind;
};

// Ground truth at theta. Components with a closed-form target use it; the
// rest come from center evaluation at 10x cap.
std::complex<double> bench_reference(const CorpusEntry& entry, const CenterFactorization& fact,
                                     double theta, const BenchConfig& cfg,
                                     std::string* kind = nullptr);

// Smallest N <= cap with |eval_at(N) - reference| <= tol, located by doubling
// followed by bisection that keeps lo failing and hi passing; the returned N
// passes and N-1 fails. nullopt when even the cap fails.
std::optional<std::int64_t> minimal_terms(
    const std::function<std::complex<double>(std::int64_t)>& eval_at,
    std::complex<double> reference, double tol, std::int64_t cap);

BenchmarkResult bench_cell(const CorpusEntry& entry, const CenterFactorization& fact,
                           double theta, double tol, const BenchConfig& cfg = {});

std::vector<BenchmarkResult> bench(const std::string& series, const std::vector<double>& thetas,
                                   const std::vector<double>& tolerances,
                                   const BenchConfig& cfg = {});

// Angles a default bench run uses for one entry: fixed picks at least
// exclusion_window from every root, plus one explicitly near-root angle.
std::vector<double> bench_thetas(const CenterFactorization& fact, const BenchConfig& cfg = {});

// The committed results table: every corpus entry over bench_thetas and
// cfg.tolerances, ordered by (series, theta, tolerance).
std::vector<BenchmarkResult> default_bench_table(const BenchConfig& cfg = {});

}  // namespace centerseries
