#include "centerseries/bench.hpp"

#include <algorithm>
#include <cmath>

#include "centerseries/eval.hpp"

namespace centerseries {

std::complex<double> bench_reference(const CorpusEntry& entry, const CenterFactorization& fact,
                                     double theta, const BenchConfig& cfg, std::string* kind) {
  EvaluationReport rep;
  if (!entry.target_f_c || !entry.target_f_s) {
    EvalQuery q;
    q.theta = theta;
    q.max_terms = 10 * cfg.cap;
    q.tolerance = 1e-13;
    rep = eval_center(fact, q);
  }
  double fc = entry.target_f_c ? entry.target_f_c(theta) : rep.f_c + entry.constant_offset;
  double fs = entry.target_f_s ? entry.target_f_s(theta) : rep.f_s;
  if (kind) {
    *kind = entry.target_f_c && entry.target_f_s    ? "closed-form"
            : !entry.target_f_c && !entry.target_f_s ? "center-10x-cap"
                                                      : "mixed";
  }
  return {fc, fs};
}

std::optional<std::int64_t> minimal_terms(
    const std::function<std::complex<double>(std::int64_t)>& eval_at,
    std::complex<double> reference, double tol, std::int64_t cap) {
  auto pass = [&](std::int64_t n) { return std::abs(eval_at(n) - reference) <= tol; };
  if (pass(1)) return 1;
  if (cap <= 1) return std::nullopt;
  std::int64_t lo = 1, hi = -1;
  for (std::int64_t n = 2; n < cap; n *= 2) {
    if (pass(n)) {
      hi = n;
      break;
    }
    lo = n;
  }
  if (hi < 0) {
    if (!pass(cap)) return std::nullopt;
    hi = cap;
  }
  // lo fails, hi passes; narrow until they touch.
  while (hi - lo > 1) {
    std::int64_t mid = lo + (hi - lo) / 2;
    (pass(mid) ? hi : lo) = mid;
  }
  return hi;
}

BenchmarkResult bench_cell(const CorpusEntry& entry, const CenterFactorization& fact,
                           double theta, double tol, const BenchConfig& cfg) {
  BenchmarkResult r;
  r.series = entry.name;
  r.theta = theta;
  r.tolerance = tol;
  r.reference = bench_reference(entry, fact, theta, cfg, &r.reference_kind);

  auto value_of = [&](const EvaluationReport& rep) {
    return std::complex<double>(rep.f_c + entry.constant_offset, rep.f_s);
  };
  auto direct_at = [&](std::int64_t n) {
    EvalQuery q;
    q.theta = theta;
    q.max_terms = n;
    q.tolerance = 0;
    return value_of(eval_direct(entry.source, q));
  };
  auto center_at = [&](std::int64_t n) {
    EvalQuery q;
    q.theta = theta;
    q.max_terms = n;
    q.tolerance = 0;
    return value_of(eval_center(fact, q));
  };
  r.terms_direct = minimal_terms(direct_at, r.reference, tol, cfg.cap);
  r.terms_center = minimal_terms(center_at, r.reference, tol, cfg.cap);
  if (r.terms_direct && r.terms_center)
    r.speedup = static_cast<double>(*r.terms_direct) / static_cast<double>(*r.terms_center);
  return r;
}

std::vector<double> bench_thetas(const CenterFactorization& fact, const BenchConfig& cfg) {
  std::vector<double> out;
  double guard = std::max(cfg.exclusion_window, 0.3);
  for (double t : {M_PI / 3, 1.8, 2.5})
    if (fact.polynomial.min_root_distance(t) >= guard) out.push_back(t);
  const auto& roots = fact.polynomial.roots();
  if (!roots.empty()) out.push_back(roots.back().radians() - 0.05);
  return out;
}

std::vector<BenchmarkResult> bench(const std::string& series, const std::vector<double>& thetas,
                                   const std::vector<double>& tolerances,
                                   const BenchConfig& cfg) {
  const CorpusEntry& e = corpus_entry(series);
  CenterFactorization fact = factor_entry(e);
  std::vector<BenchmarkResult> out;
  for (double theta : thetas)
    for (double tol : tolerances) out.push_back(bench_cell(e, fact, theta, tol, cfg));
  return out;
}

std::vector<BenchmarkResult> default_bench_table(const BenchConfig& cfg) {
  std::vector<BenchmarkResult> out;
  for (const std::string& name : corpus_names()) {
    const CorpusEntry& e = corpus_entry(name);
    CenterFactorization fact = factor_entry(e);
    for (double theta : bench_thetas(fact, cfg))
      for (double tol : cfg.tolerances) out.push_back(bench_cell(e, fact, theta, tol, cfg));
  }
  std::stable_sort(out.begin(), out.end(), [](const BenchmarkResult& a, const BenchmarkResult& b) {
    if (a.series != b.series) return a.series < b.series;
    if (a.theta != b.theta) return a.theta < b.theta;
    return a.tolerance > b.tolerance;
  });
  return out;
}

}  // namespace centerseries
