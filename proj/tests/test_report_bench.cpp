#include <centerseries/bench.hpp>
#include <centerseries/report.hpp>

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include <doctest.h>

using namespace centerseries;

TEST_CASE("numbers print in round-trip form with spelled-out non-finites") {
  for (double v : {0.1, 1.0 / 3, -2.5e17, 1e-300, 0.0, 4.0}) {
    CHECK(std::stod(num_str(v)) == v);
  }
  CHECK(num_str(std::numeric_limits<double>::infinity()) == "inf");
  CHECK(num_str(-std::numeric_limits<double>::infinity()) == "-inf");
  CHECK(num_str(std::nan("")) == "nan");

  CHECK(num_json(2.5).is_number());
  CHECK(num_json(std::nan("")).is_string());
  CHECK(num_json(std::numeric_limits<double>::infinity()) == "inf");
}

TEST_CASE("eval csv carries the pinned column layout") {
  EvalRow regular;
  regular.theta = 0.5;
  regular.report.value = std::complex<double>{1.0, 2.0};
  regular.report.f_c = 1.0;
  regular.report.f_s = 2.0;
  regular.report.terms_used = 42;
  regular.report.error_estimate = 1e-9;

  EvalRow special;
  special.theta = -0.5;
  special.report.special_point = true;
  special.report.error_estimate = std::numeric_limits<double>::infinity();

  std::string csv = eval_csv({regular, special});
  CHECK(csv.rfind("theta,f_c,f_s,terms_used,error_estimate,special_point\n", 0) == 0);
  CHECK(csv.find("0.5,1,2,42,1e-09,false") != std::string::npos);
  CHECK(csv.find("-0.5,") != std::string::npos);
  CHECK(csv.find(",inf,true") != std::string::npos);
  // Two data rows plus header, trailing newline.
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
  CHECK(csv.back() == '\n');
}

TEST_CASE("bench csv renders exceeded caps explicitly") {
  BenchmarkResult hit;
  hit.series = "square";
  hit.theta = 1.0;
  hit.tolerance = 1e-3;
  hit.terms_direct = 368;
  hit.terms_center = 16;
  hit.speedup = 23.0;
  hit.reference = {0.25, 1.0};
  hit.reference_kind = "mixed";

  BenchmarkResult missed;
  missed.series = "delta";
  missed.theta = 2.0;
  missed.tolerance = 1e-6;
  missed.terms_center = 1;
  missed.reference_kind = "closed-form";

  std::string csv = bench_csv({hit, missed});
  CHECK(csv.rfind("series,theta,tolerance,terms_direct,terms_center,speedup,"
                  "reference_re,reference_im,reference_kind\n",
                  0) == 0);
  CHECK(csv.find("square,1,0.001,368,16,23,0.25,1,mixed") != std::string::npos);
  CHECK(csv.find("delta,2,1e-06,exceeded-cap,1,,") != std::string::npos);

  ojson doc = bench_json({hit, missed});
  CHECK(doc.is_array());
  CHECK(doc[0]["speedup"] == 23.0);
  CHECK(doc[1]["speedup"].is_null());
  CHECK(doc[1]["terms_direct"] == "exceeded-cap");
}

TEST_CASE("pretty serialization is deterministic") {
  ojson doc;
  doc["b"] = 1;
  doc["a"] = num_json(0.1);
  std::string once = pretty(doc);
  CHECK(once == pretty(doc));
  CHECK(once.back() == '\n');
  // ordered_json keeps insertion order.
  CHECK(once.find("\"b\"") < once.find("\"a\""));
}

TEST_CASE("minimal_terms finds the exact crossing") {
  std::complex<double> ref{2.0, -1.0};
  auto eval_at = [&](std::int64_t n) {
    return ref + std::complex<double>{1.0 / static_cast<double>(n), 0.0};
  };
  auto n = minimal_terms(eval_at, ref, 1e-3, 1 << 20);
  REQUIRE(n.has_value());
  CHECK(*n == 1000);
  CHECK(std::abs(eval_at(*n) - ref) <= 1e-3);
  CHECK(std::abs(eval_at(*n - 1) - ref) > 1e-3);

  // Cap below the crossing reports a miss instead of a wrong answer.
  CHECK_FALSE(minimal_terms(eval_at, ref, 1e-3, 500).has_value());

  // A first-term hit short-circuits.
  auto exact_at_one = [&](std::int64_t) { return ref; };
  CHECK(minimal_terms(exact_at_one, ref, 1e-12, 100) == 1);
}

TEST_CASE("bench rows are deterministic and center wins on borderline entries") {
  BenchConfig cfg;
  cfg.cap = 1000000;
  std::vector<double> thetas = {1.0};
  std::vector<double> tols = {1e-1, 1e-3};

  auto rows1 = bench("square", thetas, tols, cfg);
  auto rows2 = bench("square", thetas, tols, cfg);
  CHECK(bench_csv(rows1) == bench_csv(rows2));

  REQUIRE(rows1.size() == 2);
  for (const auto& r : rows1) {
    REQUIRE(r.terms_direct.has_value());
    REQUIRE(r.terms_center.has_value());
    CHECK(*r.terms_center <= *r.terms_direct);
    REQUIRE(r.speedup.has_value());
    CHECK(*r.speedup >= 1.0);
  }
}

TEST_CASE("bench theta picks avoid roots except the deliberate near-root probe") {
  CenterFactorization f = factor_entry(corpus_entry("square"));
  BenchConfig cfg;
  auto thetas = bench_thetas(f, cfg);
  REQUIRE(thetas.size() >= 2);
  int near = 0;
  for (double t : thetas) {
    if (f.polynomial.min_root_distance(t) < cfg.exclusion_window) ++near;
  }
  CHECK(near == 1);
}

TEST_CASE("verification reports mirror the record") {
  VerificationRecord rec;
  rec.entry = "square";
  rec.add("first", true, "ok");
  rec.add("second", false, "broke");
  ojson doc = verification_report(rec);
  CHECK(doc["entry"] == "square");
  CHECK(doc["pass"] == false);
  REQUIRE(doc["checks"].size() == 2);
  CHECK(doc["checks"][0]["name"] == "first");
  CHECK(doc["checks"][1]["pass"] == false);
  CHECK(doc["checks"][1]["detail"] == "broke");
}

TEST_CASE("classification and factorization reports expose the pinned keys") {
  const auto& e = corpus_entry("square");
  ClassificationInputs in;
  in.name = e.name;
  in.fit = fit_decay(e.source, 32, 4096);
  in.cls = classify(e.source, in.fit);
  in.absolute = check_absolute_convergence(in.fit);
  in.dominant = e.singularities;
  in.monotonic = true;
  ojson cdoc = classification_report(in);
  CHECK(cdoc["name"] == "square");
  CHECK(cdoc["class_tag"] == "borderline-hard");
  CHECK(cdoc["p"].is_number());
  CHECK(cdoc["amplitude"].is_number());
  CHECK(cdoc["behavior"].is_string());
  CHECK(cdoc["smoothness"].is_string());
  REQUIRE(cdoc["dominant"].is_array());
  CHECK(cdoc["dominant"][0]["angle_over_pi"] == "0");
  CHECK(cdoc["dominant"][0]["degree"] == 0);
  CHECK(cdoc["dominant"][0]["polarity"] == "hard");

  CenterFactorization f = factor_entry(e);
  DecayFit before = fit_decay(e.source, 50, 5000);
  DecayFit after = fit_decay(f.residual, 50, 5000);
  ojson fdoc = factorization_report(e.name, f, before, after, 8, true);
  CHECK(fdoc["poly"]["degree"] == 2);
  REQUIRE(fdoc["poly"]["roots_over_pi"].is_array());
  CHECK(fdoc["poly"]["coeffs"].size() == 3);
  CHECK(fdoc["residual_preview"].size() == 8);
  CHECK(fdoc["residual_preview"][0]["k"] == 1);
  CHECK(fdoc["decay_before"]["exponent"].is_number());
  CHECK(fdoc["decay_after"]["exponent"].is_number());
}
