#include "centerseries/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace centerseries {

namespace {

ojson complex_json(std::complex<double> z) {
  return ojson{{"re", num_json(z.real())}, {"im", num_json(z.imag())}};
}

ojson fit_json(const DecayFit& fit) {
  return ojson{{"amplitude", num_json(fit.amplitude)},
               {"exponent", num_json(fit.exponent)},
               {"residual", num_json(fit.residual)},
               {"window", ojson{{"lo", fit.k_lo}, {"hi", fit.k_hi}}},
               {"power_law", fit.power_law()}};
}

}  // namespace

std::string num_str(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

ojson num_json(double v) {
  if (std::isfinite(v)) return v;
  return num_str(v);
}

ojson angle_json(const Angle& a) {
  ojson j{{"radians", num_json(a.radians())}};
  if (a.exact()) j["over_pi"] = a.over_pi()->str();
  return j;
}

namespace {

// Exact angles as the rational string "p/q", inexact ones as radians/pi.
ojson angle_over_pi(const Angle& a) {
  if (a.exact()) return a.over_pi()->str();
  return num_json(a.radians() / M_PI);
}

ojson dominant_point_json(const SingularityPoint& p) {
  ojson j{{"angle_over_pi", angle_over_pi(p.angle)}, {"radians", num_json(p.angle.radians())}};
  if (p.degree.is_infinite()) {
    j["degree"] = nullptr;
    j["polarity"] = p.degree.is_hard() ? "infinitely-hard" : "infinitely-soft";
  } else {
    j["degree"] = p.degree.n();
    j["polarity"] = p.degree.is_hard() ? "hard" : "soft";
  }
  return j;
}

}  // namespace

ojson classification_report(const ClassificationInputs& in) {
  ojson dom = ojson::array();
  for (const SingularityPoint& p : in.dominant.points()) dom.push_back(dominant_point_json(p));
  ojson j{{"name", in.name},
          {"class_tag", "not-power-law"},
          {"p", num_json(in.fit.exponent)},
          {"amplitude", num_json(in.fit.amplitude)}};
  if (in.cls) {
    j["class_tag"] = in.cls->tag.str();
    j["behavior"] = series_behavior_name(in.cls->predicted_series_behavior);
    j["fourier_behavior"] = series_behavior_name(fourier_pair_behavior(in.cls->tag));
    j["smoothness"] = in.cls->predicted_function_smoothness;
  } else if (!in.note.empty()) {
    j["note"] = in.note;
  }
  j["dominant"] = dom;
  j["absolute_convergence"] = absolute_convergence_name(in.absolute);
  j["monotonic"] = in.monotonic;
  j["fit"] = fit_json(in.fit);
  return j;
}

ojson factorization_report(const std::string& name, const CenterFactorization& fact,
                           const DecayFit& before, const DecayFit& after,
                           std::size_t preview_terms, bool exact_preview) {
  const CenterPolynomial& poly = fact.polynomial;
  ojson roots = ojson::array();
  for (const Angle& r : poly.roots()) roots.push_back(angle_json(r));
  ojson coeffs = ojson::array();
  for (std::complex<double> c : poly.coeffs()) coeffs.push_back(complex_json(c));

  ojson roots_over_pi = ojson::array();
  for (const Angle& r : poly.roots()) roots_over_pi.push_back(angle_over_pi(r));

  ojson preview = ojson::array();
  const CoefficientSequence& res = fact.residual;
  for (std::int64_t k = res.next_index(1); preview.size() < preview_terms;
       k = res.next_index(k + 1)) {
    ojson row{{"k", k}, {"value", complex_json(res.term(k))}};
    if (exact_preview) {
      if (auto ex = res.term_exact(k)) row["exact"] = ex->str();
    }
    preview.push_back(std::move(row));
  }

  return ojson{{"name", name},
               {"poly",
                ojson{{"display", poly.str()},
                      {"degree", poly.degree()},
                      {"roots_over_pi", roots_over_pi},
                      {"roots", roots},
                      {"coeffs", coeffs},
                      {"exact", poly.exact_coeffs().has_value()},
                      {"real", poly.real_coeffs()}}},
               {"residual",
                ojson{{"rule", res.rule().describe()},
                      {"step", res.step()},
                      {"offset", res.offset()},
                      {"sign_pattern", sign_pattern_name(res.sign_pattern())}}},
               {"residual_preview", preview},
               {"decay_before", fit_json(before)},
               {"decay_after", fit_json(after)},
               {"exponent_gain", num_json(after.exponent - before.exponent)}};
}

ojson verification_report(const VerificationRecord& rec) {
  ojson checks = ojson::array();
  for (const VerificationCheck& c : rec.checks)
    checks.push_back(ojson{{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
  return ojson{{"entry", rec.entry}, {"pass", rec.pass}, {"checks", checks}};
}

std::string eval_csv(const std::vector<EvalRow>& rows) {
  std::string out = "theta,f_c,f_s,terms_used,error_estimate,special_point\n";
  for (const EvalRow& r : rows) {
    out += num_str(r.theta) + ',' + num_str(r.report.f_c) + ',' + num_str(r.report.f_s) + ',';
    out += std::to_string(r.report.terms_used) + ',' + num_str(r.report.error_estimate) + ',';
    out += r.report.special_point ? "true\n" : "false\n";
  }
  return out;
}

ojson eval_json(const std::string& name, const std::vector<EvalRow>& rows) {
  ojson arr = ojson::array();
  for (const EvalRow& r : rows)
    arr.push_back(ojson{{"theta", num_json(r.theta)},
                        {"f_c", num_json(r.report.f_c)},
                        {"f_s", num_json(r.report.f_s)},
                        {"terms_used", r.report.terms_used},
                        {"error_estimate", num_json(r.report.error_estimate)},
                        {"special_point", r.report.special_point}});
  return ojson{{"name", name}, {"method", eval_method_name(rows.empty() ? EvalMethod::direct
                                                                        : rows.front().report.method)},
               {"rows", arr}};
}

namespace {

std::string terms_cell(const std::optional<std::int64_t>& n) {
  return n ? std::to_string(*n) : "exceeded-cap";
}

}  // namespace

std::string bench_csv(const std::vector<BenchmarkResult>& rows) {
  std::string out =
      "series,theta,tolerance,terms_direct,terms_center,speedup,reference_re,reference_im,"
      "reference_kind\n";
  for (const BenchmarkResult& r : rows) {
    out += r.series + ',' + num_str(r.theta) + ',' + num_str(r.tolerance) + ',';
    out += terms_cell(r.terms_direct) + ',' + terms_cell(r.terms_center) + ',';
    out += (r.speedup ? num_str(*r.speedup) : std::string()) + ',';
    out += num_str(r.reference.real()) + ',' + num_str(r.reference.imag()) + ',';
    out += r.reference_kind + '\n';
  }
  return out;
}

ojson bench_json(const std::vector<BenchmarkResult>& rows) {
  ojson arr = ojson::array();
  for (const BenchmarkResult& r : rows) {
    ojson row{{"series", r.series},
              {"theta", num_json(r.theta)},
              {"tolerance", num_json(r.tolerance)}};
    row["terms_direct"] = r.terms_direct ? ojson(*r.terms_direct) : ojson("exceeded-cap");
    row["terms_center"] = r.terms_center ? ojson(*r.terms_center) : ojson("exceeded-cap");
    row["speedup"] = r.speedup ? num_json(*r.speedup) : ojson(nullptr);
    row["reference"] = complex_json(r.reference);
    row["reference_kind"] = r.reference_kind;
    arr.push_back(std::move(row));
  }
  return arr;
}

std::string pretty(const ojson& doc) { return doc.dump(2) + '\n'; }

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path);
}

}  // namespace centerseries
