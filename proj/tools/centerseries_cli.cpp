// Command-line front end: classify / factor / eval / bench / verify /
// list-examples over built-in corpus entries or descriptor files.
//
// Exit codes: 0 success, 1 validation failure, 2 verification mismatch.

#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "centerseries/bench.hpp"
#include "centerseries/center.hpp"
#include "centerseries/corpus.hpp"
#include "centerseries/descriptor.hpp"
#include "centerseries/error.hpp"
#include "centerseries/eval.hpp"
#include "centerseries/report.hpp"
#include "centerseries/singularity.hpp"

using namespace centerseries;

namespace {

struct GlobalOpts {
  std::string precision = "float";
  std::string output_dir;
  std::string format = "csv";
  double exclusion_window = -1;  // <0 = per-command default
  std::int64_t cap = 0;          // 0 = per-command default
};

// A series argument is a corpus name or a path to a descriptor file.
struct Resolved {
  ParsedDescriptor desc;
  const CorpusEntry* entry = nullptr;  // set when the argument named the corpus
};

Resolved resolve_series(const std::string& arg) {
  for (const std::string& n : corpus_names()) {
    if (n != arg) continue;
    const CorpusEntry& e = corpus_entry(arg);
    ParsedDescriptor d(e.name, e.kind, e.source);
    d.explicit_singularities = e.singularities;
    d.builtin = true;
    return {std::move(d), &e};
  }
  if (!std::filesystem::exists(arg))
    throw Error(ErrorCode::unknown_name,
                "'" + arg + "' is not a corpus entry and no such file exists (corpus: " +
                    [] {
                      std::string all;
                      for (const std::string& n : corpus_names()) all += n + " ";
                      return all;
                    }() +
                    ")");
  return {load_descriptor(arg), nullptr};
}

SingularitySet resolve_set(const Resolved& r) {
  if (r.desc.explicit_singularities) return *r.desc.explicit_singularities;
  try {
    return detect_dominant(r.desc.sequence);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::pattern_unsupported)
      throw Error(ErrorCode::pattern_unsupported,
                  std::string(e.what()) +
                      "; supply an explicit \"singularities\" list in the descriptor");
    throw;
  }
}

std::string safe_filename(std::string s) {
  for (char& c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '.' && c != '_' && c != '-') c = '-';
  return s.empty() ? "series" : s;
}

void emit_doc(const GlobalOpts& g, const std::string& filename, const std::string& content) {
  if (g.output_dir.empty()) {
    std::cout << content;
    return;
  }
  std::filesystem::create_directories(g.output_dir);
  std::filesystem::path path = std::filesystem::path(g.output_dir) / filename;
  write_text_file(path.string(), content);
  std::cout << "wrote " << path.string() << "\n";
}

int cmd_classify(const GlobalOpts& g, const std::string& series) {
  Resolved r = resolve_series(series);
  const CoefficientSequence& seq = r.desc.sequence;
  ClassificationInputs in;
  in.name = r.desc.name;
  in.fit = fit_decay(seq, 32, 4096);
  try {
    in.cls = classify(seq, in.fit);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::not_power_law) throw;
    in.note = e.what();
  }
  in.absolute = check_absolute_convergence(in.fit);
  in.dominant = resolve_set(r);
  in.monotonic = extended_monotonic(seq);
  emit_doc(g, safe_filename(in.name) + "-classification.json", pretty(classification_report(in)));
  return 0;
}

int cmd_factor(const GlobalOpts& g, const std::string& series) {
  Resolved r = resolve_series(series);
  const CoefficientSequence& seq = r.desc.sequence;
  SingularitySet set = resolve_set(r);
  CenterPolynomial poly = build_polynomial(set, seq.is_real());
  CenterFactorization fact = factor(seq, poly);
  DecayFit before = fit_decay(seq, 32, 4096);
  DecayFit after = fit_decay(fact.residual, 32, 4096);
  ojson doc = factorization_report(r.desc.name, fact, before, after, 16, g.precision == "exact");
  emit_doc(g, safe_filename(r.desc.name) + "-factorization.json", pretty(doc));
  return 0;
}

struct EvalOpts {
  std::string series;
  std::vector<double> thetas;
  double grid_start = 0, grid_stop = 0;
  bool grid_span_set = false;
  int grid_count = 37;
  std::string method = "direct";
  double rho = 1.0;
  double tolerance = 1e-9;
  std::int64_t max_terms = 0;  // 0 = default
};

int cmd_eval(const GlobalOpts& g, const EvalOpts& o) {
  Resolved r = resolve_series(o.series);
  EvalQuery q;
  q.rho = o.rho;
  q.tolerance = o.tolerance;
  if (g.cap > 0) q.max_terms = g.cap;
  if (o.max_terms > 0) q.max_terms = o.max_terms;
  if (g.exclusion_window >= 0) q.exclusion_window = g.exclusion_window;
  q.method = o.method == "direct"   ? EvalMethod::direct
             : o.method == "center" ? EvalMethod::center
                                    : EvalMethod::closed_form_oracle;
  if (q.method == EvalMethod::closed_form_oracle &&
      (!r.entry || (!r.entry->target_f_c && !r.entry->target_f_s)))
    throw Error(ErrorCode::unknown_name, "'" + o.series + "' has no closed-form targets");

  std::optional<CenterFactorization> fact;
  if (!r.entry && q.method == EvalMethod::center)
    fact = factor(r.desc.sequence, build_polynomial(resolve_set(r), r.desc.sequence.is_real()));

  std::vector<double> grid = o.thetas;
  if (grid.empty() && o.grid_span_set) {
    if (o.grid_count < 1)
      throw Error(ErrorCode::precondition_violated, "eval: --grid-count must be >= 1");
    for (int i = 0; i < o.grid_count; ++i)
      grid.push_back(o.grid_count == 1 ? o.grid_start
                                       : o.grid_start + (o.grid_stop - o.grid_start) * i /
                                                            (o.grid_count - 1));
  }
  if (grid.empty()) grid = theta_grid(o.grid_count);
  std::vector<EvalRow> rows;
  for (double t : grid) {
    q.theta = t;
    EvalRow row;
    row.theta = t;
    row.report = r.entry  ? evaluate_entry(*r.entry, q)
                 : fact   ? eval_center(*fact, q)
                          : eval_direct(r.desc.sequence, q);
    rows.push_back(row);
  }
  std::string base = safe_filename(r.desc.name) + "-eval";
  if (g.format == "csv")
    emit_doc(g, base + ".csv", eval_csv(rows));
  else
    emit_doc(g, base + ".json", pretty(eval_json(r.desc.name, rows)));
  return 0;
}

struct BenchOpts {
  std::string series;
  bool all = false;
  std::vector<double> thetas;
  std::vector<double> tolerances;
};

int cmd_bench(const GlobalOpts& g, const BenchOpts& o) {
  BenchConfig cfg;
  if (g.cap > 0) cfg.cap = g.cap;
  if (g.exclusion_window >= 0) cfg.exclusion_window = g.exclusion_window;
  if (!o.tolerances.empty()) cfg.tolerances = o.tolerances;

  std::vector<BenchmarkResult> rows;
  std::string base = "bench-all";
  if (o.all) {
    rows = default_bench_table(cfg);
  } else {
    Resolved r = resolve_series(o.series);
    base = "bench-" + safe_filename(r.desc.name);
    CenterFactorization fact =
        r.entry ? factor_entry(*r.entry)
                : factor(r.desc.sequence,
                         build_polynomial(resolve_set(r), r.desc.sequence.is_real()));
    std::vector<double> thetas = o.thetas.empty() ? bench_thetas(fact, cfg) : o.thetas;
    // Descriptor-defined series get a target-free shell; references fall
    // back to center evaluation at 10x cap.
    CorpusEntry shell = r.entry ? *r.entry
                                : CorpusEntry(r.desc.name, r.desc.kind, "user descriptor",
                                              r.desc.sequence, SingularitySet());
    for (double theta : thetas)
      for (double tol : cfg.tolerances) rows.push_back(bench_cell(shell, fact, theta, tol, cfg));
  }
  if (g.format == "csv")
    emit_doc(g, base + ".csv", bench_csv(rows));
  else
    emit_doc(g, base + ".json", pretty(bench_json(rows)));
  return 0;
}

int cmd_verify(const GlobalOpts& g, const std::string& name, bool all) {
  std::vector<std::string> names = all ? corpus_names() : std::vector<std::string>{name};
  ojson entries = ojson::array();
  bool ok = true;
  for (const std::string& n : names) {
    VerificationRecord rec = verify_entry(n);
    ok = ok && rec.pass;
    entries.push_back(verification_report(rec));
    std::cerr << n << ": " << (rec.pass ? "pass" : "FAIL") << "\n";
  }
  ojson doc{{"pass", ok}, {"entries", entries}};
  emit_doc(g, "verification.json", pretty(doc));
  return ok ? 0 : 2;
}

int cmd_list_examples() {
  for (const CorpusEntry& e : corpus_entries()) {
    std::cout << e.name << "  [" << wave_kind_name(e.kind) << "]  " << e.description << "\n"
              << "    singularities: " << e.singularities.str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Definite-parity Fourier series: singularity analysis and center-series evaluation"};
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--precision", g.precision, "Numeric backend for reports")
      ->check(CLI::IsMember({"float", "exact"}));
  app.add_option("--output-dir", g.output_dir,
                 "Write artifacts here instead of printing to stdout");
  app.add_option("--format", g.format, "Tabular artifact format (eval, bench)")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--exclusion-window", g.exclusion_window,
                 "Radians kept clear of root angles (bench grids, special-point flagging)");
  app.add_option("--cap", g.cap, "Term budget cap (eval max terms, bench search ceiling)");

  std::string classify_series;
  CLI::App* classify_cmd =
      app.add_subcommand("classify", "Decay fit, convergence class, dominant singularities");
  classify_cmd->add_option("series", classify_series, "Corpus name or descriptor file")
      ->required();

  std::string factor_series;
  CLI::App* factor_cmd =
      app.add_subcommand("factor", "Center factorization: polynomial and residual series");
  factor_cmd->add_option("series", factor_series, "Corpus name or descriptor file")->required();

  EvalOpts eo;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate the waveform on a theta grid");
  eval_cmd->add_option("series", eo.series, "Corpus name or descriptor file")->required();
  eval_cmd->add_option("--theta", eo.thetas, "Explicit angles (radians)")->delimiter(',');
  CLI::Option* gstart = eval_cmd->add_option("--grid-start", eo.grid_start, "Grid start angle");
  eval_cmd->add_option("--grid-stop", eo.grid_stop, "Grid stop angle (inclusive)")
      ->needs(gstart);
  eval_cmd->add_option("--grid-count", eo.grid_count,
                       "Grid size (midpoints over (-pi, pi) unless a span is given)");
  eval_cmd->add_option("--method", eo.method, "direct | center | oracle")
      ->check(CLI::IsMember({"direct", "center", "oracle"}));
  eval_cmd->add_option("--rho", eo.rho, "Radius in [0, 1]");
  eval_cmd->add_option("--tolerance", eo.tolerance, "Adaptive stop target");
  eval_cmd->add_option("--max-terms", eo.max_terms, "Term budget for this evaluation");

  BenchOpts bo;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Terms-to-tolerance: direct vs center evaluation");
  bench_cmd->add_option("series", bo.series, "Corpus name or descriptor file");
  bench_cmd->add_flag("--all", bo.all, "Whole corpus over default angles");
  bench_cmd->add_option("--theta", bo.thetas, "Explicit angles (radians)")->delimiter(',');
  bench_cmd->add_option("--tolerance", bo.tolerances, "Tolerance list")->delimiter(',');

  std::string verify_name;
  bool verify_all = false;
  CLI::App* verify_cmd = app.add_subcommand("verify", "Run a corpus entry's oracle checks");
  verify_cmd->add_option("name", verify_name, "Corpus entry name, or 'all'");
  verify_cmd->add_flag("--all", verify_all, "Every corpus entry");

  CLI::App* list_cmd = app.add_subcommand("list-examples", "Built-in corpus entries");

  CLI11_PARSE(app, argc, argv);
  eo.grid_span_set = gstart->count() > 0;
  if (verify_name == "all") {
    verify_name.clear();
    verify_all = true;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(g, classify_series);
    if (factor_cmd->parsed()) return cmd_factor(g, factor_series);
    if (eval_cmd->parsed()) return cmd_eval(g, eo);
    if (bench_cmd->parsed()) {
      if (bo.all == bo.series.empty())
        return cmd_bench(g, bo);
      throw Error(ErrorCode::parse_error, "bench needs a series argument or --all, not both");
    }
    if (verify_cmd->parsed()) {
      if (verify_all == verify_name.empty()) return cmd_verify(g, verify_name, verify_all);
      throw Error(ErrorCode::parse_error, "verify needs an entry name or --all, not both");
    }
    if (list_cmd->parsed()) return cmd_list_examples();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
