#pragma once

// Built-in worked examples: classic waveforms with known coefficient rules,
// dominant singularities, closed-form residual coefficients, and (where a
// closed form exists) target functions. These are the oracles the test suite
// checks every pipeline stage against.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "centerseries/center.hpp"
#include "centerseries/eval.hpp"
#include "centerseries/sequence.hpp"
#include "centerseries/singularity.hpp"

namespace centerseries {

enum class WaveKind { sine, cosine, complex_series };

const char* wave_kind_name(WaveKind k);

struct CorpusEntry {
  CorpusEntry(std::string name, WaveKind kind, std::string description,
              CoefficientSequence source, SingularitySet singularities)
      : name(std::move(name)), kind(kind), description(std::move(description)),
        source(std::move(source)), singularities(std::move(singularities)) {}

  std::string name;
  WaveKind kind = WaveKind::sine;
  std::string description;
  CoefficientSequence source;
  SingularitySet singularities;  // stored dominant set
  // Exact b_k of the center factorization over the stored set (zero off
  // support). Absent when no closed form is stored (expsqrt).
  std::function<ExactComplex(std::int64_t)> expected_residual;
  std::string residual_note;
  // Waveform targets (constant included) where a closed form is known.
  std::function<double(double)> target_f_c, target_f_s;
  // Constant term of the waveform; the power series itself has none.
  double constant_offset = 0;
};

const std::vector<CorpusEntry>& corpus_entries();
const CorpusEntry& corpus_entry(const std::string& name);  // throws unknown-name
std::vector<std::string> corpus_names();

// The delta entry with a caller-chosen rotation (the built-in list stores
// theta_1 = pi/3).
CorpusEntry delta_entry(const Angle& theta1);

// factor() over the polynomial built from the entry's stored singularities.
CenterFactorization factor_entry(const CorpusEntry& e);

// Evaluate the entry's waveform: series value with constant_offset added to
// f_c. method closed_form_oracle reads the stored targets (NaN where absent).
EvaluationReport evaluate_entry(const CorpusEntry& e, const EvalQuery& q);

struct VerificationCheck {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct VerificationRecord {
  std::string entry;
  std::vector<VerificationCheck> checks;
  bool pass = true;

  void add(const std::string& name, bool ok, const std::string& detail);
};

// Runs the entry's oracle checks: detected singularities vs stored, exact and
// float residual coefficients vs the closed form (k <= 500), center-series
// function values vs targets or against a larger-budget re-evaluation, chain
// identities that tie entries together, and the expsqrt radius/softness
// probes.
VerificationRecord verify_entry(const std::string& name);

}  // namespace centerseries
