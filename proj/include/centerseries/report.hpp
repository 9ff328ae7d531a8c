#pragma once

// Serialization of analysis results to JSON documents and plot-ready CSV.
// Doubles print in shortest round-trip form; non-finite values appear as the
// strings "inf", "-inf", "nan" so every artifact stays parseable.

#include <string>
#include <vector>

#include <json.hpp>

#include "centerseries/bench.hpp"
#include "centerseries/center.hpp"
#include "centerseries/corpus.hpp"
#include "centerseries/eval.hpp"
#include "centerseries/singularity.hpp"

namespace centerseries {

using ojson = nlohmann::ordered_json;

// Shortest decimal that round-trips; "inf"/"-inf"/"nan" spelled out.
std::string num_str(double v);
// Finite values as JSON numbers, non-finite as their spelled-out strings.
ojson num_json(double v);
ojson angle_json(const Angle& a);

struct ClassificationInputs {
  std::string name;
  DecayFit fit;
  // Absent when the decay is not a power law and no exponential gate fired
  // (the sequence sits outside the classification table); note carries the
  // classifier's explanation in that case.
  std::optional<ConvergenceClass> cls;
  std::string note;
  AbsoluteConvergence absolute = AbsoluteConvergence::undecided;
  SingularitySet dominant;
  bool monotonic = false;
};

ojson classification_report(const ClassificationInputs& in);
ojson factorization_report(const std::string& name, const CenterFactorization& fact,
                           const DecayFit& before, const DecayFit& after,
                           std::size_t preview_terms = 16, bool exact_preview = false);
ojson verification_report(const VerificationRecord& rec);

struct EvalRow {
  double theta = 0;
  EvaluationReport report;
};

std::string eval_csv(const std::vector<EvalRow>& rows);
ojson eval_json(const std::string& name, const std::vector<EvalRow>& rows);
std::string bench_csv(const std::vector<BenchmarkResult>& rows);
ojson bench_json(const std::vector<BenchmarkResult>& rows);

// dump(2) with a trailing newline; the single serialization point, so equal
// documents are byte-identical.
std::string pretty(const ojson& doc);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace centerseries
