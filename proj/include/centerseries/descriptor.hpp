#pragma once

// User-supplied series descriptors: a small JSON object naming either a
// built-in example or an expression rule for a_k.
//
//   {
//     "name": "cubic",            default: the rule text
//     "kind": "sine",             sine | cosine | complex (default sine)
//     "rule": "1/k^3",            built-in name or expression in k
//     "step": 1, "offset": 1,     arithmetic progression of non-zero terms
//     "sign_pattern": "constant", constant | alternating-in-k | alternating-in-j
//     "rotation": "pi/3",         radians as a number, or "m/n pi" exactly
//     "singularities": [ {"angle": "pi", "degree": "hard 0"}, ... ]  optional
//   }
//
// Expression grammar (value must be real): +, -, *, /, integer powers with
// ^, parentheses, the variable k, the stride index j = (k - offset)/step,
// the constant pi, and an optional (-1)^k or (-1)^j alternating factor.
// Alternation may be written in the rule or declared via sign_pattern; the
// factor is applied exactly once either way, and giving both forms with
// different patterns is an error. The optional singularities list overrides
// detection, for sequences whose pattern the detector does not support.

#include <string>

#include "centerseries/corpus.hpp"
#include "centerseries/sequence.hpp"
#include "centerseries/singularity.hpp"

namespace centerseries {

struct ParsedDescriptor {
  ParsedDescriptor(std::string name, WaveKind kind, CoefficientSequence sequence)
      : name(std::move(name)), kind(kind), sequence(std::move(sequence)) {}

  std::string name;
  WaveKind kind = WaveKind::sine;
  CoefficientSequence sequence;
  // Stored set for built-ins, user-declared set otherwise (when given).
  std::optional<SingularitySet> explicit_singularities;
  bool builtin = false;
};

// Throws parse-error with a field/position diagnostic.
ParsedDescriptor parse_descriptor(const std::string& json_text);
ParsedDescriptor load_descriptor(const std::string& path);

// The expression half of the grammar, usable on its own. The returned rule
// evaluates in double precision only.
std::shared_ptr<const TermRule> parse_rule_expression(const std::string& text,
                                                      std::int64_t step, std::int64_t offset);

// "pi", "-pi/2", "2/3 pi" (exact) or a plain number (radians).
Angle parse_angle_text(const std::string& text);

}  // namespace centerseries
