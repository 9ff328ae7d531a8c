#pragma once

// Unit-circle singularity bookkeeping: degrees of hardness/softness on the
// ladder ... hard 2, hard 1, hard 0, soft 0, soft 1, soft 2 ... (logarithmic
// integration moves one rung toward soft, differentiation one rung toward
// hard), superposition of sets, dominant-point detection for supported
// coefficient patterns, and the decay-exponent classification table.

#include <optional>
#include <string>
#include <vector>

#include "centerseries/exact.hpp"
#include "centerseries/sequence.hpp"

namespace centerseries {

class Degree {
 public:
  static Degree hard(int n);
  static Degree soft(int n);
  static Degree infinitely_hard();
  static Degree infinitely_soft();

  bool is_infinite() const { return infinite_; }
  bool is_hard() const { return hard_; }
  // Finite degree n >= 0; 0 is the borderline degree of either polarity.
  int n() const;

  // Finite rungs: hard n -> -(n+1), soft n -> n. Positive shift = softer.
  Degree shifted(int steps) const;

  // Dominance: hardest first. Negative when a dominates b.
  static int compare_dominance(const Degree& a, const Degree& b);

  std::string str() const;
  friend bool operator==(const Degree& a, const Degree& b);
  friend bool operator!=(const Degree& a, const Degree& b) { return !(a == b); }

 private:
  Degree(bool hard, bool infinite, int n) : hard_(hard), infinite_(infinite), n_(n) {}
  bool hard_;
  bool infinite_;
  int n_;  // meaningful when finite
};

struct SingularityPoint {
  Angle angle;
  Degree degree;
};

class SingularitySet {
 public:
  SingularitySet() = default;
  // Points at equal angles are merged by the superposition rule.
  explicit SingularitySet(std::vector<SingularityPoint> points);

  const std::vector<SingularityPoint>& points() const { return points_; }
  bool empty() const { return points_.empty(); }
  std::size_t size() const { return points_.size(); }

  // Hardest (or least soft) points; non-empty whenever the set is.
  std::vector<SingularityPoint> dominant() const;

  // Angles come in +- pairs (0 and pi are self-paired) with equal degrees.
  bool conjugate_closed(double tol = 1e-12) const;

  std::string str() const;

 private:
  void insert(SingularityPoint p);
  std::vector<SingularityPoint> points_;  // sorted by angle, unique
};

// Merge by angle: hard beats soft; among hard the largest degree wins; among
// soft the smallest degree wins; infinitely-hard dominates everything and
// infinitely-soft loses to everything.
SingularitySet superpose(const std::vector<SingularitySet>& sets);

// Move every finite degree |steps| rungs (positive = integration = softer);
// infinite degrees are fixed points and pass through unchanged.
SingularitySet shift_degrees(const SingularitySet& set, int steps);

struct ClassTag {
  enum class Kind { strong_divergence, hard, borderline_hard, borderline_soft, soft,
                    strong_convergence };
  Kind kind = Kind::borderline_hard;
  int n = 0;  // for Kind::hard / Kind::soft (n >= 1)

  std::string str() const;
  friend bool operator==(const ClassTag& a, const ClassTag& b) {
    return a.kind == b.kind && (a.kind != Kind::hard && a.kind != Kind::soft ? true : a.n == b.n);
  }
};

enum class SeriesBehavior {
  divergent_everywhere,
  divergent_almost_everywhere,
  pointwise_almost_everywhere,
  absolutely_uniformly_convergent,
};

const char* series_behavior_name(SeriesBehavior b);

struct ConvergenceClass {
  ClassTag tag;
  SeriesBehavior predicted_series_behavior;  // complex series on the circle
  std::string predicted_function_smoothness;
};

// Fixed total row mapping for a tag (behavior + smoothness text).
ConvergenceClass class_row(const ClassTag& tag);
// The sine/cosine pair's convergence column for the same row.
SeriesBehavior fourier_pair_behavior(const ClassTag& tag);

// Probe for an eventually monotonic modulus over non-zero terms in a window.
bool extended_monotonic(const CoefficientSequence& seq, std::int64_t k_lo = 32,
                        std::int64_t k_hi = 4096);

struct DetectOptions {
  std::int64_t window_lo = 32;
  std::int64_t window_hi = 4096;
};

// Dominant singularities for the supported patterns: step s with constant
// sign -> roots of z^s = 1; step s alternating-in-j -> roots of z^s = -1;
// alternating-in-k is canonicalized by parity of the step; rotation shifts
// all angles. Degree comes from the decay exponent (infinite degrees from a
// two-window drift probe when the fit is not a power law).
// Throws pattern_unsupported or non_monotonic_window.
SingularitySet detect_dominant(const CoefficientSequence& seq, const DetectOptions& opt = {});

// Degree of the dominant singularities implied by decay exponent p.
Degree degree_from_exponent(double p);
// Class tag implied by decay exponent p (half-open bounds as printed).
ClassTag tag_from_exponent(double p);

// Row classification from a decay fit, with exponential cases picked off by
// the ratio probe. Throws not_power_law when the fit cannot be trusted.
ConvergenceClass classify(const CoefficientSequence& seq, const DecayFit& fit);

enum class AbsoluteConvergence { absolutely_convergent, not_absolutely_convergent, undecided };

const char* absolute_convergence_name(AbsoluteConvergence d);

// p > 1 -> absolutely convergent, p <= 1 -> not; untrusted fit -> undecided.
AbsoluteConvergence check_absolute_convergence(const DecayFit& fit);

}  // namespace centerseries
