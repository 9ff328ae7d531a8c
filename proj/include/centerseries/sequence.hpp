#pragma once

// Coefficient sequences a_k (k >= 1) of definite-parity Fourier / power
// series, with structural metadata and lazy term evaluation in two backends
// (double, exact). A sequence with nonzero rotation theta_1 stores its rule in
// the (z/z_1)^k basis; term() applies the phase z_1^{-k} to give the plain
// z-basis coefficient.

#include <complex>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "centerseries/exact.hpp"

namespace centerseries {

enum class SignPattern {
  constant,
  alternating_in_k,
  alternating_in_j,
  // Derived metadata only (residuals whose signs settle into none of the
  // supported patterns). Not accepted in descriptors; detect_dominant treats
  // it as pattern-unsupported.
  irregular,
};

const char* sign_pattern_name(SignPattern s);

// Term rule in the rotation basis. Rules are only consulted at structurally
// admissible k (the owning sequence gates by step/offset) unless self_gating.
class TermRule {
 public:
  virtual ~TermRule() = default;
  virtual std::complex<double> value(std::int64_t k) const = 0;
  // Exact value when the rule supports it (nullopt otherwise, not zero).
  virtual std::optional<ExactComplex> exact(std::int64_t /*k*/) const { return std::nullopt; }
  virtual std::string describe() const = 0;
  // Rule computes its own structural zeros (ignores the sequence gate).
  virtual bool self_gating() const { return false; }
  // Fold an extra k^m factor into the rule if it can do so exactly.
  virtual std::shared_ptr<const TermRule> with_index_power(int /*m*/) const { return nullptr; }
};

// amp * sign(k,j) * k^kpow on the arithmetic progression k = offset + step*j.
// Covers every built-in coefficient family.
class PowerStrideRule final : public TermRule {
 public:
  PowerStrideRule(ExactComplex amp, int kpow, SignPattern sign, std::int64_t step,
                  std::int64_t offset);
  std::complex<double> value(std::int64_t k) const override;
  std::optional<ExactComplex> exact(std::int64_t k) const override;
  std::string describe() const override;
  std::shared_ptr<const TermRule> with_index_power(int m) const override;

 private:
  ExactComplex amp_;
  std::complex<double> amp_f_;
  int kpow_;
  SignPattern sign_;
  std::int64_t step_, offset_;
};

// A * k^{-p} with arbitrary real p (float backend only); used by sweeps.
class FloatPowerRule final : public TermRule {
 public:
  FloatPowerRule(double amplitude, double p) : a_(amplitude), p_(p) {}
  std::complex<double> value(std::int64_t k) const override;
  std::string describe() const override;

 private:
  double a_, p_;
};

// exp(-sqrt(k)).
class ExpSqrtRule final : public TermRule {
 public:
  std::complex<double> value(std::int64_t k) const override;
  std::string describe() const override;
};

// base(k) * k^m; realizes logarithmic derivative/integral chains for rules
// that cannot fold the factor in themselves.
class IndexPowerRule final : public TermRule {
 public:
  IndexPowerRule(std::shared_ptr<const TermRule> base, int m) : base_(std::move(base)), m_(m) {}
  std::complex<double> value(std::int64_t k) const override;
  std::optional<ExactComplex> exact(std::int64_t k) const override;
  std::string describe() const override;
  bool self_gating() const override { return base_->self_gating(); }
  std::shared_ptr<const TermRule> with_index_power(int m) const override;

 private:
  std::shared_ptr<const TermRule> base_;
  int m_;
};

class CoefficientSequence {
 public:
  CoefficientSequence(std::shared_ptr<const TermRule> rule, std::int64_t step,
                      std::int64_t offset, SignPattern sign, bool is_real,
                      Angle rotation = Angle());

  // z-basis coefficient a_k, zero off the stride.
  std::complex<double> term(std::int64_t k) const;
  std::optional<ExactComplex> term_exact(std::int64_t k) const;
  // Rotation-basis value (coefficient of (z/z_1)^k).
  std::complex<double> rule_term(std::int64_t k) const;

  bool on_stride(std::int64_t k) const;
  // First admissible k at or after `from`.
  std::int64_t next_index(std::int64_t from) const;

  std::int64_t step() const { return step_; }
  std::int64_t offset() const { return offset_; }
  SignPattern sign_pattern() const { return sign_; }
  bool is_real() const { return is_real_; }
  const Angle& rotation() const { return rotation_; }
  const TermRule& rule() const { return *rule_; }
  std::shared_ptr<const TermRule> rule_ptr() const { return rule_; }

 private:
  std::shared_ptr<const TermRule> rule_;
  std::int64_t step_, offset_;
  SignPattern sign_;
  bool is_real_;
  Angle rotation_;
};

// Chain operations: rule k -> k*a_k (derivative direction) and k -> a_k/k
// (integral direction); all metadata preserved.
CoefficientSequence log_derivative(const CoefficientSequence& seq);
CoefficientSequence log_integral(const CoefficientSequence& seq);

struct DecayFit {
  double amplitude = 0;  // A in |a_k| ~ A / k^exponent
  double exponent = 0;   // negative means growth
  std::int64_t k_lo = 0, k_hi = 0;
  double residual = 0;  // rms deviation of log|a_k| from the fit line

  // Declared threshold above which the fit is not trusted as a power law.
  static constexpr double non_power_law_threshold = 0.05;
  bool power_law() const { return residual <= non_power_law_threshold; }
};

// Least-squares line fit of log|a_k| vs log k over non-zero terms in
// [k_lo, k_hi]. Throws window_too_small (< 8 admissible terms) or
// zero_term_in_window (an admissible term is exactly zero).
DecayFit fit_decay(const CoefficientSequence& seq, std::int64_t k_lo, std::int64_t k_hi);

struct RatioProbe {
  double limit = 0;   // extrapolated lim |a_{k+step}/a_k|^{1/step}
  double radius = 0;  // 1/limit
  std::vector<std::pair<std::int64_t, double>> samples;
  bool valid = false;
};

// Successive-term ratio probe with polynomial extrapolation in 1/sqrt(k).
RatioProbe probe_ratio(const CoefficientSequence& seq);

}  // namespace centerseries
