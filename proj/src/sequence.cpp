#include "centerseries/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "centerseries/error.hpp"
#include "centerseries/numeric.hpp"

namespace centerseries {

const char* sign_pattern_name(SignPattern s) {
  switch (s) {
    case SignPattern::constant: return "constant";
    case SignPattern::alternating_in_k: return "alternating-in-k";
    case SignPattern::alternating_in_j: return "alternating-in-j";
    case SignPattern::irregular: return "irregular";
  }
  return "?";
}

PowerStrideRule::PowerStrideRule(ExactComplex amp, int kpow, SignPattern sign, std::int64_t step,
                                 std::int64_t offset)
    : amp_(std::move(amp)), amp_f_(amp_.to_complex()), kpow_(kpow), sign_(sign), step_(step),
      offset_(offset) {}

static int stride_sign(SignPattern sign, std::int64_t k, std::int64_t step, std::int64_t offset) {
  switch (sign) {
    case SignPattern::constant: return 1;
    case SignPattern::alternating_in_k: return (k % 2 == 0) ? 1 : -1;
    case SignPattern::alternating_in_j: {
      std::int64_t j = (k - offset) / step;
      return (j % 2 == 0) ? 1 : -1;
    }
    case SignPattern::irregular: return 1;
  }
  return 1;
}

std::complex<double> PowerStrideRule::value(std::int64_t k) const {
  double s = static_cast<double>(stride_sign(sign_, k, step_, offset_));
  return amp_f_ * (s * ipow(static_cast<double>(k), kpow_));
}

std::optional<ExactComplex> PowerStrideRule::exact(std::int64_t k) const {
  BigInt kp = 1;
  for (int i = 0; i < std::abs(kpow_); ++i) kp *= k;
  BigRat factor = kpow_ >= 0 ? BigRat(kp) : BigRat(1, kp);
  if (stride_sign(sign_, k, step_, offset_) < 0) factor = -factor;
  ExactComplex v = amp_;
  v.scale(factor);
  return v;
}

std::string PowerStrideRule::describe() const {
  std::ostringstream os;
  os << "(" << amp_.str() << ")";
  if (sign_ == SignPattern::alternating_in_k) os << "*(-1)^k";
  if (sign_ == SignPattern::alternating_in_j) os << "*(-1)^j";
  if (kpow_ != 0) os << "*k^" << kpow_;
  return os.str();
}

std::shared_ptr<const TermRule> PowerStrideRule::with_index_power(int m) const {
  return std::make_shared<PowerStrideRule>(amp_, kpow_ + m, sign_, step_, offset_);
}

std::complex<double> FloatPowerRule::value(std::int64_t k) const {
  return {a_ * std::pow(static_cast<double>(k), -p_), 0.0};
}

std::string FloatPowerRule::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << a_ << "*k^" << -p_;
  return os.str();
}

std::complex<double> ExpSqrtRule::value(std::int64_t k) const {
  return {std::exp(-std::sqrt(static_cast<double>(k))), 0.0};
}

std::string ExpSqrtRule::describe() const { return "exp(-sqrt(k))"; }

std::complex<double> IndexPowerRule::value(std::int64_t k) const {
  return base_->value(k) * ipow(static_cast<double>(k), m_);
}

std::optional<ExactComplex> IndexPowerRule::exact(std::int64_t k) const {
  auto b = base_->exact(k);
  if (!b) return std::nullopt;
  BigInt kp = 1;
  for (int i = 0; i < std::abs(m_); ++i) kp *= k;
  b->scale(m_ >= 0 ? BigRat(kp) : BigRat(1, kp));
  return b;
}

std::string IndexPowerRule::describe() const {
  std::ostringstream os;
  os << "k^" << m_ << "*(" << base_->describe() << ")";
  return os.str();
}

std::shared_ptr<const TermRule> IndexPowerRule::with_index_power(int m) const {
  if (m_ + m == 0) return base_;
  return std::make_shared<IndexPowerRule>(base_, m_ + m);
}

CoefficientSequence::CoefficientSequence(std::shared_ptr<const TermRule> rule, std::int64_t step,
                                         std::int64_t offset, SignPattern sign, bool is_real,
                                         Angle rotation)
    : rule_(std::move(rule)), step_(step), offset_(offset), sign_(sign), is_real_(is_real),
      rotation_(rotation) {
  if (step_ < 1 || offset_ < 0) throw Error(ErrorCode::precondition_violated, "bad step/offset");
}

bool CoefficientSequence::on_stride(std::int64_t k) const {
  if (k < 1 || k < offset_) return false;
  return (k - offset_) % step_ == 0;
}

std::int64_t CoefficientSequence::next_index(std::int64_t from) const {
  std::int64_t k = std::max<std::int64_t>({from, 1, offset_ == 0 ? step_ : offset_});
  std::int64_t rem = (k - offset_) % step_;
  if (rem != 0) k += step_ - rem;
  return k;
}

std::complex<double> CoefficientSequence::rule_term(std::int64_t k) const {
  if (!on_stride(k)) return {0.0, 0.0};
  return rule_->value(k);
}

std::complex<double> CoefficientSequence::term(std::int64_t k) const {
  std::complex<double> v = rule_term(k);
  if (rotation_.radians() != 0.0 && v != std::complex<double>{0.0, 0.0}) {
    double ang = -std::remainder(static_cast<double>(k) * rotation_.radians(),
                                 2 * std::numbers::pi);
    v *= std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return v;
}

std::optional<ExactComplex> CoefficientSequence::term_exact(std::int64_t k) const {
  if (!on_stride(k)) return ExactComplex::zero();
  auto v = rule_->exact(k);
  if (!v) return std::nullopt;
  if (rotation_.radians() != 0.0) {
    if (!rotation_.exact()) return std::nullopt;
    *v *= ExactComplex::phase(BigRat(-k) * *rotation_.over_pi());
  }
  return v;
}

static CoefficientSequence chained(const CoefficientSequence& seq, int m) {
  auto folded = seq.rule().with_index_power(m);
  if (!folded) folded = std::make_shared<IndexPowerRule>(seq.rule_ptr(), m);
  return CoefficientSequence(folded, seq.step(), seq.offset(), seq.sign_pattern(), seq.is_real(),
                             seq.rotation());
}

CoefficientSequence log_derivative(const CoefficientSequence& seq) { return chained(seq, +1); }
CoefficientSequence log_integral(const CoefficientSequence& seq) { return chained(seq, -1); }

DecayFit fit_decay(const CoefficientSequence& seq, std::int64_t k_lo, std::int64_t k_hi) {
  if (k_hi <= k_lo) throw Error(ErrorCode::window_too_small, "empty window");
  std::vector<double> lx, ly;
  for (std::int64_t k = seq.next_index(k_lo); k <= k_hi; k += seq.step()) {
    double m = std::abs(seq.rule_term(k));
    if (m == 0.0)
      throw Error(ErrorCode::zero_term_in_window,
                  "a_k = 0 at k = " + std::to_string(k) + "; shift the window");
    lx.push_back(std::log(static_cast<double>(k)));
    ly.push_back(std::log(m));
  }
  if (lx.size() < 8)
    throw Error(ErrorCode::window_too_small,
                "need >= 8 non-zero terms, found " + std::to_string(lx.size()));
  const double n = static_cast<double>(lx.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sx += lx[i];
    sy += ly[i];
    sxx += lx[i] * lx[i];
    sxy += lx[i] * ly[i];
  }
  const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  const double intercept = (sy - slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    double d = ly[i] - (slope * lx[i] + intercept);
    ss += d * d;
  }
  DecayFit fit;
  fit.exponent = -slope;
  fit.amplitude = std::exp(intercept);
  fit.k_lo = k_lo;
  fit.k_hi = k_hi;
  fit.residual = std::sqrt(ss / n);
  return fit;
}

RatioProbe probe_ratio(const CoefficientSequence& seq) {
  RatioProbe probe;
  std::vector<double> xs;
  std::vector<double> rs;
  for (std::int64_t base = 16; base <= 262144; base *= 4) {
    std::int64_t k1 = seq.next_index(base);
    std::int64_t k2 = seq.next_index(k1 + 1);
    double m1 = std::abs(seq.rule_term(k1));
    double m2 = std::abs(seq.rule_term(k2));
    if (m1 <= 0 || m2 <= 0 || !std::isfinite(m1) || !std::isfinite(m2)) continue;
    double r = std::pow(m2 / m1, 1.0 / static_cast<double>(k2 - k1));
    if (!std::isfinite(r) || r <= 0) continue;
    xs.push_back(1.0 / std::sqrt(static_cast<double>(k1)));
    rs.push_back(r);
    probe.samples.emplace_back(k1, r);
  }
  // Keep the four samples deepest in k (smallest x) for the extrapolation.
  while (xs.size() > 4) {
    xs.erase(xs.begin());
    rs.erase(rs.begin());
  }
  if (xs.size() < 2) return probe;
  probe.limit = neville_at_zero(xs, rs);
  probe.radius = 1.0 / probe.limit;
  probe.valid = std::isfinite(probe.limit) && probe.limit > 0;
  return probe;
}

}  // namespace centerseries
