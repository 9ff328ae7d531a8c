#include "centerseries/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "centerseries/error.hpp"

namespace centerseries {

Degree Degree::hard(int n) {
  if (n < 0) throw Error(ErrorCode::precondition_violated, "negative degree");
  return Degree(true, false, n);
}
Degree Degree::soft(int n) {
  if (n < 0) throw Error(ErrorCode::precondition_violated, "negative degree");
  return Degree(false, false, n);
}
Degree Degree::infinitely_hard() { return Degree(true, true, 0); }
Degree Degree::infinitely_soft() { return Degree(false, true, 0); }

int Degree::n() const {
  if (infinite_) throw Error(ErrorCode::precondition_violated, "infinite degree has no n");
  return n_;
}

static int finite_rung(const Degree& d) { return d.is_hard() ? -(d.n() + 1) : d.n(); }

static Degree from_rung(int rung) {
  return rung < 0 ? Degree::hard(-rung - 1) : Degree::soft(rung);
}

Degree Degree::shifted(int steps) const {
  if (infinite_) return *this;
  return from_rung(finite_rung(*this) + steps);
}

int Degree::compare_dominance(const Degree& a, const Degree& b) {
  auto klass = [](const Degree& d) { return d.is_infinite() ? (d.is_hard() ? -1 : 1) : 0; };
  if (klass(a) != klass(b)) return klass(a) < klass(b) ? -1 : 1;
  if (a.is_infinite()) return 0;
  int ra = finite_rung(a), rb = finite_rung(b);
  return ra < rb ? -1 : (ra > rb ? 1 : 0);
}

std::string Degree::str() const {
  if (infinite_) return hard_ ? "infinitely-hard" : "infinitely-soft";
  std::ostringstream os;
  os << (hard_ ? "hard " : "soft ") << n_;
  return os.str();
}

bool operator==(const Degree& a, const Degree& b) {
  if (a.infinite_ != b.infinite_ || a.hard_ != b.hard_) return false;
  return a.infinite_ || a.n_ == b.n_;
}

SingularitySet::SingularitySet(std::vector<SingularityPoint> points) {
  for (auto& p : points) insert(std::move(p));
}

void SingularitySet::insert(SingularityPoint p) {
  for (auto& q : points_) {
    if (q.angle.same_angle(p.angle)) {
      // Superposition: keep the dominant degree at this angle.
      if (Degree::compare_dominance(p.degree, q.degree) < 0) q.degree = p.degree;
      return;
    }
  }
  auto it = std::lower_bound(points_.begin(), points_.end(), p,
                             [](const SingularityPoint& a, const SingularityPoint& b) {
                               return a.angle < b.angle;
                             });
  points_.insert(it, std::move(p));
}

std::vector<SingularityPoint> SingularitySet::dominant() const {
  std::vector<SingularityPoint> out;
  for (const auto& p : points_) {
    if (out.empty()) {
      out.push_back(p);
      continue;
    }
    int c = Degree::compare_dominance(p.degree, out.front().degree);
    if (c < 0) out.assign(1, p);
    else if (c == 0) out.push_back(p);
  }
  return out;
}

bool SingularitySet::conjugate_closed(double tol) const {
  for (const auto& p : points_) {
    if (p.angle.is_self_conjugate(tol)) continue;
    bool found = false;
    for (const auto& q : points_)
      if (q.angle.same_angle(-p.angle, tol) && q.degree == p.degree) found = true;
    if (!found) return false;
  }
  return true;
}

std::string SingularitySet::str() const {
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (i) os << ", ";
    os << "(" << points_[i].angle.str() << ", " << points_[i].degree.str() << ")";
  }
  os << "}";
  return os.str();
}

SingularitySet superpose(const std::vector<SingularitySet>& sets) {
  std::vector<SingularityPoint> all;
  for (const auto& s : sets)
    for (const auto& p : s.points()) all.push_back(p);
  return SingularitySet(std::move(all));
}

SingularitySet shift_degrees(const SingularitySet& set, int steps) {
  std::vector<SingularityPoint> out;
  for (const auto& p : set.points()) out.push_back({p.angle, p.degree.shifted(steps)});
  return SingularitySet(std::move(out));
}

std::string ClassTag::str() const {
  switch (kind) {
    case Kind::strong_divergence: return "strong-divergence";
    case Kind::hard: return std::to_string(n) + "-hard";
    case Kind::borderline_hard: return "borderline-hard";
    case Kind::borderline_soft: return "borderline-soft";
    case Kind::soft: return std::to_string(n) + "-soft";
    case Kind::strong_convergence: return "strong-convergence";
  }
  return "?";
}

const char* series_behavior_name(SeriesBehavior b) {
  switch (b) {
    case SeriesBehavior::divergent_everywhere: return "divergent-everywhere";
    case SeriesBehavior::divergent_almost_everywhere: return "divergent-almost-everywhere";
    case SeriesBehavior::pointwise_almost_everywhere: return "pointwise-almost-everywhere";
    case SeriesBehavior::absolutely_uniformly_convergent:
      return "absolutely-uniformly-convergent";
  }
  return "?";
}

ConvergenceClass class_row(const ClassTag& tag) {
  ConvergenceClass c;
  c.tag = tag;
  using K = ClassTag::Kind;
  switch (tag.kind) {
    case K::strong_divergence:
      c.predicted_series_behavior = SeriesBehavior::divergent_everywhere;
      c.predicted_function_smoothness = "currently unknown";
      break;
    case K::hard:
      c.predicted_series_behavior = SeriesBehavior::divergent_everywhere;
      c.predicted_function_smoothness =
          tag.n == 1 ? "delta-\"function\" for p=0" : "currently unknown";
      break;
    case K::borderline_hard:
      c.predicted_series_behavior = SeriesBehavior::pointwise_almost_everywhere;
      c.predicted_function_smoothness = "cont aew, diff aew";
      break;
    case K::borderline_soft:
      c.predicted_series_behavior = SeriesBehavior::absolutely_uniformly_convergent;
      c.predicted_function_smoothness = "cont ew, diff aew";
      break;
    case K::soft:
      c.predicted_series_behavior = SeriesBehavior::absolutely_uniformly_convergent;
      c.predicted_function_smoothness =
          tag.n == 1 ? "diff ew, C^2 aew"
                     : "C^" + std::to_string(tag.n) + " ew, C^" + std::to_string(tag.n + 1) +
                           " aew";
      break;
    case K::strong_convergence:
      c.predicted_series_behavior = SeriesBehavior::absolutely_uniformly_convergent;
      c.predicted_function_smoothness = "C^infinity ew";
      break;
  }
  return c;
}

SeriesBehavior fourier_pair_behavior(const ClassTag& tag) {
  using K = ClassTag::Kind;
  switch (tag.kind) {
    case K::strong_divergence:
    case K::hard:
      return SeriesBehavior::divergent_almost_everywhere;
    case K::borderline_hard:
      return SeriesBehavior::pointwise_almost_everywhere;
    default:
      return SeriesBehavior::absolutely_uniformly_convergent;
  }
}

bool extended_monotonic(const CoefficientSequence& seq, std::int64_t k_lo, std::int64_t k_hi) {
  std::vector<double> mods;
  for (std::int64_t k = seq.next_index(k_lo); k <= k_hi; k += seq.step())
    mods.push_back(std::abs(seq.rule_term(k)));
  if (mods.size() < 4) return false;
  // Find the start of the longest monotone suffix (either direction, with a
  // relative slack for roundoff); "eventual" means it covers most of the
  // probe window.
  double peak = *std::max_element(mods.begin(), mods.end());
  double slack = 1e-12 * peak;
  std::size_t dec_from = mods.size() - 1, inc_from = mods.size() - 1;
  for (std::size_t i = mods.size() - 1; i-- > 0;) {
    if (mods[i] >= mods[i + 1] - slack && dec_from == i + 1) dec_from = i;
    if (mods[i] <= mods[i + 1] + slack && inc_from == i + 1) inc_from = i;
  }
  std::size_t suffix_start = std::min(dec_from, inc_from);
  return suffix_start <= mods.size() / 4;
}

namespace {

// Fitted exponents land a hair off integer boundaries; half-open bounds
// must see the intended value.
double snap_integer(double p) {
  double r = std::round(p);
  return std::abs(p - r) < 1e-9 ? r : p;
}

}  // namespace

Degree degree_from_exponent(double p) {
  p = snap_integer(p);
  if (p <= 0) {
    double growth = -p;
    return Degree::hard(static_cast<int>(std::floor(growth)) + 1);
  }
  if (p <= 1) return Degree::hard(0);
  if (p <= 2) return Degree::soft(0);
  return Degree::soft(static_cast<int>(std::ceil(p)) - 2);
}

ClassTag tag_from_exponent(double p) {
  Degree d = degree_from_exponent(p);
  ClassTag t;
  if (d.is_hard())
    t = d.n() == 0 ? ClassTag{ClassTag::Kind::borderline_hard, 0}
                   : ClassTag{ClassTag::Kind::hard, d.n()};
  else
    t = d.n() == 0 ? ClassTag{ClassTag::Kind::borderline_soft, 0}
                   : ClassTag{ClassTag::Kind::soft, d.n()};
  return t;
}

namespace {

// Non-power-law fits: decide infinite polarity by how the apparent exponent
// drifts when the window deepens (exp(-sqrt(k)) drifts up, exp(+sqrt(k))
// drifts down). Returns nullopt when there is no clear drift.
std::optional<Degree> infinite_degree_by_drift(const CoefficientSequence& seq,
                                               const DecayFit& shallow) {
  DecayFit deep;
  try {
    deep = fit_decay(seq, shallow.k_lo * 16, shallow.k_hi * 16);
  } catch (const Error&) {
    return std::nullopt;
  }
  if (deep.power_law()) return std::nullopt;
  if (deep.exponent > shallow.exponent + 0.5) return Degree::infinitely_soft();
  if (deep.exponent < shallow.exponent - 0.5) return Degree::infinitely_hard();
  return std::nullopt;
}

}  // namespace

SingularitySet detect_dominant(const CoefficientSequence& seq, const DetectOptions& opt) {
  // Canonical alternation: on a stride of step s, (-1)^k is constant for even
  // s and alternates in j for odd s.
  SignPattern pattern = seq.sign_pattern();
  if (pattern == SignPattern::alternating_in_k)
    pattern = (seq.step() % 2 == 0) ? SignPattern::constant : SignPattern::alternating_in_j;
  if (pattern == SignPattern::irregular)
    throw Error(ErrorCode::pattern_unsupported,
                "sign pattern is irregular; supply singularities explicitly");

  if (!extended_monotonic(seq, opt.window_lo, opt.window_hi))
    throw Error(ErrorCode::non_monotonic_window,
                "no eventual monotonicity of |a_k| over the probe window");

  Degree degree = Degree::hard(0);
  DecayFit fit = fit_decay(seq, opt.window_lo, opt.window_hi);
  if (fit.power_law()) {
    degree = degree_from_exponent(fit.exponent);
  } else {
    auto inf = infinite_degree_by_drift(seq, fit);
    if (!inf)
      throw Error(ErrorCode::pattern_unsupported,
                  "modulus is neither a power law nor cleanly sub/super-power");
    degree = *inf;
  }

  const std::int64_t s = seq.step();
  std::vector<SingularityPoint> pts;
  for (std::int64_t m = 0; m < s; ++m) {
    BigRat r = pattern == SignPattern::constant ? BigRat(2 * m, s) : BigRat(2 * m + 1, s);
    Angle a = Angle::rational_pi(r) + seq.rotation();
    pts.push_back({a, degree});
  }
  return SingularitySet(std::move(pts));
}

ConvergenceClass classify(const CoefficientSequence& seq, const DecayFit& fit) {
  constexpr double strong_margin = 1e-3;
  RatioProbe probe = probe_ratio(seq);
  if (probe.valid && probe.limit < 1 - strong_margin)
    return class_row({ClassTag::Kind::strong_convergence, 0});
  if (probe.valid && probe.limit > 1 + strong_margin)
    return class_row({ClassTag::Kind::strong_divergence, 0});
  if (!fit.power_law()) {
    auto inf = infinite_degree_by_drift(seq, fit);
    std::string note = (inf && *inf == Degree::infinitely_soft())
                           ? "sub-power decay, all-soft chain"
                           : "modulus fit is not a power law";
    throw Error(ErrorCode::not_power_law, note);
  }
  return class_row(tag_from_exponent(fit.exponent));
}

const char* absolute_convergence_name(AbsoluteConvergence d) {
  switch (d) {
    case AbsoluteConvergence::absolutely_convergent: return "absolutely-convergent";
    case AbsoluteConvergence::not_absolutely_convergent: return "not-absolutely-convergent";
    case AbsoluteConvergence::undecided: return "undecided";
  }
  return "?";
}

AbsoluteConvergence check_absolute_convergence(const DecayFit& fit) {
  if (!fit.power_law()) return AbsoluteConvergence::undecided;
  return snap_integer(fit.exponent) > 1 ? AbsoluteConvergence::absolutely_convergent
                                        : AbsoluteConvergence::not_absolutely_convergent;
}

}  // namespace centerseries
