#include "centerseries/center.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "centerseries/error.hpp"

namespace centerseries {

namespace {

using Poly = std::vector<std::complex<double>>;

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, {0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

std::vector<ExactComplex> poly_mul_exact(const std::vector<ExactComplex>& a,
                                         const std::vector<ExactComplex>& b) {
  std::vector<ExactComplex> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

CenterPolynomial CenterPolynomial::from_roots(std::vector<Angle> roots, bool enforce_real) {
  if (roots.empty()) throw Error(ErrorCode::empty_set, "no roots");
  std::sort(roots.begin(), roots.end());

  // Pair up conjugate roots; a fully paired multiset expands through real
  // factors z^2 - 2cos(theta) z + 1 (plus z -+ 1 for the self-conjugate
  // angles), which keeps the coefficients exactly real.
  std::vector<int> partner(roots.size(), -1);
  std::vector<bool> used(roots.size(), false);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (used[i] || roots[i].is_self_conjugate()) continue;
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (j == i || used[j] || roots[j].is_self_conjugate()) continue;
      if (roots[j].same_angle(-roots[i])) {
        partner[i] = static_cast<int>(j);
        partner[j] = static_cast<int>(i);
        used[i] = used[j] = true;
        break;
      }
    }
  }
  bool closed = true;
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (!roots[i].is_self_conjugate() && partner[i] < 0) closed = false;
  if (enforce_real && !closed)
    throw Error(ErrorCode::non_conjugate_closed,
                "root angles must come in conjugate pairs for a real sequence");

  CenterPolynomial p;
  p.roots_ = roots;
  p.real_ = closed;

  Poly acc{{1.0, 0.0}};
  std::vector<ExactComplex> acc_exact{ExactComplex::rational(BigRat(1))};
  bool exact_ok = true;

  auto mul_factor = [&](const Poly& f, const std::vector<ExactComplex>* fe) {
    acc = poly_mul(acc, f);
    if (exact_ok && fe) acc_exact = poly_mul_exact(acc_exact, *fe);
    else exact_ok = false;
  };

  if (closed) {
    std::vector<bool> done(roots.size(), false);
    for (std::size_t i = 0; i < roots.size(); ++i) {
      if (done[i]) continue;
      if (roots[i].is_self_conjugate()) {
        done[i] = true;
        // z - 1 at angle 0, z + 1 at angle pi.
        bool at_zero = roots[i].same_angle(Angle::rational_pi(BigRat(0)));
        Poly f{{at_zero ? -1.0 : 1.0, 0.0}, {1.0, 0.0}};
        std::vector<ExactComplex> fe{ExactComplex::rational(BigRat(at_zero ? -1 : 1)),
                                     ExactComplex::rational(BigRat(1))};
        mul_factor(f, &fe);
      } else {
        std::size_t j = static_cast<std::size_t>(partner[i]);
        done[i] = done[j] = true;
        double c = std::cos(roots[i].radians());
        Poly f{{1.0, 0.0}, {-2.0 * c, 0.0}, {1.0, 0.0}};
        auto ce = exact_cos(roots[i]);
        if (ce) {
          std::vector<ExactComplex> fe{ExactComplex::rational(BigRat(1)),
                                       -(*ce + *ce),
                                       ExactComplex::rational(BigRat(1))};
          mul_factor(f, &fe);
        } else {
          mul_factor(f, nullptr);
        }
      }
    }
  } else {
    for (const auto& r : roots) {
      std::complex<double> z1 = std::polar(1.0, r.radians());
      Poly f{-z1, {1.0, 0.0}};
      if (r.exact()) {
        std::vector<ExactComplex> fe{-ExactComplex::phase(*r.over_pi()),
                                     ExactComplex::rational(BigRat(1))};
        mul_factor(f, &fe);
      } else {
        mul_factor(f, nullptr);
      }
    }
  }

  p.coeffs_ = std::move(acc);
  if (exact_ok) {
    // The exact expansion is authoritative; rounding it beats accumulating
    // float products (cos(pi/2) dust would otherwise leak into coefficients
    // that are exactly zero).
    for (std::size_t i = 0; i < acc_exact.size(); ++i) p.coeffs_[i] = acc_exact[i].to_complex();
    p.exact_ = std::move(acc_exact);
  }
  return p;
}

std::complex<double> CenterPolynomial::eval(std::complex<double> z) const {
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * z + coeffs_[i];
  return acc;
}

double CenterPolynomial::min_root_distance(double theta) const {
  double best = std::numbers::pi;
  for (const auto& r : roots_)
    best = std::min(best, std::abs(std::remainder(theta - r.radians(), 2 * std::numbers::pi)));
  return best;
}

std::string CenterPolynomial::str() const {
  std::ostringstream os;
  os << "P_" << degree() << "(z), roots {";
  for (std::size_t i = 0; i < roots_.size(); ++i) {
    if (i) os << ", ";
    os << roots_[i].str();
  }
  os << "}";
  return os.str();
}

ConvolutionRule::ConvolutionRule(CoefficientSequence source, CenterPolynomial poly,
                                 bool closed_form)
    : source_(std::move(source)), poly_(std::move(poly)), closed_form_(closed_form) {}

std::complex<double> ConvolutionRule::value(std::int64_t k) const {
  std::complex<double> acc{0.0, 0.0};
  const auto& p = poly_.coeffs();
  for (std::size_t m = 0; m < p.size(); ++m) {
    std::int64_t i = k - static_cast<std::int64_t>(m);
    if (i < 1) break;
    if (p[m] != std::complex<double>{0.0, 0.0}) acc += p[m] * source_.term(i);
  }
  return acc;
}

std::optional<ExactComplex> ConvolutionRule::exact(std::int64_t k) const {
  if (!poly_.exact_coeffs()) return std::nullopt;
  const auto& pe = *poly_.exact_coeffs();
  ExactComplex acc;
  for (std::size_t m = 0; m < pe.size(); ++m) {
    std::int64_t i = k - static_cast<std::int64_t>(m);
    if (i < 1) break;
    if (pe[m].is_zero()) continue;
    auto t = source_.term_exact(i);
    if (!t) return std::nullopt;
    acc += pe[m] * *t;
  }
  return acc;
}

std::string ConvolutionRule::describe() const {
  std::ostringstream os;
  os << "convolution of " << poly_.str() << " with (" << source_.rule().describe() << ")";
  os << (closed_form_ ? " [closed form]" : " [tabulated prefix + tail rule]");
  return os.str();
}

CenterPolynomial build_polynomial(const SingularitySet& set, bool is_real) {
  if (set.empty()) throw Error(ErrorCode::empty_set, "singularity set is empty");
  if (is_real && !set.conjugate_closed())
    throw Error(ErrorCode::non_conjugate_closed,
                "singularity set of a real sequence must be conjugate-closed");
  std::vector<Angle> roots;
  for (const auto& p : set.points()) roots.push_back(p.angle);
  return CenterPolynomial::from_roots(std::move(roots), is_real);
}

namespace {

// Sign-pattern re-derivation over observed residual values: tolerate a
// non-conforming prefix, require the suffix (most of the probe) to commit.
SignPattern derive_sign_pattern(const std::vector<std::complex<double>>& vals,
                                std::int64_t step) {
  if (vals.size() < 3) return SignPattern::constant;
  double peak = 0;
  for (const auto& v : vals) peak = std::max(peak, std::abs(v));
  for (const auto& v : vals)
    if (std::abs(v.imag()) > 1e-12 * peak) return SignPattern::constant;

  std::vector<int> flips;  // sign change between consecutive observed terms
  for (std::size_t i = 0; i + 1 < vals.size(); ++i)
    flips.push_back(vals[i].real() * vals[i + 1].real() < 0 ? 1 : 0);
  auto suffix_all = [&](int want) {
    // First position from which every flip equals `want`.
    std::size_t s = flips.size();
    while (s > 0 && flips[s - 1] == want) --s;
    return s;
  };
  std::size_t const_from = suffix_all(0);
  std::size_t alt_from = suffix_all(1);
  std::size_t limit = std::max<std::size_t>(2, flips.size() / 4);
  if (const_from <= limit) return SignPattern::constant;
  if (alt_from <= limit)
    return step == 1 ? SignPattern::alternating_in_k : SignPattern::alternating_in_j;
  return SignPattern::irregular;
}

}  // namespace

CenterFactorization factor(const CoefficientSequence& seq, const CenterPolynomial& poly) {
  // Structural non-zero candidates of b over k <= 256: k - m lands on the
  // source stride for some non-zero p_m.
  const auto& pc = poly.coeffs();
  std::vector<std::int64_t> candidates;
  for (std::int64_t k = 1; k <= 256; ++k) {
    for (std::size_t m = 0; m < pc.size(); ++m) {
      if (pc[m] == std::complex<double>{0.0, 0.0}) continue;
      std::int64_t i = k - static_cast<std::int64_t>(m);
      if (i >= 1 && seq.on_stride(i)) {
        candidates.push_back(k);
        break;
      }
    }
  }
  std::int64_t offset = candidates.empty() ? 1 : candidates.front();
  std::int64_t step = 1;
  if (candidates.size() > 1) {
    std::int64_t g = 0;
    for (std::size_t i = 1; i < candidates.size(); ++i)
      g = std::gcd(g, candidates[i] - candidates.front());
    step = g == 0 ? 1 : g;
  }

  int distinct_angles = 0;
  {
    std::vector<double> seen;
    for (const auto& r : poly.roots()) {
      bool dup = false;
      for (double s : seen)
        if (std::abs(std::remainder(s - r.radians(), 2 * std::numbers::pi)) <= 1e-12) dup = true;
      if (!dup) {
        seen.push_back(r.radians());
        ++distinct_angles;
      }
    }
  }
  bool closed_form =
      distinct_angles <= 2 && seq.term_exact(seq.next_index(1)).has_value();

  auto rule = std::make_shared<ConvolutionRule>(seq, poly, closed_form);

  // Observed values at the structural candidates drive the sign pattern.
  std::vector<std::complex<double>> observed;
  double peak = 0;
  std::vector<std::complex<double>> raw;
  for (std::int64_t k : candidates) {
    raw.push_back(rule->value(k));
    peak = std::max(peak, std::abs(raw.back()));
  }
  for (const auto& v : raw)
    if (std::abs(v) > 1e-13 * peak) observed.push_back(v);
  SignPattern sign = derive_sign_pattern(observed, step);

  bool is_real = seq.is_real() && poly.real_coeffs();
  CoefficientSequence residual(rule, step, offset, sign, is_real, Angle());
  return CenterFactorization{poly, std::move(residual), seq};
}

CenterFactorization factor_iterated(const CoefficientSequence& seq,
                                    const std::vector<SingularitySet>& sets) {
  if (sets.empty()) throw Error(ErrorCode::empty_set, "no singularity sets to factor");
  std::vector<Angle> roots;
  for (const auto& s : sets) {
    if (s.empty()) throw Error(ErrorCode::empty_set, "singularity set is empty");
    if (seq.is_real() && !s.conjugate_closed())
      throw Error(ErrorCode::non_conjugate_closed,
                  "singularity set of a real sequence must be conjugate-closed");
    for (const auto& p : s.points()) roots.push_back(p.angle);
  }
  return factor(seq, CenterPolynomial::from_roots(std::move(roots), seq.is_real()));
}

double monotone_center_bound(const CoefficientSequence& seq) {
  constexpr std::int64_t probe = 256;
  if (seq.step() != 1 || seq.rotation().radians() != 0.0 || !seq.is_real())
    throw Error(ErrorCode::precondition_violated, "need a real unrotated step-1 sequence");
  double prev = 0;
  for (std::int64_t k = 1; k <= probe; ++k) {
    std::complex<double> v = seq.term(k);
    if (v.imag() != 0.0 || v.real() <= 0.0)
      throw Error(ErrorCode::precondition_violated, "terms must be real and positive");
    if (k > 1 && v.real() > prev * (1 + 1e-12))
      throw Error(ErrorCode::precondition_violated, "terms must be non-increasing");
    prev = v.real();
  }
  const double a1 = seq.term(1).real();
  const double bound = 2 * a1;
  // Telescoping sanity over the probe: sum |b_k| = 2 a_1 - a_N <= bound.
  auto fact = factor(seq, CenterPolynomial::from_roots({Angle::rational_pi(BigRat(0))}, true));
  double run = 0;
  for (std::int64_t k = 1; k <= probe; ++k) {
    run += std::abs(fact.residual.term(k));
    if (run > bound + 1e-12 * std::abs(bound))
      throw Error(ErrorCode::precondition_violated, "telescoping bound violated in probe");
  }
  return bound;
}

}  // namespace centerseries
