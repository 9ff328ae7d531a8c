#include "centerseries/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <tuple>

namespace centerseries {

double to_double(const BigRat& q) { return q.convert_to<double>(); }

BigInt floor_div(const BigInt& n, const BigInt& d) {
  BigInt q = n / d;
  if (n % d != 0 && n < 0) --q;
  return q;
}

BigRat mod2(const BigRat& r) {
  BigInt twice_floor = 2 * floor_div(numerator(r), 2 * denominator(r));
  return r - BigRat(twice_floor);
}

bool operator==(const ExactTerm& a, const ExactTerm& b) {
  return a.sqrt2_pow == b.sqrt2_pow && a.pi_pow == b.pi_pow && a.phase == b.phase &&
         a.coef == b.coef;
}

static std::tuple<int, int, BigRat> key(const ExactTerm& t) {
  return {t.sqrt2_pow, t.pi_pow, t.phase};
}

void ExactComplex::add_term(ExactTerm t) {
  if (t.coef == 0) return;
  // Canonical form: h in {0,1}, r in [0,1).
  while (t.sqrt2_pow >= 2) {
    t.sqrt2_pow -= 2;
    t.coef *= 2;
  }
  t.phase = mod2(t.phase);
  if (t.phase >= 1) {
    t.phase -= 1;
    t.coef = -t.coef;
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), t,
                             [](const ExactTerm& a, const ExactTerm& b) { return key(a) < key(b); });
  if (it != terms_.end() && key(*it) == key(t)) {
    it->coef += t.coef;
    if (it->coef == 0) terms_.erase(it);
  } else {
    terms_.insert(it, std::move(t));
  }
}

ExactComplex ExactComplex::rational(BigRat q, int pi_pow) {
  ExactComplex x;
  x.add_term({std::move(q), 0, pi_pow, BigRat(0)});
  return x;
}

ExactComplex ExactComplex::phase(BigRat r, BigRat scale, int pi_pow) {
  ExactComplex x;
  x.add_term({std::move(scale), 0, pi_pow, std::move(r)});
  return x;
}

ExactComplex ExactComplex::term(BigRat q, int sqrt2_pow, int pi_pow, BigRat phase_r) {
  ExactComplex x;
  x.add_term({std::move(q), sqrt2_pow, pi_pow, std::move(phase_r)});
  return x;
}

bool ExactComplex::is_real() const {
  for (const auto& t : terms_)
    if (t.phase != 0) return false;
  return true;
}

std::complex<double> ExactComplex::to_complex() const {
  std::complex<double> acc{0.0, 0.0};
  for (const auto& t : terms_) {
    double mag = to_double(t.coef);
    if (t.sqrt2_pow) mag *= std::numbers::sqrt2;
    mag *= std::pow(std::numbers::pi, t.pi_pow);
    double ang = std::numbers::pi * to_double(t.phase);
    acc += mag * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return acc;
}

std::string ExactComplex::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.coef.str();
    if (t.sqrt2_pow) os << "*sqrt2";
    if (t.pi_pow) os << "*pi^" << t.pi_pow;
    if (t.phase != 0) os << "*e(i*pi*" << t.phase.str() << ")";
  }
  return os.str();
}

ExactComplex ExactComplex::conj() const {
  ExactComplex x;
  for (const auto& t : terms_) x.add_term({t.coef, t.sqrt2_pow, t.pi_pow, -t.phase});
  return x;
}

ExactComplex& ExactComplex::operator+=(const ExactComplex& o) {
  for (const auto& t : o.terms_) add_term(t);
  return *this;
}

ExactComplex& ExactComplex::operator-=(const ExactComplex& o) {
  for (const auto& t : o.terms_) add_term({-t.coef, t.sqrt2_pow, t.pi_pow, t.phase});
  return *this;
}

ExactComplex& ExactComplex::operator*=(const ExactComplex& o) {
  ExactComplex out;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_)
      out.add_term({a.coef * b.coef, a.sqrt2_pow + b.sqrt2_pow, a.pi_pow + b.pi_pow,
                    a.phase + b.phase});
  terms_ = std::move(out.terms_);
  return *this;
}

ExactComplex& ExactComplex::scale(const BigRat& q) {
  if (q == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coef *= q;
  return *this;
}

ExactComplex operator-(ExactComplex a) {
  for (auto& t : a.terms_) t.coef = -t.coef;
  return a;
}

Angle Angle::from_radians(double theta) {
  Angle a;
  a.over_pi_.reset();
  double r = std::remainder(theta, 2 * std::numbers::pi);
  if (r <= -std::numbers::pi) r = std::numbers::pi;  // (-pi, pi]
  a.radians_ = r;
  return a;
}

Angle Angle::rational_pi(BigRat r) {
  Angle a;
  BigRat m = mod2(std::move(r));  // [0, 2)
  if (m > 1) m -= 2;              // (-1, 1]
  a.over_pi_ = m;
  a.radians_ = std::numbers::pi * to_double(m);
  return a;
}

Angle Angle::operator+(const Angle& o) const {
  if (over_pi_ && o.over_pi_) return rational_pi(*over_pi_ + *o.over_pi_);
  return from_radians(radians_ + o.radians_);
}

Angle Angle::operator-() const {
  if (over_pi_) return rational_pi(-*over_pi_);
  return from_radians(-radians_);
}

bool Angle::same_angle(const Angle& o, double tol) const {
  if (over_pi_ && o.over_pi_) return *over_pi_ == *o.over_pi_;
  double d = std::remainder(radians_ - o.radians_, 2 * std::numbers::pi);
  return std::abs(d) <= tol;
}

bool Angle::is_self_conjugate(double tol) const {
  return same_angle(Angle::rational_pi(BigRat(0)), tol) ||
         same_angle(Angle::rational_pi(BigRat(1)), tol);
}

std::string Angle::str() const {
  if (over_pi_) return over_pi_->str() + "*pi";
  std::ostringstream os;
  os.precision(17);
  os << radians_;
  return os.str();
}

// Exactly representable cosine values on the rational-pi lattice:
// cos(0)=1, cos(pi/3)=1/2, cos(pi/2)=0, cos(2pi/3)=-1/2, cos(pi)=-1,
// cos(pi/4)=sqrt2/2, cos(3pi/4)=-sqrt2/2 (and even symmetry).
std::optional<ExactComplex> exact_cos(const Angle& a) {
  if (!a.exact()) return std::nullopt;
  BigRat r = *a.over_pi();
  if (r < 0) r = -r;  // cos even
  if (r == 0) return ExactComplex::rational(BigRat(1));
  if (r == BigRat(1, 3)) return ExactComplex::rational(BigRat(1, 2));
  if (r == BigRat(1, 2)) return ExactComplex::zero();
  if (r == BigRat(2, 3)) return ExactComplex::rational(BigRat(-1, 2));
  if (r == 1) return ExactComplex::rational(BigRat(-1));
  if (r == BigRat(1, 4)) return ExactComplex::term(BigRat(1, 2), 1, 0, BigRat(0));
  if (r == BigRat(3, 4)) return ExactComplex::term(BigRat(-1, 2), 1, 0, BigRat(0));
  return std::nullopt;
}

std::optional<ExactComplex> exact_sin(const Angle& a) {
  if (!a.exact()) return std::nullopt;
  // sin(x) = cos(x - pi/2)
  return exact_cos(Angle::rational_pi(*a.over_pi() - BigRat(1, 2)));
}

}  // namespace centerseries
