#pragma once

// Exact scalars for coefficient-identity work.
//
// An ExactComplex is a finite sum of terms q * sqrt(2)^h * pi^e * exp(i*pi*r)
// with q rational, h in {0,1}, e integer, r rational in [0,1). Addition merges
// terms with equal (h, e, r) keys, so cancellations forced by the algebra
// produce literal zeros instead of small floats. This covers everything the
// identity tests need: rationals times integer powers of pi, the square-root
// values that show up in exactly representable cosines, and unit phases at
// rational multiples of pi.

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace centerseries {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

double to_double(const BigRat& q);

// Floor division for d > 0.
BigInt floor_div(const BigInt& n, const BigInt& d);

// Reduce into [0, 2).
BigRat mod2(const BigRat& r);

struct ExactTerm {
  BigRat coef;        // q, never zero in a stored term
  int sqrt2_pow = 0;  // h in {0, 1}; sqrt(2)^2 folds into coef
  int pi_pow = 0;     // e
  BigRat phase;       // r in [0, 1), units of pi; exp(i*pi) folds into sign of coef
};

class ExactComplex {
 public:
  ExactComplex() = default;  // zero

  static ExactComplex rational(BigRat q, int pi_pow = 0);
  // exp(i*pi*r), scaled.
  static ExactComplex phase(BigRat r, BigRat scale = BigRat(1), int pi_pow = 0);
  static ExactComplex term(BigRat q, int sqrt2_pow, int pi_pow, BigRat phase_r);
  static ExactComplex zero() { return {}; }

  bool is_zero() const { return terms_.empty(); }
  // True when every term has phase 0 (canonical real form).
  bool is_real() const;

  std::complex<double> to_complex() const;
  std::string str() const;

  ExactComplex conj() const;

  ExactComplex& operator+=(const ExactComplex& o);
  ExactComplex& operator-=(const ExactComplex& o);
  ExactComplex& operator*=(const ExactComplex& o);
  ExactComplex& scale(const BigRat& q);

  friend ExactComplex operator+(ExactComplex a, const ExactComplex& b) { return a += b; }
  friend ExactComplex operator-(ExactComplex a, const ExactComplex& b) { return a -= b; }
  friend ExactComplex operator*(ExactComplex a, const ExactComplex& b) { return a *= b; }
  friend ExactComplex operator-(ExactComplex a);
  friend bool operator==(const ExactComplex& a, const ExactComplex& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const ExactComplex& a, const ExactComplex& b) { return !(a == b); }

  const std::vector<ExactTerm>& terms() const { return terms_; }

 private:
  void add_term(ExactTerm t);
  std::vector<ExactTerm> terms_;  // sorted by (sqrt2_pow, pi_pow, phase), coef != 0
};

bool operator==(const ExactTerm& a, const ExactTerm& b);

// Unit-circle angle normalized to (-pi, pi], kept as an exact rational
// multiple of pi whenever it is known as one.
class Angle {
 public:
  Angle() : radians_(0), over_pi_(BigRat(0)) {}

  static Angle from_radians(double theta);
  static Angle rational_pi(BigRat r);  // angle = r * pi

  double radians() const { return radians_; }
  const std::optional<BigRat>& over_pi() const { return over_pi_; }
  bool exact() const { return over_pi_.has_value(); }

  Angle operator+(const Angle& o) const;
  Angle operator-() const;

  // Identity up to tolerance; exact angles compare exactly to each other.
  bool same_angle(const Angle& o, double tol = 1e-12) const;
  // Self-conjugate points of the circle (0 and pi).
  bool is_self_conjugate(double tol = 1e-12) const;

  // Ordering by radians, deterministic for sorting.
  friend bool operator<(const Angle& a, const Angle& b) { return a.radians_ < b.radians_; }

  std::string str() const;

 private:
  double radians_;
  std::optional<BigRat> over_pi_;  // in (-1, 1] when present
};

// cos/sin of an exact angle when the value lies in {0, +-1/2, +-1, +-sqrt2/2}.
std::optional<ExactComplex> exact_cos(const Angle& a);
std::optional<ExactComplex> exact_sin(const Angle& a);

}  // namespace centerseries
