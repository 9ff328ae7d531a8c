#pragma once

// Center-series construction: from a set of unit-circle singularities build
// the monic polynomial P_N(z) = prod (z - z_i), then the residual sequence
// b_k of C_z = P_N(z) * S_z by the (N+1)-term convolution
// b_k = sum_m p_m a_{k-m}. Factoring a true dominant singularity raises the
// residual's decay exponent by one; factoring a wrong guess merely fails to
// improve it.

#include <complex>
#include <memory>
#include <optional>
#include <vector>

#include "centerseries/exact.hpp"
#include "centerseries/sequence.hpp"
#include "centerseries/singularity.hpp"

namespace centerseries {

class CenterPolynomial {
 public:
  // Roots may repeat (iterated factoring). enforce_real requires the root
  // multiset to be conjugate-closed; a closed multiset is expanded through
  // real pair factors either way, so imaginary parts are exact zeros.
  static CenterPolynomial from_roots(std::vector<Angle> roots, bool enforce_real);

  const std::vector<Angle>& roots() const { return roots_; }
  // p_0 ... p_N, monic (p_N = 1), |p_0| = 1.
  const std::vector<std::complex<double>>& coeffs() const { return coeffs_; }
  // Present when every factor has exactly representable coefficients.
  const std::optional<std::vector<ExactComplex>>& exact_coeffs() const { return exact_; }
  bool real_coeffs() const { return real_; }
  int degree() const { return static_cast<int>(roots_.size()); }

  std::complex<double> eval(std::complex<double> z) const;
  // Smallest |theta - root angle| on the circle.
  double min_root_distance(double theta) const;

  std::string str() const;

 private:
  std::vector<Angle> roots_;
  std::vector<std::complex<double>> coeffs_;
  std::optional<std::vector<ExactComplex>> exact_;
  bool real_ = false;
};

// Lazy residual rule: b_k = sum_m p_m a_{k-m} (a_j = 0 for j < 1), exact when
// both the polynomial and the source support it.
class ConvolutionRule final : public TermRule {
 public:
  ConvolutionRule(CoefficientSequence source, CenterPolynomial poly, bool closed_form);
  std::complex<double> value(std::int64_t k) const override;
  std::optional<ExactComplex> exact(std::int64_t k) const override;
  std::string describe() const override;
  const CoefficientSequence& source() const { return source_; }

 private:
  CoefficientSequence source_;
  CenterPolynomial poly_;
  bool closed_form_;
};

struct CenterFactorization {
  CenterPolynomial polynomial;
  CoefficientSequence residual;  // the b_k of C_z
  CoefficientSequence source;    // the original a_k
};

// Monic expanded polynomial from a singularity set.
// Throws empty_set, non_conjugate_closed.
CenterPolynomial build_polynomial(const SingularitySet& set, bool is_real);

// Residual metadata is re-derived: step/offset from the structural non-zero
// pattern over k <= 256 (gcd of gaps), sign pattern from observed values.
CenterFactorization factor(const CoefficientSequence& seq, const CenterPolynomial& poly);

// One factorization over the product polynomial of all sets (equivalent to
// factoring sequentially). Throws empty_set when sets is empty.
CenterFactorization factor_iterated(const CoefficientSequence& seq,
                                    const std::vector<SingularitySet>& sets);

// For real, positive, non-increasing step-1 sequences (checked over a probe
// window): the absolute residual sums of the (z-1) factorization telescope,
// so sum |b_k| <= 2 a_1. Returns that bound. Throws precondition_violated.
double monotone_center_bound(const CoefficientSequence& seq);

}  // namespace centerseries
