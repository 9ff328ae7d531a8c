#pragma once

// Numerical evaluation on and inside the unit circle. value = f_c + i*f_s:
// for a real coefficient sequence the real part is the cosine series and the
// imaginary part the sine series.

#include <complex>
#include <optional>
#include <vector>

#include "centerseries/center.hpp"
#include "centerseries/sequence.hpp"

namespace centerseries {

enum class EvalMethod { direct, center, closed_form_oracle };

const char* eval_method_name(EvalMethod m);

struct EvalQuery {
  double theta = 0;            // radians, (-pi, pi]
  double rho = 1.0;            // in [0, 1]
  std::int64_t max_terms = 100000;  // cap on summed (stride) terms
  double tolerance = 1e-9;     // adaptive-stop target, absolute
  EvalMethod method = EvalMethod::direct;
  double exclusion_window = 1e-6;  // rad around root angles (center method)
};

struct EvaluationReport {
  std::optional<std::complex<double>> value;  // absent at a special point
  double f_c = 0, f_s = 0;
  std::int64_t terms_used = 0;
  double error_estimate = 0;  // an estimate, not a bound
  EvalMethod method = EvalMethod::direct;
  bool special_point = false;
};

// Partial sum of a_k rho^k e^{ik theta}. Adaptive stop: geometric tail
// estimate |last| / (1 - running ratio) for rho < 1, oscillatory envelope
// |a_N| / |1 - sigma v^step| for rho = 1. Never throws; non-convergence shows
// up as terms_used = max_terms with the running error estimate.
EvaluationReport eval_direct(const CoefficientSequence& seq, const EvalQuery& q);

// (partial sum of b_k rho^k e^{ik theta}) / P_N(rho e^{i theta}); stops when
// the absolute residual tail estimated from the fitted decay of b drops below
// tolerance. Flags special_point (no value) inside the exclusion window.
EvaluationReport eval_center(const CenterFactorization& fact, const EvalQuery& q);

// D_1 .. D_{N_max} for D_N = sum_{k<=N} e^{ik theta}. Throws theta_zero.
std::vector<std::complex<double>> dirichlet_partial_sums(double theta, std::int64_t n_max);
// Disk parameters: every D_N lies within radius(theta) of center(theta).
std::complex<double> dirichlet_center(double theta);
double dirichlet_radius(double theta);

struct AbelResult {
  std::complex<double> value;
  double error_estimate = 0;  // extrapolation spread
  std::vector<std::complex<double>> samples;
};

// Evaluate w(rho e^{i theta}) along the schedule (each rho < 1, strictly
// increasing) and extrapolate rho -> 1 with a polynomial in (1 - rho) of
// degree len(schedule) - 1.
AbelResult abel_limit(const CoefficientSequence& seq, double theta,
                      const std::vector<double>& rho_schedule);

// Catalogued closed form of z^d / P(z) on |z| = 1 for the shapes z - z_1
// (any single root, covering z -+ 1), z^2 - 1 (d = 1 or 2), z^2 + 1.
// nullopt when the (shape, d) pair is not catalogued; throws special_point
// within `window` of a root.
std::optional<std::complex<double>> pole_prefactor_closed_form(const CenterPolynomial& poly,
                                                               double theta, int d = 1,
                                                               double window = 1e-6);

// Uniform midpoint grid of `count` angles over (-pi, pi).
std::vector<double> theta_grid(int count);
// Grid points at least `window` away from every listed angle.
std::vector<double> exclude_near(const std::vector<double>& grid,
                                 const std::vector<Angle>& angles, double window);

}  // namespace centerseries
