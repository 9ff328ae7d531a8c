#include "centerseries/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "centerseries/error.hpp"
#include "centerseries/numeric.hpp"

namespace centerseries {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::complex<double> unit_power(double rho, double angle, std::int64_t k) {
  // polar form; the angle is reduced first so large k stays accurate.
  double a = std::remainder(static_cast<double>(k) * angle, 2 * M_PI);
  return std::polar(std::pow(rho, static_cast<double>(k)), a);
}

// Sign flip of consecutive stride terms under the declared pattern.
bool flips_per_stride(SignPattern sign, std::int64_t step) {
  if (sign == SignPattern::alternating_in_j) return true;
  if (sign == SignPattern::alternating_in_k) return step % 2 != 0;
  return false;
}

void finish(EvaluationReport& r, std::complex<double> acc, std::int64_t used, double est,
            EvalMethod method) {
  r.value = acc;
  r.f_c = acc.real();
  r.f_s = acc.imag();
  r.terms_used = used;
  r.error_estimate = est;
  r.method = method;
}

}  // namespace

const char* eval_method_name(EvalMethod m) {
  switch (m) {
    case EvalMethod::direct: return "direct";
    case EvalMethod::center: return "center";
    case EvalMethod::closed_form_oracle: return "closed_form_oracle";
  }
  return "?";
}

EvaluationReport eval_direct(const CoefficientSequence& seq, const EvalQuery& q) {
  if (q.rho < 0 || q.rho > 1)
    throw Error(ErrorCode::precondition_violated, "eval_direct: rho outside [0, 1]");
  EvaluationReport r;
  r.method = EvalMethod::direct;
  if (q.rho == 0) {
    finish(r, {0, 0}, 0, 0, EvalMethod::direct);
    return r;
  }

  // Rule values live in the rotation basis, so the summation variable is
  // u = z / z_1.
  const double ang = q.theta - seq.rotation().radians();
  const std::int64_t step = seq.step();
  const std::int64_t k0 = seq.next_index(1);
  std::complex<double> w = unit_power(q.rho, ang, k0);
  const std::complex<double> wstep = unit_power(q.rho, ang, step);

  // Oscillatory envelope on the circle: tail of sum c_j xi^j with xi the
  // per-stride phase, estimated as |a_N| / |1 - xi|.
  double envelope = kInf;
  if (q.rho == 1) {
    double phi = step * ang + (flips_per_stride(seq.sign_pattern(), step) ? M_PI : 0);
    double s = std::abs(std::sin(phi / 2));
    if (s > 0) envelope = 1 / (2 * s);
  }

  std::complex<double> acc = 0;
  double est = kInf;
  double prev_mag = 0;
  std::int64_t used = 0;
  for (std::int64_t k = k0; used < q.max_terms; k += step) {
    std::complex<double> t = seq.rule_term(k) * w;
    acc += t;
    w *= wstep;
    ++used;
    double mag = std::abs(t);
    if (q.rho < 1) {
      if (prev_mag > 0 && mag > 0) {
        double ratio = mag / prev_mag;
        est = ratio < 1 ? mag / (1 - ratio) : kInf;
      }
    } else {
      est = mag * envelope;
    }
    prev_mag = mag;
    if (used >= 8 && est <= q.tolerance) break;
  }
  finish(r, acc, used, est, EvalMethod::direct);
  return r;
}

EvaluationReport eval_center(const CenterFactorization& fact, const EvalQuery& q) {
  if (q.rho < 0 || q.rho > 1)
    throw Error(ErrorCode::precondition_violated, "eval_center: rho outside [0, 1]");
  EvaluationReport r;
  r.method = EvalMethod::center;

  const CenterPolynomial& poly = fact.polynomial;
  if (poly.min_root_distance(q.theta) < q.exclusion_window && 1 - q.rho < q.exclusion_window) {
    r.special_point = true;
    r.error_estimate = kInf;
    return r;
  }

  const std::complex<double> z = std::polar(q.rho, q.theta);
  const std::complex<double> pz = poly.eval(z);
  const double pmag = std::abs(pz);

  const CoefficientSequence& res = fact.residual;
  const double ang = q.theta - res.rotation().radians();
  const std::int64_t step = res.step();
  const std::int64_t k0 = res.next_index(1);

  // One-time decay fit of the residual, used for the absolute tail bound
  // sum_{k>N} |b_k| ~ A N^{1-p} / ((p-1) step).
  std::optional<DecayFit> fit;
  try {
    DecayFit f = fit_decay(res, 32, 4096);
    if (f.power_law() && f.exponent > 1) fit = f;
  } catch (const Error&) {
    // finitely many nonzero terms, or no usable window; the zero-run check
    // below handles the former.
  }

  std::complex<double> w = unit_power(q.rho, ang, k0);
  const std::complex<double> wstep = unit_power(q.rho, ang, step);

  // Oscillatory envelope |b_N| / |1 - xi| with xi the per-stride phase; far
  // tighter than the absolute-sum bound when the residual alternates or the
  // phase rotates, and valid once |b_k| decreases.
  double envelope = kInf;
  if (q.rho == 1) {
    double phi = step * ang + (flips_per_stride(res.sign_pattern(), step) ? M_PI : 0);
    double s = std::abs(std::sin(phi / 2));
    if (s > 0) envelope = 1 / (2 * s);
  }

  std::complex<double> acc = 0;
  double est = kInf;
  double peak = 0, dust = 0, prev_mag = 0;
  std::int64_t used = 0, zero_run = 0;
  for (std::int64_t k = k0; used < q.max_terms; k += step) {
    std::complex<double> b = res.rule_term(k);
    double mag = std::abs(b);
    acc += b * w;
    w *= wstep;
    ++used;
    peak = std::max(peak, mag);

    // Terms at rounding-dust level relative to the peak count as structural
    // zeros; 64 in a row means the residual has terminated.
    if (mag <= 1e-15 * peak) {
      ++zero_run;
      dust += mag;
      if (zero_run >= 64) {
        est = dust / pmag;
        break;
      }
    } else {
      zero_run = 0;
      dust = 0;
    }

    if (fit && k >= fit->k_lo) {
      double tail = fit->amplitude * std::pow(static_cast<double>(k), 1 - fit->exponent) /
                    ((fit->exponent - 1) * step);
      est = tail * std::pow(q.rho, static_cast<double>(k)) / pmag;
      if (mag < prev_mag) est = std::min(est, mag * envelope / pmag);
      if (used >= 8 && est <= q.tolerance) break;
    } else if (!fit && prev_mag > 0 && mag > 0) {
      // No trusted power law (sub-power residuals): geometric tail from the
      // running ratio, which overshoots safely when the ratio creeps up.
      double ratio = mag / prev_mag;
      est = ratio < 1 ? mag / ((1 - ratio) * pmag) : kInf;
      if (mag < prev_mag) est = std::min(est, mag * envelope / pmag);
      if (used >= 8 && est <= q.tolerance) break;
    }
    prev_mag = mag;
  }
  finish(r, acc / pz, used, est, EvalMethod::center);
  return r;
}

std::vector<std::complex<double>> dirichlet_partial_sums(double theta, std::int64_t n_max) {
  if (std::sin(theta / 2) == 0)
    throw Error(ErrorCode::theta_zero, "dirichlet_partial_sums: theta = 0 has no bounded disk");
  std::vector<std::complex<double>> out;
  out.reserve(static_cast<std::size_t>(n_max));
  // The sums sit exactly on the bounding circle, so the containment slack
  // leaves no room for recurrence drift: rebuild each phase from n*theta in
  // extended precision and keep the accumulator compensated.
  const long double period = 2.0L * 3.141592653589793238462643383279502884L;
  std::complex<double> acc = 0, carry = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    long double a = std::remainder(static_cast<long double>(n) * theta, period);
    std::complex<double> term = std::polar(1.0, static_cast<double>(a)) - carry;
    std::complex<double> next = acc + term;
    carry = (next - acc) - term;
    acc = next;
    out.push_back(acc);
  }
  return out;
}

std::complex<double> dirichlet_center(double theta) {
  double t = std::tan(theta / 2);
  if (t == 0) throw Error(ErrorCode::theta_zero, "dirichlet_center: theta = 0");
  // D_N = -1/2 + (i/2) cot(theta/2) + e^{i(N+1/2)theta} / (2 sin(theta/2)):
  // the partial sums circle this point at exactly dirichlet_radius.
  return {-0.5, std::isinf(t) ? 0.0 : 0.5 / t};
}

double dirichlet_radius(double theta) {
  double s = std::abs(std::sin(theta / 2));
  if (s == 0) throw Error(ErrorCode::theta_zero, "dirichlet_radius: theta = 0");
  return 1 / (2 * s);
}

AbelResult abel_limit(const CoefficientSequence& seq, double theta,
                      const std::vector<double>& rho_schedule) {
  if (rho_schedule.empty())
    throw Error(ErrorCode::precondition_violated, "abel_limit: empty schedule");
  for (std::size_t i = 0; i < rho_schedule.size(); ++i) {
    double rho = rho_schedule[i];
    if (rho <= 0 || rho >= 1)
      throw Error(ErrorCode::precondition_violated, "abel_limit: rho outside (0, 1)");
    if (i > 0 && rho <= rho_schedule[i - 1])
      throw Error(ErrorCode::precondition_violated, "abel_limit: schedule not increasing");
  }

  AbelResult out;
  std::vector<double> x;
  for (double rho : rho_schedule) {
    EvalQuery q;
    q.theta = theta;
    q.rho = rho;
    q.tolerance = 1e-13;
    q.max_terms = 2'000'000;
    EvaluationReport rep = eval_direct(seq, q);
    out.samples.push_back(*rep.value);
    x.push_back(1 - rho);
  }
  out.value = neville_at_zero(x, out.samples);
  if (out.samples.size() > 1) {
    // Spread against the extrapolation with the coarsest sample dropped.
    std::vector<double> x2(x.begin(), x.end() - 1);
    std::vector<std::complex<double>> y2(out.samples.begin(), out.samples.end() - 1);
    out.error_estimate = std::abs(out.value - neville_at_zero(x2, y2));
  }
  return out;
}

namespace {

double wrapped_distance(double theta, double alpha) {
  return std::abs(std::remainder(theta - alpha, 2 * M_PI));
}

bool roots_are(const std::vector<Angle>& roots, std::initializer_list<double> want) {
  if (roots.size() != want.size()) return false;
  // Both sides sorted ascending in (-pi, pi].
  std::vector<double> w(want);
  std::sort(w.begin(), w.end());
  for (std::size_t i = 0; i < w.size(); ++i)
    if (wrapped_distance(roots[i].radians(), w[i]) > 1e-12) return false;
  return true;
}

}  // namespace

std::optional<std::complex<double>> pole_prefactor_closed_form(const CenterPolynomial& poly,
                                                               double theta, int d,
                                                               double window) {
  const std::vector<Angle>& roots = poly.roots();
  auto guard = [&](double alpha) {
    if (wrapped_distance(theta, alpha) < window)
      throw Error(ErrorCode::special_point, "pole_prefactor_closed_form: theta at a root");
  };

  if (roots.size() == 1 && d == 1) {
    double alpha = roots[0].radians();
    guard(alpha);
    double half = std::remainder(theta - alpha, 2 * M_PI) / 2;
    // z / (z - z_1) = 1/2 - (i/2) cot((theta - alpha) / 2)
    return std::complex<double>(0.5, -0.5 * std::cos(half) / std::sin(half));
  }
  if (roots_are(roots, {0.0, M_PI})) {
    guard(0);
    guard(M_PI);
    if (d == 1) return std::complex<double>(0, -0.5 / std::sin(theta));  // z/(z^2-1)
    if (d == 2)  // z^2/(z^2-1) = 1/2 - (i/2) cot(theta)
      return std::complex<double>(0.5, -0.5 * std::cos(theta) / std::sin(theta));
    return std::nullopt;
  }
  if (roots_are(roots, {-M_PI / 2, M_PI / 2}) && d == 1) {
    guard(M_PI / 2);
    guard(-M_PI / 2);
    return std::complex<double>(0.5 / std::cos(theta), 0);  // z/(z^2+1)
  }
  return std::nullopt;
}

std::vector<double> theta_grid(int count) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out.push_back(-M_PI + (i + 0.5) * 2 * M_PI / count);
  return out;
}

std::vector<double> exclude_near(const std::vector<double>& grid,
                                 const std::vector<Angle>& angles, double window) {
  std::vector<double> out;
  for (double t : grid) {
    bool keep = true;
    for (const Angle& a : angles)
      if (wrapped_distance(t, a.radians()) < window) {
        keep = false;
        break;
      }
    if (keep) out.push_back(t);
  }
  return out;
}

}  // namespace centerseries
