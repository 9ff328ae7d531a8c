#include <centerseries/sequence.hpp>

#include <cmath>
#include <complex>
#include <memory>

#include <doctest.h>

#include <centerseries/error.hpp>
#include <centerseries/singularity.hpp>

using namespace centerseries;

namespace {

CoefficientSequence power_seq(BigRat amp, int pi_pow, int kpow, SignPattern sign,
                              std::int64_t step, std::int64_t offset, bool is_real = true,
                              Angle rot = Angle()) {
  auto rule = std::make_shared<PowerStrideRule>(ExactComplex::rational(amp, pi_pow), kpow, sign,
                                                step, offset);
  return CoefficientSequence(rule, step, offset, sign, is_real, rot);
}

struct LambdaRule final : TermRule {
  std::function<double(std::int64_t)> f;
  explicit LambdaRule(std::function<double(std::int64_t)> fn) : f(std::move(fn)) {}
  std::complex<double> value(std::int64_t k) const override { return {f(k), 0.0}; }
  std::string describe() const override { return "test rule"; }
};

CoefficientSequence lambda_seq(std::function<double(std::int64_t)> f) {
  return CoefficientSequence(std::make_shared<LambdaRule>(std::move(f)), 1, 1,
                             SignPattern::constant, true, Angle());
}

}  // namespace

TEST_CASE("stride gating zeroes off-progression indices") {
  auto seq = power_seq(BigRat(1), 0, -1, SignPattern::constant, 2, 1);
  CHECK(seq.term(1) == std::complex<double>{1.0, 0.0});
  CHECK(seq.term(2) == std::complex<double>{0.0, 0.0});
  CHECK(seq.term(3).real() == doctest::Approx(1.0 / 3));
  CHECK(seq.on_stride(5));
  CHECK_FALSE(seq.on_stride(6));
  CHECK(seq.next_index(1) == 1);
  CHECK(seq.next_index(2) == 3);
  CHECK(seq.next_index(4) == 5);
  CHECK(seq.term_exact(4)->is_zero());
}

TEST_CASE("alternating sign patterns") {
  auto in_k = power_seq(BigRat(1), 0, -1, SignPattern::alternating_in_k, 1, 1);
  CHECK(in_k.term(1).real() == doctest::Approx(-1.0));
  CHECK(in_k.term(2).real() == doctest::Approx(0.5));
  CHECK(in_k.term(3).real() == doctest::Approx(-1.0 / 3));

  // j = (k - 1) / 2: sign +, -, + at k = 1, 3, 5.
  auto in_j = power_seq(BigRat(1), 0, -1, SignPattern::alternating_in_j, 2, 1);
  CHECK(in_j.term(1).real() == doctest::Approx(1.0));
  CHECK(in_j.term(3).real() == doctest::Approx(-1.0 / 3));
  CHECK(in_j.term(5).real() == doctest::Approx(0.2));
}

TEST_CASE("rotation applies a unit phase in the z basis") {
  Angle rot = Angle::rational_pi(BigRat(1, 3));
  auto seq = power_seq(BigRat(1), -1, 0, SignPattern::constant, 1, 1, false, rot);
  for (std::int64_t k : {1, 2, 5, 12}) {
    std::complex<double> v = seq.term(k);
    CHECK(std::abs(v) == doctest::Approx(1 / M_PI).epsilon(1e-14));
    std::complex<double> want = std::polar(1 / M_PI, -k * M_PI / 3);
    CHECK(std::abs(v - want) <= 1e-14);
    CHECK(seq.rule_term(k).real() == doctest::Approx(1 / M_PI));
  }
  auto exact1 = seq.term_exact(1);
  REQUIRE(exact1.has_value());
  CHECK(*exact1 == ExactComplex::phase(BigRat(-1, 3), BigRat(1), -1));
}

TEST_CASE("log derivative and log integral are inverse chains") {
  auto seq = power_seq(BigRat(4), -1, -1, SignPattern::alternating_in_j, 2, 1);
  auto round = log_integral(log_derivative(seq));
  for (std::int64_t k = 1; k <= 1000; ++k) {
    auto a = seq.term_exact(k);
    auto b = round.term_exact(k);
    REQUIRE(a.has_value());
    REQUIRE(b.has_value());
    CHECK(*a == *b);
  }
  CHECK(round.step() == seq.step());
  CHECK(round.offset() == seq.offset());
  CHECK(round.sign_pattern() == seq.sign_pattern());
  CHECK(round.is_real() == seq.is_real());

  // One application shifts the exponent by one.
  CHECK(log_derivative(seq).term(3).real() == doctest::Approx(3.0 * seq.term(3).real()));
  CHECK(log_integral(seq).term(5).real() == doctest::Approx(seq.term(5).real() / 5));
}

TEST_CASE("decay fit recovers planted power laws") {
  for (double amp : {0.1, 1.0, 10.0}) {
    for (double p : {0.25, 0.5, 1.0, 1.5, 2.0, 3.0}) {
      auto rule = std::make_shared<FloatPowerRule>(amp, p);
      CoefficientSequence seq(rule, 1, 1, SignPattern::constant, true, Angle());
      DecayFit fit = fit_decay(seq, 10, 10000);
      CHECK(fit.exponent == doctest::Approx(p).epsilon(1e-6));
      CHECK(fit.amplitude == doctest::Approx(amp).epsilon(1e-6));
      CHECK(fit.power_law());
      CHECK(fit.residual <= 1e-8);
    }
  }
}

TEST_CASE("decay fit rejects bad windows") {
  auto sparse = power_seq(BigRat(1), 0, -1, SignPattern::constant, 2, 1);
  CHECK_THROWS_WITH_AS(static_cast<void>(fit_decay(sparse, 10, 20)),
                       doctest::Contains("window-too-small"), Error);

  auto with_zero = lambda_seq([](std::int64_t k) { return k == 100 ? 0.0 : 1.0 / k; });
  CHECK_THROWS_WITH_AS(static_cast<void>(fit_decay(with_zero, 32, 512)),
                       doctest::Contains("zero-term-in-window"), Error);
}

TEST_CASE("ratio probe finds geometric radius") {
  auto geo = lambda_seq([](std::int64_t k) { return std::pow(0.5, static_cast<double>(k)); });
  RatioProbe pr = probe_ratio(geo);
  REQUIRE(pr.valid);
  CHECK(pr.limit == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(pr.radius == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("ratio probe of sub-exponential decay converges to radius one") {
  CoefficientSequence seq(std::make_shared<ExpSqrtRule>(), 1, 1, SignPattern::constant, true,
                          Angle());
  RatioProbe pr = probe_ratio(seq);
  REQUIRE(pr.valid);
  CHECK(std::abs(pr.radius - 1.0) <= 1e-6);
}

TEST_CASE("extended monotonicity probe") {
  CHECK(extended_monotonic(power_seq(BigRat(2), -1, -1, SignPattern::alternating_in_k, 1, 1)));
  auto wiggly = lambda_seq(
      [](std::int64_t k) { return (2 + std::sin(static_cast<double>(k))) / k; });
  CHECK_FALSE(extended_monotonic(wiggly));
}
