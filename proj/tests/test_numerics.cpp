#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "arcplate/numerics.hpp"
#include "oracles.hpp"

namespace {

using arcplate::Error;
using arcplate::ErrorCode;
using arcplate::numerics::integrate;
using arcplate::numerics::QuadratureSpec;
using arcplate::oracle::midpoint;
using arcplate::oracle::rel_err;

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected arcplate::Error";
  return ErrorCode::InvalidArgument;
}

TEST(Integrate, ConstantIsExact) {
  const auto r = integrate([](double) { return 1.0; }, 0.0, 2.0);
  EXPECT_DOUBLE_EQ(r.value, 2.0);
  EXPECT_NEAR(r.error_estimate, 0.0, 1e-15);
  EXPECT_GE(r.evaluations, 1u);
}

TEST(Integrate, OddCubicVanishes) {
  const auto r = integrate([](double y) { return y * y * y; }, -1.0, 1.0);
  EXPECT_NEAR(r.value, 0.0, 1e-15);
  const auto g = integrate([](double y) { return y * y * y; }, -1.0, 1.0,
                           QuadratureSpec::gauss_legendre(8));
  EXPECT_NEAR(g.value, 0.0, 1e-15);
}

TEST(Integrate, InverseCubeMatchesAntiderivativeAndMidpoint) {
  auto f = [](double y) { return 1.0 / ((1.0 + y) * (1.0 + y) * (1.0 + y)); };
  const double oracle = midpoint(f, 0.0, 1.0, 10'000'000);
  EXPECT_LT(rel_err(oracle, 0.375), 1e-12);

  const auto simpson = integrate(f, 0.0, 1.0);
  EXPECT_LT(rel_err(simpson.value, 0.375), 1e-10);
  EXPECT_LT(simpson.error_estimate, 1e-10);

  const auto gauss = integrate(f, 0.0, 1.0, QuadratureSpec::gauss_legendre(32));
  EXPECT_LT(rel_err(gauss.value, 0.375), 1e-13);
}

TEST(Integrate, GaussExactForPolynomialsUpToDegree2nMinus1) {
  // n = 5 integrates x^9 exactly; Int_0^1 x^9 = 0.1.
  const auto r = integrate([](double x) { return std::pow(x, 9); }, 0.0, 1.0,
                           QuadratureSpec::gauss_legendre(5));
  EXPECT_NEAR(r.value, 0.1, 1e-15);
}

TEST(Integrate, GaussRuleWeightsSumToTwo) {
  for (int n : {2, 3, 7, 16, 64, 129}) {
    const auto rule = arcplate::numerics::gauss_legendre_rule(n);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-13) << "n = " << n;
    for (std::size_t i = 1; i < rule.nodes.size(); ++i) EXPECT_LT(rule.nodes[i - 1], rule.nodes[i]);
  }
}

TEST(Integrate, DegenerateInterval) {
  const auto r = integrate([](double) { return 5.0; }, 1.5, 1.5);
  EXPECT_EQ(r.value, 0.0);
  EXPECT_GE(r.evaluations, 1u);
}

TEST(Integrate, Errors) {
  auto f = [](double x) { return x; };
  EXPECT_EQ(code_of([&] { integrate(f, 1.0, 0.0); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([&] { integrate(f, 0.0, INFINITY); }), ErrorCode::InvalidInterval);
  EXPECT_EQ(code_of([&] { integrate(f, NAN, 1.0); }), ErrorCode::InvalidInterval);

  // sqrt has unbounded derivative at 0; one bisection level cannot resolve it.
  QuadratureSpec shallow;
  shallow.max_subdivisions = 1;
  shallow.relative_tolerance = 1e-14;
  EXPECT_EQ(code_of([&] { integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, shallow); }),
            ErrorCode::NonConvergence);

  EXPECT_EQ(code_of([&] { integrate([](double x) { return 1.0 / x; }, 0.0, 1.0); }),
            ErrorCode::NonFiniteIntegrand);

  QuadratureSpec bad;
  bad.relative_tolerance = 0.0;
  EXPECT_EQ(code_of([&] { integrate(f, 0.0, 1.0, bad); }), ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { integrate(f, 0.0, 1.0, QuadratureSpec::gauss_legendre(1)); }),
            ErrorCode::InvalidArgument);
}

// Property checks over randomly drawn smooth integrands c0 + c1 exp(k x) + c2 cos(w x).
struct SmoothFn {
  double c0, c1, k, c2, w;
  double operator()(double x) const { return c0 + c1 * std::exp(k * x) + c2 * std::cos(w * x); }
};

SmoothFn draw(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  return {u(rng) + 3.0, u(rng), u(rng), u(rng), 1.0 + std::abs(u(rng))};
}

TEST(IntegrateProperties, LinearityAdditivityEvenSymmetry) {
  std::mt19937_64 rng(20241015);
  const QuadratureSpec spec;
  const double tol = spec.relative_tolerance;
  for (int trial = 0; trial < 200; ++trial) {
    const SmoothFn f = draw(rng);
    const SmoothFn g = draw(rng);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    const double a = coef(rng);
    const double b = coef(rng);
    const double lo = -1.0;
    const double hi = 1.5;

    const double lhs = integrate([&](double x) { return a * f(x) + b * g(x); }, lo, hi).value;
    const double If = integrate(f, lo, hi).value;
    const double Ig = integrate(g, lo, hi).value;
    const double scale = std::abs(a * If) + std::abs(b * Ig);
    EXPECT_LE(std::abs(lhs - (a * If + b * Ig)), 10.0 * tol * scale);

    std::uniform_real_distribution<double> split(lo, hi);
    const double mid = split(rng);
    const double whole = integrate(f, lo, hi).value;
    const double parts = integrate(f, lo, mid).value + integrate(f, mid, hi).value;
    EXPECT_LE(std::abs(whole - parts), 3.0 * tol * std::abs(whole) + 1e-14);

    auto even = [&](double x) { return f.c0 + f.c2 * std::cos(f.w * x) + x * x; };
    const double sym = integrate(even, -hi, hi).value;
    const double half = integrate(even, 0.0, hi).value;
    EXPECT_LE(std::abs(sym - 2.0 * half), 3.0 * tol * std::abs(sym));
  }
}

TEST(IntegrateProperties, AgreesWithMidpointOracle) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 10; ++trial) {
    const SmoothFn f = draw(rng);
    const double oracle = midpoint(f, -1.0, 2.0, 1'000'000);
    EXPECT_LT(rel_err(integrate(f, -1.0, 2.0).value, oracle), 1e-6);
    EXPECT_LT(rel_err(integrate(f, -1.0, 2.0, QuadratureSpec::gauss_legendre(48)).value, oracle),
              1e-6);
  }
}

}  // namespace
