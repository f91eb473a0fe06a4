#include <cmath>

#include <gtest/gtest.h>

#include "gwc/measures.hpp"
#include "gwc/presets.hpp"
#include "gwc/random.hpp"

namespace gwc {
namespace {

PureState bell() {
  CVector v = CVector::Zero(4);
  v(0) = v(3) = 1.0 / std::sqrt(2.0);
  return PureState(HilbertDims{2, 2}, v);
}

PureState product00() {
  CVector v = CVector::Zero(4);
  v(0) = 1.0;
  return PureState(HilbertDims{2, 2}, v);
}

double bell_value(double w) { return std::pow(std::pow(2.0, 1.0 - w) - 1.0, w); }

TEST(Omega, Range) {
  EXPECT_THROW(Omega(0.0), DomainError);
  EXPECT_THROW(Omega(1.1), DomainError);
  EXPECT_THROW(Omega(std::nan("")), DomainError);
  EXPECT_TRUE(Omega(1.0).degenerate());
  EXPECT_TRUE(Omega(0.9).closed_form_regime());
  EXPECT_FALSE(Omega(0.8).closed_form_regime());
}

TEST(GwcPure, KnownValues) {
  EXPECT_EQ(gwc_pure(product00(), {0}, Omega(0.5)).value, 0.0);
  EXPECT_NEAR(gwc_pure(bell(), {0}, Omega(0.9)).value, bell_value(0.9), 1e-14);
  EXPECT_NEAR(gwc_pure(bell(), {0}, Omega(0.9)).value, 0.09337, 5e-5);
  Rng rng(2);
  for (int t = 0; t < 20; ++t) {
    EXPECT_NEAR(gwc_pure(random_pure_state(HilbertDims{3, 2}, rng), {0}, Omega(1.0)).value, 0.0, 1e-14);
  }
}

TEST(GwcPure, MatchesSpectrumFormula) {
  const std::vector<double> chi{0.5, 0.3, 0.2};
  const double w = 0.7;
  const double expect = std::pow(std::pow(0.5, w) + std::pow(0.3, w) + std::pow(0.2, w) - 1.0, w);
  EXPECT_NEAR(gwc_from_spectrum(chi, Omega(w)), expect, 1e-14);
  Rng rng(1);
  const PureState psi = state_with_schmidt(chi, 3, 3, rng);
  EXPECT_NEAR(gwc_pure(psi, {0}, Omega(w)).value, expect, 1e-12);
}

TEST(ConcurrencePure, KnownValues) {
  EXPECT_NEAR(concurrence_pure(bell(), {0}).value, 1.0, 1e-14);
  EXPECT_EQ(concurrence_pure(product00(), {0}).value, 0.0);
  for (int n : {3, 5, 10}) {
    const PureState w = preset("wN", {{"N", static_cast<double>(n)}});
    EXPECT_NEAR(concurrence_pure(w, {0}).value, 2.0 * std::sqrt(n - 1.0) / n, 1e-13);
  }
  const double g = 0.3;
  const double a = std::cos(g), b = std::sin(g);
  EXPECT_NEAR(concurrence_pure(preset("p422", {{"gamma", g}}), {0}).value,
              std::sqrt(2.0 - std::pow(a, 4) - std::pow(b, 4)), 1e-13);
}

TEST(ConcurrenceMixed, KnownValues) {
  EXPECT_NEAR(concurrence_mixed_2q(bell().density()).value, 1.0, 1e-12);
  const DensityOperator half = DensityOperator::mixture(
      {0.5, 0.5}, {bell().density(), DensityOperator(HilbertDims{2, 2}, CMatrix::Identity(4, 4) * 0.25)});
  // Werner weight 1/2 is entangled; weight 1/3 is the boundary
  EXPECT_GT(concurrence_mixed_2q(half).value, 0.0);
  const DensityOperator werner = DensityOperator::mixture(
      {1.0 / 3.0, 2.0 / 3.0}, {bell().density(), DensityOperator(HilbertDims{2, 2}, CMatrix::Identity(4, 4) * 0.25)});
  EXPECT_NEAR(concurrence_mixed_2q(werner).value, 0.0, 1e-12);
  const PureState ex2 = preset("gschmidt");
  const double cab = concurrence_mixed_2q(reduced_density(ex2, {0, 1})).value;
  const double cac = concurrence_mixed_2q(reduced_density(ex2, {0, 2})).value;
  EXPECT_NEAR(cab, 0.4, 1e-12);
  EXPECT_NEAR(cac, 2.0 * std::sqrt(2.0) / 5.0, 1e-12);
  EXPECT_THROW(concurrence_mixed_2q(reduced_density(preset("wN", {{"N", 4}}), {0, 1, 2})), DomainError);
}

TEST(ConcurrenceMixed, PureInputsMatchSchmidt) {
  Rng rng(9);
  for (int t = 0; t < 100; ++t) {
    const PureState psi = random_pure_state(HilbertDims{2, 2}, rng);
    ASSERT_NEAR(concurrence_mixed_2q(psi.density()).value, concurrence_pure(psi, {0}).value, 1e-9);
    ASSERT_NEAR(coa_2q(psi.density()).value, concurrence_pure(psi, {0}).value, 1e-9);
  }
}

TEST(Coa, WClassReductions) {
  const PureState psi = preset("wclass3");
  EXPECT_NEAR(coa_2q(reduced_density(psi, {0, 1})).value, 0.5, 1e-12);
  EXPECT_NEAR(coa_2q(reduced_density(psi, {0, 2})).value, std::sqrt(2.0) / 2.0, 1e-12);
  EXPECT_NEAR(concurrence_pure(psi, {0}).value, std::sqrt(3.0) / 2.0, 1e-12);
}

TEST(HOmega, Endpoints) {
  for (double w : {0.2, 0.5, 0.9, 1.0}) {
    EXPECT_EQ(h_omega(0.0, Omega(w)), 0.0);
    EXPECT_NEAR(h_omega(1.0, Omega(w)), bell_value(w), 1e-14);
  }
  EXPECT_THROW(h_omega(1.1, Omega(0.9)), DomainError);
  EXPECT_THROW(h_omega(-0.1, Omega(0.9)), DomainError);
}

TEST(HOmega, AgreesWithSchmidtEvaluation) {
  const double s = std::sqrt(1.0 - 0.64);
  Rng rng(4);
  const PureState psi = state_with_schmidt({(1 + s) / 2, (1 - s) / 2}, 2, 2, rng);
  EXPECT_NEAR(concurrence_pure(psi, {0}).value, 0.8, 1e-12);
  EXPECT_NEAR(h_omega(0.8, Omega(0.9)), gwc_pure(psi, {0}, Omega(0.9)).value, 1e-12);
}

TEST(GwcMixed, ClosedForm) {
  EXPECT_NEAR(gwc_mixed_2q(bell().density(), Omega(0.9)).value, bell_value(0.9), 1e-12);
  EXPECT_EQ(gwc_mixed_2q(product00().density(), Omega(0.9)).value, 0.0);
  const MeasureValue low = gwc_mixed_2q(bell().density(), Omega(0.5));
  EXPECT_TRUE(low.unverified);
  EXPECT_FALSE(gwc_mixed_2q(bell().density(), Omega(0.9)).unverified);
}

TEST(Gwcoa, PureAndWClassValues) {
  const PureState psi = preset("wclass3");
  EXPECT_NEAR(gwcoa_upper_bound(reduced_density(psi, {0, 1}), Omega(0.9)).value, h_omega(0.5, Omega(0.9)), 1e-12);
  Rng rng(8);
  const PureState p = random_pure_state(HilbertDims{2, 2}, rng);
  EXPECT_NEAR(gwcoa_upper_bound(p.density(), Omega(0.9)).value, gwc_pure(p, {0}, Omega(0.9)).value, 1e-9);
}

}  // namespace
}  // namespace gwc
