#include <algorithm>
#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "gwc/io.hpp"
#include "gwc/multiqubit.hpp"
#include "gwc/random.hpp"

namespace gwc {
namespace {

// Relabels qubits: output qubit k is input qubit perm[k].
PureState permute_qubits(const PureState& psi, const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CVector out = CVector::Zero(psi.amps().size());
  for (Eigen::Index i = 0; i < psi.amps().size(); ++i) {
    Eigen::Index j = 0;
    for (int k = 0; k < n; ++k) {
      const Eigen::Index bit = (i >> (n - 1 - perm[static_cast<std::size_t>(k)])) & 1;
      j |= bit << (n - 1 - k);
    }
    out(j) = psi.amps()(i);
  }
  return PureState(psi.dims(), out);
}

PureState product_qubits(int n, Rng& rng) {
  PureState acc = random_pure_state(HilbertDims{2}, rng);
  for (int k = 1; k < n; ++k) acc = tensor(acc, random_pure_state(HilbertDims{2}, rng));
  return acc;
}

TEST(Monogamy, SchmidtFamilyTerms) {
  const PureState psi = preset("gschmidt");
  const ResidualReport r = monogamy_residual(psi, 0, Omega(0.9), 2.0);
  EXPECT_NEAR(r.lhs, std::pow(h_omega(0.8, Omega(0.9)), 2), 1e-12);
  ASSERT_EQ(r.rhs_terms.size(), 2u);
  std::vector<double> terms = r.rhs_terms;
  std::sort(terms.begin(), terms.end());
  EXPECT_NEAR(terms[0], std::pow(h_omega(0.4, Omega(0.9)), 2), 1e-12);
  EXPECT_NEAR(terms[1], std::pow(h_omega(2.0 * std::sqrt(2.0) / 5.0, Omega(0.9)), 2), 1e-12);
  EXPECT_GE(r.slack, 0.0);
  EXPECT_FALSE(r.unverified);
}

TEST(Monogamy, ProductStateHasZeroSlack) {
  Rng rng(1);
  const ResidualReport r = monogamy_residual(product_qubits(3, rng), 0, Omega(0.9));
  EXPECT_NEAR(r.lhs, 0.0, 1e-12);
  EXPECT_NEAR(r.slack, 0.0, 1e-12);
}

TEST(Monogamy, WStateGrid) {
  const PureState w3 = preset("wN", {{"N", 3}});
  for (double w : closed_grid(kOmegaTheta, 0.999, 1e-3)) {
    ASSERT_GE(monogamy_residual(w3, 0, Omega(w)).slack, 0.0) << w;
  }
}

TEST(Monogamy, Preconditions) {
  EXPECT_THROW(monogamy_residual(preset("p422"), 0, Omega(0.9)), UnsupportedError);
  EXPECT_THROW(monogamy_residual(preset("wN", {{"N", 3}}), 0, Omega(0.9), 1.5), DomainError);
  EXPECT_THROW(monogamy_residual(preset("wN", {{"N", 3}}), 3, Omega(0.9)), DomainError);
  EXPECT_THROW(monogamy_residual(preset("wN", {{"N", 2}}), 0, Omega(0.9)), DomainError);
  EXPECT_TRUE(monogamy_residual(preset("wN", {{"N", 3}}), 0, Omega(0.8)).unverified);
}

TEST(Monogamy, OmegaOneIsFlat) {
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    const ResidualReport r = monogamy_residual(random_pure_state(HilbertDims{2, 2, 2}, rng), t % 3, Omega(1.0));
    EXPECT_NEAR(r.slack, 0.0, 1e-14);
  }
}

TEST(Polygamy, WClassState) {
  const PureState psi = preset("wclass3");
  const ResidualReport r = polygamy_residual(psi, 0, Omega(0.9), 1.0);
  EXPECT_NEAR(r.lhs, h_omega(std::sqrt(3.0) / 2.0, Omega(0.9)), 1e-12);
  ASSERT_EQ(r.rhs_terms.size(), 2u);
  EXPECT_NEAR(r.rhs_terms[0], h_omega(0.5, Omega(0.9)), 1e-12);
  EXPECT_NEAR(r.rhs_terms[1], h_omega(std::sqrt(2.0) / 2.0, Omega(0.9)), 1e-12);
  EXPECT_GE(r.slack, 0.0);
  for (double a : closed_grid(0.05, 1.0, 0.05)) {
    for (double w : closed_grid(kOmegaTheta, 1.0, 0.01)) ASSERT_GE(polygamy_residual(psi, 0, Omega(w), a).slack, -1e-12);
  }
}

TEST(Polygamy, ProductAndPreconditions) {
  Rng rng(3);
  EXPECT_NEAR(polygamy_residual(product_qubits(3, rng), 1, Omega(0.9)).slack, 0.0, 1e-12);
  EXPECT_THROW(polygamy_residual(preset("wclass3"), 0, Omega(0.9), 1.5), DomainError);
  EXPECT_THROW(polygamy_residual(preset("wclass3"), 0, Omega(0.9), 0.0), DomainError);
}

TEST(Indicator, WStatesPositiveAndPermutationInvariant) {
  for (int n : {3, 5, 10}) {
    const PureState w = preset("wN", {{"N", static_cast<double>(n)}});
    const double tau0 = indicator_tau(w, 0, Omega(0.9)).value;
    EXPECT_GT(tau0, 0.0);
    EXPECT_NEAR(indicator_tau(w, n - 1, Omega(0.9)).value, tau0, 1e-12);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.rbegin(), perm.rend(), 0);
    EXPECT_NEAR(indicator_tau(permute_qubits(w, perm), 0, Omega(0.9)).value, tau0, 1e-12);
  }
}

TEST(Indicator, GhzIsGwcSquared) {
  const PureState ghz = preset("ghzw", {{"d", 1.0}});
  EXPECT_NEAR(indicator_tau(ghz, 0, Omega(0.9)).value, std::pow(h_omega(1.0, Omega(0.9)), 2), 1e-12);
}

TEST(Indicator, FocusPermutationOnRandomStates) {
  Rng rng(4);
  for (int t = 0; t < 20; ++t) {
    const PureState psi = random_pure_state(HilbertDims{2, 2, 2}, rng);
    const PureState moved = permute_qubits(psi, {2, 0, 1});
    EXPECT_NEAR(indicator_tau(psi, 2, Omega(0.9)).value, indicator_tau(moved, 0, Omega(0.9)).value, 1e-10);
  }
}

TEST(Indicator, MixedPureAgrees) {
  const PureState w = preset("wN", {{"N", 3}});
  const IndicatorValue v = indicator_tau_mixed(w.density(), 0, Omega(0.9), {4, 100, 1, 0});
  EXPECT_NEAR(v.value, indicator_tau(w, 0, Omega(0.9)).value, 1e-12);
  EXPECT_TRUE(v.exact);
}

TEST(Indicator, BiseparableMixtureNearZero) {
  Rng rng(5);
  const DensityOperator ab_c =
      tensor(random_pure_state(HilbertDims{2, 2}, rng), random_pure_state(HilbertDims{2}, rng)).density();
  const DensityOperator a_bc =
      tensor(random_pure_state(HilbertDims{2}, rng), random_pure_state(HilbertDims{2, 2}, rng)).density();
  const DensityOperator rho = DensityOperator::mixture({0.5, 0.5}, {ab_c, a_bc});
  const IndicatorValue v = indicator_tau_mixed(rho, 0, Omega(0.9), {16, 200, 3, 0});
  EXPECT_LT(v.value, 1e-3);
  EXPECT_GE(v.value, -1e-9);
}

TEST(Indicator, MixedRankLimit) {
  Rng rng(6);
  EXPECT_THROW(indicator_tau_mixed(random_density(HilbertDims{2, 2, 2}, 5, rng), 0, Omega(0.9)), UnsupportedError);
}

TEST(ThreeTangle, GhzWFamily) {
  const ThreeTangle t = three_tangle_pure3q(preset("ghzw", {{"d", 0.627}}));
  EXPECT_LE(t.magnitude, 5e-3);
  EXPECT_NEAR(three_tangle_pure3q(preset("ghzw", {{"d", 1.0}})).signed_value, 1.0, 1e-12);
  EXPECT_NEAR(three_tangle_pure3q(preset("wN", {{"N", 3}})).signed_value, 0.0, 1e-12);
  EXPECT_THROW(three_tangle_pure3q(preset("wN", {{"N", 4}})), DomainError);
}

TEST(ThreeTangle, NonnegativeOnRandomStates) {
  Rng rng(7);
  for (int t = 0; t < 200; ++t) ASSERT_GE(three_tangle_pure3q(random_pure_state(HilbertDims{2, 2, 2}, rng)).signed_value, -1e-10);
}

TEST(Residual422, ClosedForms) {
  for (double g : closed_grid(0.0, M_PI / 2, M_PI / 200)) {
    const Residual422 r = residual_422_closed(g, Omega(0.9));
    const double a2 = std::pow(std::cos(g), 2), b2 = std::pow(std::sin(g), 2);
    ASSERT_NEAR(r.r_c, -2.0 * a2 * b2, 1e-12);
    ASSERT_NEAR(r.r_c, r.r_c_closed, 1e-12);
    ASSERT_GE(r.r_omega, -1e-9);
  }
  EXPECT_NEAR(residual_422_closed(M_PI / 4, Omega(0.9)).r_c, -0.5, 1e-12);
  EXPECT_THROW(residual_422_closed(2.0, Omega(0.9)), DomainError);
}

TEST(Residual422, StateDerivedMatchesClosed) {
  for (double g : {0.0, 0.3, M_PI / 4, 1.2}) {
    const Residual422 closed = residual_422_closed(g, Omega(0.9));
    const Residual422 numeric = residual_422(g, Omega(0.9));
    EXPECT_NEAR(numeric.c_a_bc, closed.c_a_bc, 1e-10);
    EXPECT_NEAR(numeric.c_ab, closed.c_ab, 1e-6);
    EXPECT_NEAR(numeric.c_ac, closed.c_ac, 1e-6);
    EXPECT_NEAR(numeric.r_c, closed.r_c_closed, 1e-6);
    EXPECT_NEAR(numeric.g_ab, closed.g_ab, 1e-6);
    EXPECT_NEAR(numeric.g_ac, closed.g_ac, 1e-6);
    EXPECT_NEAR(numeric.r_omega, closed.r_omega, 1e-6);
  }
}

TEST(Residual422, PrintedExponentVariant) {
  std::size_t negative = 0, total = 0;
  for (double g : closed_grid(0.0, M_PI / 2, M_PI / 40)) {
    for (double w : closed_grid(kOmegaTheta, 1.0, 0.01)) {
      ++total;
      if (residual_422_closed(g, Omega(w), Mc5Exponent::two).r_omega < -1e-9) ++negative;
    }
  }
  EXPECT_GT(negative, total / 2);
}

}  // namespace
}  // namespace gwc
