#include <cmath>

#include <gtest/gtest.h>

#include "gwc/io.hpp"
#include "gwc/omega_analysis.hpp"

namespace gwc {
namespace {

double fd_second(double t, double w, double step) {
  const Omega om(w);
  return (h_omega(t + step, om) - 2.0 * h_omega(t, om) + h_omega(t - step, om)) / (step * step);
}

TEST(SecondDerivative, MatchesFiniteDifferences) {
  EXPECT_GT(m_second_derivative(0.5, Omega(0.95)), 0.0);
  EXPECT_NEAR(m_second_derivative(0.5, Omega(0.95)), fd_second(0.5, 0.95, 1e-4), 1e-5);
  for (double w : {0.3, 0.7, 0.86, 0.99}) {
    for (double t : {0.05, 0.2, 0.5, 0.8, 0.95}) {
      const double m = m_second_derivative(t, Omega(w));
      EXPECT_NEAR(m, fd_second(t, w, 1e-4), 1e-5 * (1.0 + std::abs(m))) << "theta " << t << " omega " << w;
    }
  }
}

TEST(SecondDerivative, ContinuousAcrossSeriesSwitch) {
  for (double w : {0.7, 0.9}) {
    const double below = m_second_derivative(std::sqrt(1.0 - 1.01e-4), Omega(w));
    const double above = m_second_derivative(std::sqrt(1.0 - 0.99e-4), Omega(w));
    EXPECT_NEAR(below, above, 1e-4 * (1.0 + std::abs(below)));
  }
}

TEST(SecondDerivative, RejectsEndpoints) {
  EXPECT_THROW(m_second_derivative(0.0, Omega(0.9)), DomainError);
  EXPECT_THROW(m_second_derivative(1.0, Omega(0.9)), DomainError);
}

TEST(LimitTheta1, Values) {
  EXPECT_NEAR(m_limit_theta1(Omega(1.0)), 0.0, 1e-14);
  EXPECT_LT(m_limit_theta1(Omega(0.7)), 0.0);
  EXPECT_GT(m_limit_theta1(Omega(0.95)), 0.0);
  EXPECT_NEAR(m_limit_theta1(Omega(0.85798)), 0.0, 1e-4);
  for (double w : {0.7, 0.86, 0.95}) {
    const double lim = m_limit_theta1(Omega(w));
    const double near = m_second_derivative(1.0 - 1e-4, Omega(w));
    EXPECT_NEAR(near, lim, 1e-2 * std::abs(lim)) << "omega " << w;
  }
}

TEST(LimitTheta1, PrintedFormShareSign) {
  for (double w : closed_grid(0.5, 0.99, 0.01)) {
    const double a = m_limit_theta1(Omega(w));
    const double b = m_limit_theta1_printed(Omega(w));
    EXPECT_EQ(a > 0.0, b > 0.0) << "omega " << w;
  }
}

TEST(Roots, OmegaTheta) {
  const RootResult r = find_omega_theta();
  EXPECT_NEAR(r.root, 0.85798, 5e-5);
  EXPECT_LT(r.residual, 1e-10);
  EXPECT_NEAR(find_omega_theta(1e-12).root, r.root, 1e-11);
  EXPECT_LT(m_limit_theta1(Omega(r.root - 1e-3)) * m_limit_theta1(Omega(r.root + 1e-3)), 0.0);
}

TEST(Roots, MonogamyRoot) {
  const RootResult r = find_monogamy_root();
  EXPECT_NEAR(r.root, 0.7962, 5e-4);
  EXPECT_LT(r.residual, 1e-10);
  const double t = 1.0 / std::sqrt(2.0);
  EXPECT_LT(monogamy_boundary_q(t, Omega(0.6)), 0.0);
  EXPECT_GT(monogamy_boundary_q(t, Omega(0.8)), 0.0);
}

TEST(Roots, BisectNeedsSignChange) {
  EXPECT_THROW(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::logic_error);
  EXPECT_NEAR(bisect([](double x) { return x - 0.25; }, 0.0, 1.0).root, 0.25, 1e-14);
}

TEST(FG, GIsDerivativeOfF) {
  for (double w : {0.5, 0.9}) {
    for (double n : {0.2, 0.5, 0.8}) {
      const double h = 1e-5;
      const double fd = (f_g_functions(n + h, Omega(w)).f - f_g_functions(n - h, Omega(w)).f) / (2 * h);
      const double g = f_g_functions(n, Omega(w)).g;
      EXPECT_NEAR(g, fd, 1e-5 * (1.0 + std::abs(g)));
    }
  }
  EXPECT_THROW(f_g_functions(1.0, Omega(0.9)), DomainError);
}

TEST(FG, FIsScaledDerivativeOfH) {
  // f(n) = 2^w dh/dn / (w^2 n)
  const double w = 0.9, n = 0.6, h = 1e-6;
  const double dh = (h_omega(n + h, Omega(w)) - h_omega(n - h, Omega(w))) / (2 * h);
  EXPECT_NEAR(f_g_functions(n, Omega(w)).f, std::exp2(w) * dh / (w * w * n), 1e-6);
}

TEST(Residuals, SymmetricAndZeroOnAxes) {
  for (double w : {0.3, 0.9}) {
    EXPECT_EQ(h_residual(0.0, 0.7, Omega(w)), 0.0);
    EXPECT_EQ(h_residual_sq(0.7, 0.0, Omega(w)), 0.0);
    EXPECT_EQ(h_residual(0.3, 0.6, Omega(w)), h_residual(0.6, 0.3, Omega(w)));
    EXPECT_EQ(h_residual_sq(0.3, 0.6, Omega(w)), h_residual_sq(0.6, 0.3, Omega(w)));
  }
  EXPECT_THROW(h_residual(0.8, 0.8, Omega(0.9)), DomainError);
}

TEST(Boundaries, ArcValues) {
  for (double w : {0.2, 0.5, 0.9}) {
    EXPECT_EQ(polygamy_boundary_p(0.0, Omega(w)), 0.0);
    EXPECT_EQ(polygamy_boundary_p(1.0, Omega(w)), 0.0);
    EXPECT_EQ(monogamy_boundary_q(0.0, Omega(w)), 0.0);
    for (double t : {0.2, 1.0 / std::sqrt(2.0), 0.9}) EXPECT_LE(polygamy_boundary_p(t, Omega(w)), 1e-12);
  }
}

TEST(Certify, Subadditive) {
  for (double w : {0.1, 0.3, 0.5, 0.9}) {
    const GridCert c = certify_subadditive(Omega(w), 5e-3);
    EXPECT_TRUE(c.pass) << "omega " << w << " worst " << c.worst_violation;
    EXPECT_GT(c.points, 30000u);
  }
}

TEST(Certify, SuperadditiveSquared) {
  for (double w : {0.8, 0.9, 0.99}) EXPECT_TRUE(certify_superadditive_sq(Omega(w), 5e-3).pass) << w;
  const GridCert fail = certify_superadditive_sq(Omega(0.7), 5e-3);
  EXPECT_FALSE(fail.pass);
  EXPECT_LT(fail.worst_violation, -1e-9);
}

TEST(Certify, Preconditions) {
  EXPECT_THROW(certify_subadditive(Omega(0.01), 5e-3), DomainError);
  EXPECT_THROW(certify_subadditive(Omega(0.5), 0.1), DomainError);
}

}  // namespace
}  // namespace gwc
