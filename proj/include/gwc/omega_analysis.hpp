#pragma once

// Scalar analysis of h_omega: its second derivative M(theta, omega) and the
// theta -> 1 limit, the gradient helpers f_omega and g_omega, the two-variable
// residuals
//   H(t1, t2)  = h(sqrt(t1^2 + t2^2)) - h(t1) - h(t2)
//   Ht(t1, t2) = h^2(sqrt(t1^2 + t2^2)) - h^2(t1) - h^2(t2)
// with their arc restrictions p(t1) = H(t1, sqrt(1 - t1^2)) and q likewise,
// bisection for the two critical omegas and grid certification of
// H <= 0 and Ht >= 0 on the quarter disk.

#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "gwc/measures.hpp"
#include "gwc/parallel.hpp"

namespace gwc {

struct RootResult {
  double root = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

struct GridCert {
  std::string region;
  double step = 0.0;
  double omega = 0.0;
  double tol = 0.0;
  /// max H for the subadditive claim, min Ht for the squared superadditive one
  double worst_violation = 0.0;
  double worst_theta1 = 0.0;
  double worst_theta2 = 0.0;
  std::size_t points = 0;
  bool pass = false;
};

namespace detail {

/// Coefficients of h_omega as a power series in x = s^2, s = sqrt(1 - theta^2).
/// S(s) = 2^{-w}[(1+s)^w + (1-s)^w] - 1 is even in s, and h = S^w is
/// expanded with the power recurrence b_n = sum_k (w k - n + k) a_k b_{n-k} / (n a_0).
inline std::array<double, 6> h_series_in_s2(double w) {
  constexpr int kTerms = 6;
  std::array<double, kTerms> a{};
  const double scale = std::exp2(1.0 - w);
  a[0] = std::expm1((1.0 - w) * std::log(2.0));  // 2^{1-w} - 1
  double binom = 1.0;                             // binom(w, 2n)
  for (int n = 1; n < kTerms; ++n) {
    binom *= (w - (2 * n - 2)) * (w - (2 * n - 1)) / ((2.0 * n - 1.0) * (2.0 * n));
    a[static_cast<std::size_t>(n)] = scale * binom;
  }
  std::array<double, kTerms> b{};
  b[0] = std::pow(a[0], w);
  for (int n = 1; n < kTerms; ++n) {
    double acc = 0.0;
    for (int k = 1; k <= n; ++k) {
      acc += (w * k - n + k) * a[static_cast<std::size_t>(k)] * b[static_cast<std::size_t>(n - k)];
    }
    b[static_cast<std::size_t>(n)] = acc / (n * a[0]);
  }
  return b;
}

// With h = sum c_k s^{2k}:  M = (1 - s^2) sum_{k>=2} 4k(k-1) c_k s^{2k-4} - sum_{k>=1} 2k c_k s^{2k-2}.
inline double m_from_series(const std::array<double, 6>& c, double s2) {
  double curv = 0.0;
  double slope = 0.0;
  double pw = 1.0;
  for (int k = 2; k < 6; ++k, pw *= s2) curv += 4.0 * k * (k - 1) * c[static_cast<std::size_t>(k)] * pw;
  pw = 1.0;
  for (int k = 1; k < 6; ++k, pw *= s2) slope += 2.0 * k * c[static_cast<std::size_t>(k)] * pw;
  return (1.0 - s2) * curv - slope;
}

inline void require_open_unit(double x, const char* what) {
  require(x > 0.0 && x < 1.0, std::string(what) + ": argument must lie strictly inside (0, 1), got " +
                                  std::to_string(x));
}

}  // namespace detail

/// Below this value of 1 - theta^2 the second derivative is evaluated from its
/// power series in 1 - theta^2 instead of A1..A5.
inline constexpr double kSeriesSwitch = 1e-4;

/// d^2 h_omega / d theta^2 as A1 [A2 + A3 (A4 - A5)]. A2 uses the exponent
/// omega - 1 on (1 + sqrt(1 - theta^2)).
inline double m_second_derivative(double theta, Omega omega) {
  detail::require_open_unit(theta, "m_second_derivative");
  if (omega.degenerate()) return 0.0;
  const double w = omega.value();
  const double s2 = (1.0 - theta) * (1.0 + theta);
  if (s2 < kSeriesSwitch) return detail::m_from_series(detail::h_series_in_s2(w), s2);
  const double s = std::sqrt(s2);
  const double lo = theta * theta / (1.0 + s);  // 1 - s
  const double hi = 1.0 + s;
  const double big_s = std::expm1(w * std::log1p(-lo / 2.0)) + std::pow(lo / 2.0, w);
  const double two_w = std::exp2(w);
  const double a1 = w * w / two_w * std::pow(big_s, w - 2.0);
  const double diff = theta * (std::pow(lo, w - 1.0) - std::pow(hi, w - 1.0)) / s;
  const double a2 = w * (w - 1.0) / two_w * diff * diff;
  const double a3 = big_s;
  const double a4 = std::pow(lo, w - 2.0) / s2 * (lo / s + theta * theta * (w - 1.0));
  const double a5 = std::pow(hi, w - 2.0) / s2 * (hi / s - theta * theta * (w - 1.0));
  return a1 * (a2 + a3 * (a4 - a5));
}

/// Exact lim_{theta -> 1} M(theta, omega), from the leading series coefficients.
inline double m_limit_theta1(Omega omega) {
  if (omega.degenerate()) return 0.0;
  return detail::m_from_series(detail::h_series_in_s2(omega.value()), 0.0);
}

/// The limit expression as printed alongside the convexity proof:
///   w^2 / (3 2^{2w}) (-1 + (1/2)^{w-1}) (12 w (w-1)^3 - 2 (2^w - 2)(w-1)(w^2 - 5w + 3)).
/// It differs from the exact limit by a positive factor, so it has the same sign and root.
inline double m_limit_theta1_printed(Omega omega) {
  const double w = omega.value();
  const double two_w = std::exp2(w);
  return w * w / (3.0 * two_w * two_w) * (std::exp2(1.0 - w) - 1.0) *
         (12.0 * w * std::pow(w - 1.0, 3) - 2.0 * (two_w - 2.0) * (w - 1.0) * (w * w - 5.0 * w + 3.0));
}

struct FG {
  double f = 0.0;
  double g = 0.0;
};

/// f_omega(n) = S^{w-1} [(1-s)^{w-1} - (1+s)^{w-1}] / s and g_omega = df/dn,
/// with s = sqrt(1 - n^2) and S = ((1-s)/2)^w + ((1+s)/2)^w - 1.
inline FG f_g_functions(double n, Omega omega) {
  detail::require_open_unit(n, "f_g_functions");
  const double w = omega.value();
  const double s2 = (1.0 - n) * (1.0 + n);
  const double s = std::sqrt(s2);
  const double lo = n * n / (1.0 + s);
  const double hi = 1.0 + s;
  const double big_s = std::expm1(w * std::log1p(-lo / 2.0)) + std::pow(lo / 2.0, w);
  const double p = std::pow(lo, w - 1.0) - std::pow(hi, w - 1.0);
  FG out;
  out.f = std::pow(big_s, w - 1.0) * p / s;
  const double ratio = p / s;
  out.g = n * w * (w - 1.0) / std::exp2(w) * ratio * ratio * std::pow(big_s, w - 2.0) +
          ((w - 1.0) * n * (std::pow(lo, w - 2.0) + std::pow(hi, w - 2.0)) / s2 + n * p / (s2 * s)) *
              std::pow(big_s, w - 1.0);
  return out;
}

namespace detail {

inline double radial(double t1, double t2) {
  require(t1 >= 0.0 && t2 >= 0.0, "residual: theta values must be nonnegative");
  const double r = std::hypot(t1, t2);
  require(r <= 1.0 + 1e-12, "residual: theta1^2 + theta2^2 must not exceed 1");
  return std::min(r, 1.0);
}

}  // namespace detail

/// H_omega(t1, t2); symmetric in its arguments bit for bit.
inline double h_residual(double t1, double t2, Omega omega) {
  if (t1 > t2) std::swap(t1, t2);
  const double r = detail::radial(t1, t2);
  if (t1 == 0.0) return 0.0;
  return h_omega(r, omega) - (h_omega(t1, omega) + h_omega(t2, omega));
}

/// The squared counterpart of h_residual.
inline double h_residual_sq(double t1, double t2, Omega omega) {
  if (t1 > t2) std::swap(t1, t2);
  const double r = detail::radial(t1, t2);
  if (t1 == 0.0) return 0.0;
  const double hr = h_omega(r, omega);
  const double h1 = h_omega(t1, omega);
  const double h2 = h_omega(t2, omega);
  return hr * hr - (h1 * h1 + h2 * h2);
}

inline double arc_partner(double t1) { return std::sqrt((1.0 - t1) * (1.0 + t1)); }

inline double polygamy_boundary_p(double t1, Omega omega) {
  detail::require(t1 >= 0.0 && t1 <= 1.0, "polygamy_boundary_p: theta1 must lie in [0, 1]");
  if (t1 == 0.0 || t1 == 1.0) return 0.0;
  return h_residual(t1, arc_partner(t1), omega);
}

inline double monogamy_boundary_q(double t1, Omega omega) {
  detail::require(t1 >= 0.0 && t1 <= 1.0, "monogamy_boundary_q: theta1 must lie in [0, 1]");
  if (t1 == 0.0 || t1 == 1.0) return 0.0;
  return h_residual_sq(t1, arc_partner(t1), omega);
}

/// Bisection on a sign change. Stops once the bracket is narrower than xtol.
inline RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                         double xtol = 1e-14, int max_iter = 200) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return {lo, lo, hi, 0.0, 0};
  if (fhi == 0.0) return {hi, lo, hi, 0.0, 0};
  if ((flo < 0.0) == (fhi < 0.0)) {
    throw std::logic_error("bisect: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
  }
  RootResult out;
  out.lo = lo;
  out.hi = hi;
  double a = lo;
  double b = hi;
  while (b - a > xtol && out.iterations < max_iter) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    ++out.iterations;
    if (fm == 0.0) {
      a = b = mid;
      break;
    }
    if ((fm < 0.0) == (flo < 0.0)) {
      a = mid;
      flo = fm;
    } else {
      b = mid;
    }
  }
  out.root = 0.5 * (a + b);
  out.residual = std::abs(f(out.root));
  return out;
}

/// Lower end of the omega range where h_omega is convex (root of the theta -> 1 limit of M).
inline RootResult find_omega_theta(double xtol = 1e-14) {
  return bisect([](double w) { return m_limit_theta1(Omega(w)); }, 0.8, 0.95, xtol);
}

/// Root of q_omega(1/sqrt 2) in omega.
inline RootResult find_monogamy_root(double xtol = 1e-14) {
  const double t = 1.0 / std::sqrt(2.0);
  return bisect([t](double w) { return monogamy_boundary_q(t, Omega(w)); }, 0.6, 0.8, xtol);
}

namespace detail {

struct GridPoint {
  double t1, t2;
};

/// Closed quarter-disk grid: lattice points with t1^2 + t2^2 <= 1 plus, for every
/// lattice t1, the arc point (t1, sqrt(1 - t1^2)).
inline std::vector<GridPoint> quarter_disk_grid(double step) {
  require(step > 0.0 && step <= 1e-2, "grid step must lie in (0, 1e-2]");
  const long n = std::lround(1.0 / step);
  std::vector<GridPoint> pts;
  for (long i = 0; i <= n; ++i) {
    const double t1 = std::min(1.0, static_cast<double>(i) * step);
    for (long j = 0; j <= n; ++j) {
      const double t2 = std::min(1.0, static_cast<double>(j) * step);
      if (t1 * t1 + t2 * t2 <= 1.0) pts.push_back({t1, t2});
    }
    pts.push_back({t1, arc_partner(t1)});
  }
  return pts;
}

template <class Residual>
GridCert certify(const char* region, Omega omega, double step, double tol, bool upper,
                 Residual&& residual) {
  require(omega.value() >= 0.05, "certification covers omega in [0.05, 1]");
  const std::vector<GridPoint> pts = quarter_disk_grid(step);
  std::vector<double> vals(pts.size());
  parallel_for(pts.size(), [&](std::size_t k) { vals[k] = residual(pts[k].t1, pts[k].t2); });
  GridCert cert;
  cert.region = region;
  cert.step = step;
  cert.omega = omega.value();
  cert.tol = tol;
  cert.points = pts.size();
  std::size_t worst = 0;
  for (std::size_t k = 1; k < vals.size(); ++k) {
    if (upper ? vals[k] > vals[worst] : vals[k] < vals[worst]) worst = k;
  }
  cert.worst_violation = vals[worst];
  cert.worst_theta1 = pts[worst].t1;
  cert.worst_theta2 = pts[worst].t2;
  cert.pass = upper ? cert.worst_violation <= tol : cert.worst_violation >= -tol;
  return cert;
}

}  // namespace detail

/// Grid check of h(sqrt(t1^2 + t2^2)) <= h(t1) + h(t2).
inline GridCert certify_subadditive(Omega omega, double step, double tol = 1e-9) {
  return detail::certify("quarter disk t1,t2 >= 0, t1^2 + t2^2 <= 1", omega, step, tol, true,
                         [omega](double a, double b) { return h_residual(a, b, omega); });
}

/// Grid check of h^2(sqrt(t1^2 + t2^2)) >= h^2(t1) + h^2(t2).
inline GridCert certify_superadditive_sq(Omega omega, double step, double tol = 1e-9) {
  return detail::certify("quarter disk t1,t2 >= 0, t1^2 + t2^2 <= 1", omega, step, tol, false,
                         [omega](double a, double b) { return h_residual_sq(a, b, omega); });
}

}  // namespace gwc
