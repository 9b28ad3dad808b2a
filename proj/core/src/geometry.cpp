#include "goldstein/geometry.hpp"

#include "goldstein/core.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <cmath>
#include <limits>
#include <numbers>

namespace goldstein::geometry {

namespace {

constexpr double kCfTol = 1e-14;
constexpr int kCfMaxIter = 10000;

// Modified Lentz evaluation of the continued fraction for I_x(a, b); valid and
// fast for x < (a + 1) / (a + b + 2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kCfMaxIter; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kCfTol) return h;
  }
  throw SolverFailure("regularized_incomplete_beta: continued fraction failed");
}

double log_beta(double a, double b) {
  using boost::math::lgamma;
  return lgamma(a) + lgamma(b) - lgamma(a + b);
}

void require_dim(int n) {
  if (n < 2) throw InvalidArgument("dimension n must be >= 2");
}

// log of V_n(1) = pi^(n/2) / Gamma(n/2 + 1)
double log_unit_ball_volume(int n) {
  return 0.5 * n * std::log(std::numbers::pi) -
         boost::math::lgamma(0.5 * n + 1.0);
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw InvalidArgument("regularized_incomplete_beta: a, b must be > 0");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw InvalidArgument("regularized_incomplete_beta: x must be in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  // x^a (1-x)^b / B(a, b). Forming it in log space cancels lgamma terms of
  // size ~a log a, so the direct product is used unless it underflows.
  const double power = std::pow(x, a) * std::exp(b * std::log1p(-x));
  const double front =
      std::isnormal(power)
          ? power / boost::math::beta(a, b)
          : std::exp(a * std::log(x) + b * std::log1p(-x) - log_beta(a, b));
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double d2_fraction(int n) {
  require_dim(n);
  return 0.5 * regularized_incomplete_beta(0.5 * (n - 1), 0.5, 0.5);
}

double hypercone_fraction(int n) {
  require_dim(n);
  // V_{n-1}(r) * h / n with r = h = 2^(-1/2), relative to V_n(1)
  const double log_cone = log_unit_ball_volume(n - 1) -
                          0.5 * n * std::numbers::ln2 - std::log(double(n));
  return std::exp(log_cone - log_unit_ball_volume(n));
}

double cap_fraction(int n) {
  require_dim(n);
  // cap of height h in the unit ball: V_n / 2 * I_{2h - h^2}((n+1)/2, 1/2),
  // and 2h - h^2 = 1/2 for h = 1 - 2^(-1/2)
  return 0.5 * regularized_incomplete_beta(0.5 * (n + 1), 0.5, 0.5);
}

double d2_fraction_partition(int n) {
  return hypercone_fraction(n) + cap_fraction(n);
}

double detection_probability(int n, int m) {
  require_dim(n);
  if (m < 1) throw InvalidArgument("detection_probability: m must be >= 1");
  const double p = d2_fraction(n);
  return -std::expm1(m * std::log1p(-p));
}

std::vector<ProbabilityRow> table1() {
  std::vector<ProbabilityRow> rows;
  for (const int n : {2, 3, 5, 10, 20, 50, 100}) {
    rows.push_back({n, 2 * n, d2_fraction(n), detection_probability(n, 2 * n)});
  }
  return rows;
}

}  // namespace goldstein::geometry
