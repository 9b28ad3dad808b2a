#ifndef GOLDSTEIN_BISECTION_HPP
#define GOLDSTEIN_BISECTION_HPP

#include "goldstein/core.hpp"

#include <functional>
#include <variant>

namespace goldstein {

/// One pass through the subgradient query of the bisection loop. `a`, `b`, `t`
/// are the interval and midpoint of iteration `j`; `xi_dot_v` is <xi', v> for
/// the subgradient queried at x0 + t v. `h_a`, `h_b` are the cached values of
/// the bisection merit function at the interval ends, in the extended
/// precision the comparisons use.
struct BisectionStep {
  int j = 0;
  double a = 0.0;
  double b = 0.0;
  double t = 0.0;
  double xi_dot_v = 0.0;
  Real h_a = 0;
  Real h_b = 0;
};

using BisectionLog = std::function<void(const BisectionStep&)>;

struct Found {
  Vector xi;
  double t = 0.0;
  int j = 0;        // index of the iteration that stopped
  int updates = 0;  // number of interval updates performed (j - 1)
};

struct IntervalExhausted {
  int j = 0;
  int updates = 0;
  double last_t = 0.0;
};

struct BisectionOutcome {
  std::variant<Found, IntervalExhausted> result;
  double c_min = 0.0;
  double c_tilde = 0.0;
  OracleCalls calls;

  bool found() const noexcept { return std::holds_alternative<Found>(result); }
  const Found& found_value() const { return std::get<Found>(result); }
  const IntervalExhausted& exhausted() const {
    return std::get<IntervalExhausted>(result);
  }
  int updates() const noexcept;
};

/// -(f(x0 + (eps/||v||) v) - f(x0)) / (eps ||v||): the largest descent
/// parameter direction v achieves. v violates sufficient descent iff
/// c_min < c.
double c_min(const FunctionOracle& oracle, const Vector& x0, double eps,
             const Vector& v);

/// h(t) = f(x0 + t v) - f(x0) + c_tilde t ||v||^2.
double h_tilde(const FunctionOracle& oracle, const Vector& x0, const Vector& v,
               double c_tilde, double t);

/// c_min + fraction * (c - c_min); fraction = 1/2 is the default midpoint rule.
double select_c_tilde(double c_min_value, double c, double fraction = 0.5);

// Stopping test of step 3 in its two algebraically equivalent forms.
inline bool stop_test(double xi_dot_v, double c, double v_norm2) {
  return xi_dot_v > -c * v_norm2;
}
inline bool stop_test_shifted(double xi_dot_v, double c, double c_tilde,
                              double v_norm2) {
  return xi_dot_v + c_tilde * v_norm2 > (c_tilde - c) * v_norm2;
}

/// Original bisection: bisects on h with the same c used in the stop test.
/// Throws InvalidArgument if v = 0 or v already achieves sufficient descent.
BisectionOutcome bisect_legacy(const FunctionOracle& oracle, const Vector& x0,
                               double eps, double c, const Vector& v,
                               const BisectionCaps& caps = {},
                               const BisectionLog& log = {});

/// Improved bisection: bisects on h_{c_tilde} but stops on the original
/// condition <xi', v> > -c ||v||^2. Requires c_tilde in (c_min, c).
BisectionOutcome bisect_improved(const FunctionOracle& oracle,
                                 const Vector& x0, double eps, double c,
                                 double c_tilde, const Vector& v,
                                 const BisectionCaps& caps = {},
                                 const BisectionLog& log = {});

/// Same as above with c_tilde chosen by the midpoint rule.
BisectionOutcome bisect_improved(const FunctionOracle& oracle,
                                 const Vector& x0, double eps, double c,
                                 const Vector& v,
                                 const BisectionCaps& caps = {},
                                 const BisectionLog& log = {});

namespace detail {

// Values already known to the caller: f(x0) and f(x0 + (eps/||v||) v).
struct LineValues {
  Real f0 = 0;
  Real f_end = 0;
};

BisectionOutcome bisect_improved_with(CountingOracle& oracle, const Vector& x0,
                                      double eps, double c, double c_tilde,
                                      const Vector& v, const LineValues& known,
                                      const BisectionCaps& caps,
                                      const BisectionLog& log);

}  // namespace detail

}  // namespace goldstein

#endif  // GOLDSTEIN_BISECTION_HPP
