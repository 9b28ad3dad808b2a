#include "goldstein/bisection.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace goldstein {

namespace {

Vector line_point(const Vector& x0, const Vector& v, double t) {
  return x0 + t * v;
}

void require_direction(const Vector& x0, const Vector& v, double eps,
                       const char* who) {
  if (v.size() != x0.size()) {
    throw InvalidArgument(std::string(who) + ": x0 and v differ in dimension");
  }
  if (!(eps > 0.0) || !std::isfinite(eps)) {
    throw InvalidArgument(std::string(who) + ": eps must be > 0");
  }
  if (!v.allFinite() || v.squaredNorm() == 0.0) {
    throw InvalidArgument(std::string(who) + ": direction must be nonzero");
  }
}

double c_min_from(const detail::LineValues& known, double eps, double v_norm) {
  return -static_cast<double>(known.f_end - known.f0) / (eps * v_norm);
}

void violated(const char* what, const BisectionStep& s) {
  std::ostringstream msg;
  msg.precision(17);
  msg << "bisection invariant violated (" << what << ") at j=" << s.j
      << ": a=" << s.a << " b=" << s.b << " h(a)=" << s.h_a
      << " h(b)=" << s.h_b;
  throw InvariantViolation(msg.str());
}

// Shared loop. `c_stop` is used in the subgradient test, `c_bisect` in the
// merit function that decides which half to keep.
BisectionOutcome run(CountingOracle& oracle, const Vector& x0, double eps,
                     double c_stop, double c_bisect, const Vector& v,
                     const detail::LineValues& known,
                     const BisectionCaps& caps, const BisectionLog& log) {
  const double v_norm2 = v.squaredNorm();
  const double v_norm = std::sqrt(v_norm2);
  const double b1 = eps / v_norm;
  const double width_min = caps.width_rel * b1;

  const Real slope = Real(c_bisect) * Real(v_norm2);
  auto h_at = [&](double t, const Real& f_t) {
    return Real(f_t - known.f0 + slope * Real(t));
  };

  const OracleCalls before = oracle.calls();
  BisectionOutcome out;
  out.c_min = c_min_from(known, eps, v_norm);
  out.c_tilde = c_bisect;

  double a = 0.0;
  double b = b1;
  Real h_a = 0;
  Real h_b = h_at(b1, known.f_end);
  double t = 0.5 * (a + b);
  int j = 1;

  BisectionStep step;
  step.j = 1;
  step.a = a;
  step.b = b;
  step.h_a = h_a;
  step.h_b = h_b;
  if (!(h_a < h_b)) violated("h(a_1) < h(b_1)", step);

  for (;;) {
    if (j > caps.max_iter || (b - a) < width_min || !(a < t && t < b)) {
      out.result = IntervalExhausted{j, j - 1, t};
      break;
    }
    const Vector xi = oracle.subgradient(line_point(x0, v, t));
    const double xi_dot_v = xi.dot(v);
    step = BisectionStep{j, a, b, t, xi_dot_v, h_a, h_b};
    if (log) log(step);

    if (stop_test(xi_dot_v, c_stop, v_norm2)) {
      out.result = Found{xi, t, j, j - 1};
      break;
    }

    const Real h_t = h_at(t, oracle.value_ext(line_point(x0, v, t)));
    const double width = b - a;
    const Real h_b_before = h_b;
    if (h_b > h_t) {
      a = t;
      h_a = h_t;
    } else {
      b = t;
      h_b = h_t;
    }

    step.a = a;
    step.b = b;
    step.h_a = h_a;
    step.h_b = h_b;
    if (!(h_a < h_b)) violated("h(a_j) < h(b_j)", step);
    if (h_b < h_b_before) violated("h(b_j) non-decreasing", step);
    if ((b - a) > 0.5 * width + 1e-15 * std::max(1.0, b1)) {
      violated("interval halving", step);
    }

    t = 0.5 * (a + b);
    ++j;
  }

  out.calls.values = oracle.calls().values - before.values;
  out.calls.subgradients = oracle.calls().subgradients - before.subgradients;
  return out;
}

detail::LineValues evaluate_line(CountingOracle& oracle, const Vector& x0,
                                 double eps, const Vector& v) {
  detail::LineValues known;
  known.f0 = oracle.value_ext(x0);
  known.f_end = oracle.value_ext(line_point(x0, v, eps / v.norm()));
  return known;
}

}  // namespace

int BisectionOutcome::updates() const noexcept {
  return std::visit([](const auto& r) { return r.updates; }, result);
}

double c_min(const FunctionOracle& oracle, const Vector& x0, double eps,
             const Vector& v) {
  require_direction(x0, v, eps, "c_min");
  CountingOracle counted(oracle);
  return c_min_from(evaluate_line(counted, x0, eps, v), eps, v.norm());
}

double h_tilde(const FunctionOracle& oracle, const Vector& x0, const Vector& v,
               double c_tilde, double t) {
  const Real h = oracle.value_ext(line_point(x0, v, t)) -
                 oracle.value_ext(x0) +
                 Real(c_tilde) * Real(v.squaredNorm()) * Real(t);
  return static_cast<double>(h);
}

double select_c_tilde(double c_min_value, double c, double fraction) {
  return c_min_value + fraction * (c - c_min_value);
}

BisectionOutcome bisect_legacy(const FunctionOracle& oracle, const Vector& x0,
                               double eps, double c, const Vector& v,
                               const BisectionCaps& caps,
                               const BisectionLog& log) {
  require_direction(x0, v, eps, "bisect_legacy");
  CountingOracle counted(oracle);
  const detail::LineValues known = evaluate_line(counted, x0, eps, v);
  const double cm = c_min_from(known, eps, v.norm());
  if (!(cm < c)) {
    throw InvalidArgument(
        "bisect_legacy: direction already yields sufficient descent (c_min = " +
        std::to_string(cm) + " >= c)");
  }
  BisectionOutcome out = run(counted, x0, eps, c, c, v, known, caps, log);
  out.calls = counted.calls();
  return out;
}

namespace detail {

BisectionOutcome bisect_improved_with(CountingOracle& oracle, const Vector& x0,
                                      double eps, double c, double c_tilde,
                                      const Vector& v, const LineValues& known,
                                      const BisectionCaps& caps,
                                      const BisectionLog& log) {
  require_direction(x0, v, eps, "bisect_improved");
  const double cm = c_min_from(known, eps, v.norm());
  if (!(cm < c_tilde && c_tilde < c)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "bisect_improved: c_tilde = " << c_tilde
        << " must lie in (c_min, c) = (" << cm << ", " << c << ")";
    throw InvalidArgument(msg.str());
  }
  return run(oracle, x0, eps, c, c_tilde, v, known, caps, log);
}

}  // namespace detail

BisectionOutcome bisect_improved(const FunctionOracle& oracle,
                                 const Vector& x0, double eps, double c,
                                 double c_tilde, const Vector& v,
                                 const BisectionCaps& caps,
                                 const BisectionLog& log) {
  require_direction(x0, v, eps, "bisect_improved");
  CountingOracle counted(oracle);
  const detail::LineValues known = evaluate_line(counted, x0, eps, v);
  BisectionOutcome out = detail::bisect_improved_with(
      counted, x0, eps, c, c_tilde, v, known, caps, log);
  out.calls = counted.calls();
  return out;
}

BisectionOutcome bisect_improved(const FunctionOracle& oracle,
                                 const Vector& x0, double eps, double c,
                                 const Vector& v, const BisectionCaps& caps,
                                 const BisectionLog& log) {
  require_direction(x0, v, eps, "bisect_improved");
  CountingOracle counted(oracle);
  const detail::LineValues known = evaluate_line(counted, x0, eps, v);
  const double cm = c_min_from(known, eps, v.norm());
  if (!(cm < c)) {
    throw InvalidArgument(
        "bisect_improved: direction already yields sufficient descent");
  }
  BisectionOutcome out =
      detail::bisect_improved_with(counted, x0, eps, c, select_c_tilde(cm, c),
                                   v, known, caps, log);
  out.calls = counted.calls();
  return out;
}

}  // namespace goldstein
