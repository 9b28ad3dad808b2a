// Acceptance run: one PASS/FAIL line per criterion. Exits nonzero if any
// criterion fails.
#include "goldstein/bisection.hpp"
#include "goldstein/direction.hpp"
#include "goldstein/geometry.hpp"
#include "goldstein/minnorm.hpp"
#include "goldstein/optimizer.hpp"
#include "goldstein/testfns.hpp"
#include "montecarlo.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace goldstein;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

double round_sig(double x, int digits) {
  if (x == 0.0) return 0.0;
  const double scale =
      std::pow(10.0, digits - 1 - static_cast<int>(std::floor(std::log10(x))));
  return std::round(x * scale) / scale;
}

template <class T>
std::string str(const T& x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Counts bisections and checks the interval invariants on every logged step.
struct InvariantAudit {
  long bisections = 0;
  long steps = 0;
  std::vector<std::string> violations;

  BisectionLog log() {
    ++bisections;
    auto prev = std::make_shared<BisectionStep>();
    auto first = std::make_shared<bool>(true);
    return [this, prev, first](const BisectionStep& s) {
      ++steps;
      if (!(s.h_a < s.h_b)) violations.push_back("h(a) >= h(b) at j=" + str(s.j));
      if (!(s.a < s.t && s.t < s.b)) violations.push_back("t outside (a,b)");
      if (!*first) {
        if (s.h_b < prev->h_b) violations.push_back("h(b) decreased");
        // the midpoint is rounded, so halving holds to a few ulps of b
        const double slack =
            4 * std::numeric_limits<double>::epsilon() * std::abs(prev->b);
        if (std::abs((s.b - s.a) - 0.5 * (prev->b - prev->a)) > slack) {
          violations.push_back("interval not halved at j=" + str(s.j));
        }
      }
      *first = false;
      *prev = s;
    };
  }
};

InvariantAudit g_audit;

// 1: analytic detection probabilities at displayed precision.
Verdict table_analytic() {
  Verdict v;
  const auto rows = geometry::table1();
  struct Expect {
    int n;
    double value;
    int digits;  // significant digits shown
    bool fixed4;  // shown with four decimals
  };
  const Expect expect[] = {{2, 0.6836, 4, true},  {3, 0.6133, 4, true},
                           {5, 0.4502, 4, true},  {10, 0.1394, 4, true},
                           {20, 0.0067, 2, true}, {50, 3.3e-7, 2, false},
                           {100, 2.2e-14, 2, false}};
  if (rows.size() != 7) {
    v.fail("expected 7 rows");
    return v;
  }
  for (std::size_t k = 0; k < 7; ++k) {
    const auto& e = expect[k];
    const double shown = e.fixed4 ? std::round(rows[k].detect * 1e4) / 1e4
                                  : round_sig(rows[k].detect, e.digits);
    // independent evaluation in long double
    const long double p = rows[k].p;
    const long double ref =
        -std::expm1(static_cast<long double>(rows[k].m) * std::log1p(-p));
    const double rel = static_cast<double>(
        std::abs((static_cast<long double>(rows[k].detect) - ref) / ref));
    if (rel > 1e-10) v.fail("n=" + str(e.n) + " not accurate to 10 digits");
    if (std::abs(shown - e.value) > 1e-12 * e.value) {
      v.fail("n=" + str(e.n) + ": computed " + str(rows[k].detect) +
             " displays as " + str(shown) + ", table shows " + str(e.value) +
             " (the tabulated value equals 1-(1-p)^m evaluated naively in "
             "double, where 1-p rounds to 1-2^-53)");
    }
  }
  return v;
}

// 2: Monte Carlo membership experiment.
Verdict table_monte_carlo() {
  Verdict v;
  for (const int n : {2, 3, 5, 10}) {
    const auto est = mc::d2_hit_rate(n, 2 * n, 100000, 20240601u + n);
    const double expected = geometry::detection_probability(n, 2 * n);
    const double z = std::abs(est.rate() - expected) / est.standard_error();
    if (z > 4.0) {
      v.fail("n=" + str(n) + " rate " + str(est.rate()) + " vs " +
             str(expected) + " (z=" + str(z) + ")");
    }
  }
  return v;
}

// 3: the original bisection never stops on the counterexample.
Verdict legacy_non_termination() {
  Verdict v;
  std::vector<BisectionStep> steps;
  const BisectionLog audit = g_audit.log();
  const auto out = bisect_legacy(
      testfns::counterexample_oracle(), Vector::Zero(1), 1.0, 0.5,
      Vector::Ones(1), {}, [&](const BisectionStep& s) {
        audit(s);
        steps.push_back(s);
      });
  if (out.found()) {
    v.fail("returned Found at t=" + str(out.found_value().t));
    return v;
  }
  if (steps.size() < 40) v.fail("only " + str(steps.size()) + " steps");
  for (const auto& s : steps) {
    if (s.j > 40) break;
    const double t = 1.0 - std::ldexp(1.0, -s.j);
    if (s.t != t) v.fail("t_" + str(s.j) + " = " + str(s.t));
    if (s.xi_dot_v != -std::ldexp(1.0, -s.j) - 0.5) {
      v.fail("<xi,v> at j=" + str(s.j) + " = " + str(s.xi_dot_v));
    }
  }
  return v;
}

// 4: improved bisection golden runs.
Verdict golden_runs() {
  Verdict v;
  const auto f = testfns::counterexample_oracle();
  const auto a = bisect_improved(f, Vector::Zero(1), 1.0, 0.5, 0.25,
                                 Vector::Ones(1), {}, g_audit.log());
  if (!a.found() || a.found_value().t != 0.625 ||
      a.found_value().xi[0] != 1.375 || a.found_value().updates != 2) {
    v.fail("run (a) differs");
  }
  const auto b = bisect_improved(f, Vector::Zero(1), 1.0, 0.75, 0.5,
                                 Vector::Ones(1), {}, g_audit.log());
  if (!b.found() || b.found_value().t != 0.875 ||
      b.found_value().xi[0] != -0.625) {
    v.fail("run (b) differs");
  }
  return v;
}

// 5: deterministic detection of the cone apex.
Verdict cone_detection() {
  Verdict v;
  DescentParams params;
  params.eps = 1.0;
  params.c = 0.5;
  for (Index n = 2; n <= 10; ++n) {
    const auto report =
        descent_direction(testfns::cone_oracle(n), Vector::Zero(n), params);
    if (!report.critical()) {
      v.fail("n=" + str(n) + " returned a descent direction");
    } else if (report.stats.calls.subgradients > 4) {
      v.fail("n=" + str(n) + " used " + str(report.stats.calls.subgradients) +
             " subgradients");
    }
  }
  return v;
}

// 6: improved bisection terminates on a random corpus.
Verdict termination_suite() {
  Verdict v;
  std::mt19937_64 gen(31337);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::uniform_real_distribution<double> cdist(0.05, 0.95);
  std::uniform_real_distribution<double> edist(1e-3, 3.0);
  const std::vector<std::string> names{
      "abs",    "maxquad", "cone:2",    "cone:3",    "cone:6",
      "cone:10", "maxnorm:2", "maxnorm:5", "maxnorm:10", "counterexample"};
  int runs = 0;
  int nontrivial = 0;  // runs that updated the interval at least once
  for (long trial = 0; runs < 2000; ++trial) {
    const auto f = testfns::make_oracle(names[trial % names.size()]);
    const Index n = f.dimension();
    Vector x0(n), dir(n);
    for (Index i = 0; i < n; ++i) {
      x0[i] = u(gen);
      dir[i] = u(gen);
    }
    const double eps = edist(gen);
    const double c = cdist(gen);
    // mix random directions, negative subgradients, kink points and the
    // min-norm directions of small sampled bundles the enrichment loop sees
    if (trial % 7 == 0) x0.setZero();
    if (trial % 4 == 1) {
      dir = -f.subgradient(x0);
    } else if (trial % 4 == 2) {
      GradientBundle w(f.subgradient(x0));
      for (int k = 0; k < 2; ++k) {
        Vector y(n);
        for (Index i = 0; i < n; ++i) y[i] = x0[i] + eps * u(gen) / (2 * n);
        w.insert(f.subgradient(y));
      }
      dir = -min_norm_point(w).point;
    }
    if (f.name() == "counterexample" && (trial / 10) % 2 == 0) {
      // into the accumulating breakpoints from the left
      x0[0] = 0.5 + 0.25 * u(gen);
      dir[0] = 1.0;
    }
    if (dir.norm() == 0.0) continue;
    if (sufficient_descent(f, x0, eps, c, dir)) continue;
    ++runs;
    const auto out = bisect_improved(f, x0, eps, c, dir, {}, g_audit.log());
    if (out.updates() > 0) ++nontrivial;
    if (!out.found()) {
      v.fail(f.name() + " trial " + str(trial) + " exhausted");
    } else if (!(out.found_value().xi.dot(dir) > -c * dir.squaredNorm())) {
      v.fail(f.name() + " trial " + str(trial) + " stop test false");
    }
  }
  v.detail = v.pass ? str(runs) + " configurations, " + str(nontrivial) +
                          " with interval updates"
                    : v.detail;
  return v;
}

// Minimum-norm point of conv of up to three columns by face enumeration.
Vector brute_min_norm(const Eigen::MatrixXd& w) {
  const Index m = w.cols();
  Vector best = w.col(0);
  auto consider = [&](const Vector& p) {
    if (p.squaredNorm() < best.squaredNorm()) best = p;
  };
  for (Index i = 0; i < m; ++i) consider(w.col(i));
  for (Index i = 0; i < m; ++i) {
    for (Index j = i + 1; j < m; ++j) {
      const Vector d = w.col(j) - w.col(i);
      if (d.squaredNorm() == 0.0) continue;
      const double s = std::clamp(-w.col(i).dot(d) / d.squaredNorm(), 0.0, 1.0);
      consider(w.col(i) + s * d);
    }
  }
  if (m == 3) {
    const Vector a = w.col(0), d1 = w.col(1) - a, d2 = w.col(2) - a;
    Eigen::Matrix2d g;
    g << d1.dot(d1), d1.dot(d2), d1.dot(d2), d2.dot(d2);
    if (std::abs(g.determinant()) > 1e-14 * g.norm() * g.norm()) {
      const Eigen::Vector2d s = g.partialPivLu().solve(Eigen::Vector2d(-a.dot(d1), -a.dot(d2)));
      if (s[0] >= 0 && s[1] >= 0 && s[0] + s[1] <= 1) consider(a + s[0] * d1 + s[1] * d2);
    }
  }
  return best;
}

// 7: Wolfe solver accuracy.
Verdict min_norm_solver() {
  Verdict v;
  std::mt19937_64 gen(4242);
  std::uniform_int_distribution<int> ndist(1, 10), mdist(1, 12);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = ndist(gen), m = mdist(gen);
    Eigen::MatrixXd w(n, m);
    const double shift = trial % 2 == 0 ? 0.0 : 3.0 * normal(gen);
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < n; ++i) w(i, j) = normal(gen) + shift;
    }
    const auto sol = min_norm_point(w);
    if (!(sol.residual <= 1e-10)) {
      v.fail("bundle " + str(trial) + " residual " + str(sol.residual));
    }
  }
  long brute = 0;
  for (int n = 1; n <= 3; ++n) {
    for (int m = 1; m <= 3; ++m) {
      for (int rep = 0; rep < 300; ++rep) {
        Eigen::MatrixXd w(n, m);
        for (int j = 0; j < m; ++j) {
          for (int i = 0; i < n; ++i) w(i, j) = normal(gen) + (rep % 3);
        }
        const auto sol = min_norm_point(w);
        const Vector ref = brute_min_norm(w);
        ++brute;
        if ((sol.point - ref).norm() > 1e-6) {
          v.fail("brute force disagrees at n=" + str(n) + " |W|=" + str(m));
        }
      }
    }
  }
  if (v.pass) v.detail = "1000 bundles, " + str(brute) + " brute-force cases";
  return v;
}

// 9: deterministic optimizer on the classic functions.
Verdict optimizer_end_to_end() {
  Verdict v;
  std::vector<std::string> steps;
  struct Case {
    const char* name;
    double x0;
  };
  for (const Case k : {Case{"abs", 5.0}, Case{"maxnorm:5", 1.0},
                       Case{"maxquad", 1.0}}) {
    const auto f = testfns::make_oracle(k.name);
    const Vector start = Vector::Constant(f.dimension(), k.x0);
    DescentParams params;
    const auto t1 = minimize_deterministic(f, start, params);
    const auto t2 = minimize_deterministic(f, start, params);
    const double fmin = *testfns::known_minimum(k.name);
    if (!t1.complete()) v.fail(std::string(k.name) + " hit max_outer");
    if (!(std::abs(t1.f_final - fmin) <= 1e-3)) {
      v.fail(std::string(k.name) + " final f " + str(t1.f_final));
    }
    for (std::size_t r = 0; r < t1.rows.size(); ++r) {
      const auto& row = t1.rows[r];
      if (!row.step_taken) continue;
      const Vector& next = r + 1 < t1.rows.size() ? t1.rows[r + 1].x : t1.x_final;
      const double f_next = f.value(next);
      if (!(f_next <= row.fx - params.c * row.eps * row.vnorm)) {
        v.fail(std::string(k.name) + " step " + str(r) + " not certified");
      }
    }
    bool same = t1.rows.size() == t2.rows.size() &&
                t1.f_final == t2.f_final && t1.x_final == t2.x_final;
    for (std::size_t r = 0; same && r < t1.rows.size(); ++r) {
      same = t1.rows[r].x == t2.rows[r].x && t1.rows[r].fx == t2.rows[r].fx &&
             t1.rows[r].vnorm == t2.rows[r].vnorm;
    }
    if (!same) v.fail(std::string(k.name) + " not reproducible");
    steps.push_back(std::string(k.name) + " " + str(t1.steps()) + " steps");
  }
  if (v.pass) {
    for (const auto& s : steps) v.detail += (v.detail.empty() ? "" : ", ") + s;
  }
  return v;
}

// 8: every bisection run above, plus optimizer-driven ones, kept the
// invariants. Bisections inside the optimizer throw on a violation.
Verdict invariants() {
  Verdict v;
  try {
    DescentParams params;
    for (const char* name : {"counterexample", "cone:4", "maxquad"}) {
      const auto f = testfns::make_oracle(name);
      minimize_deterministic(f, Vector::Constant(f.dimension(), 0.3), params);
    }
  } catch (const InvariantViolation& e) {
    v.fail(e.what());
  } catch (const AlgorithmFailure&) {
    // not an invariant question
  }
  if (!g_audit.violations.empty()) v.fail(g_audit.violations.front());
  if (v.pass) {
    v.detail = str(g_audit.bisections) + " logged bisections, " +
               str(g_audit.steps) + " steps";
  }
  return v;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Verdict()> run;
  };
  // invariants last so it sees every logged bisection
  const std::vector<Criterion> criteria{
      {1, "detection probabilities (analytic)", table_analytic},
      {2, "detection probabilities (Monte Carlo)", table_monte_carlo},
      {3, "original bisection does not terminate", legacy_non_termination},
      {4, "improved bisection golden runs", golden_runs},
      {5, "cone apex detected deterministically", cone_detection},
      {6, "improved bisection terminates", termination_suite},
      {7, "min-norm solver accuracy", min_norm_solver},
      {9, "optimizer end to end", optimizer_end_to_end},
      {8, "bisection invariants hold", invariants},
  };
  std::vector<std::pair<int, std::string>> lines;
  bool all = true;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    all = all && v.pass;
    char head[160];
    std::snprintf(head, sizeof head, "%s criterion %d: %s (%.2fs)",
                  v.pass ? "PASS" : "FAIL", c.id, c.name, secs);
    std::string line = head;
    if (!v.detail.empty()) line += " - " + v.detail;
    lines.emplace_back(c.id, line);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) std::puts(l.second.c_str());
  return all ? 0 : 1;
}
