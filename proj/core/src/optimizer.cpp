#include "goldstein/optimizer.hpp"

#include "goldstein/minnorm.hpp"

#include <cmath>

namespace goldstein {

namespace {

OracleCalls since(const OracleCalls& now, const OracleCalls& then) {
  return {now.values - then.values, now.subgradients - then.subgradients};
}

void check_start(const FunctionOracle& oracle, const Vector& x_init) {
  if (x_init.size() != oracle.dimension()) {
    throw InvalidArgument("optimizer: x_init has dimension " +
                          std::to_string(x_init.size()) + ", oracle expects " +
                          std::to_string(oracle.dimension()));
  }
  if (!x_init.allFinite()) {
    throw InvalidArgument("optimizer: x_init must be finite");
  }
}

}  // namespace

DescentTrace minimize_deterministic(const FunctionOracle& oracle,
                                    const Vector& x_init,
                                    const DescentParams& params,
                                    const TraceSink& sink) {
  params.validate();
  check_start(oracle, x_init);

  DescentTrace trace;
  CountingOracle counted(oracle);
  Vector x = x_init;
  double fx = counted.value(x);
  DescentParams local = params;

  for (int k = 0; local.eps >= local.eps_min && local.delta >= local.delta_min;
       ++k) {
    if (k >= params.max_outer) {
      trace.status = TraceStatus::MaxOuterReached;
      break;
    }
    DirectionReport report = descent_direction(oracle, x, local);

    TraceRow row;
    row.iter = k;
    row.x = x;
    row.fx = fx;
    row.eps = local.eps;
    row.oracle_evals = report.stats.calls.values;
    row.oracle_subgrads = report.stats.calls.subgradients;
    row.bisection_iterations = report.stats.bisection_updates;

    if (report.critical()) {
      const EpsCritical& crit = report.eps_critical();
      row.vnorm = crit.v_norm;
      row.bundle_size = crit.bundle.size();
      local.eps *= local.shrink;
      local.delta *= local.shrink;
    } else {
      const Descent& d = report.descent();
      row.vnorm = d.v.norm();
      row.bundle_size = d.bundle.size();
      row.step_taken = true;
      x = d.x_next;
      fx = d.f_next;
    }
    trace.calls += report.stats.calls;
    if (sink) sink(row);
    trace.rows.push_back(std::move(row));
  }

  trace.calls += counted.calls();
  trace.x_final = x;
  trace.f_final = fx;
  return trace;
}

void GSParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("GSParams: ") + what);
  };
  require(!m || *m >= 1, "m must be >= 1");
  require(std::isfinite(eps) && eps > 0.0, "eps must be > 0");
  require(c > 0.0 && c < 1.0, "c must lie in (0, 1)");
  require(delta > 0.0, "delta must be > 0");
  require(eps_min > 0.0 && delta_min > 0.0, "thresholds must be > 0");
  require(shrink > 0.0 && shrink < 1.0, "shrink must lie in (0, 1)");
  require(backtrack > 0.0 && backtrack < 1.0, "backtrack must lie in (0, 1)");
  require(max_backtracks >= 1 && max_outer >= 1, "caps must be >= 1");
}

GSDirection gs_direction(const FunctionOracle& oracle, const Vector& x0,
                         const GSParams& params, Rng& rng) {
  params.validate();
  check_start(oracle, x0);
  std::vector<Vector> samples =
      sample_ball(rng, x0, params.eps, params.samples(oracle.dimension()));

  GradientBundle bundle(params.include_center ? oracle.subgradient(x0)
                                              : oracle.subgradient(samples[0]));
  for (std::size_t i = params.include_center ? 0 : 1; i < samples.size(); ++i) {
    bundle.insert(oracle.subgradient(samples[i]));
  }
  Vector v = steepest_direction(bundle, params.minnorm_tol);
  return GSDirection{std::move(v), std::move(samples), std::move(bundle)};
}

GSDirection gs_direction(const FunctionOracle& oracle, const Vector& x0,
                         const GSParams& params) {
  Rng rng(params.seed);
  return gs_direction(oracle, x0, params, rng);
}

DescentTrace minimize_random_gs(const FunctionOracle& oracle,
                                const Vector& x_init, const GSParams& params,
                                const TraceSink& sink) {
  params.validate();
  check_start(oracle, x_init);

  DescentTrace trace;
  Rng rng(params.seed);
  // gs_direction queries the oracle it is given; tally its subgradient calls.
  std::size_t subgrad_calls = 0;
  CountingOracle counted(oracle);
  const FunctionOracle tallying(
      oracle.name(), oracle.dimension(),
      [&oracle](const Vector& x) { return oracle.value(x); },
      [&oracle, &subgrad_calls](const Vector& x) {
        ++subgrad_calls;
        return oracle.subgradient(x);
      });

  Vector x = x_init;
  double fx = counted.value(x);
  GSParams local = params;

  for (int k = 0; local.eps >= local.eps_min && local.delta >= local.delta_min;
       ++k) {
    if (k >= params.max_outer) {
      trace.status = TraceStatus::MaxOuterReached;
      break;
    }
    const OracleCalls before{counted.calls().values, subgrad_calls};
    const GSDirection dir = gs_direction(tallying, x, local, rng);
    const double v_norm = dir.v.norm();

    TraceRow row;
    row.iter = k;
    row.x = x;
    row.fx = fx;
    row.eps = local.eps;
    row.vnorm = v_norm;
    row.bundle_size = dir.bundle.size();

    if (v_norm <= criticality_tolerance(local.delta, fx)) {
      local.eps *= local.shrink;
      local.delta *= local.shrink;
    } else {
      double t = local.eps / v_norm;
      bool accepted = false;
      for (int i = 0; i < params.max_backtracks; ++i) {
        const Vector trial = x + t * dir.v;
        const double f_trial = counted.value(trial);
        if (f_trial <= fx - params.c * t * v_norm * v_norm && f_trial < fx) {
          x = trial;
          fx = f_trial;
          accepted = true;
          break;
        }
        t *= params.backtrack;
      }
      row.step_taken = accepted;
      if (!accepted) local.eps *= local.shrink;
    }
    const OracleCalls used =
        since(OracleCalls{counted.calls().values, subgrad_calls}, before);
    row.oracle_evals = used.values;
    row.oracle_subgrads = used.subgradients;
    if (sink) sink(row);
    trace.rows.push_back(std::move(row));
  }

  trace.calls = OracleCalls{counted.calls().values, subgrad_calls};
  trace.x_final = x;
  trace.f_final = fx;
  return trace;
}

}  // namespace goldstein
