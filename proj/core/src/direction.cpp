#include "goldstein/direction.hpp"

#include "goldstein/minnorm.hpp"

#include <cmath>
#include <sstream>

namespace goldstein {

bool sufficient_descent(const FunctionOracle& oracle, const Vector& x0,
                        double eps, double c, const Vector& v) {
  if (v.size() != x0.size() || v.squaredNorm() == 0.0) {
    throw InvalidArgument("sufficient_descent: direction must be nonzero");
  }
  const double v_norm = v.norm();
  const Vector x_end = x0 + (eps / v_norm) * v;
  return oracle.value(x_end) <= oracle.value(x0) - c * eps * v_norm;
}

DirectionReport descent_direction(const FunctionOracle& oracle,
                                  const Vector& x0,
                                  const DescentParams& params,
                                  const EnrichmentLog& log) {
  params.validate();
  if (x0.size() != oracle.dimension()) {
    throw InvalidArgument("descent_direction: x0 has wrong dimension");
  }

  CountingOracle counted(oracle);
  DirectionStats stats;
  const Real f0_ext = counted.value_ext(x0);
  const double f0 = static_cast<double>(f0_ext);
  const double delta = criticality_tolerance(params.delta, f0);
  const std::size_t cap = params.bundle_cap(oracle.dimension());

  GradientBundle bundle(counted.subgradient(x0));

  for (;;) {
    const MinNormSolution sol = min_norm_point(bundle, params.minnorm_tol);
    stats.min_norms.push_back(sol.norm);
    if (sol.norm <= delta) {
      stats.calls = counted.calls();
      return {EpsCritical{sol.norm, std::move(bundle)}, std::move(stats)};
    }

    const Vector v = -sol.point;
    const double v_norm = v.norm();
    const Vector x_end = x0 + (params.eps / v_norm) * v;
    const Real f_end_ext = counted.value_ext(x_end);
    const double f_end = static_cast<double>(f_end_ext);
    const double certificate = f_end - f0;
    if (f_end <= f0 - params.c * params.eps * v_norm) {
      stats.calls = counted.calls();
      return {Descent{v, std::move(bundle), certificate, x_end, f_end},
              std::move(stats)};
    }

    const detail::LineValues known{f0_ext, f_end_ext};
    const double cm =
        -static_cast<double>(f_end_ext - f0_ext) / (params.eps * v_norm);
    const double c_tilde = select_c_tilde(cm, params.c, params.ctilde_fraction);
    BisectionOutcome outcome = detail::bisect_improved_with(
        counted, x0, params.eps, params.c, c_tilde, v, known, params.caps, {});
    stats.bisection_updates += outcome.updates();

    if (!outcome.found()) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "descent_direction: bisection exhausted its interval after "
          << outcome.exhausted().j << " iterations (last t = "
          << outcome.exhausted().last_t << ", |W| = " << bundle.size() << ")";
      throw BisectionExhausted(msg.str(), x0, v, std::move(bundle),
                               std::move(outcome));
    }
    if (bundle.size() >= cap) {
      throw AlgorithmFailure("descent_direction: bundle exceeded max_bundle = " +
                             std::to_string(cap));
    }
    if (!bundle.insert(outcome.found_value().xi)) {
      throw AlgorithmFailure(
          "descent_direction: bisection returned a subgradient already in W");
    }
    ++stats.enrichments;
    if (log) {
      log(EnrichmentEvent{bundle.size(), sol.norm, c_tilde, outcome.updates()});
    }
  }
}

}  // namespace goldstein
