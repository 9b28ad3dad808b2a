#ifndef GOLDSTEIN_DIRECTION_HPP
#define GOLDSTEIN_DIRECTION_HPP

#include "goldstein/bisection.hpp"
#include "goldstein/core.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>

namespace goldstein {

/// f(x0 + (eps/||v||) v) <= f(x0) - c eps ||v||.
bool sufficient_descent(const FunctionOracle& oracle, const Vector& x0,
                        double eps, double c, const Vector& v);

struct EnrichmentEvent {
  std::size_t bundle_size = 0;  // after insertion
  double min_norm = 0.0;        // ||xi*|| of the bundle before insertion
  double c_tilde = 0.0;
  int bisection_updates = 0;
};

using EnrichmentLog = std::function<void(const EnrichmentEvent&)>;

struct DirectionStats {
  OracleCalls calls;
  int enrichments = 0;
  int bisection_updates = 0;
  std::vector<double> min_norms;  // ||xi*|| for each bundle that was solved
};

struct DirectionReport {
  DirectionResult result;
  DirectionStats stats;

  bool critical() const noexcept {
    return std::holds_alternative<EpsCritical>(result);
  }
  const EpsCritical& eps_critical() const { return std::get<EpsCritical>(result); }
  const Descent& descent() const { return std::get<Descent>(result); }
};

/// Thrown when a bisection inside the enrichment loop runs out of interval.
/// Carries the full state of the failed call.
class BisectionExhausted : public AlgorithmFailure {
 public:
  BisectionExhausted(const std::string& what, Vector x0, Vector v,
                     GradientBundle bundle, BisectionOutcome outcome)
      : AlgorithmFailure(what),
        x0_(std::move(x0)),
        v_(std::move(v)),
        bundle_(std::make_shared<GradientBundle>(std::move(bundle))),
        outcome_(std::move(outcome)) {}

  const Vector& x0() const noexcept { return x0_; }
  const Vector& direction() const noexcept { return v_; }
  const GradientBundle& bundle() const noexcept { return *bundle_; }
  const BisectionOutcome& outcome() const noexcept { return outcome_; }

 private:
  Vector x0_;
  Vector v_;
  std::shared_ptr<GradientBundle> bundle_;
  BisectionOutcome outcome_;
};

/// Deterministic enrichment loop at x0: grows W from {subgrad(x0)} with the
/// improved bisection until the min-norm direction is either below the
/// criticality tolerance or certifies sufficient descent.
DirectionReport descent_direction(const FunctionOracle& oracle,
                                  const Vector& x0,
                                  const DescentParams& params,
                                  const EnrichmentLog& log = {});

/// Effective criticality tolerance at a point with value fx.
inline double criticality_tolerance(double delta, double fx) {
  return delta * std::max(1.0, std::abs(fx));
}

}  // namespace goldstein

#endif  // GOLDSTEIN_DIRECTION_HPP
