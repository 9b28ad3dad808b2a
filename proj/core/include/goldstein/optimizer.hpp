#ifndef GOLDSTEIN_OPTIMIZER_HPP
#define GOLDSTEIN_OPTIMIZER_HPP

#include "goldstein/core.hpp"
#include "goldstein/direction.hpp"
#include "goldstein/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace goldstein {

using TraceSink = std::function<void(const TraceRow&)>;

/// Deterministic gradient sampling descent. At each iterate the enrichment
/// loop either certifies eps-criticality (then eps and delta shrink) or
/// returns a direction whose full step eps/||v|| is taken without a line
/// search. Stops once eps < eps_min or delta < delta_min.
DescentTrace minimize_deterministic(const FunctionOracle& oracle,
                                    const Vector& x_init,
                                    const DescentParams& params,
                                    const TraceSink& sink = {});

/// Parameters of the simplified random gradient sampling baseline.
struct GSParams {
  std::optional<int> m;  // samples per iteration; unset means 2n
  double eps = 1.0;
  double c = 0.5;
  double delta = 1e-6;
  double eps_min = 1e-6;
  double delta_min = 1e-12;
  double shrink = 0.5;
  int max_outer = 10000;
  std::uint64_t seed = 0;
  double backtrack = 0.5;
  int max_backtracks = 30;
  bool include_center = true;  // put subgrad(x0) into W
  double minnorm_tol = 1e-10;

  void validate() const;
  int samples(Index n) const { return m ? *m : static_cast<int>(2 * n); }
};

struct GSDirection {
  Vector v;
  std::vector<Vector> samples;
  GradientBundle bundle;
};

/// v^GS = -argmin over conv({subgrad(x0)} u {subgrad(y_i)}) with y_i uniform
/// in the eps-ball. No differentiability check is made.
GSDirection gs_direction(const FunctionOracle& oracle, const Vector& x0,
                         const GSParams& params, Rng& rng);

/// Convenience overload drawing from a stream seeded with params.seed.
GSDirection gs_direction(const FunctionOracle& oracle, const Vector& x0,
                         const GSParams& params);

/// Random gradient sampling descent with Armijo backtracking over
/// t in {eps/||v||, beta eps/||v||, ...}; a failed search shrinks eps.
DescentTrace minimize_random_gs(const FunctionOracle& oracle,
                                const Vector& x_init, const GSParams& params,
                                const TraceSink& sink = {});

}  // namespace goldstein

#endif  // GOLDSTEIN_OPTIMIZER_HPP
