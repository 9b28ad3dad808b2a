#ifndef GOLDSTEIN_TOOLS_MONTECARLO_HPP
#define GOLDSTEIN_TOOLS_MONTECARLO_HPP

#include "goldstein/core.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace goldstein::mc {

struct Estimate {
  std::int64_t trials = 0;
  std::int64_t successes = 0;
  double rate() const;
  // binomial standard error sqrt(r(1-r)/N)
  double standard_error() const;
};

using Outcome = std::uint8_t;

/// Runs `trial(index)` for index in [0, trials) on up to `workers` threads
/// (0 = hardware concurrency) and returns the per-trial results in index
/// order. A trial may report several events as bits of its outcome.
std::vector<Outcome> run_trials(
    std::int64_t trials, const std::function<Outcome(std::int64_t)>& trial,
    unsigned workers = 0);

/// Counts the trials whose outcome has any bit of `mask` set.
Estimate tally(const std::vector<Outcome>& outcomes, Outcome mask = 1);

/// x_n > ||pr(x)||
bool in_d2(const Vector& x);

/// m uniform points in the unit n-ball, drawn from stream (seed, trial);
/// true if at least one lands in D2.
bool d2_hit_trial(Index n, int m, std::uint64_t seed, std::int64_t trial);

Estimate d2_hit_rate(Index n, int m, std::int64_t trials, std::uint64_t seed,
                     unsigned workers = 0);

}  // namespace goldstein::mc

#endif  // GOLDSTEIN_TOOLS_MONTECARLO_HPP
