#include "montecarlo.hpp"

#include "goldstein/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace goldstein::mc {

double Estimate::rate() const {
  return trials > 0 ? static_cast<double>(successes) / trials : 0.0;
}

double Estimate::standard_error() const {
  if (trials <= 0) return 0.0;
  const double r = rate();
  return std::sqrt(r * (1.0 - r) / trials);
}

std::vector<Outcome> run_trials(
    std::int64_t trials, const std::function<Outcome(std::int64_t)>& trial,
    unsigned workers) {
  if (trials < 0) throw InvalidArgument("run_trials: trials must be >= 0");
  std::vector<Outcome> out(static_cast<std::size_t>(trials), 0);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(
      std::min<std::int64_t>(workers, std::max<std::int64_t>(trials, 1)));

  std::atomic<std::int64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    constexpr std::int64_t chunk = 256;
    for (;;) {
      const std::int64_t begin = next.fetch_add(chunk);
      if (begin >= trials) return;
      const std::int64_t end = std::min(trials, begin + chunk);
      try {
        for (std::int64_t i = begin; i < end; ++i) out[i] = trial(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = trials;
        return;
      }
    }
  };

  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

Estimate tally(const std::vector<Outcome>& outcomes, Outcome mask) {
  Estimate e;
  e.trials = static_cast<std::int64_t>(outcomes.size());
  e.successes = std::count_if(outcomes.begin(), outcomes.end(),
                              [mask](Outcome o) { return (o & mask) != 0; });
  return e;
}

bool in_d2(const Vector& x) {
  const Index n = x.size();
  return x[n - 1] > x.head(n - 1).norm();
}

bool d2_hit_trial(Index n, int m, std::uint64_t seed, std::int64_t trial) {
  Rng rng(seed, static_cast<std::uint64_t>(trial));
  const auto points = sample_ball(rng, Vector::Zero(n), 1.0, m);
  return std::any_of(points.begin(), points.end(), in_d2);
}

Estimate d2_hit_rate(Index n, int m, std::int64_t trials, std::uint64_t seed,
                     unsigned workers) {
  if (n < 2) throw InvalidArgument("d2_hit_rate: n must be >= 2");
  return tally(run_trials(
      trials,
      [=](std::int64_t i) -> Outcome { return d2_hit_trial(n, m, seed, i); },
      workers));
}

}  // namespace goldstein::mc
