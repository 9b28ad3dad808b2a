#ifndef GOLDSTEIN_RNG_HPP
#define GOLDSTEIN_RNG_HPP

#include "goldstein/core.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace goldstein {

/// Explicitly specified random stream so that traces are reproducible across
/// standard libraries:
///   engine   std::mt19937_64 seeded with splitmix64(seed ^ splitmix64(stream))
///   uniform  top 53 bits of one engine output, scaled to [0, 1)
///   normal   Box-Muller cosine branch from two uniforms (one value per call)
/// The distribution objects of <random> are deliberately not used since their
/// algorithms are implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double normal();

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// m independent uniform draws from the closed ball of radius eps around
/// center: Gaussian direction normalized, times radius eps * U^(1/n).
std::vector<Vector> sample_ball(Rng& rng, const Vector& center, double eps,
                                int m);

}  // namespace goldstein

#endif  // GOLDSTEIN_RNG_HPP
