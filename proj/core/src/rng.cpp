#include "goldstein/rng.hpp"

#include <cmath>
#include <numbers>

namespace goldstein {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream))) {}

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<Vector> sample_ball(Rng& rng, const Vector& center, double eps,
                                int m) {
  if (!(eps > 0.0)) throw InvalidArgument("sample_ball: eps must be > 0");
  if (m < 1) throw InvalidArgument("sample_ball: m must be >= 1");
  const Index n = center.size();
  std::vector<Vector> out;
  out.reserve(static_cast<std::size_t>(m));
  for (int k = 0; k < m; ++k) {
    Vector dir(n);
    double norm2 = 0.0;
    do {
      for (Index i = 0; i < n; ++i) dir[i] = rng.normal();
      norm2 = dir.squaredNorm();
    } while (norm2 == 0.0);
    const double radius =
        eps * std::pow(rng.uniform(), 1.0 / static_cast<double>(n));
    Vector offset = (radius / std::sqrt(norm2)) * dir;
    // keep the closed-ball guarantee exact under rounding
    while (offset.norm() > eps) offset *= 1.0 - 0x1.0p-52;
    out.push_back(center + offset);
  }
  return out;
}

}  // namespace goldstein
