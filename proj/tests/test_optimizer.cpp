#include "goldstein/geometry.hpp"
#include "goldstein/optimizer.hpp"
#include "goldstein/testfns.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace goldstein;

namespace {

Vector vec(std::initializer_list<double> xs) {
  Vector v(static_cast<Index>(xs.size()));
  Index i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

bool in_d2(const Vector& x) {
  const Index n = x.size();
  return x[n - 1] > x.head(n - 1).norm();
}

// Every accepted step certifies f(x_{k+1}) <= f(x_k) - c eps_k ||v_k||.
void expect_certified_steps(const DescentTrace& t, double c) {
  for (std::size_t k = 0; k < t.rows.size(); ++k) {
    const TraceRow& r = t.rows[k];
    const double f_next = k + 1 < t.rows.size() ? t.rows[k + 1].fx : t.f_final;
    if (r.step_taken) {
      EXPECT_LE(f_next, r.fx - c * r.eps * r.vnorm) << "iter " << r.iter;
      EXPECT_LT(f_next, r.fx);
    } else {
      EXPECT_EQ(f_next, r.fx);
    }
  }
}

void expect_bitwise_equal(const DescentTrace& a, const DescentTrace& b) {
  ASSERT_EQ(a.rows.size(), b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    EXPECT_EQ(a.rows[k].x, b.rows[k].x);
    EXPECT_EQ(a.rows[k].fx, b.rows[k].fx);
    EXPECT_EQ(a.rows[k].vnorm, b.rows[k].vnorm);
    EXPECT_EQ(a.rows[k].oracle_subgrads, b.rows[k].oracle_subgrads);
  }
  EXPECT_EQ(a.x_final, b.x_final);
  EXPECT_EQ(a.f_final, b.f_final);
}

}  // namespace

TEST(Deterministic, AbsFromFive) {
  DescentParams p;
  const DescentTrace t =
      minimize_deterministic(testfns::abs_oracle(), vec({5.0}), p);
  EXPECT_TRUE(t.complete());
  EXPECT_LT(std::abs(t.x_final[0]), 1e-3);
  EXPECT_GT(t.steps(), 0u);
  expect_certified_steps(t, p.c);
  EXPECT_LT(t.rows.back().eps, 2 * p.eps_min);
}

TEST(Deterministic, ConeApexTakesNoSteps) {
  for (const Index n : {2, 10}) {
    const DescentTrace t =
        minimize_deterministic(testfns::cone_oracle(n), Vector::Zero(n), {});
    EXPECT_TRUE(t.complete());
    EXPECT_EQ(t.steps(), 0u);
    EXPECT_EQ(t.x_final, Vector::Zero(n));
    // eps halves from 1 until it drops below 1e-6
    EXPECT_EQ(t.rows.size(), 20u);
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
      EXPECT_EQ(t.rows[k].eps, std::ldexp(1.0, -static_cast<int>(k)));
    }
  }
}

TEST(Deterministic, EpsBelowThresholdGivesEmptyTrace) {
  DescentParams p;
  p.eps = 1e-7;
  const DescentTrace t =
      minimize_deterministic(testfns::abs_oracle(), vec({5.0}), p);
  EXPECT_TRUE(t.rows.empty());
  EXPECT_EQ(t.x_final, vec({5.0}));
  EXPECT_EQ(t.f_final, 5.0);
}

TEST(Deterministic, ClassicFunctionsReachMinimum) {
  for (const auto& nf : testfns::classic_oracles()) {
    const Vector x0 = Vector::Constant(nf.oracle.dimension(), 0.7);
    DescentParams p;
    const DescentTrace t = minimize_deterministic(nf.oracle, x0, p);
    EXPECT_TRUE(t.complete()) << nf.name;
    EXPECT_NEAR(t.f_final, nf.minimum, 1e-3) << nf.name;
    expect_certified_steps(t, p.c);
  }
}

TEST(Deterministic, BitwiseReproducible) {
  const FunctionOracle f = testfns::maxquad_oracle();
  const DescentTrace a = minimize_deterministic(f, vec({2.0, -1.5}), {});
  const DescentTrace b = minimize_deterministic(f, vec({2.0, -1.5}), {});
  expect_bitwise_equal(a, b);
}

TEST(Deterministic, MaxOuterIsReported) {
  DescentParams p;
  p.max_outer = 2;
  const DescentTrace t =
      minimize_deterministic(testfns::abs_oracle(), vec({5.0}), p);
  EXPECT_EQ(t.status, TraceStatus::MaxOuterReached);
  EXPECT_EQ(t.rows.size(), 2u);
}

TEST(Deterministic, SinkSeesEveryRow) {
  std::size_t seen = 0;
  const DescentTrace t = minimize_deterministic(
      testfns::abs_oracle(), vec({5.0}), {},
      [&](const TraceRow&) { ++seen; });
  EXPECT_EQ(seen, t.rows.size());
}

TEST(Deterministic, RejectsBadStart) {
  EXPECT_THROW(minimize_deterministic(testfns::abs_oracle(), vec({1.0, 2.0}),
                                      {}),
               InvalidArgument);
  EXPECT_THROW(minimize_deterministic(testfns::abs_oracle(), vec({NAN}), {}),
               InvalidArgument);
}

TEST(Rng, UniformRangeAndReproducibility) {
  Rng a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const double x = a.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
    EXPECT_EQ(x, b.uniform());
    differs |= x != c.uniform();
  }
  EXPECT_TRUE(differs);
}

TEST(SampleBall, Membership) {
  Rng rng(1);
  const Vector center = vec({1.0, -2.0, 0.5});
  for (const Vector& y : sample_ball(rng, center, 0.3, 5000)) {
    EXPECT_LE((y - center).norm(), 0.3);
  }
}

TEST(SampleBall, MeanWithinThreeSigma) {
  Rng rng(2024);
  const Index n = 4;
  const int N = 100000;
  const Vector center = vec({0.5, -1.0, 2.0, 0.0});
  const double eps = 2.0;
  Vector sum = Vector::Zero(n);
  for (const Vector& y : sample_ball(rng, center, eps, N)) sum += y;
  const Vector mean = sum / N;
  // per-coordinate variance of the uniform ball is eps^2 / (n + 2)
  const double sigma = eps / std::sqrt((n + 2.0) * N);
  for (Index i = 0; i < n; ++i) {
    EXPECT_LE(std::abs(mean[i] - center[i]), 3 * sigma) << "coord " << i;
  }
}

TEST(SampleBall, ConeFractionMatchesGeometry) {
  Rng rng(17);
  const int N = 200000;
  int hits = 0;
  for (const Vector& y : sample_ball(rng, Vector::Zero(3), 1.0, N)) {
    hits += in_d2(y);
  }
  const double p = (1.0 - std::sqrt(2.0) / 2.0) / 2.0;
  EXPECT_NEAR(geometry::d2_fraction(3), p, 1e-14);
  EXPECT_LE(std::abs(double(hits) / N - p), 3 * std::sqrt(p * (1 - p) / N));
}

TEST(SampleBall, RejectsBadArguments) {
  Rng rng(0);
  EXPECT_THROW(sample_ball(rng, Vector::Zero(2), 0.0, 1), InvalidArgument);
  EXPECT_THROW(sample_ball(rng, Vector::Zero(2), 1.0, 0), InvalidArgument);
}

TEST(GSDirection, ConstantGradient) {
  const Vector g = vec({2.0, -1.0, 0.5});
  const FunctionOracle f(
      "lin", 3, [g](const Vector& x) { return g.dot(x); },
      [g](const Vector&) { return g; });
  GSParams p;
  p.seed = 9;
  const GSDirection d = gs_direction(f, vec({1.0, 1.0, 1.0}), p);
  EXPECT_EQ(d.v, -g);
  EXPECT_EQ(d.bundle.size(), 1u);
  EXPECT_EQ(d.samples.size(), 6u);
}

TEST(GSDirection, HitFrequencyMatchesTable) {
  const int trials = 10000;
  for (const Index n : {2, 10}) {
    const FunctionOracle f = testfns::cone_oracle(n);
    GSParams p;
    int hits = 0;
    for (int i = 0; i < trials; ++i) {
      Rng rng(123, static_cast<std::uint64_t>(i));
      const GSDirection d = gs_direction(f, Vector::Zero(n), p, rng);
      bool hit = false;
      for (const Vector& y : d.samples) hit |= in_d2(y);
      hits += hit;
    }
    const double q = geometry::detection_probability(static_cast<int>(n),
                                                     static_cast<int>(2 * n));
    EXPECT_LE(std::abs(double(hits) / trials - q),
              3 * std::sqrt(q * (1 - q) / trials))
        << "n=" << n;
  }
}

TEST(GSDirection, DetectionRequiresAHitWithoutCentreGradient) {
  for (const Index n : {2, 3, 5}) {
    const FunctionOracle f = testfns::cone_oracle(n);
    GSParams p;
    p.include_center = false;
    int detections = 0;
    for (int i = 0; i < 3000; ++i) {
      Rng rng(5, static_cast<std::uint64_t>(i));
      const GSDirection d = gs_direction(f, Vector::Zero(n), p, rng);
      bool hit = false;
      for (const Vector& y : d.samples) hit |= in_d2(y);
      if (d.v.norm() <= 1e-9) {
        ++detections;
        EXPECT_TRUE(hit) << "n=" << n << " trial " << i;
      }
    }
    EXPECT_GT(detections, 0) << "n=" << n;
  }
}

TEST(RandomGS, AbsFromFive) {
  GSParams p;
  p.seed = 4;
  const DescentTrace t = minimize_random_gs(testfns::abs_oracle(), vec({5.0}), p);
  EXPECT_TRUE(t.complete());
  EXPECT_LT(std::abs(t.x_final[0]), 1e-3);
  for (std::size_t k = 0; k + 1 < t.rows.size(); ++k) {
    if (t.rows[k].step_taken) {
      EXPECT_LT(t.rows[k + 1].fx, t.rows[k].fx);
    } else {
      EXPECT_EQ(t.rows[k + 1].fx, t.rows[k].fx);
    }
  }
}

TEST(RandomGS, ReproducibleForSeed) {
  GSParams p;
  p.seed = 77;
  const FunctionOracle f = testfns::maxquad_oracle();
  expect_bitwise_equal(minimize_random_gs(f, vec({1.0, 1.0}), p),
                       minimize_random_gs(f, vec({1.0, 1.0}), p));
}

TEST(RandomGS, RejectsZeroSamples) {
  GSParams p;
  p.m = 0;
  EXPECT_THROW(minimize_random_gs(testfns::abs_oracle(), vec({1.0}), p),
               InvalidArgument);
}
