#include "goldstein/testfns.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

namespace goldstein::testfns {

double breakpoint_x1(int i) { return 1.0 - 7.0 * std::ldexp(1.0, -i - 3); }
double breakpoint_x2(int i) { return 1.0 - 5.0 * std::ldexp(1.0, -i - 3); }
double breakpoint_phi1(int i) {
  return 1.0 - 9.0 * std::ldexp(1.0, -2 * i - 3);
}
double breakpoint_phi2(int i) {
  return 1.0 - 3.0 * std::ldexp(1.0, -2 * i - 4);
}

PhiSegment locate_segment(double x) {
  if (x < 0.0) return {SegmentKind::Negative, 0, 0.0, 0.0, -0.5};
  if (x >= 1.0) return {SegmentKind::Limit, 0, 1.0, 1.0, 0.0};
  if (x < breakpoint_x1(0)) {
    return {SegmentKind::Initial, 0, 0.0, 0.0, -1.0};
  }

  // x1(i) <= x < x1(i+1)  <=>  7 * 2^(-i-4) < 1 - x <= 7 * 2^(-i-3)
  const double r = 1.0 - x;
  int i = static_cast<int>(std::floor(-std::log2(r / 7.0))) - 3;
  i = std::clamp(i, 0, kMaxSegment + 1);
  while (i > 0 && x < breakpoint_x1(i)) --i;
  while (i <= kMaxSegment && x >= breakpoint_x1(i + 1)) ++i;

  if (i > kMaxSegment) {
    return {SegmentKind::Limit, kMaxSegment + 1, breakpoint_x1(kMaxSegment + 1),
            1.0, 0.0};
  }
  if (x < breakpoint_x2(i)) {
    return {SegmentKind::Ascending, i, breakpoint_x1(i), breakpoint_phi1(i),
            15.0 * std::ldexp(1.0, -i - 2)};
  }
  return {SegmentKind::Descending, i, breakpoint_x2(i), breakpoint_phi2(i),
          -std::ldexp(1.0, -i - 1)};
}

double phi_eval(double x) {
  const PhiSegment seg = locate_segment(x);
  if (seg.kind == SegmentKind::Limit) return 1.0;
  return seg.phi_left + seg.slope * (x - seg.x_left);
}

Real counterexample_value_ext(double x) {
  const PhiSegment seg = locate_segment(x);
  // breakpoint abscissae and slopes are exact doubles, the phi values are not
  Real phi_left = seg.phi_left;
  const Real two = 2;
  if (seg.kind == SegmentKind::Ascending) {
    phi_left = 1 - 9 * pow(two, -2 * seg.index - 3);
  } else if (seg.kind == SegmentKind::Descending) {
    phi_left = 1 - 3 * pow(two, -2 * seg.index - 4);
  }
  const Real phi = seg.kind == SegmentKind::Limit
                       ? Real(1)
                       : phi_left + Real(seg.slope) * (Real(x) - Real(seg.x_left));
  return phi - Real(x) / 2;
}

double counterexample_value(double x) {
  return static_cast<double>(counterexample_value_ext(x));
}

double counterexample_subgradient(double x) {
  if (x == 0.0) return -1.0;
  return locate_segment(x).slope - 0.5;
}

FunctionOracle counterexample_oracle() {
  return FunctionOracle(
      "counterexample", 1,
      [](const Vector& x) { return counterexample_value(x[0]); },
      [](const Vector& x) {
        return Vector::Constant(1, counterexample_subgradient(x[0]));
      },
      [](const Vector& x) { return counterexample_value_ext(x[0]); });
}

// -- cone ---------------------------------------------------------------------

namespace {

void require_cone_dim(const Vector& x) {
  if (x.size() < 2) throw InvalidArgument("cone function needs n >= 2");
}

}  // namespace

ConeRegion cone_region(const Vector& x) {
  require_cone_dim(x);
  const Index n = x.size();
  const double p = x.head(n - 1).norm();
  if (p == 0.0) return ConeRegion::Axis;
  if (x[n - 1] < p) return ConeRegion::D1;
  if (x[n - 1] > p) return ConeRegion::D2;
  return ConeRegion::Boundary;
}

double cone_value(const Vector& x) {
  require_cone_dim(x);
  const Index n = x.size();
  return std::abs(x[n - 1] - x.head(n - 1).norm()) + 0.5 * x[n - 1];
}

Vector cone_subgradient(const Vector& x) {
  const ConeRegion region = cone_region(x);
  const Index n = x.size();
  Vector g = Vector::Zero(n);
  switch (region) {
    case ConeRegion::D1: {
      const double p = x.head(n - 1).norm();
      g.head(n - 1) = x.head(n - 1) / p;
      g[n - 1] = -0.5;
      break;
    }
    case ConeRegion::D2:
    case ConeRegion::Boundary: {
      const double p = x.head(n - 1).norm();
      g.head(n - 1) = -x.head(n - 1) / p;
      g[n - 1] = 1.5;
      break;
    }
    case ConeRegion::Axis:
      // Above the apex only D2 is adjacent, below it only D1.
      g[n - 1] = x[n - 1] >= 0.0 ? 1.5 : -0.5;
      break;
  }
  return g;
}

bool cone_subgradient_valid(const Vector& x, const Vector& xi, double tol) {
  const Index n = x.size();
  if (xi.size() != n) return false;
  const double p = x.head(n - 1).norm();
  const double xn = x[n - 1];
  const double top = xi[n - 1];
  const double w = xi.head(n - 1).norm();
  switch (cone_region(x)) {
    case ConeRegion::D1:
    case ConeRegion::D2:
      return (xi - cone_subgradient(x)).norm() <= tol;
    case ConeRegion::Boundary: {
      // conv{(u, -1/2), (-u, 3/2)} with u = pr(x)/||pr(x)||
      const double s = (top + 0.5) / 2.0;
      if (s < -tol || s > 1.0 + tol) return false;
      const Vector u = x.head(n - 1) / p;
      return (xi.head(n - 1) - (1.0 - 2.0 * s) * u).norm() <= tol;
    }
    case ConeRegion::Axis:
      if (w > 1.0 + tol) return false;
      if (xn > 0.0) return std::abs(top - 1.5) <= tol;
      if (xn < 0.0) return std::abs(top + 0.5) <= tol;
      return top >= -0.5 - tol && top <= 1.5 + tol;
  }
  return false;
}

FunctionOracle cone_oracle(Index n) {
  if (n < 2) throw InvalidArgument("cone_oracle: n must be >= 2");
  return FunctionOracle("cone:" + std::to_string(n), n, cone_value,
                        cone_subgradient);
}

// -- classic functions --------------------------------------------------------

FunctionOracle abs_oracle() {
  return FunctionOracle(
      "abs", 1, [](const Vector& x) { return std::abs(x[0]); },
      [](const Vector& x) {
        return Vector::Constant(1, x[0] < 0.0 ? -1.0 : 1.0);
      });
}

FunctionOracle maxnorm_oracle(Index n) {
  if (n < 1) throw InvalidArgument("maxnorm_oracle: n must be >= 1");
  return FunctionOracle(
      "maxnorm:" + std::to_string(n), n,
      [](const Vector& x) { return x.cwiseAbs().maxCoeff(); },
      [](const Vector& x) {
        Index k = 0;
        for (Index i = 1; i < x.size(); ++i) {
          if (std::abs(x[i]) > std::abs(x[k])) k = i;
        }
        Vector g = Vector::Zero(x.size());
        g[k] = x[k] < 0.0 ? -1.0 : 1.0;
        return g;
      });
}

namespace {

const std::array<Eigen::Vector2d, 3>& maxquad_centers() {
  static const std::array<Eigen::Vector2d, 3> centers{
      Eigen::Vector2d(1.0, 0.0), Eigen::Vector2d(-1.0, 1.0),
      Eigen::Vector2d(-1.0, -1.0)};
  return centers;
}

std::size_t maxquad_active(const Vector& x, double* value) {
  const auto& centers = maxquad_centers();
  std::size_t k = 0;
  double best = (x - centers[0]).squaredNorm();
  for (std::size_t i = 1; i < centers.size(); ++i) {
    const double fi = (x - centers[i]).squaredNorm();
    if (fi > best) {
      best = fi;
      k = i;
    }
  }
  *value = best;
  return k;
}

}  // namespace

FunctionOracle maxquad_oracle() {
  return FunctionOracle(
      "maxquad", 2,
      [](const Vector& x) {
        double v = 0.0;
        maxquad_active(x, &v);
        return v;
      },
      [](const Vector& x) {
        double v = 0.0;
        const std::size_t k = maxquad_active(x, &v);
        return Vector(2.0 * (x - maxquad_centers()[k]));
      });
}

std::vector<NamedFunction> classic_oracles(Index maxnorm_dim) {
  std::vector<NamedFunction> out;
  out.push_back({"abs", abs_oracle(), Vector::Zero(1), 0.0});
  out.push_back({"maxnorm:" + std::to_string(maxnorm_dim),
                 maxnorm_oracle(maxnorm_dim), Vector::Zero(maxnorm_dim), 0.0});
  Vector qmin(2);
  qmin << -0.25, 0.0;
  out.push_back({"maxquad", maxquad_oracle(), qmin, 25.0 / 16.0});
  return out;
}

namespace {

Index parse_dimension(std::string_view text, std::string_view full) {
  Index n = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, n);
  if (ec != std::errc() || ptr != end) {
    throw InvalidArgument("bad dimension in function name '" +
                          std::string(full) + "'");
  }
  return n;
}

}  // namespace

FunctionOracle make_oracle(std::string_view name) {
  if (name == "counterexample") return counterexample_oracle();
  if (name == "abs") return abs_oracle();
  if (name == "maxquad") return maxquad_oracle();
  if (name.starts_with("cone:")) {
    return cone_oracle(parse_dimension(name.substr(5), name));
  }
  if (name.starts_with("maxnorm:")) {
    return maxnorm_oracle(parse_dimension(name.substr(8), name));
  }
  throw InvalidArgument("unknown function '" + std::string(name) +
                        "' (expected counterexample, cone:<n>, abs, "
                        "maxnorm:<n>, maxquad)");
}

std::optional<double> known_minimum(std::string_view name) {
  if (name == "abs" || name.starts_with("maxnorm:")) return 0.0;
  if (name == "maxquad") return 25.0 / 16.0;
  return std::nullopt;
}

}  // namespace goldstein::testfns
