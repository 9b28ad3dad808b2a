#include "goldstein/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <utility>

namespace goldstein {

FunctionOracle::FunctionOracle(std::string name, Index dimension,
                               ValueFn value, SubgradientFn subgradient,
                               ExtValueFn value_ext)
    : name_(std::move(name)),
      dimension_(dimension),
      value_(std::move(value)),
      subgradient_(std::move(subgradient)),
      value_ext_(std::move(value_ext)) {
  if (dimension_ < 1) {
    throw InvalidArgument("FunctionOracle: dimension must be >= 1");
  }
  if (!value_ || !subgradient_) {
    throw InvalidArgument("FunctionOracle: value and subgradient are required");
  }
}

void FunctionOracle::check_dimension(const Vector& x) const {
  if (x.size() != dimension_) {
    throw InvalidArgument("oracle '" + name_ + "': expected dimension " +
                          std::to_string(dimension_) + ", got " +
                          std::to_string(x.size()));
  }
}

double FunctionOracle::value(const Vector& x) const {
  check_dimension(x);
  return value_(x);
}

Real FunctionOracle::value_ext(const Vector& x) const {
  check_dimension(x);
  return value_ext_ ? value_ext_(x) : Real(value_(x));
}

Vector FunctionOracle::subgradient(const Vector& x) const {
  check_dimension(x);
  Vector xi = subgradient_(x);
  if (xi.size() != dimension_) {
    throw InvalidArgument("oracle '" + name_ +
                          "': subgradient has wrong dimension");
  }
  return xi;
}

namespace {

bool bitwise_equal(const Vector& a, const Vector& b) {
  return a.size() == b.size() &&
         std::memcmp(a.data(), b.data(),
                     static_cast<std::size_t>(a.size()) * sizeof(double)) == 0;
}

}  // namespace

GradientBundle::GradientBundle(Vector first) {
  if (first.size() < 1) {
    throw InvalidArgument("GradientBundle: elements need dimension >= 1");
  }
  elements_.push_back(std::move(first));
}

bool GradientBundle::contains(const Vector& xi) const {
  return std::any_of(elements_.begin(), elements_.end(),
                     [&](const Vector& w) { return bitwise_equal(w, xi); });
}

bool GradientBundle::insert(const Vector& xi) {
  if (xi.size() != dimension()) {
    throw InvalidArgument("GradientBundle::insert: dimension mismatch (" +
                          std::to_string(xi.size()) + " vs " +
                          std::to_string(dimension()) + ")");
  }
  if (contains(xi)) return false;
  elements_.push_back(xi);
  return true;
}

Eigen::MatrixXd GradientBundle::matrix() const {
  Eigen::MatrixXd m(dimension(), static_cast<Index>(elements_.size()));
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    m.col(static_cast<Index>(i)) = elements_[i];
  }
  return m;
}

GradientBundle bundle_insert(GradientBundle bundle, const Vector& xi) {
  bundle.insert(xi);
  return bundle;
}

void DescentParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("DescentParams: ") + what);
  };
  require(std::isfinite(eps) && eps > 0.0, "eps must be > 0");
  require(c > 0.0 && c < 1.0, "c must lie in (0, 1)");
  require(std::isfinite(delta) && delta > 0.0, "delta must be > 0");
  require(eps_min > 0.0, "eps_min must be > 0");
  require(delta_min > 0.0, "delta_min must be > 0");
  require(shrink > 0.0 && shrink < 1.0, "shrink must lie in (0, 1)");
  require(max_outer >= 1, "max_outer must be >= 1");
  require(ctilde_fraction > 0.0 && ctilde_fraction < 1.0,
          "ctilde_fraction must lie in (0, 1)");
  require(minnorm_tol > 0.0, "minnorm_tol must be > 0");
  require(caps.width_rel > 0.0 && caps.max_iter >= 1,
          "bisection caps must be positive");
}

std::size_t DescentTrace::steps() const noexcept {
  return static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const TraceRow& r) { return r.step_taken; }));
}

}  // namespace goldstein
