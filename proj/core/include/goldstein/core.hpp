#ifndef GOLDSTEIN_CORE_HPP
#define GOLDSTEIN_CORE_HPP

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace goldstein {

using Vector = Eigen::VectorXd;
using Index = Eigen::Index;
/// 113-bit significand. Used where the bisection compares function values
/// whose differences fall below double resolution.
using Real = boost::multiprecision::cpp_bin_float_quad;

// Error taxonomy shared by every module. The CLI maps InvalidArgument to exit
// code 1 and AlgorithmFailure / SolverFailure to exit code 2.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlgorithmFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when one of the bisection state invariants is observed to be false.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Black-box access to a locally Lipschitz function: its value and one
/// subgradient per point. All callables must be pure functions of x.
/// An optional extended-precision value may be supplied; without it
/// value_ext() widens value().
class FunctionOracle {
 public:
  using ValueFn = std::function<double(const Vector&)>;
  using SubgradientFn = std::function<Vector(const Vector&)>;
  using ExtValueFn = std::function<Real(const Vector&)>;

  FunctionOracle(std::string name, Index dimension, ValueFn value,
                 SubgradientFn subgradient, ExtValueFn value_ext = {});

  double value(const Vector& x) const;
  Real value_ext(const Vector& x) const;
  Vector subgradient(const Vector& x) const;
  bool has_extended_value() const noexcept { return bool(value_ext_); }

  Index dimension() const noexcept { return dimension_; }
  const std::string& name() const noexcept { return name_; }

 private:
  void check_dimension(const Vector& x) const;

  std::string name_;
  Index dimension_;
  ValueFn value_;
  SubgradientFn subgradient_;
  ExtValueFn value_ext_;
};

struct OracleCalls {
  std::size_t values = 0;
  std::size_t subgradients = 0;

  OracleCalls& operator+=(const OracleCalls& other) noexcept {
    values += other.values;
    subgradients += other.subgradients;
    return *this;
  }
};

/// Per-invocation call accounting around a shared oracle.
class CountingOracle {
 public:
  explicit CountingOracle(const FunctionOracle& oracle) : oracle_(oracle) {}

  double value(const Vector& x) {
    ++calls_.values;
    return oracle_.value(x);
  }
  Real value_ext(const Vector& x) {
    ++calls_.values;
    return oracle_.value_ext(x);
  }
  Vector subgradient(const Vector& x) {
    ++calls_.subgradients;
    return oracle_.subgradient(x);
  }

  const FunctionOracle& oracle() const noexcept { return oracle_; }
  const OracleCalls& calls() const noexcept { return calls_; }

 private:
  const FunctionOracle& oracle_;
  OracleCalls calls_;
};

/// The finite set W of epsilon-subgradients. Elements share one dimension and
/// are never bitwise duplicates of each other.
class GradientBundle {
 public:
  explicit GradientBundle(Vector first);

  /// Adds xi unless an identical element is present. Returns whether the
  /// bundle grew.
  bool insert(const Vector& xi);

  std::size_t size() const noexcept { return elements_.size(); }
  Index dimension() const noexcept { return elements_.front().size(); }
  const Vector& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<Vector>& elements() const noexcept { return elements_; }
  bool contains(const Vector& xi) const;

  /// Elements as the columns of an n x |W| matrix.
  Eigen::MatrixXd matrix() const;

 private:
  std::vector<Vector> elements_;
};

GradientBundle bundle_insert(GradientBundle bundle, const Vector& xi);

struct BisectionCaps {
  double width_rel = 1e-14;  // relative to the initial interval eps/||v||
  int max_iter = 60;
};

struct DescentParams {
  double eps = 1.0;
  double c = 0.5;
  double delta = 1e-6;  // scaled by max(1, |f(x0)|) at each point
  double eps_min = 1e-6;
  double delta_min = 1e-12;
  double shrink = 0.5;
  int max_outer = 10000;
  std::size_t max_bundle = 0;  // 0 selects 2(n+1)
  double ctilde_fraction = 0.5;  // c~ = c_min + fraction * (c - c_min)
  double minnorm_tol = 1e-10;
  BisectionCaps caps{};

  void validate() const;
  std::size_t bundle_cap(Index n) const noexcept {
    return max_bundle > 0 ? max_bundle : static_cast<std::size_t>(2 * (n + 1));
  }
};

struct EpsCritical {
  double v_norm = 0.0;
  GradientBundle bundle;
};

struct Descent {
  Vector v;
  GradientBundle bundle;
  double certificate = 0.0;  // f(x0 + (eps/||v||) v) - f(x0)
  Vector x_next;             // the point the certificate was evaluated at
  double f_next = 0.0;
};

using DirectionResult = std::variant<EpsCritical, Descent>;

struct TraceRow {
  int iter = 0;
  Vector x;
  double fx = 0.0;
  double eps = 0.0;
  double vnorm = 0.0;
  std::size_t oracle_evals = 0;
  std::size_t oracle_subgrads = 0;
  std::size_t bundle_size = 0;
  int bisection_iterations = 0;
  bool step_taken = false;
};

enum class TraceStatus { Converged, MaxOuterReached };

struct DescentTrace {
  std::vector<TraceRow> rows;
  Vector x_final;
  double f_final = 0.0;
  TraceStatus status = TraceStatus::Converged;
  OracleCalls calls;

  bool complete() const noexcept { return status == TraceStatus::Converged; }
  std::size_t steps() const noexcept;
};

}  // namespace goldstein

#endif  // GOLDSTEIN_CORE_HPP
