#ifndef GOLDSTEIN_TESTFNS_HPP
#define GOLDSTEIN_TESTFNS_HPP

#include "goldstein/core.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace goldstein::testfns {

// ---------------------------------------------------------------------------
// One-dimensional counterexample for the original bisection.
//
// phi is piecewise linear on [0, 1) through phi(0) = 0 and the breakpoints
//   x1(i) = 1 - 7 * 2^(-i-3),  phi1(i) = 1 - 9 * 2^(-2i-3)
//   x2(i) = 1 - 5 * 2^(-i-3),  phi2(i) = 1 - 3 * 2^(-2i-4)
// with phi(x) = -x/2 for x < 0 and phi(x) = 1 for x >= 1. The objective is
// f(x) = phi(x) - x/2. Every breakpoint is a dyadic rational, so values at
// dyadic arguments are exact in double precision.
// ---------------------------------------------------------------------------

double breakpoint_x1(int i);
double breakpoint_x2(int i);
double breakpoint_phi1(int i);
double breakpoint_phi2(int i);

/// Largest breakpoint index the locator resolves. Beyond x1(kMaxSegment + 1)
/// phi is returned as its limit value 1 with slope 0.
inline constexpr int kMaxSegment = 50;

enum class SegmentKind { Negative, Initial, Ascending, Descending, Limit };

/// Linear piece of phi containing x. The piece is closed on the left, so at a
/// breakpoint `slope` is the right-hand slope.
struct PhiSegment {
  SegmentKind kind = SegmentKind::Initial;
  int index = 0;
  double x_left = 0.0;
  double phi_left = 0.0;
  double slope = 0.0;
};

PhiSegment locate_segment(double x);
double phi_eval(double x);
/// Exact value: every quantity involved is a short dyadic rational.
Real counterexample_value_ext(double x);
/// counterexample_value_ext rounded to double.
double counterexample_value(double x);
/// Designated element of the Clarke subdifferential of f at x: -1 at x = 0,
/// otherwise the right-hand slope.
double counterexample_subgradient(double x);

FunctionOracle counterexample_oracle();

// ---------------------------------------------------------------------------
// Cone function f(x) = |x_n - ||pr(x)||| + x_n / 2 with pr the projection onto
// the first n - 1 coordinates. D1 = {pr != 0, x_n < ||pr||} and
// D2 = {pr != 0, x_n > ||pr||} are the smooth regions.
// ---------------------------------------------------------------------------

double cone_value(const Vector& x);
Vector cone_subgradient(const Vector& x);
FunctionOracle cone_oracle(Index n);

enum class ConeRegion { D1, D2, Boundary, Axis };
ConeRegion cone_region(const Vector& x);

/// True if xi lies (within tol) in the Clarke subdifferential of the cone
/// function at x.
bool cone_subgradient_valid(const Vector& x, const Vector& xi,
                            double tol = 1e-12);

// ---------------------------------------------------------------------------
// Classic convex test functions.
// ---------------------------------------------------------------------------

FunctionOracle abs_oracle();
FunctionOracle maxnorm_oracle(Index n);
/// max_i ||x - c_i||^2 over c = (1, 0), (-1, 1), (-1, -1). The minimizer is
/// the circumcenter (-1/4, 0) with value 25/16.
FunctionOracle maxquad_oracle();

struct NamedFunction {
  std::string name;
  FunctionOracle oracle;
  Vector minimizer;
  double minimum = 0.0;
};

std::vector<NamedFunction> classic_oracles(Index maxnorm_dim = 5);

/// Builds an oracle from a CLI name: counterexample, cone:<n>, abs,
/// maxnorm:<n>, maxquad. Throws InvalidArgument for unknown names.
FunctionOracle make_oracle(std::string_view name);

/// Known minimum value for names that have one (abs, maxnorm, maxquad).
std::optional<double> known_minimum(std::string_view name);

}  // namespace goldstein::testfns

#endif  // GOLDSTEIN_TESTFNS_HPP
