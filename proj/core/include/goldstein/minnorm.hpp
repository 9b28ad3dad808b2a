#ifndef GOLDSTEIN_MINNORM_HPP
#define GOLDSTEIN_MINNORM_HPP

#include "goldstein/core.hpp"

namespace goldstein {

/// Minimum-norm point of conv(W).
///
/// `lambdas` holds one convex weight per input column (zero for columns not
/// in the final corral). `residual` is Wolfe's optimality gap
/// ||x||^2 - min_w <w, x>, which is what the tolerance bounds; it is not a
/// bound on the distance to the exact minimizer.
struct MinNormSolution {
  Vector point;
  Vector lambdas;
  double norm = 0.0;
  double residual = 0.0;
  int major_cycles = 0;
  int minor_cycles = 0;
};

inline constexpr double kDefaultMinNormTol = 1e-10;

/// Wolfe's algorithm on the columns of `points` (n x m, m >= 1).
/// Throws InvalidArgument on empty or non-finite input and SolverFailure if
/// the iteration cap is reached before the residual drops below `tol`.
MinNormSolution min_norm_point(const Eigen::MatrixXd& points,
                               double tol = kDefaultMinNormTol);

MinNormSolution min_norm_point(const GradientBundle& bundle,
                               double tol = kDefaultMinNormTol);

/// The negated min-norm point, i.e. the approximate epsilon-steepest descent
/// direction for the bundle.
Vector steepest_direction(const GradientBundle& bundle,
                          double tol = kDefaultMinNormTol);

/// ||x||^2 - min over columns of <w, x>.
double wolfe_residual(const Eigen::MatrixXd& points, const Vector& x);

}  // namespace goldstein

#endif  // GOLDSTEIN_MINNORM_HPP
