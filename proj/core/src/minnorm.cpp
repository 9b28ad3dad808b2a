#include "goldstein/minnorm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace goldstein {

namespace {

// Index of the column minimizing <p_i, x>; ties go to the lowest index.
Index lowest_dot(const Eigen::MatrixXd& points, const Vector& x, double* best) {
  const Vector dots = points.transpose() * x;
  Index arg = 0;
  for (Index i = 1; i < dots.size(); ++i) {
    if (dots[i] < dots[arg]) arg = i;
  }
  *best = dots[arg];
  return arg;
}

// Affine combination weights (summing to one) of the point of minimum norm in
// the affine hull of the given columns.
Vector affine_minimizer(const Eigen::MatrixXd& corral) {
  const Index k = corral.cols();
  Vector mu(k);
  if (k == 1) {
    mu[0] = 1.0;
    return mu;
  }
  const Vector base = corral.col(0);
  const Eigen::MatrixXd diffs =
      corral.rightCols(k - 1).colwise() - base;
  const Vector alpha = diffs.completeOrthogonalDecomposition().solve(-base);
  mu[0] = 1.0 - alpha.sum();
  mu.tail(k - 1) = alpha;
  return mu;
}

}  // namespace

double wolfe_residual(const Eigen::MatrixXd& points, const Vector& x) {
  double best = 0.0;
  lowest_dot(points, x, &best);
  return x.squaredNorm() - best;
}

MinNormSolution min_norm_point(const Eigen::MatrixXd& points, double tol) {
  if (points.cols() < 1 || points.rows() < 1) {
    throw InvalidArgument("min_norm_point: empty point set");
  }
  if (!points.allFinite()) {
    throw InvalidArgument("min_norm_point: non-finite coordinates");
  }
  if (!(tol > 0.0)) {
    throw InvalidArgument("min_norm_point: tol must be > 0");
  }

  const Index m = points.cols();
  const int cap = static_cast<int>(50 * (m + points.rows()) + 100);

  // Start at the input point of smallest norm (lowest index on ties).
  Index start = 0;
  for (Index i = 1; i < m; ++i) {
    if (points.col(i).squaredNorm() < points.col(start).squaredNorm()) start = i;
  }
  std::vector<Index> corral{start};
  Vector lambda = Vector::Ones(1);
  Vector x = points.col(start);

  MinNormSolution sol;
  bool converged = false;
  int total_minor = 0;

  for (int major = 0; major < cap; ++major) {
    sol.major_cycles = major + 1;
    double best = 0.0;
    const Index j = lowest_dot(points, x, &best);
    if (x.squaredNorm() - best <= tol) {
      converged = true;
      break;
    }
    if (std::find(corral.begin(), corral.end(), j) != corral.end()) {
      // x is already the affine minimizer over the corral, so a corral member
      // can only be selected through rounding; no further progress possible.
      break;
    }
    corral.push_back(j);
    lambda.conservativeResize(lambda.size() + 1);
    lambda[lambda.size() - 1] = 0.0;

    for (;;) {
      if (++total_minor > cap) break;
      Eigen::MatrixXd sub(points.rows(), static_cast<Index>(corral.size()));
      for (std::size_t k = 0; k < corral.size(); ++k) {
        sub.col(static_cast<Index>(k)) = points.col(corral[k]);
      }
      const Vector mu = affine_minimizer(sub);
      if ((mu.array() > 0.0).all()) {
        lambda = mu;
        x = sub * lambda;
        break;
      }
      // Move from lambda towards mu until the first weight hits zero.
      double theta = 1.0;
      Index blocking = -1;
      for (Index k = 0; k < mu.size(); ++k) {
        if (mu[k] <= 0.0) {
          const double denom = lambda[k] - mu[k];
          const double ratio = denom > 0.0 ? lambda[k] / denom : 0.0;
          if (blocking < 0 || ratio < theta) {
            theta = std::min(1.0, ratio);
            blocking = k;
          }
        }
      }
      lambda = theta * mu + (1.0 - theta) * lambda;
      // Rounding leaves the blocking weight near but not at zero; it has to
      // leave the corral or the minor cycle stalls.
      lambda[blocking] = 0.0;
      std::vector<Index> kept;
      std::vector<double> kept_lambda;
      for (Index k = 0; k < lambda.size(); ++k) {
        if (lambda[k] > 0.0) {
          kept.push_back(corral[static_cast<std::size_t>(k)]);
          kept_lambda.push_back(lambda[k]);
        }
      }
      if (kept.empty()) {
        // Degenerate step; fall back to the best vertex of the corral.
        kept.push_back(corral.front());
        kept_lambda.push_back(1.0);
      }
      corral = std::move(kept);
      lambda = Eigen::Map<Vector>(kept_lambda.data(),
                                  static_cast<Index>(kept_lambda.size()));
      lambda /= lambda.sum();
      Eigen::MatrixXd sub2(points.rows(), static_cast<Index>(corral.size()));
      for (std::size_t k = 0; k < corral.size(); ++k) {
        sub2.col(static_cast<Index>(k)) = points.col(corral[k]);
      }
      x = sub2 * lambda;
      if (corral.size() == 1) break;
    }
    if (total_minor > cap) break;
  }

  sol.minor_cycles = total_minor;
  sol.lambdas = Vector::Zero(m);
  for (std::size_t k = 0; k < corral.size(); ++k) {
    sol.lambdas[corral[k]] = std::max(0.0, lambda[static_cast<Index>(k)]);
  }
  sol.lambdas /= sol.lambdas.sum();
  sol.point = points * sol.lambdas;
  sol.norm = sol.point.norm();
  sol.residual = wolfe_residual(points, sol.point);

  if (!converged && sol.residual > tol) {
    throw SolverFailure("min_norm_point: no convergence (residual " +
                        std::to_string(sol.residual) + ", tol " +
                        std::to_string(tol) + ")");
  }
  return sol;
}

MinNormSolution min_norm_point(const GradientBundle& bundle, double tol) {
  return min_norm_point(bundle.matrix(), tol);
}

Vector steepest_direction(const GradientBundle& bundle, double tol) {
  const MinNormSolution sol = min_norm_point(bundle, tol);
  if (sol.norm == 0.0) return Vector::Zero(bundle.dimension());
  return -sol.point;
}

}  // namespace goldstein
