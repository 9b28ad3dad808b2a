#ifndef GOLDSTEIN_GEOMETRY_HPP
#define GOLDSTEIN_GEOMETRY_HPP

#include <vector>

namespace goldstein::geometry {

/// Regularized incomplete beta I_x(a, b) by Lentz's continued fraction
/// (relative tolerance 1e-14), using the symmetry I_x(a,b) = 1 - I_{1-x}(b,a)
/// where the fraction converges faster.
double regularized_incomplete_beta(double a, double b, double x);

/// Fraction of the unit n-ball lying in the 45-degree cone {x_n > ||pr(x)||}:
/// the spherical-sector fraction 1/2 * I_{1/2}((n-1)/2, 1/2).
double d2_fraction(int n);

/// Same fraction assembled from a hypercone of height and base radius
/// 1/sqrt(2) plus the cap of height 1 - 1/sqrt(2).
double d2_fraction_partition(int n);
double hypercone_fraction(int n);
double cap_fraction(int n);

/// 1 - (1 - d2_fraction(n))^m, evaluated as -expm1(m * log1p(-p)).
double detection_probability(int n, int m);

struct ProbabilityRow {
  int n = 0;
  int m = 0;
  double p = 0.0;
  double detect = 0.0;
};

/// Rows n in {2, 3, 5, 10, 20, 50, 100} with m = 2n.
std::vector<ProbabilityRow> table1();

}  // namespace goldstein::geometry

#endif  // GOLDSTEIN_GEOMETRY_HPP
