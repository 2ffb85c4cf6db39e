#pragma once

#include <vector>

#include <Eigen/Dense>

#include "multiaxial/special_fn.hpp"

namespace multiaxial {

/// Complex polynomial, coefficients in ascending powers of Z.
using Polynomial = std::vector<Complex>;
using Vec3 = Eigen::Vector3d;

Complex evaluate(const Polynomial& p, Complex z);

/// order-th derivative.
Polynomial derivative(const Polynomial& p, int order = 1);

/// Eigenvalues of the balanced companion matrix. The leading coefficient
/// must be nonzero.
std::vector<Complex> companion_roots(const Polynomial& p);

/// Point on the unit sphere for Z = tan(theta/2) e^{i phi}.
Vec3 stereographic_to_vector(Complex z);

struct RootOptions {
  /// Coefficients below zero_tol * max|c| count as zero when stripping the ends.
  double zero_tol = 1e-12;
  /// Largest chord within which roots are tested as one multiple root; the
  /// search is repeated on successively smaller chords.
  double cluster_radius = 1.0;
  /// Relative size below which P, P', ... count as vanishing at a multiple root.
  double merge_tol = 1e-12;
  /// Absolute uncertainty of each input coefficient (indexed like p); widens
  /// the vanishing test so that noise alone cannot split a multiple root.
  /// Empty means exact coefficients.
  std::vector<double> noise;
  int polish_steps = 5;
  /// Strip min(#leading zeros, #trailing zeros) from both ends, for
  /// polynomials whose roots come in antipodal pairs.
  bool symmetric_strip = false;
};

struct SphereRoots {
  /// All roots with multiplicity, mapped to unit vectors; size = p.size() - 1.
  std::vector<Vec3> points;
  int at_zero = 0;      // stripped trailing zeros (north pole)
  int at_infinity = 0;  // stripped leading zeros (south pole)
  /// Largest chord by which a root may be displaced by the coefficient noise
  /// (first-order estimate); 0 without RootOptions::noise.
  double uncertainty = 0.0;
};

/// Roots of p, including those at Z = infinity implied by vanishing leading
/// coefficients, as points on the sphere. Throws DomainError for p == 0.
SphereRoots sphere_roots(const Polynomial& p, const RootOptions& options = {});

}  // namespace multiaxial
