#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "multiaxial/half_integer.hpp"

namespace multiaxial {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// ZYZ Euler angles of the active rotation R = Rz(alpha) Ry(beta) Rz(gamma).
struct EulerAngles {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  /// Same rotation with each angle reduced to [0, 2pi).
  EulerAngles canonical() const;
};

/// Spherical components of one rank-k tensor, q = -k..k.
class SphericalTensor {
 public:
  SphericalTensor() = default;
  explicit SphericalTensor(int rank) : rank_(rank), comp_(static_cast<std::size_t>(2 * rank + 1)) {}

  int rank() const { return rank_; }
  Complex& operator[](int q) { return comp_[static_cast<std::size_t>(q + rank_)]; }
  const Complex& operator[](int q) const { return comp_[static_cast<std::size_t>(q + rank_)]; }

  /// Components ordered q = -k..k.
  const std::vector<Complex>& components() const { return comp_; }

  double max_abs() const;
  /// Sum over q of |t_q|^2.
  double squared_norm() const;
  /// Largest |t_q* - (-1)^q t_-q|; zero for the tensor of a Hermitian operator.
  double conjugation_defect() const;

 private:
  int rank_ = 0;
  std::vector<Complex> comp_{Complex{}};
};

/// Arguments of C(j1 k j2; m1 q m2) = <j1 m1; k q | j2 m2>.
struct CGArgs {
  HalfInteger j1, k, j2;
  HalfInteger m1, q, m2;

  /// Throws std::invalid_argument if any of j1, k, j2 is negative.
  CGArgs(HalfInteger j1, HalfInteger k, HalfInteger j2, HalfInteger m1, HalfInteger q, HalfInteger m2);
};

/// Condon-Shortley Clebsch-Gordan coefficient <j1 m1; j2 m2 | J M>.
/// Returns 0 for any selection-rule or triangle violation.
double clebsch_gordan(HalfInteger j1, HalfInteger m1, HalfInteger j2, HalfInteger m2, HalfInteger J,
                      HalfInteger M);

/// C(j1 k j2; m1 q m2).
double clebsch_gordan(const CGArgs& args);

/// Closed form of C(c b c; c 0 c); zero for b > 2c.
double cg_stretched(HalfInteger c, HalfInteger b);

/// Wigner small-d d^j_{m'm}(beta).
double wigner_small_d(HalfInteger j, HalfInteger mprime, HalfInteger m, double beta);

/// D^j_{m'm}(alpha, beta, gamma) = e^{-i m' alpha} d^j_{m'm}(beta) e^{-i m gamma}.
Complex wigner_d(HalfInteger j, HalfInteger mprime, HalfInteger m, const EulerAngles& angles);

/// Full (2j+1)x(2j+1) D matrix; rows m', columns m, both descending from +j.
ComplexMatrix wigner_d_matrix(HalfInteger j, const EulerAngles& angles);

/// <jm'|tau^k_q|jm> = sqrt(2k+1) C(j k j; m q m'), descending basis.
/// Throws DomainError if k > 2j or |q| > k.
ComplexMatrix tau_matrix(HalfInteger j, int k, int q);

/// tau^k_q for q = -k..k.
std::vector<ComplexMatrix> tau_matrices(HalfInteger j, int k);

/// (t1 x t2)^k_q = sum_{q1} C(k1 k2 k; q1, q-q1, q) t1_{q1} t2_{q-q1}.
/// Throws DomainError on a triangle violation.
SphericalTensor couple_pair(const SphericalTensor& t1, const SphericalTensor& t2, int k);

/// Unit vector along (theta, phi) as a rank-1 spherical tensor:
/// Q_0 = cos(theta), Q_{+-1} = -+ sin(theta) e^{+-i phi} / sqrt(2).
SphericalTensor q_vector(double theta, double phi);

/// Binomial coefficient n choose r as a double.
double binomial(int n, int r);

}  // namespace multiaxial
