#pragma once

#include <string>
#include <vector>

#include "multiaxial/errors.hpp"
#include "multiaxial/fano.hpp"
#include "multiaxial/polynomial.hpp"
#include "multiaxial/spin_state.hpp"

namespace multiaxial {

/// Point on the unit sphere. theta in [0, pi], phi in [0, 2pi), phi = 0 at the poles.
struct SpherePoint {
  double theta = 0.0;
  double phi = 0.0;

  static SpherePoint from_vector(const Vec3& v);
  Vec3 vector() const;
};

/// Double-headed axis {n, -n}, stored by its canonical head: theta < pi/2,
/// or theta == pi/2 with phi in [0, pi). Both poles map to (0, 0).
class Axis {
 public:
  Axis() = default;
  static Axis from_vector(const Vec3& v);
  static Axis from_angles(double theta, double phi) { return from_vector(SpherePoint{theta, phi}.vector()); }

  const SpherePoint& representative() const { return rep_; }
  Vec3 direction() const { return rep_.vector(); }

  /// Angle between the two lines, in [0, pi/2].
  double angle_to(const Axis& other) const;

 private:
  SpherePoint rep_;
};

struct AxisCount {
  Axis axis;
  int multiplicity = 1;
};

/// MAR content of one rank: the invariant r_k and its k axes.
struct RankDecomposition {
  int k = 0;
  double r = 0.0;
  std::vector<AxisCount> axes;  // descending multiplicity, then (theta, phi)
  double fit_residual = 0.0;
  /// Angular precision of the axes allowed by floating-point noise in the
  /// tensor components (rad); grows with k for nearly degenerate ranks.
  double axis_uncertainty = 0.0;

  bool present() const { return r > 0.0; }
  int total_multiplicity() const;
};

/// Every rank k = 1..2j of one state.
struct MarDecomposition {
  SphericalTensorSet tensors;
  std::vector<RankDecomposition> ranks;  // ranks[i].k == i + 1
};

/// Antipodal pairing of polynomial roots failed; carries the offending points.
class PairingError : public Error {
 public:
  PairingError(const std::string& what, std::vector<SpherePoint> unpaired)
      : Error(what), unpaired_(std::move(unpaired)) {}
  const std::vector<SpherePoint>& unpaired() const { return unpaired_; }

 private:
  std::vector<SpherePoint> unpaired_;
};

/// The coupled axis tensor vanished, so r_k cannot be fitted.
class DegenerateFitError : public Error {
 public:
  using Error::Error;
};

/// P(Z) = sum_m (-1)^{j+m} sqrt(C(2j, j+m)) a_m Z^{j+m}.
Polynomial majorana_polynomial(const PureState& psi);

/// The 2j Majorana points of a pure state, sorted by (theta, phi).
std::vector<SpherePoint> majorana_roots(const PureState& psi, const Tolerances& tol = {});

/// Rank-k polynomial: coefficient of Z^{k-q} is sqrt(C(2k, k+q)) t^k_q.
/// Throws DomainError unless 1 <= k <= 2j.
Polynomial mar_polynomial(const SphericalTensorSet& t, int k);

/// Axes and r_k of rank k. An identically vanishing rank gives r = 0 and no axes.
RankDecomposition solve_axes(const SphericalTensorSet& t, int k, const Tolerances& tol = {});

/// Stretched coupling ((Q1 x Q2)^2 x Q3)^3 ... of the axes, each repeated by
/// its multiplicity, taken in descending multiplicity then (theta, phi) order.
SphericalTensor coupled_axes_tensor(const std::vector<AxisCount>& axes);

struct RkFit {
  double r = 0.0;
  double residual = 0.0;
  Complex scale{};  // t^k ~= scale * coupled tensor
};

/// Least-squares magnitude of t^k against the coupled axes tensor.
RkFit fit_rk(const SphericalTensor& tk, const std::vector<AxisCount>& axes);

/// |cos| between every unordered pair of axes over all ranks, counted with
/// multiplicity, sorted descending.
std::vector<double> pairwise_invariants(const std::vector<RankDecomposition>& ranks);

MarDecomposition decompose(const SphericalTensorSet& t, const Tolerances& tol = {});
MarDecomposition decompose(const DensityMatrix& rho, const Tolerances& tol = {});

}  // namespace multiaxial
