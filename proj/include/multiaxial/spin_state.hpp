#pragma once

#include "multiaxial/half_integer.hpp"
#include "multiaxial/special_fn.hpp"

namespace multiaxial {

/// Default numerical thresholds shared by the library and the CLI.
struct Tolerances {
  /// Two axes closer than this (radians) are identical.
  double angle = 1e-6;
  /// A rank whose components are all below this is absent.
  double zero = 1e-12;
  /// Absolute tolerance when comparing invariant fingerprints.
  double fingerprint = 1e-7;
  /// Minimum eigenvalue accepted as positive semi-definite.
  double psd = 1e-10;
  /// Hermiticity and trace tolerance of a density matrix.
  double hermitian = 1e-10;
};

/// Normalized spin-j pure state; amplitudes ordered m = +j .. -j.
class PureState {
 public:
  /// Throws ValidationError if sum |a_m|^2 differs from 1 by more than 1e-10
  /// and StructuralError if the length is not 2j+1.
  PureState(HalfInteger j, ComplexVector amplitudes);

  /// Rescales to unit norm first. Throws ValidationError for the zero vector.
  static PureState normalized(HalfInteger j, ComplexVector amplitudes);

  HalfInteger j() const { return j_; }
  const ComplexVector& amplitudes() const { return a_; }
  Complex amplitude(HalfInteger m) const { return a_(basis_index(j_, m)); }

 private:
  HalfInteger j_;
  ComplexVector a_;
};

/// Spin-j density matrix in the descending |jm> basis.
///
/// Only the shape is enforced on construction; Hermiticity, trace and
/// positivity are reported by validate() so out-of-range family members can
/// still be built and inspected.
class DensityMatrix {
 public:
  DensityMatrix(HalfInteger j, ComplexMatrix rho);

  HalfInteger j() const { return j_; }
  const ComplexMatrix& matrix() const { return rho_; }
  Complex operator()(HalfInteger m, HalfInteger mprime) const {
    return rho_(basis_index(j_, m), basis_index(j_, mprime));
  }

 private:
  HalfInteger j_;
  ComplexMatrix rho_;
};

struct ValidationReport {
  double hermiticity_defect = 0.0;  // max |rho - rho^dagger|
  double trace_defect = 0.0;        // |Tr rho - 1|
  double min_eigenvalue = 0.0;      // of the Hermitian part
  double purity = 0.0;              // Re Tr(rho^2)
  bool hermitian = false;
  bool unit_trace = false;
  bool positive = false;

  bool valid() const { return hermitian && unit_trace && positive; }
};

ValidationReport validate(const DensityMatrix& rho, const Tolerances& tol = {});

DensityMatrix pure_to_density(const PureState& psi);

/// Active rotation: rho -> D rho D^dagger with D the spin-j Wigner matrix.
DensityMatrix rotate_density(const DensityMatrix& rho, const EulerAngles& angles);

PureState rotate_state(const PureState& psi, const EulerAngles& angles);

/// Embeds a spin-1 density matrix in the two-qubit space (|00>,|01>,|10>,|11>)
/// via |1,1> = |00>, |1,0> = (|01> + |10>)/sqrt2, |1,-1> = |11>.
/// Throws DomainError for j != 1.
ComplexMatrix symmetric_to_two_qubit(const DensityMatrix& rho);

struct PptResult {
  double min_eigenvalue = 0.0;
  bool entangled = false;
};

/// Partial transpose on the second qubit; entangled iff the smallest
/// eigenvalue is below -psd_tol.
PptResult ppt_two_qubit(const ComplexMatrix& rho4, double psd_tol = 1e-10);

/// Smallest eigenvalue of the Hermitian part of a square matrix.
double min_hermitian_eigenvalue(const ComplexMatrix& m);

}  // namespace multiaxial
