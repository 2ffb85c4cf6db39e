#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multiaxial/spin_state.hpp"

namespace multiaxial {

/// |j m>. Throws DomainError if |m| > j.
PureState make_dicke(HalfInteger j, HalfInteger m);

/// (|jj> + |j,-j>)/sqrt2 for n = 2j qubits. Throws DomainError for n < 2.
PureState make_ghz(int n);

/// One qubit up among n: |j, -j+1>. Throws DomainError for n < 2.
PureState make_w(int n);

/// |1 0>, the symmetric two-qubit Bell state.
PureState make_bell();

/// All 2j spinors along (theta, phi); equals the rotation of |jj> by (phi, theta, 0).
PureState make_coherent(HalfInteger j, double theta, double phi);

/// Spin-1 state with a single vector-polarization axis:
/// t1 = r1 Q(theta1, phi1), t2 = 0. Positive semi-definite iff 0 <= r1 <= sqrt(2/3).
DensityMatrix make_uniaxial(double r1, double theta1, double phi1);

/// Spin-1 pure alignment in its principal frame:
/// t2_0 = r2 (1 + cos^2 theta)/sqrt6, t2_{+-2} = -r2 sin^2(theta)/2, t1 = 0.
DensityMatrix make_biaxial(double r2, double theta);

/// make_biaxial plus a vector polarization t1_0 = r1 along z.
DensityMatrix make_triaxial(double r1, double r2, double theta);

enum class Family { dicke, ghz, w, bell, separable_coherent, uniaxial, biaxial, triaxial };

std::string_view family_name(Family f);

/// Throws DomainError listing the known families.
Family parse_family(std::string_view name);

const std::vector<Family>& all_families();

/// Parameter names, in order, that a family accepts.
const std::vector<std::string>& family_parameters(Family f);

/// Human-readable parameter ranges, e.g. "r2 in (0, sqrt3], theta real".
std::string family_ranges(Family f);

struct FamilySpec {
  Family family = Family::bell;
  std::map<std::string, double> params;
};

struct FamilyState {
  DensityMatrix rho;
  std::optional<PureState> pure;
  /// False when the parameters leave the family's declared domain or the
  /// resulting matrix is not a valid density matrix.
  bool in_range = true;
  std::string note;
};

/// Builds a family member. Unknown or missing parameters and structural
/// violations (|m| > j, N < 2, non-half-integer j) throw DomainError whose
/// message lists the valid ranges; physically out-of-range values are
/// constructed and flagged instead.
FamilyState build_family(const FamilySpec& spec, const Tolerances& tol = {});

}  // namespace multiaxial
