#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "multiaxial/axes.hpp"

namespace multiaxial {

/// Partition of rank k by the multiplicities of identical axes.
struct DegeneracyConfiguration {
  int k = 0;
  std::vector<int> parts;  // descending, sums to k

  /// Number of distinct axes.
  int diversity() const { return static_cast<int>(parts.size()); }

  /// "D^2_1,1".
  std::string str() const;
  /// "D^2_{1,1}".
  std::string text() const;

  bool operator==(const DegeneracyConfiguration&) const = default;
};

/// Clusters the axes of one rank by angle (transitively) and sums their
/// multiplicities. Returns nullopt for an absent rank.
std::optional<DegeneracyConfiguration> degeneracy_configuration(const RankDecomposition& decomp,
                                                                double angular_tol);

/// Rotation-invariant scalars of a state: r_k for k = 1..2j and the sorted
/// |cos| between every pair of axes.
struct Fingerprint {
  std::vector<double> r;
  std::vector<double> cosines;

  /// Number of independent invariants: nonzero r_k plus pairwise angles.
  std::size_t invariant_count() const;
};

struct SignatureEntry {
  int k = 0;
  bool present = false;
  std::optional<DegeneracyConfiguration> configuration;
};

struct ClassSignature {
  std::vector<SignatureEntry> entries;  // k = 1..2j
  Fingerprint fingerprint;

  /// "{D^2_2, D^3_1,1,1}" over present ranks; "{}" when none is present.
  std::string str() const;
  /// Same with braced subscripts, "{D^2_{2}, D^3_{1,1,1}}".
  std::string text() const;

  /// Identical presence pattern and partitions.
  bool same_configurations(const ClassSignature& other) const;
};

ClassSignature class_signature(const MarDecomposition& decomp, const Tolerances& tol = {});
ClassSignature class_signature(const DensityMatrix& rho, const Tolerances& tol = {});

enum class Separability { separable, not_separable, not_applicable };

std::string_view separability_name(Separability s);

struct SeparabilityVerdict {
  Separability status = Separability::not_applicable;
  std::string reason;
};

/// r_k of |jj><jj|, k = 1..2j; the values every product state must reproduce.
std::vector<double> separable_reference(HalfInteger j);

/// Product-state test for pure states: every axis of every rank collinear
/// and every r_k equal to separable_reference(j) within 1e-7.
/// Mixed input (|Tr rho^2 - 1| > 1e-8) is not applicable.
SeparabilityVerdict pure_separability_check(const DensityMatrix& rho, const Tolerances& tol = {});
SeparabilityVerdict pure_separability_check(const PureState& psi, const Tolerances& tol = {});

enum class Equivalence { equivalent, inequivalent, fingerprint_match_only };

std::string_view equivalence_name(Equivalence e);

struct LuVerdict {
  Equivalence verdict = Equivalence::inequivalent;
  /// Rotation g with rotate_density(a, g) == b, when one was found.
  std::optional<EulerAngles> witness;
  std::string reason;
};

/// Local-unitary comparison in three stages: configurations, fingerprints,
/// then a search for an explicit rotation that is checked on the densities.
/// Throws StructuralError when the spins differ.
LuVerdict lu_equivalent(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol = {});

/// ZYZ angles of a proper rotation matrix, alpha and gamma in [0, 2pi).
EulerAngles euler_from_matrix(const Eigen::Matrix3d& r);

/// Rz(alpha) Ry(beta) Rz(gamma).
Eigen::Matrix3d rotation_matrix(const EulerAngles& angles);

}  // namespace multiaxial
