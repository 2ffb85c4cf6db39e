#pragma once

#include <vector>

#include "multiaxial/special_fn.hpp"
#include "multiaxial/spin_state.hpp"

namespace multiaxial {

/// Fano statistical tensors t^k_q, k = 0..2j, of a spin-j density matrix.
class SphericalTensorSet {
 public:
  /// All components zero except t^0_0 = 1 (the maximally mixed state).
  explicit SphericalTensorSet(HalfInteger j);

  /// Throws StructuralError unless ranks.size() == 2j+1 with ranks[k].rank() == k.
  SphericalTensorSet(HalfInteger j, std::vector<SphericalTensor> ranks);

  HalfInteger j() const { return j_; }
  int max_rank() const { return j_.twice(); }

  const SphericalTensor& rank(int k) const { return ranks_.at(static_cast<std::size_t>(k)); }
  SphericalTensor& rank(int k) { return ranks_.at(static_cast<std::size_t>(k)); }
  Complex operator()(int k, int q) const { return rank(k)[q]; }

  const std::vector<SphericalTensor>& ranks() const { return ranks_; }

  /// Largest violation of t^k_q* = (-1)^q t^k_-q over all ranks.
  double conjugation_defect() const;

 private:
  HalfInteger j_;
  std::vector<SphericalTensor> ranks_;
};

/// t^k_q = sum_m rho_{m, m+q} sqrt(2k+1) C(j k j; m q m+q).
SphericalTensorSet extract_tensors(const DensityMatrix& rho);

/// rho = 1/(2j+1) sum_{kq} t^k_q tau^k_q^dagger.
/// Throws ValidationError when the conjugation defect exceeds 1e-8.
DensityMatrix reconstruct_density(const SphericalTensorSet& t);

/// Tensors of the actively rotated state:
/// t'^k_q = sum_{q'} D^k_{q q'}(g)^* t^k_{q'}, so that
/// extract_tensors(rotate_density(rho, g)) == rotate_tensors(extract_tensors(rho), g).
SphericalTensorSet rotate_tensors(const SphericalTensorSet& t, const EulerAngles& angles);

/// Single-rank version of rotate_tensors.
SphericalTensor rotate_rank(const SphericalTensor& t, const EulerAngles& angles);

/// Rotation invariant t^k . t^k = sum_q (-1)^q t^k_-q t^k_q.
double rank_norm(const SphericalTensorSet& t, int k);

}  // namespace multiaxial
