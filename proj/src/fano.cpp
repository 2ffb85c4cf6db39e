#include "multiaxial/fano.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "multiaxial/errors.hpp"

namespace multiaxial {

SphericalTensorSet::SphericalTensorSet(HalfInteger j) : j_(j) {
  require_spin(j);
  for (int k = 0; k <= j.twice(); ++k) ranks_.emplace_back(k);
  ranks_[0][0] = 1.0;
}

SphericalTensorSet::SphericalTensorSet(HalfInteger j, std::vector<SphericalTensor> ranks)
    : j_(j), ranks_(std::move(ranks)) {
  require_spin(j);
  if (ranks_.size() != static_cast<std::size_t>(j.twice() + 1)) {
    throw StructuralError("spin " + j.str() + " needs ranks 0.." + std::to_string(j.twice()));
  }
  for (std::size_t k = 0; k < ranks_.size(); ++k) {
    if (ranks_[k].rank() != static_cast<int>(k)) throw StructuralError("rank list out of order");
  }
}

double SphericalTensorSet::conjugation_defect() const {
  double d = 0.0;
  for (const auto& r : ranks_) d = std::max(d, r.conjugation_defect());
  return d;
}

SphericalTensorSet extract_tensors(const DensityMatrix& rho) {
  const HalfInteger j = rho.j();
  SphericalTensorSet t(j);
  for (int k = 0; k <= j.twice(); ++k) {
    const double norm = std::sqrt(2.0 * k + 1.0);
    for (int q = -k; q <= k; ++q) {
      Complex acc{};
      for (int idx = 0; idx < dimension(j); ++idx) {
        const HalfInteger m = basis_m(j, idx);
        const HalfInteger mp = m + HalfInteger(q);
        if (abs(mp) > j) continue;
        acc += rho(m, mp) * clebsch_gordan(j, m, HalfInteger(k), HalfInteger(q), j, mp);
      }
      t.rank(k)[q] = norm * acc;
    }
  }
  return t;
}

DensityMatrix reconstruct_density(const SphericalTensorSet& t) {
  constexpr double kConjugationLimit = 1e-8;
  if (const double defect = t.conjugation_defect(); defect > kConjugationLimit) {
    throw ValidationError("tensor set violates t^k_q* = (-1)^q t^k_-q by " + std::to_string(defect));
  }
  const HalfInteger j = t.j();
  const int n = dimension(j);
  ComplexMatrix rho = ComplexMatrix::Zero(n, n);
  for (int k = 0; k <= t.max_rank(); ++k) {
    for (int q = -k; q <= k; ++q) {
      const Complex c = t(k, q);
      if (c == Complex{}) continue;
      rho += c * tau_matrix(j, k, q).adjoint();
    }
  }
  rho /= static_cast<double>(n);
  return DensityMatrix(j, std::move(rho));
}

SphericalTensor rotate_rank(const SphericalTensor& t, const EulerAngles& angles) {
  const int k = t.rank();
  SphericalTensor out(k);
  for (int q = -k; q <= k; ++q) {
    Complex acc{};
    for (int qp = -k; qp <= k; ++qp) {
      acc += std::conj(wigner_d(HalfInteger(k), HalfInteger(q), HalfInteger(qp), angles)) * t[qp];
    }
    out[q] = acc;
  }
  return out;
}

SphericalTensorSet rotate_tensors(const SphericalTensorSet& t, const EulerAngles& angles) {
  std::vector<SphericalTensor> ranks;
  ranks.reserve(t.ranks().size());
  for (const auto& r : t.ranks()) ranks.push_back(rotate_rank(r, angles));
  return SphericalTensorSet(t.j(), std::move(ranks));
}

double rank_norm(const SphericalTensorSet& t, int k) {
  if (k < 0 || k > t.max_rank()) throw DomainError("rank " + std::to_string(k) + " out of range");
  const auto& r = t.rank(k);
  Complex acc{};
  for (int q = -k; q <= k; ++q) acc += ((q % 2 == 0) ? 1.0 : -1.0) * r[-q] * r[q];
  return acc.real();
}

}  // namespace multiaxial
