#include "multiaxial/special_fn.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "multiaxial/errors.hpp"

namespace multiaxial {

namespace {

constexpr int kFactorialTableSize = 171;

// n! in extended precision; exact through 25!, and the largest argument any
// supported j reaches (j1 + j2 + J + 1 <= 81) is well inside range.
const std::array<long double, kFactorialTableSize>& factorial_table() {
  static const auto table = [] {
    std::array<long double, kFactorialTableSize> t{};
    t[0] = 1.0L;
    for (int n = 1; n < kFactorialTableSize; ++n) t[n] = t[n - 1] * static_cast<long double>(n);
    return t;
  }();
  return table;
}

long double fact(int n) {
  if (n < 0 || n >= kFactorialTableSize) {
    throw std::out_of_range("factorial argument out of range: " + std::to_string(n));
  }
  return factorial_table()[static_cast<std::size_t>(n)];
}

long double ipow(long double x, int n) {
  long double r = 1.0L;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

bool same_parity(int twice_a, int twice_b) { return ((twice_a - twice_b) % 2) == 0; }

}  // namespace

EulerAngles EulerAngles::canonical() const {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto wrap = [](double a) {
    double r = std::fmod(a, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
  };
  return {wrap(alpha), wrap(beta), wrap(gamma)};
}

double SphericalTensor::max_abs() const {
  double m = 0.0;
  for (const auto& c : comp_) m = std::max(m, std::abs(c));
  return m;
}

double SphericalTensor::squared_norm() const {
  double s = 0.0;
  for (const auto& c : comp_) s += std::norm(c);
  return s;
}

double SphericalTensor::conjugation_defect() const {
  double defect = 0.0;
  for (int q = -rank_; q <= rank_; ++q) {
    const double sign = (q % 2 == 0) ? 1.0 : -1.0;
    defect = std::max(defect, std::abs(std::conj((*this)[q]) - sign * (*this)[-q]));
  }
  return defect;
}

CGArgs::CGArgs(HalfInteger j1_, HalfInteger k_, HalfInteger j2_, HalfInteger m1_, HalfInteger q_,
               HalfInteger m2_)
    : j1(j1_), k(k_), j2(j2_), m1(m1_), q(q_), m2(m2_) {
  if (j1.twice() < 0 || k.twice() < 0 || j2.twice() < 0) {
    throw std::invalid_argument("Clebsch-Gordan angular momenta must be non-negative");
  }
}

double clebsch_gordan(HalfInteger j1h, HalfInteger m1h, HalfInteger j2h, HalfInteger m2h, HalfInteger Jh,
                      HalfInteger Mh) {
  const int tj1 = j1h.twice(), tm1 = m1h.twice();
  const int tj2 = j2h.twice(), tm2 = m2h.twice();
  const int tJ = Jh.twice(), tM = Mh.twice();

  if (tj1 < 0 || tj2 < 0 || tJ < 0) return 0.0;
  if (std::abs(tm1) > tj1 || std::abs(tm2) > tj2 || std::abs(tM) > tJ) return 0.0;
  if (!same_parity(tj1, tm1) || !same_parity(tj2, tm2) || !same_parity(tJ, tM)) return 0.0;
  if (tm1 + tm2 != tM) return 0.0;
  if (tJ < std::abs(tj1 - tj2) || tJ > tj1 + tj2) return 0.0;
  if ((tj1 + tj2 + tJ) % 2 != 0) return 0.0;

  const int j1pj2mJ = (tj1 + tj2 - tJ) / 2;
  const int Jpj1mj2 = (tJ + tj1 - tj2) / 2;
  const int Jmj1pj2 = (tJ - tj1 + tj2) / 2;
  const int sum_all = (tj1 + tj2 + tJ) / 2;
  const int j1mm1 = (tj1 - tm1) / 2, j1pm1 = (tj1 + tm1) / 2;
  const int j2mm2 = (tj2 - tm2) / 2, j2pm2 = (tj2 + tm2) / 2;
  const int JmM = (tJ - tM) / 2, JpM = (tJ + tM) / 2;
  const int Jmj2pm1 = (tJ - tj2 + tm1) / 2;
  const int Jmj1mm2 = (tJ - tj1 - tm2) / 2;

  const long double prefactor =
      std::sqrt(static_cast<long double>(tJ + 1) * fact(Jpj1mj2) * fact(Jmj1pj2) * fact(j1pj2mJ) /
                fact(sum_all + 1) * fact(JpM) * fact(JmM) * fact(j1mm1) * fact(j1pm1) * fact(j2mm2) *
                fact(j2pm2));

  const int kmin = std::max({0, -Jmj2pm1, -Jmj1mm2});
  const int kmax = std::min({j1pj2mJ, j1mm1, j2pm2});
  long double sum = 0.0L;
  for (int k = kmin; k <= kmax; ++k) {
    const long double denom = fact(k) * fact(j1pj2mJ - k) * fact(j1mm1 - k) * fact(j2pm2 - k) *
                              fact(Jmj2pm1 + k) * fact(Jmj1mm2 + k);
    sum += ((k % 2 == 0) ? 1.0L : -1.0L) / denom;
  }
  return static_cast<double>(prefactor * sum);
}

double clebsch_gordan(const CGArgs& a) { return clebsch_gordan(a.j1, a.m1, a.k, a.q, a.j2, a.m2); }

double cg_stretched(HalfInteger c, HalfInteger b) {
  if (!b.is_integer() || b.twice() < 0 || c.twice() < 0) return 0.0;
  const int two_c = c.twice();
  const int bi = b.as_int();
  if (bi > two_c) return 0.0;
  const long double value =
      fact(two_c) * std::sqrt(static_cast<long double>(two_c + 1) / (fact(two_c - bi) * fact(two_c + bi + 1)));
  return static_cast<double>(value);
}

double wigner_small_d(HalfInteger jh, HalfInteger mph, HalfInteger mh, double beta) {
  const int tj = jh.twice(), tmp = mph.twice(), tm = mh.twice();
  if (tj < 0 || std::abs(tmp) > tj || std::abs(tm) > tj) return 0.0;
  if (!same_parity(tj, tmp) || !same_parity(tj, tm)) return 0.0;

  const int jpm = (tj + tm) / 2, jmm = (tj - tm) / 2;
  const int jpmp = (tj + tmp) / 2, jmmp = (tj - tmp) / 2;
  const int mpmm = (tmp - tm) / 2;

  const long double c = std::cos(0.5L * beta);
  const long double s = std::sin(0.5L * beta);
  const long double root = std::sqrt(fact(jpm) * fact(jmm) * fact(jpmp) * fact(jmmp));

  const int smin = std::max(0, -mpmm);
  const int smax = std::min(jmmp, jpm);
  long double sum = 0.0L;
  for (int s_ = smin; s_ <= smax; ++s_) {
    const long double denom = fact(s_) * fact(jmmp - s_) * fact(jpm - s_) * fact(mpmm + s_);
    const int cos_power = tj - 2 * s_ - mpmm;
    const int sin_power = mpmm + 2 * s_;
    const long double sign = ((s_ + mpmm) % 2 == 0) ? 1.0L : -1.0L;
    sum += sign * root / denom * ipow(c, cos_power) * ipow(s, sin_power);
  }
  return static_cast<double>(sum);
}

Complex wigner_d(HalfInteger j, HalfInteger mprime, HalfInteger m, const EulerAngles& angles) {
  const double d = wigner_small_d(j, mprime, m, angles.beta);
  const double phase = -(mprime.value() * angles.alpha + m.value() * angles.gamma);
  return std::polar(d, phase);
}

ComplexMatrix wigner_d_matrix(HalfInteger j, const EulerAngles& angles) {
  require_spin(j);
  const int n = dimension(j);
  ComplexMatrix d(n, n);
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) d(r, c) = wigner_d(j, basis_m(j, r), basis_m(j, c), angles);
  }
  return d;
}

ComplexMatrix tau_matrix(HalfInteger j, int k, int q) {
  require_spin(j);
  if (k < 0 || k > j.twice()) {
    throw DomainError("tensor rank k = " + std::to_string(k) + " outside 0.." + std::to_string(j.twice()));
  }
  if (std::abs(q) > k) throw DomainError("projection q outside -k..k");
  const int n = dimension(j);
  ComplexMatrix tau = ComplexMatrix::Zero(n, n);
  const double norm = std::sqrt(2.0 * k + 1.0);
  for (int c = 0; c < n; ++c) {
    const HalfInteger m = basis_m(j, c);
    const HalfInteger mp = m + HalfInteger(q);
    if (abs(mp) > j) continue;
    tau(basis_index(j, mp), c) = norm * clebsch_gordan(j, m, HalfInteger(k), HalfInteger(q), j, mp);
  }
  return tau;
}

std::vector<ComplexMatrix> tau_matrices(HalfInteger j, int k) {
  std::vector<ComplexMatrix> out;
  out.reserve(static_cast<std::size_t>(2 * k + 1));
  for (int q = -k; q <= k; ++q) out.push_back(tau_matrix(j, k, q));
  return out;
}

SphericalTensor couple_pair(const SphericalTensor& t1, const SphericalTensor& t2, int k) {
  const int k1 = t1.rank(), k2 = t2.rank();
  if (k < std::abs(k1 - k2) || k > k1 + k2) {
    throw DomainError("coupling " + std::to_string(k1) + " x " + std::to_string(k2) + " to rank " +
                      std::to_string(k) + " violates the triangle rule");
  }
  SphericalTensor out(k);
  for (int q = -k; q <= k; ++q) {
    Complex acc{};
    for (int q1 = -k1; q1 <= k1; ++q1) {
      const int q2 = q - q1;
      if (std::abs(q2) > k2) continue;
      const double cg = clebsch_gordan(HalfInteger(k1), HalfInteger(q1), HalfInteger(k2), HalfInteger(q2),
                                       HalfInteger(k), HalfInteger(q));
      if (cg != 0.0) acc += cg * t1[q1] * t2[q2];
    }
    out[q] = acc;
  }
  return out;
}

SphericalTensor q_vector(double theta, double phi) {
  SphericalTensor v(1);
  const double s = std::sin(theta) / std::numbers::sqrt2;
  v[0] = std::cos(theta);
  v[1] = -s * std::polar(1.0, phi);
  v[-1] = s * std::polar(1.0, -phi);
  return v;
}

double binomial(int n, int r) {
  if (r < 0 || r > n) return 0.0;
  return static_cast<double>(fact(n) / (fact(r) * fact(n - r)));
}

}  // namespace multiaxial
