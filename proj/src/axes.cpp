#include "multiaxial/axes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace multiaxial {

namespace {

constexpr double kSnap = 1e-12;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
// Axes closer than this are the same root pair, before any clustering by tolerance.
constexpr double kIdenticalAxis = 1e-9;
constexpr std::size_t kMaxExactPairing = 24;
constexpr double kTensorNoise = 64 * std::numeric_limits<double>::epsilon();

bool lexicographic_less(const SpherePoint& a, const SpherePoint& b) {
  if (a.theta != b.theta) return a.theta < b.theta;
  return a.phi < b.phi;
}

double antipode_chord(const Vec3& a, const Vec3& b) { return (a + b).norm(); }

// Minimum total-cost perfect matching by subset DP; n must be even and small.
std::vector<std::pair<std::size_t, std::size_t>> exact_pairing(const std::vector<Vec3>& pts) {
  const std::size_t n = pts.size();
  const std::size_t full = (std::size_t{1} << n) - 1;
  std::vector<double> best(full + 1, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> choice(full + 1, 0);
  best[0] = 0.0;
  for (std::size_t mask = 0; mask < full; ++mask) {
    if (!std::isfinite(best[mask])) continue;
    std::size_t i = 0;
    while (mask & (std::size_t{1} << i)) ++i;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      const std::size_t next = mask | (std::size_t{1} << i) | (std::size_t{1} << j);
      const double cost = best[mask] + antipode_chord(pts[i], pts[j]);
      if (cost < best[next]) {
        best[next] = cost;
        choice[next] = (i << 8) | j;
      }
    }
  }
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t mask = full; mask != 0;) {
    const std::size_t i = choice[mask] >> 8, j = choice[mask] & 0xff;
    pairs.emplace_back(i, j);
    mask &= ~((std::size_t{1} << i) | (std::size_t{1} << j));
  }
  return pairs;
}

std::vector<std::pair<std::size_t, std::size_t>> greedy_pairing(const std::vector<Vec3>& pts, double chord_tol,
                                                                bool& ok) {
  const std::size_t n = pts.size();
  std::vector<bool> used(n, false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  ok = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (used[i]) continue;
    std::size_t best = n;
    double best_cost = std::numeric_limits<double>::infinity();
    for (std::size_t j = i + 1; j < n; ++j) {
      if (used[j]) continue;
      const double cost = antipode_chord(pts[i], pts[j]);
      if (cost < best_cost) {
        best_cost = cost;
        best = j;
      }
    }
    if (best == n || best_cost > chord_tol) {
      ok = false;
      return pairs;
    }
    used[i] = used[best] = true;
    pairs.emplace_back(i, best);
  }
  return pairs;
}

std::vector<Vec3> pair_antipodes(const std::vector<Vec3>& pts, double angle_tol) {
  const double chord_tol = 2.0 * std::sin(0.5 * angle_tol);
  bool ok = false;
  auto pairs = greedy_pairing(pts, chord_tol, ok);
  if (!ok && pts.size() % 2 == 0 && pts.size() <= kMaxExactPairing) {
    pairs = exact_pairing(pts);
    ok = std::all_of(pairs.begin(), pairs.end(),
                     [&](const auto& pr) { return antipode_chord(pts[pr.first], pts[pr.second]) <= chord_tol; });
  }
  if (!ok) {
    std::vector<SpherePoint> bad;
    for (const auto& p : pts) bad.push_back(SpherePoint::from_vector(p));
    throw PairingError("roots are not closed under the antipodal map within " + std::to_string(angle_tol) + " rad",
                       std::move(bad));
  }
  std::vector<Vec3> axes;
  axes.reserve(pairs.size());
  for (const auto& [i, j] : pairs) axes.push_back((pts[i] - pts[j]).normalized());
  return axes;
}

std::vector<AxisCount> group_axes(const std::vector<Vec3>& dirs) {
  std::vector<AxisCount> groups;
  for (const auto& d : dirs) {
    const Axis a = Axis::from_vector(d);
    auto it = std::find_if(groups.begin(), groups.end(),
                           [&](const AxisCount& g) { return g.axis.angle_to(a) <= kIdenticalAxis; });
    if (it != groups.end()) {
      ++it->multiplicity;
    } else {
      groups.push_back({a, 1});
    }
  }
  std::sort(groups.begin(), groups.end(), [](const AxisCount& a, const AxisCount& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    return lexicographic_less(a.axis.representative(), b.axis.representative());
  });
  return groups;
}

RootOptions root_options(const Tolerances& tol) {
  RootOptions opt;
  opt.zero_tol = tol.zero;
  opt.merge_tol = std::max(tol.angle * tol.angle, 1e-14);
  return opt;
}

}  // namespace

SpherePoint SpherePoint::from_vector(const Vec3& v_in) {
  const Vec3 v = v_in.normalized();
  const double rho = std::hypot(v.x(), v.y());
  if (rho <= kSnap) return {v.z() > 0.0 ? 0.0 : std::numbers::pi, 0.0};
  const double theta = std::abs(v.z()) <= kSnap ? std::numbers::pi / 2 : std::atan2(rho, v.z());
  double phi = std::atan2(v.y(), v.x());
  if (phi < 0.0) phi += kTwoPi;
  if (phi >= kTwoPi - kSnap || phi == 0.0) phi = 0.0;  // also clears -0
  return {theta, phi};
}

Vec3 SpherePoint::vector() const {
  return Vec3(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta));
}

Axis Axis::from_vector(const Vec3& v_in) {
  Vec3 v = v_in.normalized();
  if (std::abs(v.z()) <= kSnap) v.z() = 0.0;
  if (std::abs(v.y()) <= kSnap) v.y() = 0.0;
  bool flip = false;
  if (v.z() != 0.0) {
    flip = v.z() < 0.0;
  } else if (v.y() != 0.0) {
    flip = v.y() < 0.0;
  } else {
    flip = v.x() < 0.0;
  }
  if (flip) v = -v;
  Axis a;
  a.rep_ = SpherePoint::from_vector(v);
  return a;
}

double Axis::angle_to(const Axis& other) const {
  const Vec3 a = direction(), b = other.direction();
  return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

int RankDecomposition::total_multiplicity() const {
  int total = 0;
  for (const auto& a : axes) total += a.multiplicity;
  return total;
}

Polynomial majorana_polynomial(const PureState& psi) {
  const int two_j = psi.j().twice();
  Polynomial p(static_cast<std::size_t>(two_j + 1));
  for (int u = 0; u <= two_j; ++u) {
    // u = j + m; the amplitude of m sits at descending index 2j - u.
    const double sign = (u % 2 == 0) ? 1.0 : -1.0;
    p[static_cast<std::size_t>(u)] = sign * std::sqrt(binomial(two_j, u)) * psi.amplitudes()(two_j - u);
  }
  return p;
}

std::vector<SpherePoint> majorana_roots(const PureState& psi, const Tolerances& tol) {
  if (psi.j().twice() < 1) return {};
  const Polynomial p = majorana_polynomial(psi);
  RootOptions opt = root_options(tol);
  opt.noise.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) opt.noise[i] = kTensorNoise * std::sqrt(binomial(psi.j().twice(), static_cast<int>(i)));
  const SphereRoots roots = sphere_roots(p, opt);
  std::vector<SpherePoint> out;
  out.reserve(roots.points.size());
  for (const auto& v : roots.points) out.push_back(SpherePoint::from_vector(v));
  std::sort(out.begin(), out.end(), lexicographic_less);
  return out;
}

Polynomial mar_polynomial(const SphericalTensorSet& t, int k) {
  if (k < 1 || k > t.max_rank()) throw DomainError("rank " + std::to_string(k) + " has no MAR polynomial");
  Polynomial p(static_cast<std::size_t>(2 * k + 1));
  const auto& tk = t.rank(k);
  for (int q = -k; q <= k; ++q) p[static_cast<std::size_t>(k - q)] = std::sqrt(binomial(2 * k, k + q)) * tk[q];
  return p;
}

SphericalTensor coupled_axes_tensor(const std::vector<AxisCount>& axes) {
  std::vector<AxisCount> ordered = axes;
  std::stable_sort(ordered.begin(), ordered.end(), [](const AxisCount& a, const AxisCount& b) {
    if (a.multiplicity != b.multiplicity) return a.multiplicity > b.multiplicity;
    return lexicographic_less(a.axis.representative(), b.axis.representative());
  });
  SphericalTensor acc;
  bool first = true;
  int rank = 0;
  for (const auto& a : ordered) {
    const auto& p = a.axis.representative();
    const SphericalTensor q = q_vector(p.theta, p.phi);
    for (int i = 0; i < a.multiplicity; ++i) {
      ++rank;
      acc = first ? q : couple_pair(acc, q, rank);
      first = false;
    }
  }
  return acc;
}

RkFit fit_rk(const SphericalTensor& tk, const std::vector<AxisCount>& axes) {
  int total = 0;
  for (const auto& a : axes) total += a.multiplicity;
  if (total != tk.rank()) {
    throw DomainError("fit_rk: axes carry multiplicity " + std::to_string(total) + " for rank " +
                      std::to_string(tk.rank()));
  }
  const SphericalTensor c = coupled_axes_tensor(axes);
  const double denom = c.squared_norm();
  // Coupled norms shrink fast with k; compare against k collinear axes.
  const double collinear = coupled_axes_tensor({{Axis::from_angles(0.0, 0.0), tk.rank()}}).squared_norm();
  if (denom < 1e-14 * collinear) throw DegenerateFitError("coupled axis tensor vanishes for rank " + std::to_string(tk.rank()));
  Complex overlap{};
  for (int q = -tk.rank(); q <= tk.rank(); ++q) overlap += std::conj(c[q]) * tk[q];
  RkFit fit;
  fit.scale = overlap / denom;
  fit.r = std::abs(fit.scale);
  for (int q = -tk.rank(); q <= tk.rank(); ++q) fit.residual = std::max(fit.residual, std::abs(tk[q] - fit.scale * c[q]));
  return fit;
}

RankDecomposition solve_axes(const SphericalTensorSet& t, int k, const Tolerances& tol) {
  const Polynomial p = mar_polynomial(t, k);
  const auto& tk = t.rank(k);
  RankDecomposition out;
  out.k = k;
  if (tk.max_abs() < tol.zero) {
    out.fit_residual = tk.max_abs();
    return out;
  }
  RootOptions opt = root_options(tol);
  opt.symmetric_strip = true;
  // Tensor components carry an absolute error of a few ulps; the binomial
  // weights carry it into the coefficients.
  opt.noise.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) opt.noise[i] = kTensorNoise * std::sqrt(binomial(2 * k, static_cast<int>(i)));
  const SphereRoots roots = sphere_roots(p, opt);
  out.axis_uncertainty = roots.uncertainty;
  out.axes = group_axes(pair_antipodes(roots.points, tol.angle + 2.0 * roots.uncertainty));
  const RkFit fit = fit_rk(tk, out.axes);
  out.r = fit.r;
  out.fit_residual = fit.residual;
  return out;
}

std::vector<double> pairwise_invariants(const std::vector<RankDecomposition>& ranks) {
  std::vector<Vec3> dirs;
  for (const auto& r : ranks)
    for (const auto& a : r.axes)
      for (int i = 0; i < a.multiplicity; ++i) dirs.push_back(a.axis.direction());
  std::vector<double> out;
  out.reserve(dirs.size() * (dirs.size() - (dirs.empty() ? 0 : 1)) / 2);
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) out.push_back(std::min(1.0, std::abs(dirs[i].dot(dirs[j]))));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

MarDecomposition decompose(const SphericalTensorSet& t, const Tolerances& tol) {
  MarDecomposition out{t, {}};
  for (int k = 1; k <= t.max_rank(); ++k) out.ranks.push_back(solve_axes(t, k, tol));
  return out;
}

MarDecomposition decompose(const DensityMatrix& rho, const Tolerances& tol) {
  return decompose(extract_tensors(rho), tol);
}

}  // namespace multiaxial
