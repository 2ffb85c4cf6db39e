#include "multiaxial/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multiaxial/errors.hpp"

namespace multiaxial {

namespace {

double l1(Complex c) { return std::abs(c.real()) + std::abs(c.imag()); }

// Parlett-Reinsch diagonal similarity balancing, radix 2.
void balance(ComplexMatrix& a) {
  constexpr double radix = 2.0;
  constexpr double radix2 = radix * radix;
  const Eigen::Index n = a.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += l1(a(j, i));
        r += l1(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix2;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        a.row(i) /= f;
        a.col(i) *= f;
      }
    }
  }
}

Polynomial reversed(const Polynomial& p) { return Polynomial(p.rbegin(), p.rend()); }

// Sum_n |a_n| n!/(n-i)! r^(n-i): scale of the i-th derivative near |z| = r.
double derivative_scale(const Polynomial& p, int order, double r) {
  double s = 0.0;
  for (std::size_t n = static_cast<std::size_t>(order); n < p.size(); ++n) {
    double falling = 1.0;
    for (int t = 0; t < order; ++t) falling *= static_cast<double>(n - static_cast<std::size_t>(t));
    s += std::abs(p[n]) * falling * std::pow(r, static_cast<double>(n) - order);
  }
  return s;
}

// Newton iteration; keeps only steps that reduce |p|, and stops once |p| is
// within the coefficient noise, where further steps only chase rounding.
Complex polish(const Polynomial& p, const Polynomial& dp, const Polynomial& noise, Complex z, int steps) {
  double best = std::abs(evaluate(p, z));
  for (int i = 0; i < steps && best > derivative_scale(noise, 0, std::abs(z)); ++i) {
    const Complex d = evaluate(dp, z);
    if (d == Complex{}) break;
    const Complex next = z - evaluate(p, z) / d;
    const double val = std::abs(evaluate(p, next));
    if (!(val < best)) break;
    z = next;
    best = val;
  }
  return z;
}

struct Chart {
  Complex value;  // Z when north, W = 1/Z when south
  bool south;
};

Vec3 chart_to_vector(const Chart& c) {
  if (!c.south) return stereographic_to_vector(c.value);
  const Complex w = c.value;
  const double n2 = std::norm(w);
  return Vec3(2.0 * w.real(), -2.0 * w.imag(), n2 - 1.0) / (1.0 + n2);
}

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t i) {
    while (parent_[i] != i) i = parent_[i] = parent_[parent_[i]];
    return i;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

// Merges `members` into one root of multiplicity members.size() when P and
// its first m-2 derivatives vanish at the refined center.
bool try_merge(std::vector<Chart>& roots, const std::vector<std::size_t>& members, const std::vector<Vec3>& pts,
               const Polynomial& p, const Polynomial& rp, const Polynomial& noise, const Polynomial& rnoise,
               double radius, double merge_tol) {
  const int m = static_cast<int>(members.size());
  Vec3 mean = Vec3::Zero();
  for (auto i : members) mean += pts[i];
  const bool south = mean.z() < 0.0;
  const Polynomial& poly = south ? rp : p;
  const Polynomial& slack = south ? rnoise : noise;

  Complex centroid{};
  for (auto i : members) {
    const Chart& c = roots[i];
    centroid += (c.south == south) ? c.value : 1.0 / c.value;
  }
  centroid /= static_cast<double>(m);

  // The (m-1)-th derivative has a simple root at an m-fold root of P.
  const Polynomial dm1 = derivative(poly, m - 1);
  const Polynomial dm = derivative(poly, m);
  Complex z = centroid;
  for (int it = 0; it < 60; ++it) {
    const Complex d = evaluate(dm, z);
    if (d == Complex{}) break;
    const Complex step = evaluate(dm1, z) / d;
    z -= step;
    if (std::abs(step) <= 1e-17 * (1.0 + std::abs(z))) break;
  }
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  if ((chart_to_vector({z, south}) - chart_to_vector({centroid, south})).norm() > radius) return false;

  for (int order = 0; order < m - 1; ++order) {
    const double r = std::abs(z);
    const double value = std::abs(evaluate(derivative(poly, order), z));
    if (value > merge_tol * derivative_scale(poly, order, r) + derivative_scale(slack, order, r)) return false;
  }
  for (auto i : members) roots[i] = Chart{z, south};
  return true;
}

Chart vector_to_chart(const Vec3& v) {
  if (v.z() >= 0.0) return {Complex(v.x(), v.y()) / (1.0 + v.z()), false};
  return {Complex(v.x(), -v.y()) / (1.0 - v.z()), true};
}

// A merged multiple root is only as accurate as the coefficients allow, so
// the two halves of an antipodal pair can disagree by more than the pairing
// tolerance. Equal clusters facing each other are moved onto a common axis.
void align_antipodal_clusters(std::vector<Chart>& roots, const std::vector<std::vector<std::size_t>>& merged,
                              double radius) {
  std::vector<bool> used(merged.size(), false);
  for (std::size_t a = 0; a < merged.size(); ++a) {
    if (used[a]) continue;
    const Vec3 va = chart_to_vector(roots[merged[a].front()]);
    std::size_t best = merged.size();
    double best_gap = radius;
    for (std::size_t b = a + 1; b < merged.size(); ++b) {
      if (used[b] || merged[b].size() != merged[a].size()) continue;
      const double gap = (va + chart_to_vector(roots[merged[b].front()])).norm();
      if (gap < best_gap) {
        best_gap = gap;
        best = b;
      }
    }
    if (best == merged.size()) continue;
    used[a] = used[best] = true;
    const Vec3 axis = (va - chart_to_vector(roots[merged[best].front()])).normalized();
    for (auto i : merged[a]) roots[i] = vector_to_chart(axis);
    for (auto i : merged[best]) roots[i] = vector_to_chart(-axis);
  }
}

// Replaces each cluster of nearby roots that is numerically a single
// multiple root by identical copies of that root. An m-fold root scatters
// by roughly eps^(1/m), so clusters are formed coarse to fine and only
// verified clusters are merged.
void merge_multiple_roots(std::vector<Chart>& roots, const Polynomial& p, const Polynomial& noise,
                          const RootOptions& opt) {
  const std::size_t n = roots.size();
  const Polynomial rp = reversed(p);
  const Polynomial rnoise = reversed(noise);
  std::vector<bool> settled(n, false);
  std::vector<std::vector<std::size_t>> merged;
  for (double radius = opt.cluster_radius; radius >= 1e-7; radius *= 0.2) {
    std::vector<Vec3> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = chart_to_vector(roots[i]);
    DisjointSets sets(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (!settled[i] && !settled[j] && (pts[i] - pts[j]).norm() < radius) sets.unite(i, j);

    std::vector<std::vector<std::size_t>> clusters(n);
    for (std::size_t i = 0; i < n; ++i)
      if (!settled[i]) clusters[sets.find(i)].push_back(i);
    for (auto& members : clusters) {
      if (members.size() < 2) continue;
      if (try_merge(roots, members, pts, p, rp, noise, rnoise, radius, opt.merge_tol)) {
        for (auto i : members) settled[i] = true;
        merged.push_back(std::move(members));
      }
    }
  }
  if (opt.symmetric_strip) align_antipodal_clusters(roots, merged, opt.cluster_radius);
}

// First-order displacement of each root under the coefficient noise: an
// m-fold root is a simple root of P^(m-1), so it moves by
// noise(P^(m-1)) / |P^(m)|. Returned as the largest chord.
double root_uncertainty(const std::vector<Chart>& roots, const Polynomial& p, const Polynomial& noise) {
  if (std::all_of(noise.begin(), noise.end(), [](Complex c) { return c == Complex{}; })) return 0.0;
  const Polynomial rp = reversed(p);
  const Polynomial rnoise = reversed(noise);
  double worst = 0.0;
  for (const auto& c : roots) {
    const int m = static_cast<int>(std::count_if(roots.begin(), roots.end(), [&](const Chart& o) {
      return o.south == c.south && o.value == c.value;
    }));
    const Polynomial& poly = c.south ? rp : p;
    const double r = std::abs(c.value);
    const double slope = std::abs(evaluate(derivative(poly, m), c.value));
    const double shift = derivative_scale(c.south ? rnoise : noise, m - 1, r) / slope;
    worst = std::max(worst, std::isfinite(shift) ? 2.0 * shift / (1.0 + r * r) : 2.0);
  }
  return std::min(worst, 2.0);
}

}  // namespace

Complex evaluate(const Polynomial& p, Complex z) {
  Complex acc{};
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial derivative(const Polynomial& p, int order) {
  Polynomial d = p;
  for (int o = 0; o < order; ++o) {
    if (d.size() <= 1) return Polynomial{Complex{}};
    Polynomial next(d.size() - 1);
    for (std::size_t n = 1; n < d.size(); ++n) next[n - 1] = static_cast<double>(n) * d[n];
    d = std::move(next);
  }
  return d;
}

std::vector<Complex> companion_roots(const Polynomial& p) {
  const auto n = static_cast<Eigen::Index>(p.size()) - 1;
  if (n < 1) return {};
  const Complex lead = p.back();
  if (lead == Complex{}) throw DomainError("companion matrix needs a nonzero leading coefficient");
  if (n == 1) return {-p[0] / lead};
  ComplexMatrix c = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) c(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) c(i, n - 1) = -p[static_cast<std::size_t>(i)] / lead;
  balance(c);
  Eigen::ComplexEigenSolver<ComplexMatrix> solver(c, false);
  const auto& ev = solver.eigenvalues();
  return std::vector<Complex>(ev.data(), ev.data() + ev.size());
}

Vec3 stereographic_to_vector(Complex z) {
  const double n2 = std::norm(z);
  if (!std::isfinite(n2)) return Vec3(0.0, 0.0, -1.0);
  return Vec3(2.0 * z.real(), 2.0 * z.imag(), 1.0 - n2) / (1.0 + n2);
}

SphereRoots sphere_roots(const Polynomial& p_in, const RootOptions& opt) {
  if (p_in.empty()) throw DomainError("empty polynomial");
  double scale = 0.0;
  for (const auto& c : p_in) scale = std::max(scale, std::abs(c));
  if (scale == 0.0) throw DomainError("zero polynomial has no root set");

  Polynomial p(p_in.size());
  std::transform(p_in.begin(), p_in.end(), p.begin(), [scale](Complex c) { return c / scale; });

  const auto is_zero = [&](Complex c) { return std::abs(c) <= opt.zero_tol; };
  std::size_t lo = 0;
  while (lo < p.size() && is_zero(p[lo])) ++lo;
  std::size_t hi = p.size() - 1;
  while (hi > lo && is_zero(p[hi])) --hi;

  SphereRoots out;
  std::size_t first = lo, last = hi;
  if (opt.symmetric_strip) {
    const std::size_t d = std::min(lo, p.size() - 1 - hi);
    first = d;
    last = p.size() - 1 - d;
  }
  out.at_zero = static_cast<int>(first);
  out.at_infinity = static_cast<int>(p.size() - 1 - last);

  const Polynomial core(p.begin() + static_cast<std::ptrdiff_t>(first),
                        p.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  const Polynomial dcore = derivative(core);
  const Polynomial rcore = reversed(core);
  const Polynomial drcore = derivative(rcore);

  Polynomial noise(p.size());
  if (!opt.noise.empty()) {
    if (opt.noise.size() != p.size()) throw DomainError("noise needs one entry per coefficient");
    for (std::size_t i = 0; i < p.size(); ++i) noise[i] = opt.noise[i] / scale;
  }
  const Polynomial core_noise(noise.begin() + static_cast<std::ptrdiff_t>(first),
                              noise.begin() + static_cast<std::ptrdiff_t>(last) + 1);
  const Polynomial rcore_noise = reversed(core_noise);

  std::vector<Chart> roots;
  for (Complex z : companion_roots(core)) {
    if (std::abs(z) <= 1.0) {
      roots.push_back({polish(core, dcore, core_noise, z, opt.polish_steps), false});
    } else {
      roots.push_back({polish(rcore, drcore, rcore_noise, 1.0 / z, opt.polish_steps), true});
    }
  }
  // Stripped coefficients may only be small, not zero, so the pole roots
  // take part in merging against the full polynomial.
  roots.insert(roots.end(), static_cast<std::size_t>(out.at_zero), Chart{Complex{}, false});
  roots.insert(roots.end(), static_cast<std::size_t>(out.at_infinity), Chart{Complex{}, true});
  merge_multiple_roots(roots, p, noise, opt);

  out.points.reserve(roots.size());
  for (const auto& r : roots) out.points.push_back(chart_to_vector(r));
  out.uncertainty = root_uncertainty(roots, p, noise);
  return out;
}

}  // namespace multiaxial
