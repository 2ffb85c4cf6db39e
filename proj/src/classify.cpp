#include "multiaxial/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include "multiaxial/families.hpp"

namespace multiaxial {

namespace {

constexpr double kPurityTol = 1e-8;
constexpr double kReferenceTol = 1e-7;
// Axis noise above which a rank is left out of the pure-state test.
constexpr double kResolvedAxis = 1e-3;

std::string join_parts(const std::vector<int>& parts) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts[i]);
  }
  return s;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
  while (parent[i] != i) i = parent[i] = parent[parent[i]];
  return i;
}

bool lists_match(const std::vector<double>& a, const std::vector<double>& b, double tol) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (std::abs(a[i] - b[i]) > tol) return false;
  return true;
}

// A distinct axis of a state together with the (rank, multiplicity) slots it fills.
struct LabelledAxis {
  Vec3 dir;
  std::vector<std::pair<int, int>> label;
};

std::vector<LabelledAxis> labelled_axes(const MarDecomposition& d, double tol) {
  std::vector<LabelledAxis> out;
  for (const auto& rank : d.ranks) {
    for (const auto& a : rank.axes) {
      auto it = std::find_if(out.begin(), out.end(), [&](const LabelledAxis& l) {
        return Axis::from_vector(l.dir).angle_to(a.axis) <= tol;
      });
      if (it == out.end()) {
        out.push_back({a.axis.direction(), {}});
        it = std::prev(out.end());
      }
      it->label.emplace_back(rank.k, a.multiplicity);
    }
  }
  for (auto& l : out) std::sort(l.label.begin(), l.label.end());
  return out;
}

double line_angle(const Vec3& a, const Vec3& b) { return std::atan2(a.cross(b).norm(), std::abs(a.dot(b))); }

// Right-handed frame whose first column is u and whose (u, second) plane contains v.
Eigen::Matrix3d frame(const Vec3& u, const Vec3& v) {
  Vec3 e1 = u.normalized();
  Vec3 e2 = v - v.dot(e1) * e1;
  if (e2.norm() < 1e-12) {
    // Any perpendicular will do.
    e2 = std::abs(e1.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
    e2 -= e2.dot(e1) * e1;
  }
  e2.normalize();
  Eigen::Matrix3d f;
  f.col(0) = e1;
  f.col(1) = e2;
  f.col(2) = e1.cross(e2);
  return f;
}

bool maps_axes(const Eigen::Matrix3d& r, const std::vector<LabelledAxis>& a, const std::vector<LabelledAxis>& b,
               double tol) {
  for (const auto& x : a) {
    const Vec3 y = r * x.dir;
    const bool hit = std::any_of(b.begin(), b.end(), [&](const LabelledAxis& z) {
      return z.label == x.label && line_angle(y, z.dir) <= tol;
    });
    if (!hit) return false;
  }
  return true;
}

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

std::vector<double> sorted_spectrum(const DensityMatrix& rho) {
  const ComplexMatrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h, Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  return std::vector<double>(ev.data(), ev.data() + ev.size());
}

}  // namespace

std::string DegeneracyConfiguration::str() const { return "D^" + std::to_string(k) + "_" + join_parts(parts); }

std::string DegeneracyConfiguration::text() const {
  return "D^" + std::to_string(k) + "_{" + join_parts(parts) + "}";
}

std::optional<DegeneracyConfiguration> degeneracy_configuration(const RankDecomposition& decomp,
                                                                double angular_tol) {
  if (!decomp.present() || decomp.axes.empty()) return std::nullopt;
  const std::size_t n = decomp.axes.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (decomp.axes[i].axis.angle_to(decomp.axes[j].axis) <= angular_tol)
        parent[find_root(parent, i)] = find_root(parent, j);

  std::map<std::size_t, int> counts;
  for (std::size_t i = 0; i < n; ++i) counts[find_root(parent, i)] += decomp.axes[i].multiplicity;
  DegeneracyConfiguration cfg{decomp.k, {}};
  for (const auto& [root, c] : counts) cfg.parts.push_back(c);
  std::sort(cfg.parts.begin(), cfg.parts.end(), std::greater<>());
  return cfg;
}

std::size_t Fingerprint::invariant_count() const {
  return static_cast<std::size_t>(std::count_if(r.begin(), r.end(), [](double x) { return x > 0.0; })) +
         cosines.size();
}

std::string ClassSignature::str() const {
  std::string s = "{";
  bool first = true;
  for (const auto& e : entries) {
    if (!e.present) continue;
    if (!first) s += ", ";
    s += e.configuration->str();
    first = false;
  }
  return s + "}";
}

std::string ClassSignature::text() const {
  std::string s = "{";
  bool first = true;
  for (const auto& e : entries) {
    if (!e.present) continue;
    if (!first) s += ", ";
    s += e.configuration->text();
    first = false;
  }
  return s + "}";
}

bool ClassSignature::same_configurations(const ClassSignature& other) const {
  if (entries.size() != other.entries.size()) return false;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (entries[i].present != other.entries[i].present) return false;
    if (entries[i].configuration != other.entries[i].configuration) return false;
  }
  return true;
}

ClassSignature class_signature(const MarDecomposition& decomp, const Tolerances& tol) {
  ClassSignature sig;
  for (const auto& rank : decomp.ranks) {
    SignatureEntry e;
    e.k = rank.k;
    e.configuration = degeneracy_configuration(rank, tol.angle);
    e.present = e.configuration.has_value();
    sig.entries.push_back(std::move(e));
    sig.fingerprint.r.push_back(rank.r);
  }
  sig.fingerprint.cosines = pairwise_invariants(decomp.ranks);
  return sig;
}

ClassSignature class_signature(const DensityMatrix& rho, const Tolerances& tol) {
  return class_signature(decompose(rho, tol), tol);
}

std::string_view separability_name(Separability s) {
  switch (s) {
    case Separability::separable: return "separable";
    case Separability::not_separable: return "not separable";
    case Separability::not_applicable: return "not applicable";
  }
  return "?";
}

std::vector<double> separable_reference(HalfInteger j) {
  const auto d = decompose(pure_to_density(make_dicke(j, j)));
  std::vector<double> r;
  for (const auto& rank : d.ranks) r.push_back(rank.r);
  return r;
}

SeparabilityVerdict pure_separability_check(const DensityMatrix& rho, const Tolerances& tol) {
  const ValidationReport report = validate(rho, tol);
  if (std::abs(report.purity - 1.0) > kPurityTol) {
    std::ostringstream os;
    os << "not applicable: mixed (Tr rho^2 = " << report.purity << ")";
    return {Separability::not_applicable, os.str()};
  }
  const MarDecomposition d = decompose(rho, tol);

  // Ranks whose axes sit below the noise floor carry no usable direction; rank 1 is always resolved and
  // on its own already decides coherence, so skipping the rest keeps the verdict sound.
  std::vector<std::pair<Vec3, double>> dirs;
  int skipped = 0;
  for (const auto& rank : d.ranks) {
    if (rank.axis_uncertainty > kResolvedAxis) {
      ++skipped;
      continue;
    }
    for (const auto& a : rank.axes) dirs.emplace_back(a.axis.direction(), rank.axis_uncertainty);
  }
  double worst = 0.0;
  bool collinear = true;
  for (std::size_t i = 0; i < dirs.size(); ++i)
    for (std::size_t j = i + 1; j < dirs.size(); ++j) {
      const double angle = line_angle(dirs[i].first, dirs[j].first);
      worst = std::max(worst, angle);
      if (angle > tol.angle + dirs[i].second + dirs[j].second) collinear = false;
    }
  if (!collinear) {
    std::ostringstream os;
    os << "axes not collinear (largest angle " << worst << " rad)";
    return {Separability::not_separable, os.str()};
  }

  // A k-fold product of axes each off by u moves r_k by about k u relative.
  const auto ref = separable_reference(rho.j());
  for (std::size_t i = 0; i < d.ranks.size(); ++i) {
    const auto& rank = d.ranks[i];
    if (rank.axis_uncertainty > kResolvedAxis) continue;
    const double slack = kReferenceTol + ref[i] * rank.k * rank.axis_uncertainty;
    if (std::abs(rank.r - ref[i]) > slack) {
      std::ostringstream os;
      os.precision(10);
      os << "axes collinear but r_" << rank.k << " = " << rank.r << " differs from the product-state value " << ref[i];
      return {Separability::not_separable, os.str()};
    }
  }
  std::string reason = "all axes collinear and every r_k matches the product-state values";
  if (skipped > 0) reason += " (" + std::to_string(skipped) + " top ranks below the noise floor skipped)";
  return {Separability::separable, reason};
}

SeparabilityVerdict pure_separability_check(const PureState& psi, const Tolerances& tol) {
  return pure_separability_check(pure_to_density(psi), tol);
}

std::string_view equivalence_name(Equivalence e) {
  switch (e) {
    case Equivalence::equivalent: return "equivalent";
    case Equivalence::inequivalent: return "inequivalent";
    case Equivalence::fingerprint_match_only: return "fingerprint-match-only";
  }
  return "?";
}

Eigen::Matrix3d rotation_matrix(const EulerAngles& g) {
  using Eigen::AngleAxisd;
  return (AngleAxisd(g.alpha, Vec3::UnitZ()) * AngleAxisd(g.beta, Vec3::UnitY()) * AngleAxisd(g.gamma, Vec3::UnitZ()))
      .toRotationMatrix();
}

EulerAngles euler_from_matrix(const Eigen::Matrix3d& r) {
  constexpr double kGimbal = 1e-12;
  EulerAngles g;
  const double c = std::clamp(r(2, 2), -1.0, 1.0);
  const double s = std::hypot(r(0, 2), r(1, 2));
  g.beta = std::atan2(s, c);
  if (s > kGimbal) {
    g.alpha = std::atan2(r(1, 2), r(0, 2));
    g.gamma = std::atan2(r(2, 1), -r(2, 0));
  } else if (c > 0.0) {
    g.alpha = std::atan2(r(1, 0), r(0, 0));
  } else {
    g.alpha = std::atan2(-r(1, 0), r(1, 1));
  }
  return g.canonical();
}

LuVerdict lu_equivalent(const DensityMatrix& a, const DensityMatrix& b, const Tolerances& tol) {
  if (a.j() != b.j()) {
    throw StructuralError("cannot compare spin " + a.j().str() + " with spin " + b.j().str());
  }
  const MarDecomposition da = decompose(a, tol), db = decompose(b, tol);
  const ClassSignature sa = class_signature(da, tol), sb = class_signature(db, tol);

  if (!sa.same_configurations(sb)) {
    return {Equivalence::inequivalent, std::nullopt, "configurations differ: " + sa.str() + " vs " + sb.str()};
  }
  if (!lists_match(sa.fingerprint.r, sb.fingerprint.r, tol.fingerprint)) {
    return {Equivalence::inequivalent, std::nullopt, "r_k values differ"};
  }
  if (!lists_match(sa.fingerprint.cosines, sb.fingerprint.cosines, tol.fingerprint)) {
    return {Equivalence::inequivalent, std::nullopt, "pairwise axis angles differ"};
  }

  const auto accept = [&](const Eigen::Matrix3d& r) -> std::optional<EulerAngles> {
    const EulerAngles g = euler_from_matrix(r);
    const DensityMatrix moved = rotate_density(a, g);
    if (max_abs_difference(moved.matrix(), b.matrix()) > tol.fingerprint) return std::nullopt;
    if (!lists_match(sorted_spectrum(moved), sorted_spectrum(b), tol.fingerprint)) return std::nullopt;
    return g;
  };
  const auto found = [](const EulerAngles& g) {
    return LuVerdict{Equivalence::equivalent, g, "rotation witness maps the axes and the density"};
  };

  const auto la = labelled_axes(da, tol.angle), lb = labelled_axes(db, tol.angle);
  if (la.empty()) {
    if (auto g = accept(Eigen::Matrix3d::Identity())) return found(*g);
    return {Equivalence::fingerprint_match_only, std::nullopt, "no axes and the densities differ"};
  }

  // Best-conditioned reference pair in A.
  std::size_t i1 = 0, i2 = 0;
  double best_sin = -1.0;
  for (std::size_t i = 0; i < la.size(); ++i)
    for (std::size_t j = i + 1; j < la.size(); ++j) {
      const double s = la[i].dir.cross(la[j].dir).norm();
      if (s > best_sin) {
        best_sin = s;
        i1 = i;
        i2 = j;
      }
    }
  const bool collinear = best_sin < std::sin(tol.angle);

  if (collinear) {
    const Eigen::Matrix3d fa = frame(la[i1].dir, Vec3::UnitZ());
    for (const auto& y : lb) {
      if (y.label != la[i1].label) continue;
      for (double s : {1.0, -1.0}) {
        const Eigen::Matrix3d r = frame(s * y.dir, Vec3::UnitZ()) * fa.transpose();
        if (!maps_axes(r, la, lb, tol.angle)) continue;
        if (auto g = accept(r)) return found(*g);
      }
    }
  } else {
    const Vec3 u = la[i1].dir, v = la[i2].dir;
    const double cuv = u.dot(v);
    const Eigen::Matrix3d fa = frame(u, v);
    for (std::size_t p = 0; p < lb.size(); ++p) {
      if (lb[p].label != la[i1].label) continue;
      for (std::size_t q = 0; q < lb.size(); ++q) {
        if (q == p || lb[q].label != la[i2].label) continue;
        const double cb = lb[p].dir.dot(lb[q].dir);
        if (std::abs(std::abs(cuv) - std::abs(cb)) > tol.angle) continue;
        for (double s1 : {1.0, -1.0}) {
          for (double s2 : {1.0, -1.0}) {
            if (std::abs(cuv - s1 * s2 * cb) > tol.angle) continue;
            const Eigen::Matrix3d r = frame(s1 * lb[p].dir, s2 * lb[q].dir) * fa.transpose();
            if (!maps_axes(r, la, lb, tol.angle)) continue;
            if (auto g = accept(r)) return found(*g);
          }
        }
      }
    }
  }
  return {Equivalence::fingerprint_match_only, std::nullopt,
          "invariants agree but no rotation mapping one state onto the other was found"};
}

}  // namespace multiaxial
