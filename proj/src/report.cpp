#include "multiaxial/report.hpp"

#include <cmath>
#include <iomanip>
#include <numbers>
#include <sstream>

namespace multiaxial {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr double kPureTol = 1e-8;

double degrees(double rad) { return rad * 180.0 / std::numbers::pi; }

ordered_json axis_json(const AxisCount& a) {
  const auto& p = a.axis.representative();
  ordered_json e;
  e["theta"] = p.theta;
  e["phi"] = p.phi;
  e["theta_deg"] = degrees(p.theta);
  e["phi_deg"] = degrees(p.phi);
  e["multiplicity"] = a.multiplicity;
  return e;
}

ordered_json euler_json(const EulerAngles& g) {
  ordered_json e;
  e["alpha"] = g.alpha;
  e["beta"] = g.beta;
  e["gamma"] = g.gamma;
  return e;
}

std::string fmt(double v, int precision = 10) {
  std::ostringstream os;
  os << std::setprecision(precision) << v;
  return os.str();
}

}  // namespace

std::string_view method_name(SeparabilityMethod m) {
  switch (m) {
    case SeparabilityMethod::pure_recipe: return "pure-recipe";
    case SeparabilityMethod::ppt: return "ppt";
    case SeparabilityMethod::undetermined: return "undetermined";
  }
  return "?";
}

AnalysisReport analyze(const DensityMatrix& rho, const Tolerances& tol) {
  AnalysisReport rep;
  rep.j = rho.j();
  rep.validation = validate(rho, tol);
  rep.tensors = extract_tensors(rho);
  if (!rep.validation.hermitian) rep.diagnostics.push_back("matrix is not Hermitian within tolerance");
  if (!rep.validation.unit_trace) rep.diagnostics.push_back("trace differs from 1 by " + fmt(rep.validation.trace_defect));
  if (!rep.validation.positive) {
    rep.diagnostics.push_back("not positive semi-definite: min eigenvalue " + fmt(rep.validation.min_eigenvalue));
  }

  try {
    const MarDecomposition d = decompose(rep.tensors, tol);
    rep.ranks = d.ranks;
    for (const auto& r : d.ranks) rep.configurations.push_back(degeneracy_configuration(r, tol.angle));
    rep.signature = class_signature(d, tol);
  } catch (const Error& e) {
    rep.diagnostics.push_back(std::string("axis decomposition failed: ") + e.what());
  }

  auto& sep = rep.separability;
  const bool pure = std::abs(rep.validation.purity - 1.0) <= kPureTol;
  if (pure && rep.signature) {
    try {
      const SeparabilityVerdict v = pure_separability_check(rho, tol);
      sep.pure_recipe = v.status;
      sep.method = SeparabilityMethod::pure_recipe;
      sep.separable = v.status == Separability::separable;
      sep.reason = v.reason;
    } catch (const Error& e) {
      rep.diagnostics.push_back(std::string("separability recipe failed: ") + e.what());
    }
  }
  if (rho.j() == HalfInteger(1)) {
    sep.ppt = ppt_two_qubit(symmetric_to_two_qubit(rho), tol.psd);
    if (sep.method != SeparabilityMethod::pure_recipe) {
      sep.method = SeparabilityMethod::ppt;
      sep.separable = !sep.ppt->entangled;
      sep.reason = "partial transpose min eigenvalue " + fmt(sep.ppt->min_eigenvalue);
    }
  }
  if (sep.method == SeparabilityMethod::undetermined) {
    sep.reason = pure ? "axis decomposition unavailable" : "mixed state with j != 1: no criterion implemented";
  }
  return rep;
}

nlohmann::ordered_json to_json(const AnalysisReport& rep) {
  ordered_json doc;
  doc["j"] = rep.j.str();
  doc["purity"] = rep.validation.purity;

  ordered_json val;
  val["valid"] = rep.validation.valid();
  val["hermiticity_defect"] = rep.validation.hermiticity_defect;
  val["trace_defect"] = rep.validation.trace_defect;
  val["min_eigenvalue"] = rep.validation.min_eigenvalue;
  val["purity"] = rep.validation.purity;
  doc["validation"] = std::move(val);

  ordered_json tensors = ordered_json::array();
  for (int k = 0; k <= rep.tensors.max_rank(); ++k)
    for (int q = -k; q <= k; ++q) {
      ordered_json e;
      e["k"] = k;
      e["q"] = q;
      e["re"] = rep.tensors(k, q).real();
      e["im"] = rep.tensors(k, q).imag();
      tensors.push_back(std::move(e));
    }
  doc["tensors"] = std::move(tensors);

  ordered_json ranks = ordered_json::array();
  for (std::size_t i = 0; i < rep.ranks.size(); ++i) {
    const auto& r = rep.ranks[i];
    ordered_json e;
    e["k"] = r.k;
    e["present"] = r.present();
    e["r"] = r.r;
    ordered_json axes = ordered_json::array();
    for (const auto& a : r.axes) axes.push_back(axis_json(a));
    e["axes"] = std::move(axes);
    e["configuration"] = rep.configurations[i] ? ordered_json(rep.configurations[i]->str()) : ordered_json(nullptr);
    e["fit_residual"] = r.fit_residual;
    e["axis_uncertainty"] = r.axis_uncertainty;
    ranks.push_back(std::move(e));
  }
  doc["ranks"] = std::move(ranks);

  if (rep.signature) {
    doc["signature"] = rep.signature->str();
    ordered_json fp;
    fp["r"] = rep.signature->fingerprint.r;
    fp["pairwise_abs_cos"] = rep.signature->fingerprint.cosines;
    fp["invariant_count"] = rep.signature->fingerprint.invariant_count();
    doc["fingerprint"] = std::move(fp);
  } else {
    doc["signature"] = nullptr;
    doc["fingerprint"] = nullptr;
  }

  const auto& s = rep.separability;
  ordered_json sep;
  sep["method"] = std::string(method_name(s.method));
  sep["separable"] = s.separable ? ordered_json(*s.separable) : ordered_json(nullptr);
  sep["reason"] = s.reason;
  sep["pure_recipe"] = s.pure_recipe ? ordered_json(std::string(separability_name(*s.pure_recipe))) : ordered_json(nullptr);
  if (s.ppt) {
    sep["ppt"] = s.ppt->entangled ? "entangled" : "separable";
    sep["ppt_min_eigenvalue"] = s.ppt->min_eigenvalue;
  } else {
    sep["ppt"] = "undetermined";
    sep["ppt_min_eigenvalue"] = nullptr;
  }
  doc["separability"] = std::move(sep);
  doc["diagnostics"] = rep.diagnostics;
  return doc;
}

std::string format_report_json(const AnalysisReport& rep) { return to_json(rep).dump(2) + "\n"; }

std::string format_report_text(const AnalysisReport& rep) {
  std::ostringstream os;
  const auto& v = rep.validation;
  os << "j = " << rep.j.str() << "    purity Tr(rho^2) = " << fmt(v.purity) << "\n";
  os << "valid: " << (v.valid() ? "yes" : "no") << "  (hermiticity " << fmt(v.hermiticity_defect, 3) << ", trace "
     << fmt(v.trace_defect, 3) << ", min eigenvalue " << fmt(v.min_eigenvalue) << ")\n";
  if (rep.signature) os << "class: " << rep.signature->text() << "\n";

  os << "tensors:\n";
  for (int k = 1; k <= rep.tensors.max_rank(); ++k) {
    os << "  t^" << k << ":";
    for (int q = -k; q <= k; ++q) {
      const Complex c = rep.tensors(k, q);
      os << "  [" << q << "] " << fmt(c.real(), 8);
      if (c.imag() != 0.0) os << (c.imag() < 0 ? " - " : " + ") << fmt(std::abs(c.imag()), 8) << "i";
    }
    os << "\n";
  }

  for (std::size_t i = 0; i < rep.ranks.size(); ++i) {
    const auto& r = rep.ranks[i];
    os << "rank " << r.k << ": ";
    if (!r.present()) {
      os << "absent\n";
      continue;
    }
    os << "r = " << fmt(r.r) << "  " << rep.configurations[i]->text() << "  residual " << fmt(r.fit_residual, 3)
       << "\n";
    for (const auto& a : r.axes) {
      const auto& p = a.axis.representative();
      os << "    axis (theta, phi) = (" << std::fixed << std::setprecision(6) << degrees(p.theta) << ", "
         << degrees(p.phi) << ") deg" << std::defaultfloat;
      if (a.multiplicity > 1) os << "  x" << a.multiplicity;
      os << "\n";
    }
  }

  if (rep.signature) {
    const auto& fp = rep.signature->fingerprint;
    os << "invariants: " << fp.invariant_count() << "\n  |cos| pairs:";
    for (double c : fp.cosines) os << " " << fmt(c, 8);
    os << "\n";
  }

  const auto& s = rep.separability;
  os << "separability (" << method_name(s.method) << "): ";
  if (s.separable) os << (*s.separable ? "separable" : "not separable");
  else os << "undetermined";
  os << " - " << s.reason << "\n";
  if (s.ppt) {
    os << "ppt: " << (s.ppt->entangled ? "entangled" : "separable") << " (min eigenvalue "
       << fmt(s.ppt->min_eigenvalue) << ")\n";
  }
  for (const auto& d : rep.diagnostics) os << "diagnostic: " << d << "\n";
  return os.str();
}

nlohmann::ordered_json to_json(const LuVerdict& verdict) {
  ordered_json doc;
  doc["verdict"] = std::string(equivalence_name(verdict.verdict));
  doc["reason"] = verdict.reason;
  doc["witness"] = verdict.witness ? euler_json(*verdict.witness) : ordered_json(nullptr);
  return doc;
}

}  // namespace multiaxial
