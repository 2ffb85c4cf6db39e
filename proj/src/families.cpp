#include "multiaxial/families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "multiaxial/errors.hpp"
#include "multiaxial/fano.hpp"

namespace multiaxial {

namespace {

constexpr HalfInteger kSpinOne = HalfInteger(1);

PureState basis_state(HalfInteger j, HalfInteger m) {
  ComplexVector a = ComplexVector::Zero(dimension(j));
  a(basis_index(j, m)) = 1.0;
  return PureState(j, std::move(a));
}

HalfInteger spin_of_qubits(int n, const char* family) {
  if (n < 2) throw DomainError(std::string(family) + " needs N >= 2 qubits, got " + std::to_string(n));
  const HalfInteger j = HalfInteger::from_twice(n);
  require_spin(j);
  return j;
}

// Spin-1 tensors with the given rank-1 and rank-2 parts, turned into a matrix.
DensityMatrix spin_one_from_tensors(const SphericalTensor& t1, const SphericalTensor& t2) {
  SphericalTensorSet t(kSpinOne);
  t.rank(1) = t1;
  t.rank(2) = t2;
  return reconstruct_density(t);
}

SphericalTensor alignment(double r2, double theta) {
  SphericalTensor t2(2);
  const double c = std::cos(theta), s = std::sin(theta);
  t2[0] = r2 * (1.0 + c * c) / std::sqrt(6.0);
  t2[2] = t2[-2] = -0.5 * r2 * s * s;
  return t2;
}

double param(const FamilySpec& spec, const std::string& name) {
  const auto it = spec.params.find(name);
  if (it == spec.params.end()) {
    throw DomainError("family " + std::string(family_name(spec.family)) + " is missing parameter '" + name + "'");
  }
  return it->second;
}

int integer_param(const FamilySpec& spec, const std::string& name) {
  const double v = param(spec, name);
  if (v != std::floor(v)) {
    throw DomainError(name + " must be an integer");
  }
  return static_cast<int>(v);
}

HalfInteger half_param(const FamilySpec& spec, const std::string& name) {
  try {
    return HalfInteger::from_double(param(spec, name));
  } catch (const std::invalid_argument&) {
    throw DomainError(name + " must be a multiple of 1/2");
  }
}

}  // namespace

PureState make_dicke(HalfInteger j, HalfInteger m) {
  require_spin(j);
  if (abs(m) > j || (j - m).twice() % 2 != 0) {
    throw DomainError("m = " + m.str() + " is not a projection of j = " + j.str());
  }
  return basis_state(j, m);
}

PureState make_ghz(int n) {
  const HalfInteger j = spin_of_qubits(n, "GHZ");
  ComplexVector a = ComplexVector::Zero(dimension(j));
  a(0) = a(dimension(j) - 1) = 0.5 * std::numbers::sqrt2;
  return PureState(j, std::move(a));
}

PureState make_w(int n) {
  const HalfInteger j = spin_of_qubits(n, "W");
  return basis_state(j, -j + HalfInteger(1));
}

PureState make_bell() { return basis_state(kSpinOne, HalfInteger(0)); }

PureState make_coherent(HalfInteger j, double theta, double phi) {
  require_spin(j);
  const int n = j.twice();
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  ComplexVector a(dimension(j));
  for (int idx = 0; idx < dimension(j); ++idx) {
    const HalfInteger m = basis_m(j, idx);
    const int up = (j + m).twice() / 2;  // j + m
    const double mag = std::sqrt(binomial(n, up)) * std::pow(c, up) * std::pow(s, n - up);
    a(idx) = std::polar(mag, -m.value() * phi);
  }
  return PureState::normalized(j, std::move(a));
}

DensityMatrix make_uniaxial(double r1, double theta1, double phi1) {
  SphericalTensor t1 = q_vector(theta1, phi1);
  for (int q = -1; q <= 1; ++q) t1[q] *= r1;
  return spin_one_from_tensors(t1, SphericalTensor(2));
}

DensityMatrix make_biaxial(double r2, double theta) { return spin_one_from_tensors(SphericalTensor(1), alignment(r2, theta)); }

DensityMatrix make_triaxial(double r1, double r2, double theta) {
  SphericalTensor t1(1);
  t1[0] = r1;
  return spin_one_from_tensors(t1, alignment(r2, theta));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::dicke: return "dicke";
    case Family::ghz: return "ghz";
    case Family::w: return "w";
    case Family::bell: return "bell";
    case Family::separable_coherent: return "separable_coherent";
    case Family::uniaxial: return "uniaxial";
    case Family::biaxial: return "biaxial";
    case Family::triaxial: return "triaxial";
  }
  return "?";
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> families{Family::dicke,    Family::ghz,     Family::w,       Family::bell,
                                            Family::separable_coherent, Family::uniaxial, Family::biaxial,
                                            Family::triaxial};
  return families;
}

Family parse_family(std::string_view name) {
  for (Family f : all_families())
    if (family_name(f) == name) return f;
  if (name == "coherent") return Family::separable_coherent;
  std::ostringstream os;
  os << "unknown family '" << name << "'; valid families:";
  for (Family f : all_families()) os << "\n  " << family_name(f) << ": " << family_ranges(f);
  throw DomainError(os.str());
}

const std::vector<std::string>& family_parameters(Family f) {
  static const std::map<Family, std::vector<std::string>> names{
      {Family::dicke, {"j", "m"}},
      {Family::ghz, {"N"}},
      {Family::w, {"N"}},
      {Family::bell, {}},
      {Family::separable_coherent, {"j", "theta", "phi"}},
      {Family::uniaxial, {"r1", "theta1", "phi1"}},
      {Family::biaxial, {"r2", "theta"}},
      {Family::triaxial, {"r1", "r2", "theta"}},
  };
  return names.at(f);
}

std::string family_ranges(Family f) {
  switch (f) {
    case Family::dicke: return "j in {1/2, 1, ..., 20}, m in {-j, ..., j}";
    case Family::ghz: return "N integer in [2, 40]";
    case Family::w: return "N integer in [2, 40]";
    case Family::bell: return "no parameters";
    case Family::separable_coherent: return "j in {1/2, 1, ..., 20}, theta and phi real (radians)";
    case Family::uniaxial: return "r1 in (0, sqrt(2/3)] for a valid state, theta1 and phi1 real (radians)";
    case Family::biaxial: return "r2 in (0, sqrt3], theta real (radians)";
    case Family::triaxial: return "r1, r2 real with a positive semi-definite result, theta real (radians)";
  }
  return "";
}

FamilyState build_family(const FamilySpec& spec, const Tolerances& tol) {
  const auto& allowed = family_parameters(spec.family);
  for (const auto& [name, value] : spec.params) {
    if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
      throw DomainError("family " + std::string(family_name(spec.family)) + " has no parameter '" + name +
                        "'; expected " + family_ranges(spec.family));
    }
    if (!std::isfinite(value)) throw DomainError("parameter '" + name + "' is not finite");
  }

  std::optional<PureState> pure;
  std::optional<DensityMatrix> rho;
  bool in_range = true;
  std::string note;
  const auto check_open_closed = [&](const char* name, double v, double hi) {
    if (!(v > 0.0 && v <= hi + 1e-12)) {
      in_range = false;
      note = std::string(name) + " = " + std::to_string(v) + " outside " + family_ranges(spec.family);
    }
  };

  try {
    switch (spec.family) {
      case Family::dicke:
        pure = make_dicke(half_param(spec, "j"), half_param(spec, "m"));
        break;
      case Family::ghz:
        pure = make_ghz(integer_param(spec, "N"));
        break;
      case Family::w:
        pure = make_w(integer_param(spec, "N"));
        break;
      case Family::bell:
        pure = make_bell();
        break;
      case Family::separable_coherent:
        pure = make_coherent(half_param(spec, "j"), param(spec, "theta"), param(spec, "phi"));
        break;
      case Family::uniaxial: {
        const double r1 = param(spec, "r1");
        check_open_closed("r1", r1, std::sqrt(2.0 / 3.0));
        rho = make_uniaxial(r1, param(spec, "theta1"), param(spec, "phi1"));
        break;
      }
      case Family::biaxial: {
        const double r2 = param(spec, "r2");
        check_open_closed("r2", r2, std::sqrt(3.0));
        rho = make_biaxial(r2, param(spec, "theta"));
        break;
      }
      case Family::triaxial:
        rho = make_triaxial(param(spec, "r1"), param(spec, "r2"), param(spec, "theta"));
        break;
    }
  } catch (const std::domain_error& e) {
    throw DomainError(std::string(e.what()) + "; expected " + family_ranges(spec.family));
  } catch (const DomainError& e) {
    throw DomainError(std::string(e.what()) + "; expected " + family_ranges(spec.family));
  }

  if (pure) rho = pure_to_density(*pure);
  const ValidationReport report = validate(*rho, tol);
  if (!report.valid()) {
    in_range = false;
    if (note.empty()) note = "not positive semi-definite: min eigenvalue " + std::to_string(report.min_eigenvalue);
  }
  return FamilyState{std::move(*rho), std::move(pure), in_range, std::move(note)};
}

}  // namespace multiaxial
