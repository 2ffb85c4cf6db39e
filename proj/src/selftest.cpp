#include "multiaxial/selftest.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "multiaxial/classify.hpp"
#include "multiaxial/families.hpp"
#include "multiaxial/fano.hpp"

namespace multiaxial {

namespace {

constexpr double kTol = 1e-10;

// Collects failed comparisons of one case.
class Checker {
 public:
  void near(const std::string& what, double got, double want, double tol = kTol) {
    if (!(std::abs(got - want) <= tol)) {
      std::ostringstream os;
      os.precision(12);
      os << what << " = " << got << ", expected " << want << "; ";
      failures_ += os.str();
    }
  }
  void equal(const std::string& what, const std::string& got, const std::string& want) {
    if (got != want) failures_ += what + " = " + got + ", expected " + want + "; ";
  }
  void truth(const std::string& what, bool ok) {
    if (!ok) failures_ += what + " failed; ";
  }
  const std::string& failures() const { return failures_; }

 private:
  std::string failures_;
};

SelftestCase run_case(const std::string& name, const std::function<void(Checker&)>& body) {
  Checker c;
  try {
    body(c);
  } catch (const std::exception& e) {
    return {name, false, std::string("exception: ") + e.what()};
  }
  return {name, c.failures().empty(), c.failures().empty() ? "ok" : c.failures()};
}

double rank_r(const DensityMatrix& rho, int k) { return decompose(rho).ranks.at(static_cast<std::size_t>(k - 1)).r; }

}  // namespace

std::vector<SelftestCase> run_selftest() {
  const double s2 = std::numbers::sqrt2, s3 = std::numbers::sqrt3, s5 = std::sqrt(5.0);
  std::vector<SelftestCase> out;

  out.push_back(run_case("ghz3", [&](Checker& c) {
    const auto rho = pure_to_density(make_ghz(3));
    const auto t = extract_tensors(rho);
    c.near("t2_0", t(2, 0).real(), 1.0);
    c.near("t3_3", t(3, 3).real(), -1.0);
    c.near("t3_-3", t(3, -3).real(), 1.0);
    c.equal("signature", class_signature(rho).str(), "{D^2_2, D^3_1,1,1}");
  }));

  out.push_back(run_case("ghz4", [&](Checker& c) {
    const auto rho = pure_to_density(make_ghz(4));
    const auto t = extract_tensors(rho);
    c.near("t2_0", t(2, 0).real(), std::sqrt(10.0 / 7.0));
    c.near("t4_0", t(4, 0).real(), 1.0 / std::sqrt(14.0));
    c.near("t4_4", t(4, 4).real(), s5 / 2.0);
    c.near("t4_-4", t(4, -4).real(), s5 / 2.0);
    c.equal("signature", class_signature(rho).str(), "{D^2_2, D^4_2,2}");
  }));

  out.push_back(run_case("bell", [&](Checker& c) {
    const auto rho = pure_to_density(make_bell());
    c.near("|t2_0|", std::abs(extract_tensors(rho)(2, 0)), s2);
    c.near("r2", rank_r(rho, 2), s3, 1e-8);
    c.equal("signature", class_signature(rho).str(), "{D^2_2}");
    c.truth("not separable", pure_separability_check(rho).status == Separability::not_separable);
    c.truth("ppt entangled", ppt_two_qubit(symmetric_to_two_qubit(rho)).entangled);
  }));

  out.push_back(run_case("w", [&](Checker& c) {
    const auto rho = pure_to_density(make_w(3));
    const auto t = extract_tensors(rho);
    c.near("t1_0", t(1, 0).real(), -1.0 / s5);
    c.near("t2_0", t(2, 0).real(), -1.0);
    c.near("t3_0", t(3, 0).real(), 3.0 / s5);
    c.equal("signature", class_signature(rho).str(), "{D^1_1, D^2_2, D^3_3}");
    c.near("r1", rank_r(rho, 1), 1.0 / s5, 1e-8);
    c.near("r2", rank_r(rho, 2), std::sqrt(1.5), 1e-8);
    c.near("r3", rank_r(rho, 3), 3.0 / s2, 1e-8);
    c.truth("not separable", pure_separability_check(rho).status == Separability::not_separable);
  }));

  out.push_back(run_case("product spin-1", [&](Checker& c) {
    const auto ref = separable_reference(HalfInteger(1));
    c.near("r1", ref[0], std::sqrt(1.5), 1e-8);
    c.near("r2", ref[1], s3 / 2.0, 1e-8);
    c.truth("separable", pure_separability_check(make_dicke(1, 1)).status == Separability::separable);
  }));

  out.push_back(run_case("product spin-3/2", [&](Checker& c) {
    const auto ref = separable_reference(HalfInteger::from_twice(3));
    c.near("r1", ref[0], 3.0 / s5, 1e-8);
    c.near("r2", ref[1], std::sqrt(1.5), 1e-8);
    c.near("r3", ref[2], 1.0 / s2, 1e-8);
    const auto psi = make_coherent(HalfInteger::from_twice(3), 1.1, 0.4);
    c.truth("coherent separable", pure_separability_check(psi).status == Separability::separable);
  }));

  out.push_back(run_case("maximally mixed", [&](Checker& c) {
    const DensityMatrix rho(HalfInteger(1), ComplexMatrix::Identity(3, 3) / 3.0);
    c.equal("signature", class_signature(rho).str(), "{}");
    c.near("purity", validate(rho).purity, 1.0 / 3.0);
  }));

  out.push_back(run_case("uniaxial", [&](Checker& c) {
    const auto rho = make_uniaxial(0.75, std::numbers::pi / 3, 0.0);
    c.equal("signature", class_signature(rho).str(), "{D^1_1}");
    c.truth("ppt entangled at r1 = 0.75", ppt_two_qubit(symmetric_to_two_qubit(rho)).entangled);
    c.truth("r1 = 1 not positive", !validate(make_uniaxial(1.0, 0.0, 0.0)).positive);
  }));

  out.push_back(run_case("biaxial", [&](Checker& c) {
    c.equal("signature pi/4", class_signature(make_biaxial(0.4, std::numbers::pi / 4)).str(), "{D^2_1,1}");
    c.equal("signature pi/2", class_signature(make_biaxial(0.4, std::numbers::pi / 2)).str(), "{D^2_2}");
    c.equal("signature 0", class_signature(make_biaxial(0.4, 0.0)).str(), "{D^2_2}");
    const auto pure = make_biaxial(s3, std::numbers::pi / 2);
    c.near("purity at r2 = sqrt3", validate(pure).purity, 1.0);
    c.truth("entangled at r2 = sqrt3", ppt_two_qubit(symmetric_to_two_qubit(pure)).entangled);
  }));

  out.push_back(run_case("triaxial", [&](Checker& c) {
    c.equal("signature", class_signature(make_triaxial(std::sqrt(1.5), s3 / 2.0, std::numbers::pi / 4)).str(),
            "{D^1_1, D^2_1,1}");
    const auto at_pole = make_triaxial(std::sqrt(1.5), s3 / 2.0, 0.0);
    c.near("purity at theta = 0", validate(at_pole).purity, 1.0);
    c.truth("separable at theta = 0", pure_separability_check(at_pole).status == Separability::separable);
  }));

  return out;
}

}  // namespace multiaxial
