#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "multiaxial/classify.hpp"

namespace multiaxial {

/// How the separability verdict of a report was reached.
enum class SeparabilityMethod { pure_recipe, ppt, undetermined };

struct SeparabilitySummary {
  SeparabilityMethod method = SeparabilityMethod::undetermined;
  std::optional<bool> separable;  // empty when undetermined
  std::string reason;
  /// Product-state recipe verdict for pure states.
  std::optional<Separability> pure_recipe;
  /// Two-qubit partial transpose, j = 1 only.
  std::optional<PptResult> ppt;
};

/// Everything `analyze` reports about one state.
struct AnalysisReport {
  HalfInteger j;
  ValidationReport validation;
  SphericalTensorSet tensors{HalfInteger(0)};
  std::vector<RankDecomposition> ranks;
  std::vector<std::optional<DegeneracyConfiguration>> configurations;  // parallel to ranks
  std::optional<ClassSignature> signature;
  SeparabilitySummary separability;
  /// Non-fatal problems: failed validation, axis pairing failures.
  std::vector<std::string> diagnostics;

  bool ok() const { return validation.valid() && diagnostics.empty(); }
};

/// Runs the full pipeline. Decomposition errors are recorded as diagnostics.
AnalysisReport analyze(const DensityMatrix& rho, const Tolerances& tol = {});

nlohmann::ordered_json to_json(const AnalysisReport& report);
std::string format_report_json(const AnalysisReport& report);
std::string format_report_text(const AnalysisReport& report);

nlohmann::ordered_json to_json(const LuVerdict& verdict);

std::string_view method_name(SeparabilityMethod m);

}  // namespace multiaxial
