#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "multiaxial/families.hpp"
#include "multiaxial/fano.hpp"
#include "multiaxial/spin_state.hpp"

namespace multiaxial {

/// Off-diagonal mismatch |rho - rho^dagger| accepted (and symmetrized away)
/// when reading hand-written matrices.
inline constexpr double kInputHermiticityTol = 1e-8;

/// A state read from disk. `pure` is set when the document held amplitudes.
struct StateDocument {
  DensityMatrix rho;
  std::optional<PureState> pure;
};

/// State documents, basis m = +j .. -j:
///   {"j": "3/2", "basis": "jm_descending", "matrix": [[{"re": 0.5, "im": 0}, ...], ...]}
///   {"j": "3/2", "amplitudes": [{"re": ..., "im": ...}, ...]}
/// A tensor document (see parse_tensors) is also accepted and reconstructed.
/// Complex entries may also be bare numbers. Throws ParseError (with byte
/// offset when known), StructuralError for shape mismatches and
/// ValidationError for non-Hermitian matrices or unnormalized amplitudes.
StateDocument parse_state(std::string_view text);
StateDocument read_state_file(const std::string& path);

std::string format_state(const DensityMatrix& rho);
std::string format_state(const PureState& psi);

/// {"j": "1", "tensors": {"1": [{"q": -1, "re": ..., "im": ...}, ...], ...}}.
/// Missing ranks or components are zero; t^0_0 defaults to 1.
SphericalTensorSet parse_tensors(std::string_view text);
std::string format_tensors(const SphericalTensorSet& t);

/// {"family": "biaxial", "params": {"r2": 0.4, "theta": 0.785}}.
/// Parameter values may be numbers or expressions such as "pi/3" or "sqrt(2/3)".
FamilySpec parse_family_spec(std::string_view text);

/// Evaluates +, -, *, /, parentheses, pi and sqrt(). Throws ParseError.
double evaluate_expression(std::string_view text);

/// Whole file as a string. Throws Error if it cannot be read.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace multiaxial
