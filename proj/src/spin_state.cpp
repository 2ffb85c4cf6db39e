#include "multiaxial/spin_state.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "multiaxial/errors.hpp"

namespace multiaxial {

PureState::PureState(HalfInteger j, ComplexVector amplitudes) : j_(j), a_(std::move(amplitudes)) {
  require_spin(j);
  if (a_.size() != dimension(j)) {
    throw StructuralError("pure state for j = " + j.str() + " needs " + std::to_string(dimension(j)) +
                          " amplitudes, got " + std::to_string(a_.size()));
  }
  const double norm2 = a_.squaredNorm();
  if (std::abs(norm2 - 1.0) > 1e-10) {
    throw ValidationError("pure state is not normalized: sum |a_m|^2 = " + std::to_string(norm2));
  }
}

PureState PureState::normalized(HalfInteger j, ComplexVector amplitudes) {
  const double norm = amplitudes.norm();
  if (norm == 0.0) throw ValidationError("cannot normalize the zero vector");
  amplitudes /= norm;
  return PureState(j, std::move(amplitudes));
}

DensityMatrix::DensityMatrix(HalfInteger j, ComplexMatrix rho) : j_(j), rho_(std::move(rho)) {
  require_spin(j);
  if (rho_.rows() != dimension(j) || rho_.cols() != dimension(j)) {
    throw StructuralError("density matrix for j = " + j.str() + " must be " + std::to_string(dimension(j)) +
                          "x" + std::to_string(dimension(j)) + ", got " + std::to_string(rho_.rows()) + "x" +
                          std::to_string(rho_.cols()));
  }
}

double min_hermitian_eigenvalue(const ComplexMatrix& m) {
  const ComplexMatrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ValidationReport validate(const DensityMatrix& rho, const Tolerances& tol) {
  const ComplexMatrix& m = rho.matrix();
  ValidationReport r;
  r.hermiticity_defect = (m - m.adjoint()).cwiseAbs().maxCoeff();
  r.trace_defect = std::abs(m.trace() - Complex(1.0));
  r.min_eigenvalue = min_hermitian_eigenvalue(m);
  r.purity = (m * m).trace().real();
  r.hermitian = r.hermiticity_defect <= tol.hermitian;
  r.unit_trace = r.trace_defect <= tol.hermitian;
  r.positive = r.min_eigenvalue >= -tol.psd;
  return r;
}

DensityMatrix pure_to_density(const PureState& psi) {
  const ComplexVector& a = psi.amplitudes();
  return DensityMatrix(psi.j(), a * a.adjoint());
}

DensityMatrix rotate_density(const DensityMatrix& rho, const EulerAngles& angles) {
  const ComplexMatrix d = wigner_d_matrix(rho.j(), angles);
  return DensityMatrix(rho.j(), d * rho.matrix() * d.adjoint());
}

PureState rotate_state(const PureState& psi, const EulerAngles& angles) {
  const ComplexMatrix d = wigner_d_matrix(psi.j(), angles);
  return PureState::normalized(psi.j(), d * psi.amplitudes());
}

ComplexMatrix symmetric_to_two_qubit(const DensityMatrix& rho) {
  if (rho.j().twice() != 2) {
    throw DomainError("two-qubit embedding needs j = 1, got j = " + rho.j().str());
  }
  // Columns are |1,1>, |1,0>, |1,-1> written in the product basis.
  Eigen::Matrix<Complex, 4, 3> v = Eigen::Matrix<Complex, 4, 3>::Zero();
  v(0, 0) = 1.0;
  v(1, 1) = 0.5 * std::numbers::sqrt2;
  v(2, 1) = 0.5 * std::numbers::sqrt2;
  v(3, 2) = 1.0;
  return v * rho.matrix() * v.adjoint();
}

PptResult ppt_two_qubit(const ComplexMatrix& rho4, double psd_tol) {
  if (rho4.rows() != 4 || rho4.cols() != 4) throw StructuralError("PPT test needs a 4x4 matrix");
  // Index a*2 + b for qubits a, b; transpose the second one.
  ComplexMatrix pt(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) pt(2 * a + b, 2 * c + d) = rho4(2 * a + d, 2 * c + b);
  PptResult r;
  r.min_eigenvalue = min_hermitian_eigenvalue(pt);
  r.entangled = r.min_eigenvalue < -psd_tol;
  return r;
}

}  // namespace multiaxial
