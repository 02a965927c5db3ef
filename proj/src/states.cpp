#include "vqlab/qcore/states.hpp"

#include <cmath>
#include <string>

#include "vqlab/qcore/entropy.hpp"

namespace vqlab::qcore {

double StateVector::norm() const {
  double s = 0.0;
  for (const cplx& a : amplitudes) s += std::norm(a);
  return std::sqrt(s);
}

DensityMatrix projector(const StateVector& psi) {
  DensityMatrix rho;
  rho.n_qubits = psi.n_qubits;
  const std::size_t d = psi.dim();
  rho.mat = CMatrix(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) rho.mat(r, c) = psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
  return rho;
}

bool is_valid_density(const DensityMatrix& rho, std::string* why) {
  if (rho.mat.rows != rho.dim() || rho.mat.cols != rho.dim()) {
    if (why) *why = "dimension does not match n_qubits";
    return false;
  }
  if (hermiticity_defect(rho.mat) > 1e-10) {
    if (why) *why = "not Hermitian within 1e-10";
    return false;
  }
  if (std::abs(trace(rho.mat) - cplx{1.0, 0.0}) > 1e-10) {
    if (why) *why = "trace differs from 1 by more than 1e-10";
    return false;
  }
  SpectralDecomposition sd = hermitian_eig(rho.mat);
  if (sd.eigenvalues.front() < -1e-9) {
    if (why) *why = "eigenvalue below -1e-9";
    return false;
  }
  return true;
}

}  // namespace vqlab::qcore
