#pragma once

#include <cstddef>
#include <vector>

#include "vqlab/qcore/cmatrix.hpp"

namespace vqlab::qcore {

// Pure state on n qubits, little-endian: qubit 0 is the least significant
// bit of the amplitude index.
struct StateVector {
  std::size_t n_qubits = 0;
  std::vector<cplx> amplitudes;

  StateVector() = default;
  explicit StateVector(std::size_t n)
      : n_qubits(n), amplitudes(std::size_t{1} << n, cplx{0.0, 0.0}) {
    amplitudes[0] = 1.0;
  }

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
  double norm() const;
};

struct DensityMatrix {
  std::size_t n_qubits = 0;
  CMatrix mat;

  DensityMatrix() = default;
  explicit DensityMatrix(std::size_t n) : n_qubits(n), mat(std::size_t{1} << n, std::size_t{1} << n) {
    mat(0, 0) = 1.0;
  }

  std::size_t dim() const { return std::size_t{1} << n_qubits; }
};

DensityMatrix projector(const StateVector& psi);

// Validation tolerances: hermiticity/trace 1e-10, eigenvalues >= -1e-9.
bool is_valid_density(const DensityMatrix& rho, std::string* why = nullptr);

struct SpectralDecomposition {
  std::vector<double> eigenvalues;  // ascending
  CMatrix eigenvectors;             // columns, matching order
};

}  // namespace vqlab::qcore
