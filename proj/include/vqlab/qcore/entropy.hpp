#pragma once

#include <vector>

#include "vqlab/qcore/states.hpp"

namespace vqlab::qcore {

inline constexpr double kDefaultClampEps = 1e-12;

// Cyclic Jacobi for Hermitian matrices (dim <= 1024). Eigenvalues ascending.
// Off-diagonal Frobenius tolerance 1e-12 (relative to the matrix norm),
// at most 100 sweeps.
SpectralDecomposition hermitian_eig(const CMatrix& m);

// lambda -> max(lambda, eps), then renormalize the trace to 1. Eigenvectors
// are untouched, so this commutes with any function of the same basis.
DensityMatrix clamp_spectrum(const DensityMatrix& rho, double eps);

// V diag(ln lambda) V†, natural log. All eigenvalues must be positive;
// clamp_spectrum first.
CMatrix matrix_log(const DensityMatrix& rho);

// Tr(rho' (log rho' - log sigma')) in nats, both arguments spectrum-clamped
// at eps before taking logs.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma,
                        double eps = kDefaultClampEps);

// -sum lambda ln lambda with 0 ln 0 := 0, in nats.
double von_neumann_entropy(const DensityMatrix& rho);

// Reduce to the qubits in `keep` (nonempty, sorted, distinct). Little-endian
// index order is preserved within the kept set.
DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep);

}  // namespace vqlab::qcore
