#pragma once

#include <cmath>
#include <vector>

#include "vqlab/circuit/circuit.hpp"
#include "vqlab/qcore/cmatrix.hpp"
#include "vqlab/qcore/states.hpp"
#include "vqlab/util/rng.hpp"

namespace vqlab::testing {

using qcore::cplx;
using qcore::CMatrix;
using qcore::DensityMatrix;
using qcore::StateVector;

inline StateVector random_pure_state(std::size_t n_qubits, Rng& rng) {
  StateVector psi(n_qubits);
  double norm2 = 0.0;
  for (auto& a : psi.amplitudes) {
    a = cplx{rng.normal(), rng.normal()};
    norm2 += std::norm(a);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& a : psi.amplitudes) a *= inv;
  return psi;
}

// convex mixture of a few random pure states
inline DensityMatrix random_density(std::size_t n_qubits, Rng& rng, std::size_t n_mix = 4) {
  const std::size_t d = std::size_t{1} << n_qubits;
  DensityMatrix rho;
  rho.n_qubits = n_qubits;
  rho.mat = CMatrix(d, d);
  std::vector<double> w(n_mix);
  double total = 0.0;
  for (auto& x : w) {
    x = rng.uniform() + 1e-6;
    total += x;
  }
  for (std::size_t k = 0; k < n_mix; ++k) {
    StateVector psi = random_pure_state(n_qubits, rng);
    const double wk = w[k] / total;
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c)
        rho.mat(r, c) += wk * psi.amplitudes[r] * std::conj(psi.amplitudes[c]);
  }
  return rho;
}

// Haar-ish unitary via Gram-Schmidt on a complex Gaussian matrix
inline CMatrix random_unitary(std::size_t dim, Rng& rng) {
  CMatrix m(dim, dim);
  for (auto& v : m.data) v = cplx{rng.normal(), rng.normal()};
  for (std::size_t c = 0; c < dim; ++c) {
    for (std::size_t prev = 0; prev < c; ++prev) {
      cplx dot{0.0, 0.0};
      for (std::size_t r = 0; r < dim; ++r) dot += std::conj(m(r, prev)) * m(r, c);
      for (std::size_t r = 0; r < dim; ++r) m(r, c) -= dot * m(r, prev);
    }
    double norm2 = 0.0;
    for (std::size_t r = 0; r < dim; ++r) norm2 += std::norm(m(r, c));
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t r = 0; r < dim; ++r) m(r, c) *= inv;
  }
  return m;
}

inline DensityMatrix conjugate(const CMatrix& u, const DensityMatrix& rho) {
  DensityMatrix out;
  out.n_qubits = rho.n_qubits;
  out.mat = qcore::matmul(qcore::matmul(u, rho.mat), qcore::adjoint(u));
  return out;
}

// full depolarizing: rho -> (1-p) rho + p I/d
inline DensityMatrix depolarize_full(const DensityMatrix& rho, double p) {
  DensityMatrix out = rho;
  const std::size_t d = rho.dim();
  for (auto& v : out.mat.data) v *= (1.0 - p);
  for (std::size_t i = 0; i < d; ++i) out.mat(i, i) += p / static_cast<double>(d);
  return out;
}

// random bound circuit drawing from the full gate alphabet
inline circuit::BoundCircuit random_bound_circuit(std::size_t n_qubits, std::size_t n_gates, Rng& rng) {
  using circuit::BoundGate;
  using circuit::GateKind;
  static const GateKind kinds[] = {
      GateKind::H, GateKind::X, GateKind::SX, GateKind::RX, GateKind::RY, GateKind::RZ,
      GateKind::U3, GateKind::CNOT, GateKind::CZ, GateKind::CRX, GateKind::CRZ,
      GateKind::RZZ, GateKind::RXX, GateKind::SWAP};
  circuit::BoundCircuit c;
  c.n_qubits = n_qubits;
  for (std::size_t i = 0; i < n_gates; ++i) {
    BoundGate g;
    g.kind = kinds[rng.uniform_int(std::size(kinds))];
    if (circuit::gate_arity(g.kind) == 2 && n_qubits < 2) {
      g.kind = GateKind::RY;
    }
    g.qubits[0] = static_cast<std::uint32_t>(rng.uniform_int(n_qubits));
    if (circuit::gate_arity(g.kind) == 2) {
      do {
        g.qubits[1] = static_cast<std::uint32_t>(rng.uniform_int(n_qubits));
      } while (g.qubits[1] == g.qubits[0]);
    }
    for (std::size_t a = 0; a < circuit::gate_angle_count(g.kind); ++a)
      g.angles[a] = rng.uniform(-M_PI, M_PI);
    c.gates.push_back(g);
  }
  c.layer_ends.push_back(c.gates.size());
  return c;
}

}  // namespace vqlab::testing
