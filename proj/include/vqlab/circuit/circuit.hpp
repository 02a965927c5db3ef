#pragma once

#include <cstddef>
#include <vector>

#include "vqlab/circuit/gate.hpp"

namespace vqlab::circuit {

// Device-independent gate program with symbolic angle slots. Immutable by
// convention once built.
struct Circuit {
  std::size_t n_qubits = 0;
  std::vector<GateInstance> gates;
  std::size_t param_count = 0;
  std::size_t feature_count = 0;

  // Amplitude-encoding blocks share one angle table computed from the whole
  // feature vector at bind time; amp_block_qubits == 0 means none.
  std::size_t amp_block_qubits = 0;
  std::size_t amp_angle_count = 0;

  // gate index just past each structural layer (encoding block, ansatz
  // layer/stage); used by the per-layer entropy map
  std::vector<std::size_t> layer_ends;
};

struct BoundCircuit {
  std::size_t n_qubits = 0;
  std::vector<BoundGate> gates;
  std::vector<std::size_t> layer_ends;
};

// Resolve every angle source to a constant. Array lengths must equal
// param_count / feature_count.
BoundCircuit bind(const Circuit& c, const std::vector<double>& params,
                  const std::vector<double>& features);

// Rotation angles of the amplitude state-preparation network for the given
// feature vector (zero-padded to 2^n_qubits, then L2-normalized).
std::vector<double> amplitude_angles(std::size_t n_qubits, const std::vector<double>& features);

// ASAP layer count: longest qubit-dependency chain.
std::size_t logical_depth(const Circuit& c);
std::size_t logical_depth(const BoundCircuit& c);

// Dense unitary of a bound circuit (n_qubits <= 4), built from per-gate
// embeddings; serves as the independent oracle for the executors.
CMatrix circuit_unitary(const BoundCircuit& c);
// Convenience for symbolic circuits whose angles are all constants.
CMatrix circuit_unitary(const Circuit& c);

// Embed one gate into the full 2^n dimensional space.
CMatrix embed_gate(std::size_t n_qubits, const BoundGate& g);

// True when |a - b e^{i phi}| is elementwise below tol for the best phi.
bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b, double tol);

}  // namespace vqlab::circuit
