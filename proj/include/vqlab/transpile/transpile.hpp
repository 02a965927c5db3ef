#pragma once

#include "vqlab/circuit/circuit.hpp"
#include "vqlab/transpile/device.hpp"

namespace vqlab::transpile {

using circuit::BoundCircuit;
using circuit::Circuit;

struct TranspiledCircuit {
  Circuit circ;                       // basis gates only, possibly symbolic angles
  std::vector<std::uint32_t> layout;  // virtual qubit -> physical qubit, one
                                      // entry per device qubit; virtuals below
                                      // the logical width are the circuit's
  std::size_t logical_width = 0;
  std::size_t depth = 0;
  std::size_t two_qubit_count = 0;
};

// Rewrite every gate into the basis (semantically equal up to global phase).
Circuit decompose_to_basis(const Circuit& c, const BasisSet& basis);

struct RouteResult {
  Circuit circ;                       // gates on physical qubits, SWAPs inserted
  std::vector<std::uint32_t> layout;  // final virtual -> physical map
};

// Greedy router: identity initial layout; uncoupled 2-qubit gates trigger
// SWAPs along the lexicographically-smallest shortest coupling path, moving
// the first operand next to the second.
RouteResult route(const Circuit& c, const DeviceProfile& device);

// route, then decompose, then merge adjacent constant RZ pairs, then depth.
TranspiledCircuit transpile(const Circuit& c, const DeviceProfile& device);

std::size_t asap_depth(const Circuit& c);

// canonical text form; byte-identical across runs for identical inputs
std::string serialize(const TranspiledCircuit& t);

// Oracle: does the bound transpiled circuit equal the bound original up to
// global phase and the tracked permutation? Restricted to small touched
// sets; used by tests and the acceptance suite.
bool transpiled_equivalent(const BoundCircuit& original, const BoundCircuit& transpiled,
                           const std::vector<std::uint32_t>& layout, std::size_t logical_width,
                           double tol);

}  // namespace vqlab::transpile
