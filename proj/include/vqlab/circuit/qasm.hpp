#pragma once

#include <string>

#include "vqlab/circuit/circuit.hpp"

namespace vqlab::circuit {

// OpenQASM 2.0 text for a bound circuit. Gate names lowercased; crx/crz/
// rzz/rxx are emitted through their standard cx/rz/h decompositions.
std::string to_qasm(const BoundCircuit& c);

}  // namespace vqlab::circuit
