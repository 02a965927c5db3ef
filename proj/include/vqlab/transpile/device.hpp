#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vqlab/circuit/gate.hpp"
#include "vqlab/sim/noise.hpp"

namespace vqlab::transpile {

using circuit::GateKind;

// bitmask over GateKind
class BasisSet {
 public:
  BasisSet() = default;
  BasisSet(std::initializer_list<GateKind> kinds) {
    for (GateKind k : kinds) add(k);
  }
  void add(GateKind k) { mask_ |= (std::uint32_t{1} << static_cast<std::uint32_t>(k)); }
  bool contains(GateKind k) const {
    return (mask_ >> static_cast<std::uint32_t>(k)) & 1u;
  }
  bool empty() const { return mask_ == 0; }

 private:
  std::uint32_t mask_ = 0;
};

struct DeviceProfile {
  std::string name;
  std::size_t n_qubits = 0;
  // undirected edges, each stored with first < second, sorted; empty means
  // all-to-all connectivity
  std::vector<std::pair<std::uint32_t, std::uint32_t>> coupling;
  BasisSet basis;
  std::vector<GateKind> basis_list;  // sorted, for reporting/serialization
  sim::NoiseProfile default_noise;

  bool all_to_all() const { return coupling.empty(); }
};

// Synthetic reference devices:
//   allpair-cnot   all-to-all, {CNOT,RX,RY,RZ,H}, noiseless control device
//   chain8-cz      8-qubit line, {CZ,RZ,SX,X}, p1=1e-3 p2=1e-2 ro=1%/1%
//   heavyhex12-cz  12-qubit heavy-hex fragment, {CZ,RZ,SX,X}, p1=8e-4 p2=8e-3
//   grid9-cz       3x3 grid, {CZ,RX,RZ}, p1=5e-4 p2=5e-3
const std::vector<DeviceProfile>& builtin_devices();
const DeviceProfile& device_by_name(const std::string& name);

// JSON schema: {name, n_qubits, edges:[[a,b],...], basis:["cz",...],
//               noise:{p1,p2,p01,p10}}
DeviceProfile load_device_json(const std::string& path);
GateKind gate_kind_from_name(const std::string& name);

}  // namespace vqlab::transpile
