#include "vqlab/transpile/device.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "vqlab/util/errors.hpp"

namespace vqlab::transpile {

namespace {

DeviceProfile make_device(std::string name, std::size_t n,
                          std::vector<std::pair<std::uint32_t, std::uint32_t>> edges,
                          std::vector<GateKind> basis, sim::NoiseProfile noise) {
  DeviceProfile d;
  d.name = std::move(name);
  d.n_qubits = n;
  for (auto& [a, b] : edges)
    if (a > b) std::swap(a, b);
  std::sort(edges.begin(), edges.end());
  d.coupling = std::move(edges);
  std::sort(basis.begin(), basis.end());
  d.basis_list = basis;
  for (GateKind k : basis) d.basis.add(k);
  d.default_noise = noise;
  return d;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> chain_edges(std::uint32_t n) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> e;
  for (std::uint32_t i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return e;
}

}  // namespace

const std::vector<DeviceProfile>& builtin_devices() {
  static const std::vector<DeviceProfile> devices = [] {
    std::vector<DeviceProfile> out;
    out.push_back(make_device(
        "allpair-cnot", 10, {},
        {GateKind::CNOT, GateKind::RX, GateKind::RY, GateKind::RZ, GateKind::H}, {}));
    out.push_back(make_device("chain8-cz", 8, chain_edges(8),
                              {GateKind::CZ, GateKind::RZ, GateKind::SX, GateKind::X},
                              {0.001, 0.01, 0.01, 0.01}));
    // two rows of five with two bridge qubits
    out.push_back(make_device(
        "heavyhex12-cz", 12,
        {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 5}, {5, 7}, {4, 6}, {6, 11},
         {7, 8}, {8, 9}, {9, 10}, {10, 11}},
        {GateKind::CZ, GateKind::RZ, GateKind::SX, GateKind::X}, {0.0008, 0.008, 0.01, 0.015}));
    out.push_back(make_device(
        "grid9-cz", 9,
        {{0, 1}, {1, 2}, {3, 4}, {4, 5}, {6, 7}, {7, 8},
         {0, 3}, {3, 6}, {1, 4}, {4, 7}, {2, 5}, {5, 8}},
        {GateKind::CZ, GateKind::RX, GateKind::RZ}, {0.0005, 0.005, 0.008, 0.008}));
    return out;
  }();
  return devices;
}

const DeviceProfile& device_by_name(const std::string& name) {
  for (const DeviceProfile& d : builtin_devices())
    if (d.name == name) return d;
  throw BadConfig("unknown builtin device: " + name);
}

GateKind gate_kind_from_name(const std::string& name) {
  static const std::pair<const char*, GateKind> table[] = {
      {"h", GateKind::H},     {"x", GateKind::X},     {"sx", GateKind::SX},
      {"rx", GateKind::RX},   {"ry", GateKind::RY},   {"rz", GateKind::RZ},
      {"u3", GateKind::U3},   {"cx", GateKind::CNOT}, {"cnot", GateKind::CNOT},
      {"cz", GateKind::CZ},   {"crx", GateKind::CRX}, {"crz", GateKind::CRZ},
      {"rzz", GateKind::RZZ}, {"rxx", GateKind::RXX}, {"swap", GateKind::SWAP}};
  std::string lower;
  for (char c : name) lower += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  for (const auto& [n, k] : table)
    if (lower == n) return k;
  throw BadConfig("unknown gate name: " + name);
}

DeviceProfile load_device_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw BadConfig("cannot open device file: " + path);
  nlohmann::json j;
  in >> j;

  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  for (const auto& e : j.value("edges", nlohmann::json::array()))
    edges.emplace_back(e.at(0).get<std::uint32_t>(), e.at(1).get<std::uint32_t>());

  std::vector<GateKind> basis;
  for (const auto& g : j.at("basis")) basis.push_back(gate_kind_from_name(g.get<std::string>()));

  sim::NoiseProfile noise;
  if (j.contains("noise")) {
    const auto& n = j["noise"];
    noise.p1 = n.value("p1", 0.0);
    noise.p2 = n.value("p2", 0.0);
    noise.readout_p01 = n.value("p01", 0.0);
    noise.readout_p10 = n.value("p10", 0.0);
  }
  noise.validate();

  DeviceProfile d = make_device(j.at("name").get<std::string>(), j.at("n_qubits").get<std::size_t>(),
                                std::move(edges), std::move(basis), noise);
  const std::size_t n = d.n_qubits;
  for (const auto& [a, b] : d.coupling)
    if (a >= n || b >= n || a == b) throw BadConfig("device edge references invalid qubits");
  bool has_2q = false;
  for (GateKind k : d.basis_list)
    if (circuit::gate_arity(k) == 2) has_2q = true;
  if (!has_2q) throw BadConfig("device basis lacks a 2-qubit gate");
  return d;
}

}  // namespace vqlab::transpile
