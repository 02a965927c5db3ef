#include "vqlab/transpile/transpile.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <sstream>

#include "vqlab/util/errors.hpp"

namespace vqlab::transpile {

using circuit::AngleSource;
using circuit::GateInstance;
using circuit::GateKind;

namespace {

// Single-qubit rewrites bottom out in {RZ, SX|RX}; two-qubit chains bottom
// out in the device's native CNOT or CZ. Emission is circuit order (leftmost
// gate applied first).
void decompose_gate(const GateInstance& g, const BasisSet& basis, std::vector<GateInstance>& out) {
  if (basis.contains(g.kind)) {
    out.push_back(g);
    return;
  }
  const auto q0 = g.qubits[0];
  const auto q1 = g.qubits[1];
  auto recurse = [&](GateInstance sub) { decompose_gate(sub, basis, out); };

  switch (g.kind) {
    case GateKind::H:
      if (basis.contains(GateKind::RZ) && (basis.contains(GateKind::SX) || basis.contains(GateKind::RX))) {
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI / 2)});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI / 2)});
        return;
      }
      break;
    case GateKind::X:
      if (basis.contains(GateKind::RX)) {
        recurse({GateKind::RX, q0, AngleSource::constant(M_PI)});
        return;
      }
      if (basis.contains(GateKind::SX)) {
        recurse({GateKind::SX, q0});
        recurse({GateKind::SX, q0});
        return;
      }
      break;
    case GateKind::SX:
      if (basis.contains(GateKind::RX)) {
        recurse({GateKind::RX, q0, AngleSource::constant(M_PI / 2)});
        return;
      }
      break;
    case GateKind::RX:
      // ZXZXZ chain: RZ(pi/2) SX RZ(theta+pi) SX RZ(pi/2)
      if (basis.contains(GateKind::RZ) && (basis.contains(GateKind::SX) || basis.contains(GateKind::RX))) {
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI / 2)});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, g.angles[0].shifted(M_PI)});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI / 2)});
        return;
      }
      break;
    case GateKind::RY:
      if (basis.contains(GateKind::RX) && basis.contains(GateKind::RZ)) {
        recurse({GateKind::RZ, q0, AngleSource::constant(-M_PI / 2)});
        recurse({GateKind::RX, q0, g.angles[0]});
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI / 2)});
        return;
      }
      if (basis.contains(GateKind::SX) && basis.contains(GateKind::RZ)) {
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, g.angles[0].shifted(M_PI)});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, AngleSource::constant(M_PI)});
        return;
      }
      break;
    case GateKind::U3: {
      // ZYZ when RY is native, otherwise ZXZXZ:
      // RZ(lambda) RY(theta) RZ(phi)  /  RZ(lambda) SX RZ(theta+pi) SX RZ(phi+pi)
      if (basis.contains(GateKind::RY) && basis.contains(GateKind::RZ)) {
        recurse({GateKind::RZ, q0, g.angles[2]});
        recurse({GateKind::RY, q0, g.angles[0]});
        recurse({GateKind::RZ, q0, g.angles[1]});
        return;
      }
      if (basis.contains(GateKind::RZ) && (basis.contains(GateKind::SX) || basis.contains(GateKind::RX))) {
        recurse({GateKind::RZ, q0, g.angles[2]});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, g.angles[0].shifted(M_PI)});
        recurse({GateKind::SX, q0});
        recurse({GateKind::RZ, q0, g.angles[1].shifted(M_PI)});
        return;
      }
      break;
    }
    case GateKind::CNOT:
      if (basis.contains(GateKind::CZ)) {
        recurse({GateKind::H, q1});
        recurse({GateKind::CZ, q0, q1});
        recurse({GateKind::H, q1});
        return;
      }
      break;
    case GateKind::CZ:
      if (basis.contains(GateKind::CNOT)) {
        recurse({GateKind::H, q1});
        recurse({GateKind::CNOT, q0, q1});
        recurse({GateKind::H, q1});
        return;
      }
      break;
    case GateKind::CRZ:
      recurse({GateKind::RZ, q1, g.angles[0].scaled(0.5)});
      recurse({GateKind::CNOT, q0, q1});
      recurse({GateKind::RZ, q1, g.angles[0].scaled(-0.5)});
      recurse({GateKind::CNOT, q0, q1});
      return;
    case GateKind::CRX:
      recurse({GateKind::H, q1});
      recurse({GateKind::CRZ, q0, q1, g.angles[0]});
      recurse({GateKind::H, q1});
      return;
    case GateKind::RZZ:
      recurse({GateKind::CNOT, q0, q1});
      recurse({GateKind::RZ, q1, g.angles[0]});
      recurse({GateKind::CNOT, q0, q1});
      return;
    case GateKind::RXX:
      recurse({GateKind::H, q0});
      recurse({GateKind::H, q1});
      recurse({GateKind::RZZ, q0, q1, g.angles[0]});
      recurse({GateKind::H, q0});
      recurse({GateKind::H, q1});
      return;
    case GateKind::SWAP:
      recurse({GateKind::CNOT, q0, q1});
      recurse({GateKind::CNOT, q1, q0});
      recurse({GateKind::CNOT, q0, q1});
      return;
    default:
      break;
  }
  throw UnsupportedGate("no rewrite chain from " + circuit::gate_name(g.kind) + " into the basis");
}

// the only peephole: fold runs of constant RZ on the same qubit
void merge_adjacent_rz(std::vector<GateInstance>& gates) {
  std::vector<GateInstance> out;
  std::vector<long> last_gate_on(1024, -1);
  for (const GateInstance& g : gates) {
    if (g.kind == GateKind::RZ && g.angles[0].is_constant()) {
      const long prev = last_gate_on[g.qubits[0]];
      if (prev >= 0 && out[static_cast<std::size_t>(prev)].kind == GateKind::RZ &&
          out[static_cast<std::size_t>(prev)].angles[0].is_constant() &&
          out[static_cast<std::size_t>(prev)].qubits[0] == g.qubits[0]) {
        out[static_cast<std::size_t>(prev)].angles[0].value += g.angles[0].value;
        continue;
      }
    }
    for (std::size_t i = 0; i < g.arity(); ++i) last_gate_on[g.qubits[i]] = static_cast<long>(out.size());
    out.push_back(g);
  }
  gates = std::move(out);
}

std::vector<std::vector<std::uint32_t>> adjacency(const DeviceProfile& d) {
  std::vector<std::vector<std::uint32_t>> adj(d.n_qubits);
  for (const auto& [a, b] : d.coupling) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (auto& v : adj) std::sort(v.begin(), v.end());
  return adj;
}

// lexicographically smallest shortest path src -> dst
std::vector<std::uint32_t> shortest_path(const std::vector<std::vector<std::uint32_t>>& adj,
                                         std::uint32_t src, std::uint32_t dst) {
  const std::size_t n = adj.size();
  std::vector<int> dist(n, -1);
  std::queue<std::uint32_t> q;
  dist[dst] = 0;
  q.push(dst);
  while (!q.empty()) {
    const std::uint32_t u = q.front();
    q.pop();
    for (std::uint32_t v : adj[u])
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        q.push(v);
      }
  }
  if (dist[src] < 0) return {};
  std::vector<std::uint32_t> path = {src};
  std::uint32_t cur = src;
  while (cur != dst) {
    // neighbors are sorted, so the first downhill step is the smallest
    for (std::uint32_t v : adj[cur]) {
      if (dist[v] == dist[cur] - 1) {
        path.push_back(v);
        cur = v;
        break;
      }
    }
  }
  return path;
}

}  // namespace

Circuit decompose_to_basis(const Circuit& c, const BasisSet& basis) {
  Circuit out;
  out.n_qubits = c.n_qubits;
  out.param_count = c.param_count;
  out.feature_count = c.feature_count;
  out.amp_block_qubits = c.amp_block_qubits;
  out.amp_angle_count = c.amp_angle_count;
  for (const GateInstance& g : c.gates) decompose_gate(g, basis, out.gates);
  merge_adjacent_rz(out.gates);
  out.layer_ends.push_back(out.gates.size());
  return out;
}

RouteResult route(const Circuit& c, const DeviceProfile& device) {
  if (c.n_qubits > device.n_qubits)
    throw TooManyQubits("circuit wider than the device");

  RouteResult res;
  res.circ.n_qubits = device.n_qubits;
  res.circ.param_count = c.param_count;
  res.circ.feature_count = c.feature_count;
  res.circ.amp_block_qubits = c.amp_block_qubits;
  res.circ.amp_angle_count = c.amp_angle_count;

  res.layout.resize(device.n_qubits);
  std::iota(res.layout.begin(), res.layout.end(), 0u);

  if (device.all_to_all()) {
    res.circ.gates = c.gates;
    res.circ.layer_ends.push_back(res.circ.gates.size());
    return res;
  }

  const auto adj = adjacency(device);
  // connectivity over the qubits the circuit starts on
  {
    std::vector<char> seen(device.n_qubits, 0);
    std::queue<std::uint32_t> q;
    q.push(0);
    seen[0] = 1;
    while (!q.empty()) {
      const std::uint32_t u = q.front();
      q.pop();
      for (std::uint32_t v : adj[u])
        if (!seen[v]) {
          seen[v] = 1;
          q.push(v);
        }
    }
    for (std::size_t v = 0; v < c.n_qubits; ++v)
      if (!seen[v]) throw DisconnectedDevice("coupling graph disconnected over used qubits");
  }

  std::vector<std::uint32_t> phys_of(device.n_qubits);  // virtual -> physical
  std::vector<std::uint32_t> virt_at(device.n_qubits);  // physical -> virtual
  std::iota(phys_of.begin(), phys_of.end(), 0u);
  std::iota(virt_at.begin(), virt_at.end(), 0u);

  auto coupled = [&](std::uint32_t a, std::uint32_t b) {
    const auto& nb = adj[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  };

  for (const GateInstance& g : c.gates) {
    GateInstance pg = g;
    if (g.arity() == 1) {
      pg.qubits[0] = phys_of[g.qubits[0]];
      res.circ.gates.push_back(pg);
      continue;
    }
    std::uint32_t pa = phys_of[g.qubits[0]];
    const std::uint32_t pb = phys_of[g.qubits[1]];
    if (!coupled(pa, pb)) {
      const auto path = shortest_path(adj, pa, pb);
      if (path.empty()) throw DisconnectedDevice("no path between gate operands");
      for (std::size_t i = 0; i + 2 < path.size(); ++i) {
        const std::uint32_t p = path[i], pn = path[i + 1];
        res.circ.gates.push_back({GateKind::SWAP, p, pn});
        std::swap(virt_at[p], virt_at[pn]);
        phys_of[virt_at[p]] = p;
        phys_of[virt_at[pn]] = pn;
      }
      pa = path[path.size() - 2];
    }
    pg.qubits[0] = pa;
    pg.qubits[1] = pb;
    res.circ.gates.push_back(pg);
  }
  res.circ.layer_ends.push_back(res.circ.gates.size());
  res.layout = phys_of;
  return res;
}

TranspiledCircuit transpile(const Circuit& c, const DeviceProfile& device) {
  RouteResult routed = route(c, device);
  TranspiledCircuit out;
  out.circ = decompose_to_basis(routed.circ, device.basis);
  out.layout = std::move(routed.layout);
  out.logical_width = c.n_qubits;
  out.depth = circuit::logical_depth(out.circ);
  for (const GateInstance& g : out.circ.gates)
    if (g.arity() == 2) ++out.two_qubit_count;
  return out;
}

std::size_t asap_depth(const Circuit& c) { return circuit::logical_depth(c); }

std::string serialize(const TranspiledCircuit& t) {
  std::ostringstream os;
  os.precision(17);
  os << "w " << t.circ.n_qubits << " lw " << t.logical_width << " d " << t.depth << " tq "
     << t.two_qubit_count << "\n";
  os << "layout";
  for (auto p : t.layout) os << " " << p;
  os << "\n";
  for (const GateInstance& g : t.circ.gates) {
    os << circuit::gate_name(g.kind);
    for (std::size_t i = 0; i < g.arity(); ++i) os << " q" << g.qubits[i];
    for (std::size_t i = 0; i < g.angle_count(); ++i) {
      const AngleSource& a = g.angles[i];
      switch (a.kind) {
        case AngleSource::Kind::Constant: os << " c:" << a.value; break;
        case AngleSource::Kind::Parameter: os << " p" << a.index << "*" << a.scale << "+" << a.offset; break;
        case AngleSource::Kind::Feature: os << " f" << a.index << "*" << a.scale << "+" << a.offset; break;
        case AngleSource::Kind::FeatureProduct:
          os << " f" << a.index << "f" << a.index2 << "*" << a.scale << "+" << a.offset;
          break;
        case AngleSource::Kind::AmpAngle: os << " a" << a.index << "*" << a.scale << "+" << a.offset; break;
      }
    }
    os << "\n";
  }
  return os.str();
}

bool transpiled_equivalent(const BoundCircuit& original, const BoundCircuit& transpiled,
                           const std::vector<std::uint32_t>& layout, std::size_t logical_width,
                           double tol) {
  // touched physical qubits: everything a gate acts on, plus start/end
  // homes of the logical qubits
  std::vector<char> touched(transpiled.n_qubits, 0);
  for (const auto& g : transpiled.gates)
    for (std::size_t i = 0; i < g.arity(); ++i) touched[g.qubits[i]] = 1;
  for (std::size_t v = 0; v < logical_width; ++v) {
    touched[v] = 1;
    touched[layout[v]] = 1;
  }
  std::vector<std::uint32_t> tset;
  for (std::uint32_t p = 0; p < transpiled.n_qubits; ++p)
    if (touched[p]) tset.push_back(p);
  if (tset.size() > 11) throw TooManyQubits("touched set too large for the dense oracle");

  std::vector<std::uint32_t> compact(transpiled.n_qubits, 0);
  for (std::size_t i = 0; i < tset.size(); ++i) compact[tset[i]] = static_cast<std::uint32_t>(i);

  // compacted transpiled unitary
  const std::size_t nt = tset.size();
  const std::size_t dt = std::size_t{1} << nt;
  qcore::CMatrix ut = qcore::CMatrix::identity(dt);
  for (const auto& g : transpiled.gates) {
    circuit::BoundGate cg = g;
    for (std::size_t i = 0; i < g.arity(); ++i) cg.qubits[i] = compact[g.qubits[i]];
    ut = qcore::matmul(circuit::embed_gate(nt, cg), ut);
  }

  // expected: P_final (I_pad ⊗ U_orig) P_initial†, with virtual order =
  // logical qubits as low bits and padding virtuals (sorted by their home
  // physical qubit) above them
  qcore::CMatrix uo = circuit::circuit_unitary(original);
  const std::size_t npad = nt - logical_width;
  qcore::CMatrix ufull = qcore::kron(qcore::CMatrix::identity(std::size_t{1} << npad), uo);

  std::vector<std::uint32_t> pad_virtuals;
  for (std::uint32_t p : tset)
    if (p >= logical_width) pad_virtuals.push_back(p);  // identity initial layout

  auto perm_matrix = [&](const std::vector<std::uint32_t>& compact_pos_of_virtual) {
    qcore::CMatrix m(dt, dt);
    for (std::size_t v = 0; v < dt; ++v) {
      std::size_t p = 0;
      for (std::size_t bit = 0; bit < nt; ++bit)
        if ((v >> bit) & 1u) p |= std::size_t{1} << compact_pos_of_virtual[bit];
      m(p, v) = 1.0;
    }
    return m;
  };

  // virtual bit order: logical 0..w-1, then padding virtuals
  std::vector<std::uint32_t> init_pos(nt), final_pos(nt);
  for (std::size_t v = 0; v < logical_width; ++v) {
    init_pos[v] = compact[static_cast<std::uint32_t>(v)];
    final_pos[v] = compact[layout[v]];
  }
  for (std::size_t k = 0; k < pad_virtuals.size(); ++k) {
    const std::uint32_t pv = pad_virtuals[k];
    init_pos[logical_width + k] = compact[pv];
    final_pos[logical_width + k] = compact[layout[pv]];
  }

  const qcore::CMatrix pinit = perm_matrix(init_pos);
  const qcore::CMatrix pfinal = perm_matrix(final_pos);
  const qcore::CMatrix expected =
      qcore::matmul(qcore::matmul(pfinal, ufull), qcore::adjoint(pinit));
  return circuit::equal_up_to_global_phase(ut, expected, tol);
}

}  // namespace vqlab::transpile
