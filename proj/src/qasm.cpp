#include "vqlab/circuit/qasm.hpp"

#include <cstdio>

namespace vqlab::circuit {

namespace {

std::string fmt_angle(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit_1q(std::string& out, const std::string& name, std::uint32_t q) {
  out += name + " q[" + std::to_string(q) + "];\n";
}

void emit_1q(std::string& out, const std::string& name, double angle, std::uint32_t q) {
  out += name + "(" + fmt_angle(angle) + ") q[" + std::to_string(q) + "];\n";
}

void emit_2q(std::string& out, const std::string& name, std::uint32_t a, std::uint32_t b) {
  out += name + " q[" + std::to_string(a) + "],q[" + std::to_string(b) + "];\n";
}

void emit_crz(std::string& out, double theta, std::uint32_t c, std::uint32_t t) {
  emit_1q(out, "rz", theta / 2, t);
  emit_2q(out, "cx", c, t);
  emit_1q(out, "rz", -theta / 2, t);
  emit_2q(out, "cx", c, t);
}

}  // namespace

std::string to_qasm(const BoundCircuit& c) {
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  out += "qreg q[" + std::to_string(c.n_qubits) + "];\n";
  for (const BoundGate& g : c.gates) {
    switch (g.kind) {
      case GateKind::H: emit_1q(out, "h", g.qubits[0]); break;
      case GateKind::X: emit_1q(out, "x", g.qubits[0]); break;
      case GateKind::SX: emit_1q(out, "sx", g.qubits[0]); break;
      case GateKind::RX: emit_1q(out, "rx", g.angles[0], g.qubits[0]); break;
      case GateKind::RY: emit_1q(out, "ry", g.angles[0], g.qubits[0]); break;
      case GateKind::RZ: emit_1q(out, "rz", g.angles[0], g.qubits[0]); break;
      case GateKind::U3:
        out += "u3(" + fmt_angle(g.angles[0]) + "," + fmt_angle(g.angles[1]) + "," +
               fmt_angle(g.angles[2]) + ") q[" + std::to_string(g.qubits[0]) + "];\n";
        break;
      case GateKind::CNOT: emit_2q(out, "cx", g.qubits[0], g.qubits[1]); break;
      case GateKind::CZ: emit_2q(out, "cz", g.qubits[0], g.qubits[1]); break;
      case GateKind::SWAP: emit_2q(out, "swap", g.qubits[0], g.qubits[1]); break;
      case GateKind::CRZ: emit_crz(out, g.angles[0], g.qubits[0], g.qubits[1]); break;
      case GateKind::CRX:
        emit_1q(out, "h", g.qubits[1]);
        emit_crz(out, g.angles[0], g.qubits[0], g.qubits[1]);
        emit_1q(out, "h", g.qubits[1]);
        break;
      case GateKind::RZZ:
        emit_2q(out, "cx", g.qubits[0], g.qubits[1]);
        emit_1q(out, "rz", g.angles[0], g.qubits[1]);
        emit_2q(out, "cx", g.qubits[0], g.qubits[1]);
        break;
      case GateKind::RXX:
        emit_1q(out, "h", g.qubits[0]);
        emit_1q(out, "h", g.qubits[1]);
        emit_2q(out, "cx", g.qubits[0], g.qubits[1]);
        emit_1q(out, "rz", g.angles[0], g.qubits[1]);
        emit_2q(out, "cx", g.qubits[0], g.qubits[1]);
        emit_1q(out, "h", g.qubits[0]);
        emit_1q(out, "h", g.qubits[1]);
        break;
    }
  }
  return out;
}

}  // namespace vqlab::circuit
