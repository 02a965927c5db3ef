#include "vqlab/circuit/gate.hpp"

#include <cmath>

namespace vqlab::circuit {

namespace {
constexpr cplx I1{0.0, 1.0};
}

std::string gate_name(GateKind k) {
  switch (k) {
    case GateKind::H: return "h";
    case GateKind::X: return "x";
    case GateKind::SX: return "sx";
    case GateKind::RX: return "rx";
    case GateKind::RY: return "ry";
    case GateKind::RZ: return "rz";
    case GateKind::U3: return "u3";
    case GateKind::CNOT: return "cx";
    case GateKind::CZ: return "cz";
    case GateKind::CRX: return "crx";
    case GateKind::CRZ: return "crz";
    case GateKind::RZZ: return "rzz";
    case GateKind::RXX: return "rxx";
    case GateKind::SWAP: return "swap";
  }
  return "?";
}

std::array<cplx, 4> gate_matrix_1q(GateKind k, const std::array<double, 3>& a) {
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (k) {
    case GateKind::H:
      return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::X:
      return {0.0, 1.0, 1.0, 0.0};
    case GateKind::SX:
      return {0.5 * cplx{1, 1}, 0.5 * cplx{1, -1}, 0.5 * cplx{1, -1}, 0.5 * cplx{1, 1}};
    case GateKind::RX: {
      const double c = std::cos(a[0] / 2), s = std::sin(a[0] / 2);
      return {c, -I1 * s, -I1 * s, c};
    }
    case GateKind::RY: {
      const double c = std::cos(a[0] / 2), s = std::sin(a[0] / 2);
      return {c, -s, s, c};
    }
    case GateKind::RZ: {
      return {std::exp(-I1 * (a[0] / 2)), 0.0, 0.0, std::exp(I1 * (a[0] / 2))};
    }
    case GateKind::U3: {
      const double th = a[0], ph = a[1], la = a[2];
      const double c = std::cos(th / 2), s = std::sin(th / 2);
      return {c, -std::exp(I1 * la) * s, std::exp(I1 * ph) * s, std::exp(I1 * (ph + la)) * c};
    }
    default:
      break;
  }
  return {1.0, 0.0, 0.0, 1.0};
}

std::array<cplx, 16> gate_matrix_2q(GateKind k, const std::array<double, 3>& a) {
  std::array<cplx, 16> m{};
  auto at = [&m](std::size_t r, std::size_t c) -> cplx& { return m[r * 4 + c]; };
  // local index = bit(qubits[0]) + 2*bit(qubits[1]); qubits[0] is the
  // control for controlled kinds
  switch (k) {
    case GateKind::CNOT:
      at(0, 0) = 1.0; at(2, 2) = 1.0; at(3, 1) = 1.0; at(1, 3) = 1.0;
      break;
    case GateKind::CZ:
      at(0, 0) = 1.0; at(1, 1) = 1.0; at(2, 2) = 1.0; at(3, 3) = -1.0;
      break;
    case GateKind::CRX: {
      const double c = std::cos(a[0] / 2), s = std::sin(a[0] / 2);
      at(0, 0) = 1.0; at(2, 2) = 1.0;
      at(1, 1) = c; at(1, 3) = -I1 * s; at(3, 1) = -I1 * s; at(3, 3) = c;
      break;
    }
    case GateKind::CRZ: {
      at(0, 0) = 1.0; at(2, 2) = 1.0;
      at(1, 1) = std::exp(-I1 * (a[0] / 2));
      at(3, 3) = std::exp(I1 * (a[0] / 2));
      break;
    }
    case GateKind::RZZ: {
      const cplx em = std::exp(-I1 * (a[0] / 2)), ep = std::exp(I1 * (a[0] / 2));
      at(0, 0) = em; at(1, 1) = ep; at(2, 2) = ep; at(3, 3) = em;
      break;
    }
    case GateKind::RXX: {
      const double c = std::cos(a[0] / 2), s = std::sin(a[0] / 2);
      for (std::size_t l = 0; l < 4; ++l) {
        at(l, l) = c;
        at(l, 3 - l) = -I1 * s;
      }
      break;
    }
    case GateKind::SWAP:
      at(0, 0) = 1.0; at(3, 3) = 1.0; at(1, 2) = 1.0; at(2, 1) = 1.0;
      break;
    default:
      break;
  }
  return m;
}

}  // namespace vqlab::circuit
