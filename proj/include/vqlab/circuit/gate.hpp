#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "vqlab/qcore/cmatrix.hpp"

namespace vqlab::circuit {

using qcore::cplx;
using qcore::CMatrix;

enum class GateKind : std::uint8_t {
  H, X, SX, RX, RY, RZ, U3, CNOT, CZ, CRX, CRZ, RZZ, RXX, SWAP
};

constexpr std::size_t gate_arity(GateKind k) {
  switch (k) {
    case GateKind::H:
    case GateKind::X:
    case GateKind::SX:
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::U3:
      return 1;
    default:
      return 2;
  }
}

constexpr std::size_t gate_angle_count(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::CRX:
    case GateKind::CRZ:
    case GateKind::RZZ:
    case GateKind::RXX:
      return 1;
    case GateKind::U3:
      return 3;
    default:
      return 0;
  }
}

// e^{-i theta/2 P} gates admit the two-term +-pi/2 shift rule; controlled
// rotations do not (handled by finite differences in training).
constexpr bool gate_has_shift_rule(GateKind k) {
  switch (k) {
    case GateKind::RX:
    case GateKind::RY:
    case GateKind::RZ:
    case GateKind::RZZ:
    case GateKind::RXX:
    case GateKind::U3:
      return true;
    default:
      return false;
  }
}

std::string gate_name(GateKind k);

// Where a gate angle comes from. Constant carries the value directly; the
// other kinds resolve at bind time as scale * raw + offset, which lets
// basis rewrites like RZ(theta/2) or RZ(theta+pi) stay symbolic.
struct AngleSource {
  enum class Kind : std::uint8_t { Constant, Parameter, Feature, FeatureProduct, AmpAngle };
  Kind kind = Kind::Constant;
  double value = 0.0;      // Constant
  std::uint32_t index = 0;   // Parameter slot, Feature i, AmpAngle k
  std::uint32_t index2 = 0;  // FeatureProduct second component
  double scale = 1.0;
  double offset = 0.0;

  static AngleSource constant(double v) { return {Kind::Constant, v, 0, 0, 1.0, 0.0}; }
  static AngleSource parameter(std::uint32_t slot, double scale = 1.0) {
    return {Kind::Parameter, 0.0, slot, 0, scale, 0.0};
  }
  static AngleSource feature(std::uint32_t i, double scale = 1.0) {
    return {Kind::Feature, 0.0, i, 0, scale, 0.0};
  }
  static AngleSource feature_product(std::uint32_t i, std::uint32_t j, double scale = 1.0) {
    return {Kind::FeatureProduct, 0.0, i, j, scale, 0.0};
  }
  static AngleSource amp_angle(std::uint32_t k, double scale = 1.0) {
    return {Kind::AmpAngle, 0.0, k, 0, scale, 0.0};
  }

  AngleSource scaled(double f) const {
    AngleSource s = *this;
    if (s.kind == Kind::Constant) {
      s.value *= f;
    } else {
      s.scale *= f;
      s.offset *= f;
    }
    return s;
  }

  AngleSource shifted(double d) const {
    AngleSource s = *this;
    if (s.kind == Kind::Constant) {
      s.value += d;
    } else {
      s.offset += d;
    }
    return s;
  }

  bool is_constant() const { return kind == Kind::Constant; }

  bool operator==(const AngleSource&) const = default;
};

struct GateInstance {
  GateKind kind = GateKind::H;
  std::array<std::uint32_t, 2> qubits = {0, 0};
  std::array<AngleSource, 3> angles = {};

  GateInstance() = default;
  GateInstance(GateKind k, std::uint32_t q) : kind(k), qubits{q, 0} {}
  GateInstance(GateKind k, std::uint32_t q, AngleSource a) : kind(k), qubits{q, 0}, angles{a, {}, {}} {}
  GateInstance(GateKind k, std::uint32_t q0, std::uint32_t q1) : kind(k), qubits{q0, q1} {}
  GateInstance(GateKind k, std::uint32_t q0, std::uint32_t q1, AngleSource a)
      : kind(k), qubits{q0, q1}, angles{a, {}, {}} {}

  std::size_t arity() const { return gate_arity(kind); }
  std::size_t angle_count() const { return gate_angle_count(kind); }
};

// Fully resolved gate, ready for execution.
struct BoundGate {
  GateKind kind = GateKind::H;
  std::array<std::uint32_t, 2> qubits = {0, 0};
  std::array<double, 3> angles = {0.0, 0.0, 0.0};

  std::size_t arity() const { return gate_arity(kind); }
};

// 2x2 matrix, row-major.
std::array<cplx, 4> gate_matrix_1q(GateKind k, const std::array<double, 3>& angles);
// 4x4 matrix, row-major; local basis index = bit(qubits[0]) + 2*bit(qubits[1]).
std::array<cplx, 16> gate_matrix_2q(GateKind k, const std::array<double, 3>& angles);

}  // namespace vqlab::circuit
