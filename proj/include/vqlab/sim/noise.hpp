#pragma once

#include <cstdint>
#include <optional>

#include "vqlab/util/errors.hpp"

namespace vqlab::sim {

// Per-gate depolarizing + readout confusion. Depolarizing here is the
// replace-with-maximally-mixed convention: rho -> (1-p) rho + p I/d on the
// touched qubit(s).
struct NoiseProfile {
  double p1 = 0.0;           // after each 1-qubit gate
  double p2 = 0.0;           // after each 2-qubit gate (joint, both qubits)
  double readout_p01 = 0.0;  // true 0 read as 1
  double readout_p10 = 0.0;  // true 1 read as 0

  bool is_zero() const { return p1 == 0.0 && p2 == 0.0 && readout_p01 == 0.0 && readout_p10 == 0.0; }

  void validate() const {
    auto in01 = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in01(p1) || !in01(p2) || !in01(readout_p01) || !in01(readout_p10))
      throw BadConfig("noise probabilities must lie in [0,1]");
    if (p2 > 0.5) throw BadConfig("p2 above the 0.5 sanity bound");
  }
};

struct ExecOptions {
  enum class Mode : std::uint8_t { Exact, Shots };
  Mode mode = Mode::Exact;
  std::uint64_t shots = 1024;
  std::uint64_t seed = 0;
  std::optional<NoiseProfile> noise;

  static ExecOptions exact() { return {}; }
  static ExecOptions with_shots(std::uint64_t count, std::uint64_t seed) {
    ExecOptions o;
    o.mode = Mode::Shots;
    o.shots = count;
    o.seed = seed;
    if (count < 1) throw BadConfig("shots must be >= 1");
    return o;
  }
};

}  // namespace vqlab::sim
