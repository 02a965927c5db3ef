#pragma once

#include <utility>

#include "vqlab/circuit/builders.hpp"
#include "vqlab/circuit/circuit.hpp"
#include "vqlab/qcore/states.hpp"
#include "vqlab/sim/noise.hpp"

namespace vqlab::sim {

using circuit::BoundCircuit;
using circuit::BoundGate;
using qcore::DensityMatrix;
using qcore::StateVector;

// In-place gate kernels (OpenMP-parallel above a small size threshold;
// disjoint writes, so results are thread-count independent).
void apply_gate(StateVector& psi, const BoundGate& g);
void apply_unitary(DensityMatrix& rho, const BoundGate& g);
void apply_depolarizing_1q(DensityMatrix& rho, std::size_t qubit, double p);
void apply_depolarizing_2q(DensityMatrix& rho, std::size_t q0, std::size_t q1, double p);

// Exact evolution of |0...0> through a bound circuit (n_qubits <= 10).
StateVector run_statevector(const BoundCircuit& c);

// Density evolution with per-gate depolarizing noise (n_qubits <= 8).
DensityMatrix run_density(const BoundCircuit& c, const NoiseProfile& noise);

// Statevector snapshots just past each layer boundary of the circuit.
std::vector<StateVector> run_statevector_layers(const BoundCircuit& c);

// Born probabilities (p0, p1) on one qubit; optional readout confusion.
std::pair<double, double> measure_probs(const StateVector& psi, std::size_t qubit,
                                        const NoiseProfile* noise = nullptr);
std::pair<double, double> measure_probs(const DensityMatrix& rho, std::size_t qubit,
                                        const NoiseProfile* noise = nullptr);

// Deterministic binomial draw; returns (n0, n1) with n0 + n1 == shots.
std::pair<std::uint64_t, std::uint64_t> sample_shots(double p1, std::uint64_t shots,
                                                     std::uint64_t seed);

double expectation_z(const StateVector& psi, std::size_t qubit, const NoiseProfile* noise = nullptr);
double expectation_z(const DensityMatrix& rho, std::size_t qubit, const NoiseProfile* noise = nullptr);

struct Prediction {
  double score = 0.0;
  int label = 0;
};

// Score/label from an already-bound circuit.
Prediction predict_bound(const BoundCircuit& c, std::size_t measured_qubit,
                         circuit::Measurement measurement, const ExecOptions& opts);

// Convenience wrapper: build + bind + execute.
Prediction predict(const circuit::ModelSpec& spec, const std::vector<double>& params,
                   const std::vector<double>& x, const ExecOptions& opts);

}  // namespace vqlab::sim

namespace vqlab::sim::reference {

// Serial reference executors built from dense gate embeddings; kept simple
// and independent of the fast kernels for testing and benchmarking.
StateVector run_statevector(const BoundCircuit& c);
DensityMatrix run_density(const BoundCircuit& c, const NoiseProfile& noise);

}  // namespace vqlab::sim::reference
