#pragma once

#include <string>
#include <vector>

#include "vqlab/circuit/circuit.hpp"

namespace vqlab::circuit {

enum class Family : std::uint8_t { VQC_PQC, VQC_QNN, DATA_REUP };
enum class Encoding : std::uint8_t { AngleX, AngleY, AngleZ, Amplitude, IQP };
enum class Measurement : std::uint8_t { PROB, EXP };

std::string to_string(Family f);
std::string to_string(Encoding e);
std::string to_string(Measurement m);
Family family_from_string(const std::string& s);
Encoding encoding_from_string(const std::string& s);
Measurement measurement_from_string(const std::string& s);

struct ModelSpec {
  Family family = Family::VQC_PQC;
  Encoding encoding = Encoding::AngleY;
  std::string ansatz = "RY_CNOT";
  std::size_t n_qubits = 4;
  std::size_t layers = 1;
  Measurement measurement = Measurement::PROB;
  std::size_t measured_qubit = 0;
  // classical feature dimension; 0 means "derive": n_qubits for angle/IQP
  // encodings, n_qubits for amplitude (padded to 2^n)
  std::size_t feature_count = 0;

  std::size_t effective_feature_count() const {
    return feature_count == 0 ? n_qubits : feature_count;
  }
};

// Frozen catalog. Naming scheme: prefix = per-qubit rotation pattern,
// suffix = entangler; "Multi" = all ordered pairs; names containing
// "Pool"/"_pool" are halving cascades of ceil(log2 n) stages whose pooling
// gate acts from the discarded qubit onto the kept one, the kept half being
// the one containing the measured qubit.
const std::vector<std::string>& ansatz_catalog();
bool is_pool_ansatz(const std::string& name);

// Data-embedding block. Angle encodings and IQP need feature_count ==
// n_qubits; amplitude needs 1 <= feature_count <= 2^n_qubits.
Circuit build_encoding(Encoding enc, std::size_t n_qubits, std::size_t feature_count);

// Trainable block with fresh parameter slots. Repeatable ansatzes emit
// `layers` copies of their layer template; pool ansatzes emit `layers` full
// halving cascades ending at measured_qubit.
Circuit build_ansatz(const std::string& name, std::size_t n_qubits, std::size_t layers,
                     std::size_t measured_qubit = 0);

// Full classifier circuit per the model family:
//   VQC_PQC / VQC_QNN : encoding once, then the ansatz
//   DATA_REUP         : `layers` repetitions of (encoding, one ansatz unit),
//                       feature slots shared, parameters fresh per repetition
Circuit build_model_circuit(const ModelSpec& spec);

}  // namespace vqlab::circuit
