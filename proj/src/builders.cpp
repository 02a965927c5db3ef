#include "vqlab/circuit/builders.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vqlab/util/errors.hpp"

namespace vqlab::circuit {

std::string to_string(Family f) {
  switch (f) {
    case Family::VQC_PQC: return "VQC_PQC";
    case Family::VQC_QNN: return "VQC_QNN";
    case Family::DATA_REUP: return "DATA_REUP";
  }
  return "?";
}

std::string to_string(Encoding e) {
  switch (e) {
    case Encoding::AngleX: return "AngleX";
    case Encoding::AngleY: return "AngleY";
    case Encoding::AngleZ: return "AngleZ";
    case Encoding::Amplitude: return "Amplitude";
    case Encoding::IQP: return "IQP";
  }
  return "?";
}

std::string to_string(Measurement m) { return m == Measurement::PROB ? "PROB" : "EXP"; }

Family family_from_string(const std::string& s) {
  if (s == "VQC_PQC") return Family::VQC_PQC;
  if (s == "VQC_QNN") return Family::VQC_QNN;
  if (s == "DATA_REUP") return Family::DATA_REUP;
  throw BadConfig("unknown family: " + s);
}

Encoding encoding_from_string(const std::string& s) {
  if (s == "AngleX") return Encoding::AngleX;
  if (s == "AngleY") return Encoding::AngleY;
  if (s == "AngleZ") return Encoding::AngleZ;
  if (s == "Amplitude") return Encoding::Amplitude;
  if (s == "IQP") return Encoding::IQP;
  throw BadConfig("unknown encoding: " + s);
}

Measurement measurement_from_string(const std::string& s) {
  if (s == "PROB") return Measurement::PROB;
  if (s == "EXP") return Measurement::EXP;
  throw BadConfig("unknown measurement: " + s);
}

namespace {

enum class RotPattern { RY, RX_RZ, RY_RZ, H_CZ_RX, U3 };
enum class Entangler { ChainCNOT, ChainCZ, ChainCRX, MultiCRZ, MultiCRX, InvQFT };

struct AnsatzDef {
  RotPattern rot;
  Entangler ent;          // repeatable ansatzes only
  bool pool = false;
  GateKind pool_gate = GateKind::CNOT;
  bool pool_param = false;
};

const AnsatzDef* find_def(const std::string& name) {
  static const std::vector<std::pair<std::string, AnsatzDef>> defs = {
      {"RY_CNOT", {RotPattern::RY, Entangler::ChainCNOT}},
      {"RY_CZ", {RotPattern::RY, Entangler::ChainCZ}},
      {"RY_CRX", {RotPattern::RY, Entangler::ChainCRX}},
      {"RXRZ_CNOT", {RotPattern::RX_RZ, Entangler::ChainCNOT}},
      {"RY_RZ_CNOT", {RotPattern::RY_RZ, Entangler::ChainCNOT}},
      {"H_CZ_RX", {RotPattern::H_CZ_RX, Entangler::ChainCZ}},
      {"RX_RZ_Multi_CRZ", {RotPattern::RX_RZ, Entangler::MultiCRZ}},
      {"RX_RZ_Multi_CRX", {RotPattern::RX_RZ, Entangler::MultiCRX}},
      {"INV_QFT_U3_MODEL", {RotPattern::U3, Entangler::InvQFT}},
      {"RXRZ_CRZPool", {RotPattern::RX_RZ, Entangler::ChainCNOT, true, GateKind::CRZ, true}},
      {"QNN_RY_CNOT_pool", {RotPattern::RY, Entangler::ChainCNOT, true, GateKind::CNOT, false}},
      {"QNN_RY_CRX_pool", {RotPattern::RY, Entangler::ChainCNOT, true, GateKind::CRX, true}},
      {"QNN_RY_CRZ_pool", {RotPattern::RY, Entangler::ChainCNOT, true, GateKind::CRZ, true}},
      {"QNN_H_CZ_RX_pool", {RotPattern::H_CZ_RX, Entangler::ChainCZ, true, GateKind::CZ, false}},
  };
  for (const auto& [n, d] : defs)
    if (n == name) return &d;
  return nullptr;
}

class Builder {
 public:
  explicit Builder(std::size_t n) { c_.n_qubits = n; }

  std::uint32_t fresh_param() { return static_cast<std::uint32_t>(c_.param_count++); }
  void add(GateInstance g) { c_.gates.push_back(g); }
  void mark_layer() { c_.layer_ends.push_back(c_.gates.size()); }
  Circuit take() { return std::move(c_); }
  Circuit& circuit() { return c_; }

  void rotations(RotPattern rot, const std::vector<std::uint32_t>& active) {
    switch (rot) {
      case RotPattern::RY:
        for (auto q : active) add({GateKind::RY, q, AngleSource::parameter(fresh_param())});
        break;
      case RotPattern::RX_RZ:
        for (auto q : active) {
          add({GateKind::RX, q, AngleSource::parameter(fresh_param())});
          add({GateKind::RZ, q, AngleSource::parameter(fresh_param())});
        }
        break;
      case RotPattern::RY_RZ:
        for (auto q : active) {
          add({GateKind::RY, q, AngleSource::parameter(fresh_param())});
          add({GateKind::RZ, q, AngleSource::parameter(fresh_param())});
        }
        break;
      case RotPattern::H_CZ_RX:
        for (auto q : active) add({GateKind::H, q});
        chain(GateKind::CZ, active, false);
        for (auto q : active) add({GateKind::RX, q, AngleSource::parameter(fresh_param())});
        break;
      case RotPattern::U3: {
        for (auto q : active) {
          GateInstance g(GateKind::U3, q);
          g.angles[0] = AngleSource::parameter(fresh_param());
          g.angles[1] = AngleSource::parameter(fresh_param());
          g.angles[2] = AngleSource::parameter(fresh_param());
          add(g);
        }
        break;
      }
    }
  }

  void chain(GateKind kind, const std::vector<std::uint32_t>& active, bool with_param) {
    for (std::size_t i = 0; i + 1 < active.size(); ++i) {
      GateInstance g(kind, active[i], active[i + 1]);
      if (with_param) g.angles[0] = AngleSource::parameter(fresh_param());
      add(g);
    }
  }

  void all_ordered_pairs(GateKind kind, const std::vector<std::uint32_t>& active) {
    for (std::size_t i = 0; i < active.size(); ++i)
      for (std::size_t j = 0; j < active.size(); ++j) {
        if (i == j) continue;
        add({kind, active[i], active[j], AngleSource::parameter(fresh_param())});
      }
  }

  void inverse_qft(const std::vector<std::uint32_t>& qs) {
    const std::size_t n = qs.size();
    for (std::size_t q = 0; q < n / 2; ++q) add({GateKind::SWAP, qs[q], qs[n - 1 - q]});
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < k; ++j) {
        const double angle = -M_PI / static_cast<double>(std::size_t{1} << (k - j));
        add({GateKind::CRZ, qs[j], qs[k], AngleSource::constant(angle)});
      }
      add({GateKind::H, qs[k]});
    }
  }

  // one repeatable layer
  void ansatz_layer(const AnsatzDef& def, const std::vector<std::uint32_t>& active) {
    if (def.rot == RotPattern::H_CZ_RX) {
      rotations(def.rot, active);  // pattern already includes its CZ chain
      return;
    }
    rotations(def.rot, active);
    switch (def.ent) {
      case Entangler::ChainCNOT: chain(GateKind::CNOT, active, false); break;
      case Entangler::ChainCZ: chain(GateKind::CZ, active, false); break;
      case Entangler::ChainCRX: chain(GateKind::CRX, active, true); break;
      case Entangler::MultiCRZ: all_ordered_pairs(GateKind::CRZ, active); break;
      case Entangler::MultiCRX: all_ordered_pairs(GateKind::CRX, active); break;
      case Entangler::InvQFT: inverse_qft(active); break;
    }
  }

  // one halving cascade; marks a layer boundary per stage
  void pool_cascade(const AnsatzDef& def, std::size_t n, std::size_t measured_qubit) {
    std::vector<std::uint32_t> active(n);
    for (std::size_t q = 0; q < n; ++q) active[q] = static_cast<std::uint32_t>(q);
    while (active.size() > 1) {
      rotations(def.rot, active);
      const std::size_t mid = (active.size() + 1) / 2;
      std::vector<std::uint32_t> lower(active.begin(), active.begin() + static_cast<long>(mid));
      std::vector<std::uint32_t> upper(active.begin() + static_cast<long>(mid), active.end());
      const bool keep_lower =
          std::find(lower.begin(), lower.end(), static_cast<std::uint32_t>(measured_qubit)) != lower.end();
      std::vector<std::uint32_t>& kept = keep_lower ? lower : upper;
      std::vector<std::uint32_t>& discarded = keep_lower ? upper : lower;
      for (std::size_t i = 0; i < discarded.size(); ++i) {
        GateInstance g(def.pool_gate, discarded[i], kept[i % kept.size()]);
        if (def.pool_param) g.angles[0] = AngleSource::parameter(fresh_param());
        add(g);
      }
      active = kept;
      mark_layer();
    }
  }

 private:
  Circuit c_;
};

void append_with_param_offset(Circuit& dst, const Circuit& src, std::size_t param_offset) {
  const std::size_t base = dst.gates.size();
  for (GateInstance g : src.gates) {
    for (std::size_t i = 0; i < g.angle_count(); ++i)
      if (g.angles[i].kind == AngleSource::Kind::Parameter)
        g.angles[i].index += static_cast<std::uint32_t>(param_offset);
    dst.gates.push_back(g);
  }
  for (std::size_t e : src.layer_ends) dst.layer_ends.push_back(base + e);
}

}  // namespace

const std::vector<std::string>& ansatz_catalog() {
  static const std::vector<std::string> names = {
      "RY_CNOT", "RY_CZ", "RY_CRX", "RXRZ_CNOT", "RY_RZ_CNOT", "H_CZ_RX",
      "RX_RZ_Multi_CRZ", "RX_RZ_Multi_CRX", "RXRZ_CRZPool", "QNN_RY_CNOT_pool",
      "QNN_RY_CRX_pool", "QNN_RY_CRZ_pool", "QNN_H_CZ_RX_pool", "INV_QFT_U3_MODEL"};
  return names;
}

bool is_pool_ansatz(const std::string& name) {
  const AnsatzDef* def = find_def(name);
  return def != nullptr && def->pool;
}

Circuit build_encoding(Encoding enc, std::size_t n_qubits, std::size_t feature_count) {
  Builder b(n_qubits);
  switch (enc) {
    case Encoding::AngleX:
    case Encoding::AngleY:
    case Encoding::AngleZ: {
      if (feature_count != n_qubits)
        throw FeatureCountMismatch("angle encoding needs one feature per qubit");
      const GateKind kind = enc == Encoding::AngleX   ? GateKind::RX
                            : enc == Encoding::AngleY ? GateKind::RY
                                                      : GateKind::RZ;
      for (std::size_t q = 0; q < n_qubits; ++q)
        b.add({kind, static_cast<std::uint32_t>(q), AngleSource::feature(static_cast<std::uint32_t>(q))});
      break;
    }
    case Encoding::IQP: {
      if (feature_count != n_qubits) throw FeatureCountMismatch("IQP encoding needs one feature per qubit");
      for (std::size_t q = 0; q < n_qubits; ++q) b.add({GateKind::H, static_cast<std::uint32_t>(q)});
      for (std::size_t q = 0; q < n_qubits; ++q)
        b.add({GateKind::RZ, static_cast<std::uint32_t>(q), AngleSource::feature(static_cast<std::uint32_t>(q))});
      for (std::size_t q = 0; q + 1 < n_qubits; ++q)
        b.add({GateKind::RZZ, static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q + 1),
               AngleSource::feature_product(static_cast<std::uint32_t>(q), static_cast<std::uint32_t>(q + 1))});
      break;
    }
    case Encoding::Amplitude: {
      const std::size_t dim = std::size_t{1} << n_qubits;
      if (feature_count == 0 || feature_count > dim)
        throw FeatureCountMismatch("amplitude encoding needs 1 <= features <= 2^n");
      std::uint32_t angle_idx = 0;
      for (std::size_t k = 1; k <= n_qubits; ++k) {
        const auto target = static_cast<std::uint32_t>(n_qubits - k);
        const std::size_t j = k - 1;  // controls
        const std::size_t m = std::size_t{1} << j;
        if (j == 0) {
          b.add({GateKind::RY, target, AngleSource::amp_angle(angle_idx++)});
          continue;
        }
        for (std::size_t i = 0; i < m; ++i) {
          b.add({GateKind::RY, target, AngleSource::amp_angle(angle_idx++)});
          const std::size_t gi = i ^ (i >> 1);
          const std::size_t gnext = ((i + 1) % m) ^ (((i + 1) % m) >> 1);
          const auto flip = static_cast<std::size_t>(std::countr_zero(gi ^ gnext));
          const auto control = static_cast<std::uint32_t>(n_qubits - k + 1 + flip);
          b.add({GateKind::CNOT, control, target});
        }
      }
      Circuit c = b.take();
      c.feature_count = feature_count;
      c.amp_block_qubits = n_qubits;
      c.amp_angle_count = dim - 1;
      c.layer_ends.push_back(c.gates.size());
      return c;
    }
  }
  Circuit c = b.take();
  c.feature_count = feature_count;
  c.layer_ends.push_back(c.gates.size());
  return c;
}

Circuit build_ansatz(const std::string& name, std::size_t n_qubits, std::size_t layers,
                     std::size_t measured_qubit) {
  const AnsatzDef* def = find_def(name);
  if (def == nullptr) throw UnknownAnsatz(name);
  if (n_qubits < 2) throw BadConfig("ansatz needs at least 2 qubits");
  if (layers < 1) throw BadConfig("layers must be >= 1");

  Builder b(n_qubits);
  std::vector<std::uint32_t> all(n_qubits);
  for (std::size_t q = 0; q < n_qubits; ++q) all[q] = static_cast<std::uint32_t>(q);
  for (std::size_t l = 0; l < layers; ++l) {
    if (def->pool) {
      b.pool_cascade(*def, n_qubits, measured_qubit);
    } else {
      b.ansatz_layer(*def, all);
      b.mark_layer();
    }
  }
  return b.take();
}

Circuit build_model_circuit(const ModelSpec& spec) {
  if (spec.layers < 1) throw BadConfig("layers must be >= 1");
  if (spec.measured_qubit >= spec.n_qubits) throw BadQubitIndex("measured_qubit out of range");
  if (spec.family == Family::VQC_QNN) {
    if (!std::has_single_bit(spec.n_qubits)) throw BadConfig("VQC_QNN needs a power-of-two qubit count");
    if (!is_pool_ansatz(spec.ansatz)) throw BadConfig("VQC_QNN needs a pooling ansatz");
  }

  std::size_t f = spec.effective_feature_count();
  if (spec.encoding != Encoding::Amplitude && f != spec.n_qubits)
    throw FeatureCountMismatch("angle/IQP encodings need feature_count == n_qubits");

  const Circuit enc = build_encoding(spec.encoding, spec.n_qubits, f);

  Circuit out;
  out.n_qubits = spec.n_qubits;
  out.feature_count = enc.feature_count;
  out.amp_block_qubits = enc.amp_block_qubits;
  out.amp_angle_count = enc.amp_angle_count;

  if (spec.family == Family::DATA_REUP) {
    std::size_t param_offset = 0;
    // one ansatz unit per repetition: a single layer, or a full cascade for
    // pooling ansatzes
    for (std::size_t rep = 0; rep < spec.layers; ++rep) {
      append_with_param_offset(out, enc, 0);
      const Circuit unit = build_ansatz(spec.ansatz, spec.n_qubits, 1, spec.measured_qubit);
      append_with_param_offset(out, unit, param_offset);
      param_offset += unit.param_count;
    }
    out.param_count = param_offset;
  } else {
    append_with_param_offset(out, enc, 0);
    const std::size_t ansatz_layers = spec.family == Family::VQC_QNN ? 1 : spec.layers;
    const Circuit ans = build_ansatz(spec.ansatz, spec.n_qubits, ansatz_layers, spec.measured_qubit);
    append_with_param_offset(out, ans, 0);
    out.param_count = ans.param_count;
  }
  return out;
}

}  // namespace vqlab::circuit
