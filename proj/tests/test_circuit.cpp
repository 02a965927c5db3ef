#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "helpers.hpp"
#include "vqlab/circuit/builders.hpp"
#include "vqlab/circuit/qasm.hpp"
#include "vqlab/sim/executor.hpp"
#include "vqlab/util/errors.hpp"

using namespace vqlab;
using namespace vqlab::circuit;

namespace {

std::vector<double> random_params(std::size_t n, Rng& rng) {
  std::vector<double> p(n);
  for (double& v : p) v = rng.uniform(-M_PI, M_PI);
  return p;
}

std::size_t count_kind(const Circuit& c, GateKind k) {
  std::size_t n = 0;
  for (const auto& g : c.gates)
    if (g.kind == k) ++n;
  return n;
}

}  // namespace

TEST_CASE("angle encoding structure and zero-feature identity") {
  Circuit enc = build_encoding(Encoding::AngleY, 2, 2);
  CHECK(enc.gates.size() == 2);
  CHECK(enc.param_count == 0);
  CHECK(enc.feature_count == 2);
  auto bc = bind(enc, {}, {0.0, 0.0});
  auto psi = sim::run_statevector(bc);
  CHECK(std::abs(psi.amplitudes[0] - qcore::cplx{1.0, 0.0}) <= 1e-12);

  CHECK_THROWS_AS(build_encoding(Encoding::AngleY, 2, 3), FeatureCountMismatch);
}

TEST_CASE("IQP encoding gate list") {
  Circuit enc = build_encoding(Encoding::IQP, 2, 2);
  REQUIRE(enc.gates.size() == 5);
  CHECK(enc.gates[0].kind == GateKind::H);
  CHECK(enc.gates[1].kind == GateKind::H);
  CHECK(enc.gates[2].kind == GateKind::RZ);
  CHECK(enc.gates[2].angles[0].kind == AngleSource::Kind::Feature);
  CHECK(enc.gates[3].kind == GateKind::RZ);
  CHECK(enc.gates[4].kind == GateKind::RZZ);
  CHECK(enc.gates[4].angles[0].kind == AngleSource::Kind::FeatureProduct);
  // bound RZZ angle is the product of the two features
  auto bc = bind(enc, {}, {0.3, 0.5});
  CHECK(bc.gates[4].angles[0] == doctest::Approx(0.15));
}

TEST_CASE("amplitude encoding prepares the normalized padded vector") {
  SUBCASE("basis vector on one qubit") {
    Circuit enc = build_encoding(Encoding::Amplitude, 1, 2);
    auto psi = sim::run_statevector(bind(enc, {}, {1.0, 0.0}));
    CHECK(std::abs(psi.amplitudes[0]) == doctest::Approx(1.0));
    CHECK(std::abs(psi.amplitudes[1]) <= 1e-12);
  }
  SUBCASE("random signed vectors, several widths") {
    Rng rng(99);
    for (std::size_t n : {1, 2, 3, 4}) {
      const std::size_t dim = std::size_t{1} << n;
      for (int rep = 0; rep < 20; ++rep) {
        const std::size_t f = 1 + rng.uniform_int(dim);
        std::vector<double> x(f);
        for (double& v : x) v = rng.uniform(-1.0, 1.0);
        double norm2 = 0.0;
        for (double v : x) norm2 += v * v;
        if (norm2 < 1e-12) x[0] = 0.5;

        Circuit enc = build_encoding(Encoding::Amplitude, n, f);
        auto psi = sim::run_statevector(bind(enc, {}, x));

        norm2 = 0.0;
        for (double v : x) norm2 += v * v;
        const double inv = 1.0 / std::sqrt(norm2);
        for (std::size_t i = 0; i < dim; ++i) {
          const double want = i < f ? x[i] * inv : 0.0;
          CHECK(std::abs(psi.amplitudes[i] - qcore::cplx{want, 0.0}) <= 1e-8);
        }
      }
    }
  }
  SUBCASE("zero vector is rejected at bind time") {
    Circuit enc = build_encoding(Encoding::Amplitude, 2, 4);
    CHECK_THROWS_AS(bind(enc, {}, {0.0, 0.0, 0.0, 0.0}), ZeroVector);
  }
}

TEST_CASE("ansatz catalog structure") {
  SUBCASE("RY_CNOT minimal") {
    Circuit a = build_ansatz("RY_CNOT", 2, 1);
    REQUIRE(a.gates.size() == 3);
    CHECK(a.gates[0].kind == GateKind::RY);
    CHECK(a.gates[1].kind == GateKind::RY);
    CHECK(a.gates[2].kind == GateKind::CNOT);
    CHECK(a.gates[2].qubits[0] == 0);
    CHECK(a.gates[2].qubits[1] == 1);
    CHECK(a.param_count == 2);
  }
  SUBCASE("RY_CNOT layer scaling") {
    CHECK(build_ansatz("RY_CNOT", 4, 3).param_count == 12);
  }
  SUBCASE("QNN pool halves the active set") {
    Circuit a = build_ansatz("QNN_RY_CNOT_pool", 8, 1, 0);
    CHECK(a.layer_ends.size() == 3);  // 8 -> 4 -> 2 -> 1
    CHECK(a.param_count == 8 + 4 + 2);
    // gates after each stage only touch the shrinking active set
    std::vector<std::size_t> stage_of_gate(a.gates.size(), 0);
    for (std::size_t s = 0; s < a.layer_ends.size(); ++s)
      for (std::size_t gi = (s == 0 ? 0 : a.layer_ends[s - 1]); gi < a.layer_ends[s]; ++gi)
        stage_of_gate[gi] = s;
    for (std::size_t gi = 0; gi < a.gates.size(); ++gi) {
      const std::size_t active_size = 8u >> stage_of_gate[gi];
      for (std::size_t qi = 0; qi < a.gates[gi].arity(); ++qi)
        CHECK(a.gates[gi].qubits[qi] < active_size);
    }
  }
  SUBCASE("pool cascade ends at the measured qubit") {
    Circuit a = build_ansatz("QNN_RY_CRZ_pool", 8, 1, 5);
    // the last pooling gate targets qubit 5
    CHECK(a.gates.back().qubits[1] == 5);
  }
  SUBCASE("unknown name") {
    CHECK_THROWS_AS(build_ansatz("NOPE", 4, 1), UnknownAnsatz);
  }
  SUBCASE("all-ordered-pairs entangler size") {
    Circuit a = build_ansatz("RX_RZ_Multi_CRZ", 4, 1);
    CHECK(count_kind(a, GateKind::CRZ) == 12);  // 4*3 ordered pairs
  }
}

TEST_CASE("every catalog ansatz binds to a unitary") {
  Rng rng(2025);
  for (const std::string& name : ansatz_catalog()) {
    for (std::size_t n : {2, 4}) {
      Circuit a = build_ansatz(name, n, 2);
      auto bc = bind(a, random_params(a.param_count, rng), {});
      CHECK(qcore::is_unitary(circuit_unitary(bc), 1e-9));
    }
    // larger widths still execute and stay normalized
    Circuit a8 = build_ansatz(name, 8, 1);
    auto bc8 = bind(a8, random_params(a8.param_count, rng), {});
    CHECK(sim::run_statevector(bc8).norm() == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("model circuit composition") {
  SUBCASE("PQC layout: encoding then ansatz") {
    ModelSpec spec;
    spec.family = Family::VQC_PQC;
    spec.encoding = Encoding::AngleY;
    spec.ansatz = "RY_CNOT";
    spec.n_qubits = 2;
    spec.layers = 1;
    Circuit c = build_model_circuit(spec);
    REQUIRE(c.gates.size() == 5);  // 2 feature RYs + 2 param RYs + CNOT
    CHECK(c.gates[0].angles[0].kind == AngleSource::Kind::Feature);
    CHECK(c.gates[2].angles[0].kind == AngleSource::Kind::Parameter);
    CHECK(c.param_count == 2);
    CHECK(c.feature_count == 2);
  }
  SUBCASE("data re-upload repeats the encoding") {
    ModelSpec spec;
    spec.family = Family::DATA_REUP;
    spec.encoding = Encoding::AngleY;
    spec.ansatz = "RY_CNOT";
    spec.n_qubits = 4;
    spec.layers = 3;
    Circuit c = build_model_circuit(spec);
    std::size_t feature_gates = 0;
    for (const auto& g : c.gates)
      if (g.angle_count() > 0 && g.angles[0].kind == AngleSource::Kind::Feature) ++feature_gates;
    CHECK(feature_gates == 4 * 3);
    CHECK(c.param_count == 4 * 3);  // fresh parameters per repetition
    CHECK(c.feature_count == 4);    // shared feature slots
  }
  SUBCASE("QNN ends on the measured qubit") {
    ModelSpec spec;
    spec.family = Family::VQC_QNN;
    spec.encoding = Encoding::AngleX;
    spec.ansatz = "QNN_RY_CNOT_pool";
    spec.n_qubits = 8;
    spec.layers = 1;
    spec.measured_qubit = 0;
    Circuit c = build_model_circuit(spec);
    CHECK(c.gates.back().kind == GateKind::CNOT);
    CHECK(c.gates.back().qubits[1] == 0);
  }
  SUBCASE("QNN validation") {
    ModelSpec spec;
    spec.family = Family::VQC_QNN;
    spec.ansatz = "QNN_RY_CNOT_pool";
    spec.n_qubits = 6;
    CHECK_THROWS_AS(build_model_circuit(spec), BadConfig);
    spec.n_qubits = 8;
    spec.ansatz = "RY_CNOT";
    spec.feature_count = 8;
    CHECK_THROWS_AS(build_model_circuit(spec), BadConfig);
  }
}

TEST_CASE("bind") {
  SUBCASE("no-op on constant circuits") {
    Circuit c;
    c.n_qubits = 1;
    c.gates.push_back({GateKind::H, 0});
    auto bc = bind(c, {}, {});
    CHECK(bc.gates.size() == 1);
  }
  SUBCASE("parameter substitution") {
    Circuit c;
    c.n_qubits = 1;
    c.param_count = 1;
    c.gates.push_back({GateKind::RY, 0, AngleSource::parameter(0)});
    auto bc = bind(c, {M_PI}, {});
    CHECK(bc.gates[0].angles[0] == doctest::Approx(M_PI));
  }
  SUBCASE("feature scaling") {
    Circuit c;
    c.n_qubits = 1;
    c.feature_count = 1;
    c.gates.push_back({GateKind::RY, 0, AngleSource::feature(0, 2.0)});
    auto bc = bind(c, {}, {0.3});
    CHECK(bc.gates[0].angles[0] == doctest::Approx(0.6));
  }
  SUBCASE("length checks") {
    Circuit c;
    c.n_qubits = 1;
    c.param_count = 1;
    c.gates.push_back({GateKind::RY, 0, AngleSource::parameter(0)});
    CHECK_THROWS_AS(bind(c, {}, {}), LengthMismatch);
    CHECK_THROWS_AS(bind(c, {0.1, 0.2}, {}), LengthMismatch);
  }
}

TEST_CASE("circuit_unitary basics") {
  SUBCASE("empty circuit") {
    BoundCircuit c;
    c.n_qubits = 2;
    CHECK(qcore::max_abs_diff(circuit_unitary(c), qcore::CMatrix::identity(4)) <= 1e-15);
  }
  SUBCASE("hadamard") {
    BoundCircuit c;
    c.n_qubits = 1;
    c.gates.push_back({GateKind::H, {0, 0}, {}});
    auto u = circuit_unitary(c);
    const double s = 1.0 / std::sqrt(2.0);
    CHECK(u(0, 0).real() == doctest::Approx(s));
    CHECK(u(1, 1).real() == doctest::Approx(-s));
  }
  SUBCASE("CNOT squared is identity") {
    BoundCircuit c;
    c.n_qubits = 2;
    c.gates.push_back({GateKind::CNOT, {0, 1}, {}});
    c.gates.push_back({GateKind::CNOT, {0, 1}, {}});
    CHECK(qcore::max_abs_diff(circuit_unitary(c), qcore::CMatrix::identity(4)) <= 1e-12);
  }
  SUBCASE("symbolic circuits are rejected") {
    Circuit c;
    c.n_qubits = 1;
    c.param_count = 1;
    c.gates.push_back({GateKind::RY, 0, AngleSource::parameter(0)});
    CHECK_THROWS_AS(circuit_unitary(c), UnboundAngle);
  }
  SUBCASE("width limit") {
    BoundCircuit c;
    c.n_qubits = 5;
    CHECK_THROWS_AS(circuit_unitary(c), TooManyQubits);
  }
}

TEST_CASE("logical_depth") {
  Circuit c;
  c.n_qubits = 2;
  CHECK(logical_depth(c) == 0);
  c.gates.push_back({GateKind::RY, 0, AngleSource::constant(0.1)});
  c.gates.push_back({GateKind::RY, 1, AngleSource::constant(0.1)});
  CHECK(logical_depth(c) == 1);
  c.gates.clear();
  c.gates.push_back({GateKind::RY, 0, AngleSource::constant(0.1)});
  c.gates.push_back({GateKind::CNOT, 0, 1});
  c.gates.push_back({GateKind::RY, 1, AngleSource::constant(0.1)});
  CHECK(logical_depth(c) == 3);
}

TEST_CASE("random bound circuits stay unitary") {
  Rng rng(31337);
  for (int rep = 0; rep < 40; ++rep) {
    auto c = testing::random_bound_circuit(2 + rep % 3, 12, rng);
    CHECK(qcore::is_unitary(circuit_unitary(c), 1e-9));
  }
}

TEST_CASE("qasm export golden file") {
  Circuit enc = build_encoding(Encoding::IQP, 2, 2);
  auto bc = bind(enc, {}, {0.5, 0.25});
  const std::string expected =
      "OPENQASM 2.0;\n"
      "include \"qelib1.inc\";\n"
      "qreg q[2];\n"
      "h q[0];\n"
      "h q[1];\n"
      "rz(0.5) q[0];\n"
      "rz(0.25) q[1];\n"
      "cx q[0],q[1];\n"
      "rz(0.125) q[1];\n"
      "cx q[0],q[1];\n";
  CHECK(to_qasm(bc) == expected);
}

TEST_CASE("qasm decompositions preserve the unitary") {
  // crx/crz/rzz/rxx QASM expansions versus the primitive gates
  Rng rng(5);
  for (GateKind k : {GateKind::CRZ, GateKind::RZZ}) {
    BoundCircuit direct;
    direct.n_qubits = 2;
    BoundGate g;
    g.kind = k;
    g.qubits = {0, 1};
    g.angles[0] = rng.uniform(-M_PI, M_PI);
    direct.gates.push_back(g);

    BoundCircuit expanded;
    expanded.n_qubits = 2;
    if (k == GateKind::CRZ) {
      expanded.gates.push_back({GateKind::RZ, {1, 0}, {g.angles[0] / 2, 0, 0}});
      expanded.gates.push_back({GateKind::CNOT, {0, 1}, {}});
      expanded.gates.push_back({GateKind::RZ, {1, 0}, {-g.angles[0] / 2, 0, 0}});
      expanded.gates.push_back({GateKind::CNOT, {0, 1}, {}});
    } else {
      expanded.gates.push_back({GateKind::CNOT, {0, 1}, {}});
      expanded.gates.push_back({GateKind::RZ, {1, 0}, {g.angles[0], 0, 0}});
      expanded.gates.push_back({GateKind::CNOT, {0, 1}, {}});
    }
    CHECK(equal_up_to_global_phase(circuit_unitary(expanded), circuit_unitary(direct), 1e-10));
  }
}
