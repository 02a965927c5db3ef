#include "vqlab/sim/executor.hpp"

#include <cmath>

#include "vqlab/util/errors.hpp"
#include "vqlab/util/rng.hpp"

namespace vqlab::sim {

using circuit::GateKind;
using qcore::cplx;
using qcore::CMatrix;

namespace {

// Entering an OpenMP region costs about a microsecond, which would swamp a
// 16-amplitude update; small workloads take the plain serial branch instead
// of an `if` clause on the pragma.
constexpr long long kParallelCutoff = 2048;

template <typename Body>
inline void parallel_groups(long long groups, const Body& body, long long work = -1) {
  if ((work < 0 ? groups : work) >= kParallelCutoff) {
#pragma omp parallel for
    for (long long i = 0; i < groups; ++i) body(static_cast<std::size_t>(i));
  } else {
    for (long long i = 0; i < groups; ++i) body(static_cast<std::size_t>(i));
  }
}

void apply_1q_sv(std::vector<cplx>& a, std::size_t q, const std::array<cplx, 4>& m) {
  const std::size_t mask = std::size_t{1} << q;
  const std::size_t lo = mask - 1;
  const std::size_t hi = ~lo;
  parallel_groups(static_cast<long long>(a.size() / 2), [&](std::size_t i) {
    const std::size_t i0 = ((i & hi) << 1) | (i & lo);
    const std::size_t i1 = i0 | mask;
    const cplx t0 = a[i0], t1 = a[i1];
    a[i0] = m[0] * t0 + m[1] * t1;
    a[i1] = m[2] * t0 + m[3] * t1;
  });
}

void apply_2q_sv(std::vector<cplx>& a, std::size_t q0, std::size_t q1,
                 const std::array<cplx, 16>& m) {
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t pmin = std::min(q0, q1);
  const std::size_t pmax = std::max(q0, q1);
  const std::size_t lo = (std::size_t{1} << pmin) - 1;
  const std::size_t mid = ((std::size_t{1} << (pmax - 1)) - 1) & ~lo;
  const std::size_t hi = ~(lo | mid);
  parallel_groups(static_cast<long long>(a.size() / 4), [&](std::size_t i) {
    const std::size_t base = ((i & hi) << 2) | ((i & mid) << 1) | (i & lo);
    cplx t[4];
    std::size_t idx[4];
    for (std::size_t l = 0; l < 4; ++l) {
      idx[l] = base | ((l & 1) ? m0 : 0) | ((l & 2) ? m1 : 0);
      t[l] = a[idx[l]];
    }
    for (std::size_t l = 0; l < 4; ++l)
      a[idx[l]] = m[l * 4 + 0] * t[0] + m[l * 4 + 1] * t[1] + m[l * 4 + 2] * t[2] + m[l * 4 + 3] * t[3];
  });
}

}  // namespace

void apply_gate(StateVector& psi, const BoundGate& g) {
  if (g.arity() == 1) {
    apply_1q_sv(psi.amplitudes, g.qubits[0], circuit::gate_matrix_1q(g.kind, g.angles));
  } else {
    apply_2q_sv(psi.amplitudes, g.qubits[0], g.qubits[1], circuit::gate_matrix_2q(g.kind, g.angles));
  }
}

void apply_unitary(DensityMatrix& rho, const BoundGate& g) {
  const std::size_t d = rho.dim();
  auto& mtx = rho.mat;
  const auto work = static_cast<long long>(d) * static_cast<long long>(d);
  if (g.arity() == 1) {
    const auto m = circuit::gate_matrix_1q(g.kind, g.angles);
    const std::size_t mask = std::size_t{1} << g.qubits[0];
    const std::size_t lo = mask - 1;
    const std::size_t hi = ~lo;
    // rho <- U rho
    parallel_groups(static_cast<long long>(d / 2), [&](std::size_t i) {
      const std::size_t r0 = ((i & hi) << 1) | (i & lo);
      const std::size_t r1 = r0 | mask;
      for (std::size_t c = 0; c < d; ++c) {
        const cplx t0 = mtx(r0, c), t1 = mtx(r1, c);
        mtx(r0, c) = m[0] * t0 + m[1] * t1;
        mtx(r1, c) = m[2] * t0 + m[3] * t1;
      }
    }, work);
    // rho <- rho U†
    parallel_groups(static_cast<long long>(d), [&](std::size_t r) {
      for (std::size_t i = 0; i < d / 2; ++i) {
        const std::size_t c0 = ((i & hi) << 1) | (i & lo);
        const std::size_t c1 = c0 | mask;
        const cplx t0 = mtx(r, c0), t1 = mtx(r, c1);
        mtx(r, c0) = t0 * std::conj(m[0]) + t1 * std::conj(m[1]);
        mtx(r, c1) = t0 * std::conj(m[2]) + t1 * std::conj(m[3]);
      }
    }, work);
  } else {
    const auto m = circuit::gate_matrix_2q(g.kind, g.angles);
    const std::size_t m0 = std::size_t{1} << g.qubits[0];
    const std::size_t m1 = std::size_t{1} << g.qubits[1];
    const std::size_t pmin = std::min(g.qubits[0], g.qubits[1]);
    const std::size_t pmax = std::max(g.qubits[0], g.qubits[1]);
    const std::size_t lo = (std::size_t{1} << pmin) - 1;
    const std::size_t mid = ((std::size_t{1} << (pmax - 1)) - 1) & ~lo;
    const std::size_t hi = ~(lo | mid);
    parallel_groups(static_cast<long long>(d / 4), [&](std::size_t i) {
      const std::size_t base = ((i & hi) << 2) | ((i & mid) << 1) | (i & lo);
      std::size_t rows[4];
      for (std::size_t l = 0; l < 4; ++l) rows[l] = base | ((l & 1) ? m0 : 0) | ((l & 2) ? m1 : 0);
      for (std::size_t c = 0; c < d; ++c) {
        cplx t[4];
        for (std::size_t l = 0; l < 4; ++l) t[l] = mtx(rows[l], c);
        for (std::size_t l = 0; l < 4; ++l)
          mtx(rows[l], c) = m[l * 4] * t[0] + m[l * 4 + 1] * t[1] + m[l * 4 + 2] * t[2] + m[l * 4 + 3] * t[3];
      }
    }, work);
    parallel_groups(static_cast<long long>(d), [&](std::size_t r) {
      for (std::size_t i = 0; i < d / 4; ++i) {
        const std::size_t base = ((i & hi) << 2) | ((i & mid) << 1) | (i & lo);
        std::size_t cols[4];
        for (std::size_t l = 0; l < 4; ++l) cols[l] = base | ((l & 1) ? m0 : 0) | ((l & 2) ? m1 : 0);
        cplx t[4];
        for (std::size_t l = 0; l < 4; ++l) t[l] = mtx(r, cols[l]);
        for (std::size_t l = 0; l < 4; ++l) {
          cplx acc{0.0, 0.0};
          for (std::size_t k = 0; k < 4; ++k) acc += t[k] * std::conj(m[l * 4 + k]);
          mtx(r, cols[l]) = acc;
        }
      }
    }, work);
  }
}

void apply_depolarizing_1q(DensityMatrix& rho, std::size_t qubit, double p) {
  if (p <= 0.0) return;
  const std::size_t d = rho.dim();
  const std::size_t mask = std::size_t{1} << qubit;
  const CMatrix tmp = rho.mat;
  parallel_groups(static_cast<long long>(d), [&](std::size_t r) {
    for (std::size_t c = 0; c < d; ++c) {
      cplx v = (1.0 - p) * tmp(r, c);
      if ((r & mask) == (c & mask)) {
        v += p * 0.5 * (tmp(r & ~mask, c & ~mask) + tmp(r | mask, c | mask));
      }
      rho.mat(r, c) = v;
    }
  }, static_cast<long long>(d) * static_cast<long long>(d));
}

void apply_depolarizing_2q(DensityMatrix& rho, std::size_t q0, std::size_t q1, double p) {
  if (p <= 0.0) return;
  const std::size_t d = rho.dim();
  const std::size_t m0 = std::size_t{1} << q0;
  const std::size_t m1 = std::size_t{1} << q1;
  const std::size_t pm = m0 | m1;
  const CMatrix tmp = rho.mat;
  parallel_groups(static_cast<long long>(d), [&](std::size_t r) {
    for (std::size_t c = 0; c < d; ++c) {
      cplx v = (1.0 - p) * tmp(r, c);
      if ((r & pm) == (c & pm)) {
        cplx acc{0.0, 0.0};
        for (std::size_t b = 0; b < 4; ++b) {
          const std::size_t off = ((b & 1) ? m0 : 0) | ((b & 2) ? m1 : 0);
          acc += tmp((r & ~pm) | off, (c & ~pm) | off);
        }
        v += p * 0.25 * acc;
      }
      rho.mat(r, c) = v;
    }
  }, static_cast<long long>(d) * static_cast<long long>(d));
}

StateVector run_statevector(const BoundCircuit& c) {
  if (c.n_qubits > 10) throw TooManyQubits("statevector execution limited to 10 qubits");
  StateVector psi(c.n_qubits);
  for (const BoundGate& g : c.gates) apply_gate(psi, g);
  return psi;
}

std::vector<StateVector> run_statevector_layers(const BoundCircuit& c) {
  if (c.n_qubits > 10) throw TooManyQubits("statevector execution limited to 10 qubits");
  StateVector psi(c.n_qubits);
  std::vector<StateVector> snaps;
  std::size_t next = 0;
  for (std::size_t gi = 0; gi <= c.gates.size(); ++gi) {
    while (next < c.layer_ends.size() && c.layer_ends[next] == gi) {
      snaps.push_back(psi);
      ++next;
    }
    if (gi < c.gates.size()) apply_gate(psi, c.gates[gi]);
  }
  return snaps;
}

DensityMatrix run_density(const BoundCircuit& c, const NoiseProfile& noise) {
  if (c.n_qubits > 8) throw TooManyQubits("density execution limited to 8 qubits");
  noise.validate();
  DensityMatrix rho(c.n_qubits);
  for (const BoundGate& g : c.gates) {
    apply_unitary(rho, g);
    if (g.arity() == 1) {
      apply_depolarizing_1q(rho, g.qubits[0], noise.p1);
    } else {
      apply_depolarizing_2q(rho, g.qubits[0], g.qubits[1], noise.p2);
    }
  }
  return rho;
}

namespace {

std::pair<double, double> apply_readout(double p1, const NoiseProfile* noise) {
  if (noise != nullptr) {
    const double p1r = p1 * (1.0 - noise->readout_p10) + (1.0 - p1) * noise->readout_p01;
    return {1.0 - p1r, p1r};
  }
  return {1.0 - p1, p1};
}

}  // namespace

std::pair<double, double> measure_probs(const StateVector& psi, std::size_t qubit,
                                        const NoiseProfile* noise) {
  if (qubit >= psi.n_qubits) throw BadQubitIndex("measured qubit out of range");
  const std::size_t mask = std::size_t{1} << qubit;
  double p1 = 0.0;
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i)
    if (i & mask) p1 += std::norm(psi.amplitudes[i]);
  return apply_readout(p1, noise);
}

std::pair<double, double> measure_probs(const DensityMatrix& rho, std::size_t qubit,
                                        const NoiseProfile* noise) {
  if (qubit >= rho.n_qubits) throw BadQubitIndex("measured qubit out of range");
  const std::size_t mask = std::size_t{1} << qubit;
  double p1 = 0.0;
  for (std::size_t i = 0; i < rho.dim(); ++i)
    if (i & mask) p1 += rho.mat(i, i).real();
  return apply_readout(p1, noise);
}

std::pair<std::uint64_t, std::uint64_t> sample_shots(double p1, std::uint64_t shots,
                                                     std::uint64_t seed) {
  Rng rng(seed);
  std::uint64_t n1 = 0;
  for (std::uint64_t s = 0; s < shots; ++s)
    if (rng.uniform() < p1) ++n1;
  return {shots - n1, n1};
}

double expectation_z(const StateVector& psi, std::size_t qubit, const NoiseProfile* noise) {
  auto [p0, p1] = measure_probs(psi, qubit, noise);
  return p0 - p1;
}

double expectation_z(const DensityMatrix& rho, std::size_t qubit, const NoiseProfile* noise) {
  auto [p0, p1] = measure_probs(rho, qubit, noise);
  return p0 - p1;
}

Prediction predict_bound(const BoundCircuit& c, std::size_t measured_qubit,
                         circuit::Measurement measurement, const ExecOptions& opts) {
  const NoiseProfile* noise = opts.noise.has_value() ? &*opts.noise : nullptr;
  const bool gate_noise = noise != nullptr && (noise->p1 > 0.0 || noise->p2 > 0.0);

  double p1;
  if (gate_noise) {
    DensityMatrix rho = run_density(c, *noise);
    p1 = measure_probs(rho, measured_qubit, noise).second;
  } else {
    StateVector psi = run_statevector(c);
    p1 = measure_probs(psi, measured_qubit, noise).second;
  }

  double est_p1 = p1;
  if (opts.mode == ExecOptions::Mode::Shots) {
    auto [n0, n1] = sample_shots(p1, opts.shots, opts.seed);
    (void)n0;
    est_p1 = static_cast<double>(n1) / static_cast<double>(opts.shots);
  }

  Prediction out;
  if (measurement == circuit::Measurement::PROB) {
    out.score = est_p1;
    out.label = est_p1 >= 0.5 ? 1 : 0;  // tie resolves to 1
  } else {
    out.score = 1.0 - 2.0 * est_p1;     // <Z>
    out.label = out.score >= 0.0 ? 0 : 1;  // +1 eigenvalue maps to class 0
  }
  return out;
}

Prediction predict(const circuit::ModelSpec& spec, const std::vector<double>& params,
                   const std::vector<double>& x, const ExecOptions& opts) {
  const circuit::Circuit c = circuit::build_model_circuit(spec);
  const BoundCircuit bc = circuit::bind(c, params, x);
  return predict_bound(bc, spec.measured_qubit, spec.measurement, opts);
}

}  // namespace vqlab::sim

namespace vqlab::sim::reference {

using circuit::embed_gate;
using qcore::cplx;
using qcore::CMatrix;

StateVector run_statevector(const BoundCircuit& c) {
  StateVector psi(c.n_qubits);
  for (const BoundGate& g : c.gates) {
    const CMatrix u = embed_gate(c.n_qubits, g);
    psi.amplitudes = qcore::matvec(u, psi.amplitudes);
  }
  return psi;
}

namespace {

// dense Pauli on one qubit, identity elsewhere
CMatrix dense_pauli(std::size_t n, std::size_t q, int which) {
  const std::size_t d = std::size_t{1} << n;
  const std::size_t mask = std::size_t{1} << q;
  CMatrix m(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    switch (which) {
      case 0: m(i, i) = 1.0; break;                                      // I
      case 1: m(i ^ mask, i) = 1.0; break;                               // X
      case 2: m(i ^ mask, i) = (i & mask) ? cplx{0, -1} : cplx{0, 1}; break;  // Y
      default: m(i, i) = (i & mask) ? -1.0 : 1.0; break;                 // Z
    }
  }
  return m;
}

CMatrix twirl_term(const CMatrix& rho, const CMatrix& p) {
  return qcore::matmul(qcore::matmul(p, rho), qcore::adjoint(p));
}

}  // namespace

DensityMatrix run_density(const BoundCircuit& c, const NoiseProfile& noise) {
  DensityMatrix rho(c.n_qubits);
  for (const BoundGate& g : c.gates) {
    const CMatrix u = embed_gate(c.n_qubits, g);
    rho.mat = qcore::matmul(qcore::matmul(u, rho.mat), qcore::adjoint(u));
    // replace-with-mixed depolarizing as a uniform Pauli twirl
    if (g.arity() == 1 && noise.p1 > 0.0) {
      CMatrix acc(rho.dim(), rho.dim());
      for (int w = 0; w < 4; ++w) {
        const CMatrix t = twirl_term(rho.mat, dense_pauli(c.n_qubits, g.qubits[0], w));
        for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += 0.25 * t.data[i];
      }
      for (std::size_t i = 0; i < acc.data.size(); ++i)
        rho.mat.data[i] = (1.0 - noise.p1) * rho.mat.data[i] + noise.p1 * acc.data[i];
    } else if (g.arity() == 2 && noise.p2 > 0.0) {
      CMatrix acc(rho.dim(), rho.dim());
      for (int w0 = 0; w0 < 4; ++w0)
        for (int w1 = 0; w1 < 4; ++w1) {
          const CMatrix p = qcore::matmul(dense_pauli(c.n_qubits, g.qubits[0], w0),
                                          dense_pauli(c.n_qubits, g.qubits[1], w1));
          const CMatrix t = twirl_term(rho.mat, p);
          for (std::size_t i = 0; i < acc.data.size(); ++i) acc.data[i] += t.data[i] / 16.0;
        }
      for (std::size_t i = 0; i < acc.data.size(); ++i)
        rho.mat.data[i] = (1.0 - noise.p2) * rho.mat.data[i] + noise.p2 * acc.data[i];
    }
  }
  return rho;
}

}  // namespace vqlab::sim::reference
