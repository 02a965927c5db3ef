#include "vqlab/circuit/circuit.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "vqlab/util/errors.hpp"

namespace vqlab::circuit {

namespace {

// Gray-code transform of multiplexed rotation angles: beta_i =
// 2^-j sum_b (-1)^<b, g(i)> alpha_b with g(i) = i ^ (i >> 1).
std::vector<double> gray_transform(const std::vector<double>& alpha) {
  const std::size_t m = alpha.size();
  std::vector<double> beta(m, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t gi = i ^ (i >> 1);
    double acc = 0.0;
    for (std::size_t b = 0; b < m; ++b) {
      const bool neg = std::popcount(b & gi) & 1u;
      acc += neg ? -alpha[b] : alpha[b];
    }
    beta[i] = acc / static_cast<double>(m);
  }
  return beta;
}

}  // namespace

std::vector<double> amplitude_angles(std::size_t n_qubits, const std::vector<double>& features) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  if (features.size() > dim) throw FeatureCountMismatch("too many features for amplitude block");
  std::vector<double> x(dim, 0.0);
  double norm2 = 0.0;
  for (std::size_t i = 0; i < features.size(); ++i) {
    x[i] = features[i];
    norm2 += x[i] * x[i];
  }
  if (norm2 <= 0.0) throw ZeroVector("amplitude encoding of an all-zero feature vector");
  const double inv = 1.0 / std::sqrt(norm2);
  for (double& v : x) v *= inv;

  std::vector<double> out;
  out.reserve(dim - 1);
  // step k targets qubit n-k with controls n-k+1 .. n-1
  for (std::size_t k = 1; k <= n_qubits; ++k) {
    const std::size_t target = n_qubits - k;
    const std::size_t n_ctrl_states = std::size_t{1} << (k - 1);
    const std::size_t n_free = std::size_t{1} << target;
    std::vector<double> alpha(n_ctrl_states, 0.0);
    for (std::size_t b = 0; b < n_ctrl_states; ++b) {
      if (k == n_qubits) {
        // leaves: signed amplitudes fix the sign pattern
        const std::size_t i0 = b << (target + 1);
        alpha[b] = 2.0 * std::atan2(x[i0 | (std::size_t{1} << target)], x[i0]);
      } else {
        double n0 = 0.0, n1 = 0.0;
        for (std::size_t f = 0; f < n_free; ++f) {
          const std::size_t i0 = (b << (target + 1)) | f;
          n0 += x[i0] * x[i0];
          n1 += x[i0 | (std::size_t{1} << target)] * x[i0 | (std::size_t{1} << target)];
        }
        alpha[b] = 2.0 * std::atan2(std::sqrt(n1), std::sqrt(n0));
      }
    }
    std::vector<double> beta = (k == 1) ? alpha : gray_transform(alpha);
    out.insert(out.end(), beta.begin(), beta.end());
  }
  return out;
}

BoundCircuit bind(const Circuit& c, const std::vector<double>& params,
                  const std::vector<double>& features) {
  if (params.size() != c.param_count) throw LengthMismatch("params length != param_count");
  if (features.size() != c.feature_count) throw LengthMismatch("features length != feature_count");

  std::vector<double> amp;
  if (c.amp_block_qubits > 0) amp = amplitude_angles(c.amp_block_qubits, features);

  BoundCircuit out;
  out.n_qubits = c.n_qubits;
  out.layer_ends = c.layer_ends;
  out.gates.reserve(c.gates.size());
  for (const GateInstance& g : c.gates) {
    BoundGate bg;
    bg.kind = g.kind;
    bg.qubits = g.qubits;
    for (std::size_t i = 0; i < g.angle_count(); ++i) {
      const AngleSource& s = g.angles[i];
      double v = 0.0;
      switch (s.kind) {
        case AngleSource::Kind::Constant: v = s.value; break;
        case AngleSource::Kind::Parameter: v = s.scale * params.at(s.index) + s.offset; break;
        case AngleSource::Kind::Feature: v = s.scale * features.at(s.index) + s.offset; break;
        case AngleSource::Kind::FeatureProduct:
          v = s.scale * features.at(s.index) * features.at(s.index2) + s.offset;
          break;
        case AngleSource::Kind::AmpAngle: v = s.scale * amp.at(s.index) + s.offset; break;
      }
      bg.angles[i] = v;
    }
    out.gates.push_back(bg);
  }
  return out;
}

namespace {

template <typename GateT>
std::size_t asap_depth_impl(const std::vector<GateT>& gates, std::size_t n_qubits) {
  std::vector<std::size_t> level(n_qubits, 0);
  std::size_t depth = 0;
  for (const GateT& g : gates) {
    std::size_t l = 0;
    for (std::size_t i = 0; i < g.arity(); ++i) l = std::max(l, level[g.qubits[i]]);
    ++l;
    for (std::size_t i = 0; i < g.arity(); ++i) level[g.qubits[i]] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

}  // namespace

std::size_t logical_depth(const Circuit& c) { return asap_depth_impl(c.gates, c.n_qubits); }
std::size_t logical_depth(const BoundCircuit& c) { return asap_depth_impl(c.gates, c.n_qubits); }

CMatrix embed_gate(std::size_t n_qubits, const BoundGate& g) {
  const std::size_t dim = std::size_t{1} << n_qubits;
  CMatrix out(dim, dim);
  if (g.arity() == 1) {
    const auto m = gate_matrix_1q(g.kind, g.angles);
    const std::size_t mask = std::size_t{1} << g.qubits[0];
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t bi = (i & mask) ? 1 : 0;
      for (std::size_t bj = 0; bj < 2; ++bj) {
        const std::size_t j = bj ? (i | mask) : (i & ~mask);
        out(i, j) = m[bi * 2 + bj];
      }
    }
  } else {
    const auto m = gate_matrix_2q(g.kind, g.angles);
    const std::size_t m0 = std::size_t{1} << g.qubits[0];
    const std::size_t m1 = std::size_t{1} << g.qubits[1];
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t li = ((i & m0) ? 1 : 0) + (((i & m1) ? 1 : 0) << 1);
      const std::size_t base = i & ~(m0 | m1);
      for (std::size_t lj = 0; lj < 4; ++lj) {
        const std::size_t j = base | ((lj & 1) ? m0 : 0) | ((lj & 2) ? m1 : 0);
        out(i, j) = m[li * 4 + lj];
      }
    }
  }
  return out;
}

CMatrix circuit_unitary(const BoundCircuit& c) {
  if (c.n_qubits > 4) throw TooManyQubits("circuit_unitary limited to 4 qubits");
  CMatrix u = CMatrix::identity(std::size_t{1} << c.n_qubits);
  for (const BoundGate& g : c.gates) u = qcore::matmul(embed_gate(c.n_qubits, g), u);
  return u;
}

CMatrix circuit_unitary(const Circuit& c) {
  for (const GateInstance& g : c.gates)
    for (std::size_t i = 0; i < g.angle_count(); ++i)
      if (!g.angles[i].is_constant()) throw UnboundAngle("circuit contains symbolic angles");
  return circuit_unitary(vqlab::circuit::bind(c, std::vector<double>(c.param_count, 0.0),
                                              std::vector<double>(c.feature_count, 0.0)));
}

bool equal_up_to_global_phase(const CMatrix& a, const CMatrix& b, double tol) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  // phase from the largest entry of b
  std::size_t best = 0;
  double best_mag = 0.0;
  for (std::size_t i = 0; i < b.data.size(); ++i) {
    if (std::abs(b.data[i]) > best_mag) {
      best_mag = std::abs(b.data[i]);
      best = i;
    }
  }
  if (best_mag == 0.0) return frobenius_norm(a) <= tol;
  const cplx phase = a.data[best] / b.data[best];
  if (std::abs(std::abs(phase) - 1.0) > tol) return false;
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - phase * b.data[i]));
  return m <= tol;
}

}  // namespace vqlab::circuit
