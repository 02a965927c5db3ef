#include "vqlab/qcore/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "vqlab/util/errors.hpp"

namespace vqlab::qcore {

namespace {

double offdiag_norm(const CMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t c = 0; c < a.cols; ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// One complex Jacobi rotation zeroing a(p,q). Phase is factored out so the
// 2x2 block reduces to the real symmetric case.
void jacobi_rotate(CMatrix& a, CMatrix& vacc, std::size_t p, std::size_t q) {
  const cplx apq = a(p, q);
  const double r = std::abs(apq);
  if (r == 0.0) return;
  const cplx phase = apq / r;  // e^{i beta}
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const cplx sp = s * std::conj(phase);   // s e^{-i beta}
  const cplx spc = s * phase;             // s e^{+i beta}

  const std::size_t n = a.rows;
  // columns: A <- A * V
  for (std::size_t k = 0; k < n; ++k) {
    cplx akp = a(k, p), akq = a(k, q);
    a(k, p) = c * akp - sp * akq;
    a(k, q) = s * akp + c * std::conj(phase) * akq;
  }
  // rows: A <- V† * A
  for (std::size_t k = 0; k < n; ++k) {
    cplx apk = a(p, k), aqk = a(q, k);
    a(p, k) = c * apk - spc * aqk;
    a(q, k) = s * apk + c * phase * aqk;
  }
  // accumulate eigenvectors: Vacc <- Vacc * V
  for (std::size_t k = 0; k < n; ++k) {
    cplx vkp = vacc(k, p), vkq = vacc(k, q);
    vacc(k, p) = c * vkp - sp * vkq;
    vacc(k, q) = s * vkp + c * std::conj(phase) * vkq;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = cplx{a(p, p).real(), 0.0};
  a(q, q) = cplx{a(q, q).real(), 0.0};
}

SpectralDecomposition eig_of_density(const DensityMatrix& rho) { return hermitian_eig(rho.mat); }

// Spectrum after clamping at eps and renormalizing the trace.
std::vector<double> clamped_eigenvalues(const std::vector<double>& lam, double eps) {
  std::vector<double> out(lam.size());
  double total = 0.0;
  for (std::size_t i = 0; i < lam.size(); ++i) {
    out[i] = std::max(lam[i], eps);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

CMatrix reconstruct(const CMatrix& v, const std::vector<double>& lam, bool take_log) {
  const std::size_t n = v.rows;
  CMatrix out(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx acc{0.0, 0.0};
      for (std::size_t k = 0; k < n; ++k) {
        double d = take_log ? std::log(lam[k]) : lam[k];
        acc += v(r, k) * d * std::conj(v(c, k));
      }
      out(r, c) = acc;
    }
  return out;
}

void check_clamp_eps(double eps) {
  if (!(eps > 0.0 && eps <= 1e-3)) throw BadConfig("clamp eps must be in (0, 1e-3]");
}

}  // namespace

SpectralDecomposition hermitian_eig(const CMatrix& m) {
  if (m.rows != m.cols) throw DimensionMismatch("hermitian_eig requires a square matrix");
  if (m.rows > 1024) throw DimensionMismatch("hermitian_eig limited to dim 1024");
  if (hermiticity_defect(m) > 1e-8) throw NotHermitian("symmetry defect above 1e-8");

  const std::size_t n = m.rows;
  CMatrix a = m;
  // symmetrize to strip floating-point noise
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) {
      cplx v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      a(r, c) = (r == c) ? cplx{v.real(), 0.0} : v;
    }

  CMatrix vacc = CMatrix::identity(n);
  const double tol = 1e-12 * std::max(1.0, frobenius_norm(a));
  bool converged = (n <= 1) || offdiag_norm(a) <= tol;
  for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q)
        if (std::abs(a(p, q)) > tol / static_cast<double>(n)) jacobi_rotate(a, vacc, p, q);
    converged = offdiag_norm(a) <= tol;
  }
  if (!converged) throw NoConvergence("Jacobi sweeps exceeded 100");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

  SpectralDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = CMatrix(n, n);
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = vacc(r, order[k]);
  }
  return out;
}

DensityMatrix clamp_spectrum(const DensityMatrix& rho, double eps) {
  check_clamp_eps(eps);
  SpectralDecomposition sd = eig_of_density(rho);
  std::vector<double> lam = clamped_eigenvalues(sd.eigenvalues, eps);
  DensityMatrix out;
  out.n_qubits = rho.n_qubits;
  out.mat = reconstruct(sd.eigenvectors, lam, false);
  return out;
}

CMatrix matrix_log(const DensityMatrix& rho) {
  SpectralDecomposition sd = eig_of_density(rho);
  for (double l : sd.eigenvalues)
    if (l <= 0.0) throw NonPositiveSpectrum("matrix_log requires a strictly positive spectrum");
  return reconstruct(sd.eigenvectors, sd.eigenvalues, true);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma, double eps) {
  if (rho.dim() != sigma.dim()) throw DimensionMismatch("relative_entropy operands differ in dimension");
  check_clamp_eps(eps);

  SpectralDecomposition sr = eig_of_density(rho);
  SpectralDecomposition ss = eig_of_density(sigma);
  std::vector<double> lr = clamped_eigenvalues(sr.eigenvalues, eps);
  std::vector<double> ls = clamped_eigenvalues(ss.eigenvalues, eps);

  double tr_rho_log_rho = 0.0;
  for (double l : lr) tr_rho_log_rho += l * std::log(l);

  CMatrix rho_clamped = reconstruct(sr.eigenvectors, lr, false);
  CMatrix log_sigma = reconstruct(ss.eigenvectors, ls, true);
  double cross = trace_product(rho_clamped, log_sigma).real();
  return tr_rho_log_rho - cross;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  SpectralDecomposition sd = eig_of_density(rho);
  double s = 0.0;
  for (double l : sd.eigenvalues)
    if (l > 0.0) s -= l * std::log(l);
  return s;
}

DensityMatrix partial_trace(const DensityMatrix& rho, const std::vector<std::size_t>& keep) {
  const std::size_t n = rho.n_qubits;
  if (keep.empty()) throw BadQubitIndex("keep set is empty");
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep[i] >= n) throw BadQubitIndex("keep index out of range");
    if (i > 0 && keep[i] <= keep[i - 1]) throw BadQubitIndex("keep must be sorted and distinct");
  }

  std::vector<std::size_t> traced;
  for (std::size_t q = 0, ki = 0; q < n; ++q) {
    if (ki < keep.size() && keep[ki] == q) {
      ++ki;
    } else {
      traced.push_back(q);
    }
  }

  auto scatter = [](std::size_t bits, const std::vector<std::size_t>& positions) {
    std::size_t out = 0;
    for (std::size_t i = 0; i < positions.size(); ++i)
      if ((bits >> i) & 1u) out |= std::size_t{1} << positions[i];
    return out;
  };

  const std::size_t dk = std::size_t{1} << keep.size();
  const std::size_t dt = std::size_t{1} << traced.size();
  DensityMatrix out;
  out.n_qubits = keep.size();
  out.mat = CMatrix(dk, dk);
  for (std::size_t r = 0; r < dk; ++r) {
    const std::size_t rbase = scatter(r, keep);
    for (std::size_t c = 0; c < dk; ++c) {
      const std::size_t cbase = scatter(c, keep);
      cplx acc{0.0, 0.0};
      for (std::size_t e = 0; e < dt; ++e) {
        const std::size_t off = scatter(e, traced);
        acc += rho.mat(rbase | off, cbase | off);
      }
      out.mat(r, c) = acc;
    }
  }
  return out;
}

}  // namespace vqlab::qcore
