#include "vqlab/qcore/cmatrix.hpp"

#include <cassert>
#include <cmath>

namespace vqlab::qcore {

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
  assert(a.cols == b.rows);
  CMatrix out(a.rows, b.cols);
  auto row_product = [&](std::size_t r) {
    for (std::size_t k = 0; k < a.cols; ++k) {
      cplx av = a(r, k);
      if (av == cplx{0.0, 0.0}) continue;
      for (std::size_t c = 0; c < b.cols; ++c) {
        out(r, c) += av * b(k, c);
      }
    }
  };
  if (a.rows >= 64) {
#pragma omp parallel for
    for (long long r = 0; r < static_cast<long long>(a.rows); ++r)
      row_product(static_cast<std::size_t>(r));
  } else {
    for (std::size_t r = 0; r < a.rows; ++r) row_product(r);
  }
  return out;
}

CMatrix adjoint(const CMatrix& a) {
  CMatrix out(a.cols, a.rows);
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t c = 0; c < a.cols; ++c) out(c, r) = std::conj(a(r, c));
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows * b.rows, a.cols * b.cols);
  for (std::size_t ar = 0; ar < a.rows; ++ar)
    for (std::size_t ac = 0; ac < a.cols; ++ac) {
      cplx av = a(ar, ac);
      if (av == cplx{0.0, 0.0}) continue;
      for (std::size_t br = 0; br < b.rows; ++br)
        for (std::size_t bc = 0; bc < b.cols; ++bc)
          out(ar * b.rows + br, ac * b.cols + bc) = av * b(br, bc);
    }
  return out;
}

cplx trace(const CMatrix& a) {
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows; ++i) t += a(i, i);
  return t;
}

cplx trace_product(const CMatrix& a, const CMatrix& b) {
  assert(a.cols == b.rows && b.cols == a.rows);
  cplx t{0.0, 0.0};
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t j = 0; j < a.cols; ++j) t += a(i, j) * b(j, i);
  return t;
}

double frobenius_norm(const CMatrix& a) {
  double s = 0.0;
  for (const cplx& v : a.data) s += std::norm(v);
  return std::sqrt(s);
}

double max_abs_diff(const CMatrix& a, const CMatrix& b) {
  assert(a.rows == b.rows && a.cols == b.cols);
  double m = 0.0;
  for (std::size_t i = 0; i < a.data.size(); ++i) m = std::max(m, std::abs(a.data[i] - b.data[i]));
  return m;
}

double hermiticity_defect(const CMatrix& a) {
  assert(a.rows == a.cols);
  double m = 0.0;
  for (std::size_t r = 0; r < a.rows; ++r)
    for (std::size_t c = r; c < a.cols; ++c)
      m = std::max(m, std::abs(a(r, c) - std::conj(a(c, r))));
  return m;
}

bool is_unitary(const CMatrix& a, double tol) {
  if (a.rows != a.cols) return false;
  CMatrix p = matmul(adjoint(a), a);
  return max_abs_diff(p, CMatrix::identity(a.rows)) <= tol;
}

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x) {
  assert(a.cols == x.size());
  std::vector<cplx> y(a.rows, cplx{0.0, 0.0});
  for (std::size_t r = 0; r < a.rows; ++r) {
    cplx acc{0.0, 0.0};
    for (std::size_t c = 0; c < a.cols; ++c) acc += a(r, c) * x[c];
    y[r] = acc;
  }
  return y;
}

}  // namespace vqlab::qcore
