#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace vqlab::qcore {

using cplx = std::complex<double>;

// Dense row-major complex matrix; dimensions stay small (<= 2^10).
struct CMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<cplx> data;

  CMatrix() = default;
  CMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, cplx{0.0, 0.0}) {}

  cplx& operator()(std::size_t r, std::size_t c) { return data[r * cols + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

  static CMatrix identity(std::size_t n) {
    CMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }
};

CMatrix matmul(const CMatrix& a, const CMatrix& b);
CMatrix adjoint(const CMatrix& a);
CMatrix kron(const CMatrix& a, const CMatrix& b);

cplx trace(const CMatrix& a);
// Tr(a * b) without forming the product
cplx trace_product(const CMatrix& a, const CMatrix& b);

double frobenius_norm(const CMatrix& a);
double max_abs_diff(const CMatrix& a, const CMatrix& b);
// max |a - a†|, elementwise
double hermiticity_defect(const CMatrix& a);
bool is_unitary(const CMatrix& a, double tol);

std::vector<cplx> matvec(const CMatrix& a, const std::vector<cplx>& x);

}  // namespace vqlab::qcore
