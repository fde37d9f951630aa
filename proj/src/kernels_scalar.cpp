// Scalar reference kernels.  This file defines the normative operation order;
// the SIMD variants must reproduce it bit-for-bit (see kernels.hpp).

#include "hrkin/kernels.hpp"

namespace hrkin::kernels {
namespace {

void mat4_mul_scalar(double* dst, const double* a, const double* b) {
  for (int i = 0; i < 4; ++i) {
    const double a0 = a[i * 4 + 0];
    const double a1 = a[i * 4 + 1];
    const double a2 = a[i * 4 + 2];
    const double a3 = a[i * 4 + 3];
    for (int j = 0; j < 4; ++j) {
      double acc = a0 * b[0 * 4 + j];
      acc += a1 * b[1 * 4 + j];
      acc += a2 * b[2 * 4 + j];
      acc += a3 * b[3 * 4 + j];
      dst[i * 4 + j] = acc;
    }
  }
}

// Dot product of two length-n arrays with the 4-stripe reduction order
// documented in kernels.hpp.
double dot_striped(const double* x, const double* y, int n) {
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    s0 += x[j + 0] * y[j + 0];
    s1 += x[j + 1] * y[j + 1];
    s2 += x[j + 2] * y[j + 2];
    s3 += x[j + 3] * y[j + 3];
  }
  double acc = (s0 + s2) + (s1 + s3);
  for (; j < n; ++j) acc += x[j] * y[j];
  return acc;
}

void gram_scalar(const double* j, int rows, int cols, double* out) {
  for (int r = 0; r < rows; ++r) {
    for (int c = r; c < rows; ++c) {
      const double v = dot_striped(j + r * cols, j + c * cols, cols);
      out[r * rows + c] = v;
      out[c * rows + r] = v;
    }
  }
}

void mat_t_vec_scalar(const double* j, int rows, int cols, const double* v,
                      double* out) {
  for (int c = 0; c < cols; ++c) {
    double acc = j[0 * cols + c] * v[0];
    for (int r = 1; r < rows; ++r) acc += j[r * cols + c] * v[r];
    out[c] = acc;
  }
}

void axpy_scalar(int n, double a, const double* x, double* y) {
  for (int i = 0; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops table{mat4_mul_scalar, gram_scalar, mat_t_vec_scalar,
                         axpy_scalar};
  return table;
}

}  // namespace hrkin::kernels
