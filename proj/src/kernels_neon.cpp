// NEON kernel variants for aarch64.  Multiplies and adds are kept separate
// (vmulq/vaddq, never vfmaq) and the reductions use the same 4-stripe order
// as the scalar reference, so results are bit-identical across backends.

#include "hrkin/kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

namespace hrkin::kernels {
namespace {

void mat4_mul_neon(double* dst, const double* a, const double* b) {
  float64x2_t blo[4], bhi[4];
  for (int k = 0; k < 4; ++k) {
    blo[k] = vld1q_f64(b + k * 4 + 0);
    bhi[k] = vld1q_f64(b + k * 4 + 2);
  }
  for (int i = 0; i < 4; ++i) {
    float64x2_t lo = vmulq_n_f64(blo[0], a[i * 4 + 0]);
    float64x2_t hi = vmulq_n_f64(bhi[0], a[i * 4 + 0]);
    for (int k = 1; k < 4; ++k) {
      lo = vaddq_f64(lo, vmulq_n_f64(blo[k], a[i * 4 + k]));
      hi = vaddq_f64(hi, vmulq_n_f64(bhi[k], a[i * 4 + k]));
    }
    vst1q_f64(dst + i * 4 + 0, lo);
    vst1q_f64(dst + i * 4 + 2, hi);
  }
}

// acc01 carries stripes (s0, s1), acc23 carries (s2, s3); combining them with
// one vector add then a lane add yields (s0+s2) + (s1+s3), matching scalar.
double dot_striped_neon(const double* x, const double* y, int n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + j), vld1q_f64(y + j)));
    acc23 = vaddq_f64(acc23,
                      vmulq_f64(vld1q_f64(x + j + 2), vld1q_f64(y + j + 2)));
  }
  const float64x2_t pair = vaddq_f64(acc01, acc23);  // (s0+s2, s1+s3)
  double acc = vgetq_lane_f64(pair, 0) + vgetq_lane_f64(pair, 1);
  for (; j < n; ++j) acc += x[j] * y[j];
  return acc;
}

void gram_neon(const double* j, int rows, int cols, double* out) {
  for (int r = 0; r < rows; ++r) {
    for (int c = r; c < rows; ++c) {
      const double v = dot_striped_neon(j + r * cols, j + c * cols, cols);
      out[r * rows + c] = v;
      out[c * rows + r] = v;
    }
  }
}

void mat_t_vec_neon(const double* j, int rows, int cols, const double* v,
                    double* out) {
  int c = 0;
  for (; c + 2 <= cols; c += 2) {
    float64x2_t acc = vmulq_n_f64(vld1q_f64(j + 0 * cols + c), v[0]);
    for (int r = 1; r < rows; ++r) {
      acc = vaddq_f64(acc, vmulq_n_f64(vld1q_f64(j + r * cols + c), v[r]));
    }
    vst1q_f64(out + c, acc);
  }
  for (; c < cols; ++c) {
    double acc = j[0 * cols + c] * v[0];
    for (int r = 1; r < rows; ++r) acc += j[r * cols + c] * v[r];
    out[c] = acc;
  }
}

void axpy_neon(int n, double a, const double* x, double* y) {
  const float64x2_t va = vdupq_n_f64(a);
  int i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t prod = vmulq_f64(va, vld1q_f64(x + i));
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& neon_ops() {
  static const Ops table{mat4_mul_neon, gram_neon, mat_t_vec_neon, axpy_neon};
  return table;
}

}  // namespace hrkin::kernels

#endif  // aarch64
