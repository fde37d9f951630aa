// AVX2 kernel variants.  Compiled with -mavx2 and only reached after a
// runtime CPU check, so the rest of the binary stays baseline-compatible.
//
// No FMA: each backend must keep multiplies and adds separate so that every
// backend produces bit-identical results (see kernels.hpp).

#include "hrkin/kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

namespace hrkin::kernels {
namespace {

void mat4_mul_avx2(double* dst, const double* a, const double* b) {
  const __m256d b0 = _mm256_loadu_pd(b + 0);
  const __m256d b1 = _mm256_loadu_pd(b + 4);
  const __m256d b2 = _mm256_loadu_pd(b + 8);
  const __m256d b3 = _mm256_loadu_pd(b + 12);
  for (int i = 0; i < 4; ++i) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(a[i * 4 + 0]), b0);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(a[i * 4 + 1]), b1));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(a[i * 4 + 2]), b2));
    acc = _mm256_add_pd(acc, _mm256_mul_pd(_mm256_set1_pd(a[i * 4 + 3]), b3));
    _mm256_storeu_pd(dst + i * 4, acc);
  }
}

// Lane l of the vector accumulator holds stripe sum s_l; the horizontal
// combine below evaluates (s0+s2) + (s1+s3), matching the scalar reference.
double dot_striped_avx2(const double* x, const double* y, int n) {
  __m256d vacc = _mm256_setzero_pd();
  int j = 0;
  for (; j + 4 <= n; j += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(x + j),
                                       _mm256_loadu_pd(y + j));
    vacc = _mm256_add_pd(vacc, prod);
  }
  const __m128d lo = _mm256_castpd256_pd128(vacc);     // (s0, s1)
  const __m128d hi = _mm256_extractf128_pd(vacc, 1);   // (s2, s3)
  const __m128d pair = _mm_add_pd(lo, hi);             // (s0+s2, s1+s3)
  double acc = _mm_cvtsd_f64(pair) + _mm_cvtsd_f64(_mm_unpackhi_pd(pair, pair));
  for (; j < n; ++j) acc += x[j] * y[j];
  return acc;
}

void gram_avx2(const double* j, int rows, int cols, double* out) {
  for (int r = 0; r < rows; ++r) {
    for (int c = r; c < rows; ++c) {
      const double v = dot_striped_avx2(j + r * cols, j + c * cols, cols);
      out[r * rows + c] = v;
      out[c * rows + r] = v;
    }
  }
}

void mat_t_vec_avx2(const double* j, int rows, int cols, const double* v,
                    double* out) {
  int c = 0;
  for (; c + 4 <= cols; c += 4) {
    __m256d acc = _mm256_mul_pd(_mm256_set1_pd(v[0]),
                                _mm256_loadu_pd(j + 0 * cols + c));
    for (int r = 1; r < rows; ++r) {
      const __m256d prod = _mm256_mul_pd(_mm256_set1_pd(v[r]),
                                         _mm256_loadu_pd(j + r * cols + c));
      acc = _mm256_add_pd(acc, prod);
    }
    _mm256_storeu_pd(out + c, acc);
  }
  for (; c < cols; ++c) {
    double acc = j[0 * cols + c] * v[0];
    for (int r = 1; r < rows; ++r) acc += j[r * cols + c] * v[r];
    out[c] = acc;
  }
}

void axpy_avx2(int n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  int i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops table{mat4_mul_avx2, gram_avx2, mat_t_vec_avx2, axpy_avx2};
  return table;
}

}  // namespace hrkin::kernels

#endif  // x86-64
