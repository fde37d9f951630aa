#ifndef HRKIN__KERNELS_HPP_
#define HRKIN__KERNELS_HPP_

#include <string_view>

// =============================================================================
// Dispatchable numeric kernels
// =============================================================================
//
// The inner loops of the library (transform chaining, Gram accumulation for
// the damped least-squares solve, J^T * v products, configuration updates)
// funnel through the function table below.  A scalar reference implementation
// always exists; on x86-64 an AVX2 variant and on aarch64 a NEON variant are
// compiled in and selected at runtime.
//
// Every backend executes the exact same floating-point operation order, so
// results are bit-identical across backends (this is asserted by tests):
//
//   * mat4_mul      - per output element, a linear multiply/add chain over
//                     k = 0..3 (no fused multiply-add).
//   * gram          - row-dot-row reductions use four strided partial sums
//                     s0..s3 over the 4-aligned prefix of the column range,
//                     combined as (s0+s2) + (s1+s3), then the remaining tail
//                     elements are folded in one at a time, in order.
//   * mat_t_vec     - per output column, a linear multiply/add chain over the
//                     rows (r = 0..rows-1).
//   * axpy          - elementwise, no reductions.
//
// Kernel translation units are compiled with -ffp-contract=off so the
// compiler cannot fuse the scalar reference into FMAs behind our back.
// =============================================================================

namespace hrkin::kernels {

enum class Backend { scalar, avx2, neon };

struct Ops {
  // dst = a * b for row-major 4x4 matrices.  dst must not alias a or b.
  void (*mat4_mul)(double* dst, const double* a, const double* b);

  // out = J * J^T for a row-major rows x cols matrix J; out is rows x rows,
  // row-major, fully populated (symmetric entries mirrored exactly).
  void (*gram)(const double* j, int rows, int cols, double* out);

  // out[c] = sum_r J[r][c] * v[r] for a row-major rows x cols matrix J.
  void (*mat_t_vec)(const double* j, int rows, int cols, const double* v,
                    double* out);

  // y[i] += a * x[i] for i = 0..n-1.
  void (*axpy)(int n, double a, const double* x, double* y);
};

// True when the backend was compiled in and the CPU supports it.
bool supported(Backend b);

// Best supported backend; the HRKIN_BACKEND environment variable
// (scalar|avx2|neon) overrides when it names a supported backend.
Backend preferred();

// Currently active backend.  Defaults to preferred() on first use.
Backend active();

// Switch backends.  Returns false (and changes nothing) when unsupported.
bool set(Backend b);

std::string_view name(Backend b);

// Active kernel table.
const Ops& ops();

inline void mat4_mul(double* dst, const double* a, const double* b) {
  ops().mat4_mul(dst, a, b);
}
inline void gram(const double* j, int rows, int cols, double* out) {
  ops().gram(j, rows, cols, out);
}
inline void mat_t_vec(const double* j, int rows, int cols, const double* v,
                      double* out) {
  ops().mat_t_vec(j, rows, cols, v, out);
}
inline void axpy(int n, double a, const double* x, double* y) {
  ops().axpy(n, a, x, y);
}

// Exposed for the equivalence tests: the raw per-backend tables.
const Ops& scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
const Ops& avx2_ops();
#endif
#if defined(__aarch64__)
const Ops& neon_ops();
#endif

}  // namespace hrkin::kernels

#endif  // HRKIN__KERNELS_HPP_
