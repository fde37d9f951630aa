#include "hrkin/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hrkin::kernels {
namespace {

const Ops* table_for(Backend b) {
  switch (b) {
    case Backend::scalar:
      return &scalar_ops();
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2:
      return &avx2_ops();
#endif
#if defined(__aarch64__)
    case Backend::neon:
      return &neon_ops();
#endif
    default:
      return nullptr;
  }
}

bool cpu_supports(Backend b) {
  switch (b) {
    case Backend::scalar:
      return true;
    case Backend::avx2:
#if (defined(__x86_64__) || defined(_M_X64)) && \
    (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2") != 0;
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;  // NEON is architecturally guaranteed on aarch64
#else
      return false;
#endif
  }
  return false;
}

Backend detect_preferred() {
  if (const char* env = std::getenv("HRKIN_BACKEND")) {
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (name(b) == env && supported(b)) return b;
    }
  }
  if (supported(Backend::avx2)) return Backend::avx2;
  if (supported(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

std::atomic<const Ops*>& active_table() {
  static std::atomic<const Ops*> table{table_for(detect_preferred())};
  return table;
}

std::atomic<Backend>& active_backend() {
  static std::atomic<Backend> b{detect_preferred()};
  return b;
}

}  // namespace

bool supported(Backend b) { return cpu_supports(b) && table_for(b) != nullptr; }

Backend preferred() { return detect_preferred(); }

Backend active() { return active_backend().load(std::memory_order_relaxed); }

bool set(Backend b) {
  if (!supported(b)) return false;
  active_table().store(table_for(b), std::memory_order_relaxed);
  active_backend().store(b, std::memory_order_relaxed);
  return true;
}

std::string_view name(Backend b) {
  switch (b) {
    case Backend::scalar:
      return "scalar";
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
  }
  return "unknown";
}

const Ops& ops() { return *active_table().load(std::memory_order_relaxed); }

}  // namespace hrkin::kernels
