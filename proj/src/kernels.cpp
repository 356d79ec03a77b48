#include "sgc/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace sgc::kernels {

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

void axpy_scalar(std::uint64_t* dst, const std::uint64_t* src, std::size_t len, std::uint64_t c,
                 std::uint64_t q) {
  if (c == 0) return;
  for (std::size_t j = 0; j < len; ++j) {
    std::uint64_t s = dst[j] + mulmod(c, src[j], q);
    dst[j] = s >= q ? s - q : s;
  }
}

void scale_scalar(std::uint64_t* row, std::size_t len, std::uint64_t c, std::uint64_t q) {
  for (std::size_t j = 0; j < len; ++j) row[j] = mulmod(c, row[j], q);
}

constexpr RowOps kScalar{Isa::kScalar, "scalar", &axpy_scalar, &scale_scalar};

// -1 = defer to SGC_ISA, 0 = automatic, 1 = scalar, 2 = avx2
std::atomic<int> g_forced{-1};

int env_preference() {
  const char* v = std::getenv("SGC_ISA");
  if (v == nullptr) return 0;
  if (std::strcmp(v, "scalar") == 0) return 1;
  if (std::strcmp(v, "avx2") == 0) return 2;
  return 0;
}

}  // namespace

#ifndef SGC_HAVE_AVX2_TU
namespace detail {
const RowOps* avx2_table() noexcept { return nullptr; }
}  // namespace detail
#endif

const RowOps& scalar_ops() noexcept { return kScalar; }

const RowOps* avx2_ops() noexcept {
#if defined(__x86_64__) || defined(__i386__)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? detail::avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const RowOps& select(std::uint64_t q) noexcept {
  static const int from_env = env_preference();
  int pref = g_forced.load(std::memory_order_relaxed);
  if (pref < 0) pref = from_env;
  if (pref == 1) return kScalar;
  const RowOps* avx = avx2_ops();
  if (avx != nullptr && q < kAvx2ModulusLimit) return *avx;
  return kScalar;
}

void force_isa(std::optional<Isa> isa) noexcept {
  if (!isa) {
    g_forced.store(-1, std::memory_order_relaxed);
  } else {
    g_forced.store(*isa == Isa::kScalar ? 1 : 2, std::memory_order_relaxed);
  }
}

}  // namespace sgc::kernels
