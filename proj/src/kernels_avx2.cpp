// Compiled with -mavx2. Nothing here may run before avx2_ops() has confirmed
// CPU support.

#include <immintrin.h>

#include "sgc/kernels.hpp"

namespace sgc::kernels {

namespace {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t q) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q);
}

// Shoup multiplication by a fixed c < q < 2^31: with w = floor(c * 2^32 / q),
// c*x - floor(x*w / 2^32)*q lies in [0, 2q) for every x < 2^32.
struct ShoupConst {
  __m256i c;
  __m256i w;
  __m256i q;
};

inline ShoupConst make_shoup(std::uint64_t c, std::uint64_t q) {
  const std::uint64_t w = (c << 32) / q;
  return {_mm256_set1_epi64x(static_cast<long long>(c)), _mm256_set1_epi64x(static_cast<long long>(w)),
          _mm256_set1_epi64x(static_cast<long long>(q))};
}

// x < q; returns c*x mod q.
inline __m256i shoup_mul(__m256i x, const ShoupConst& k) {
  const __m256i prod = _mm256_mul_epu32(x, k.c);
  const __m256i hi = _mm256_srli_epi64(_mm256_mul_epu32(x, k.w), 32);
  __m256i t = _mm256_sub_epi64(prod, _mm256_mul_epu32(hi, k.q));
  // Lanes stay below 2^32, so the signed 64-bit compare is safe.
  const __m256i lt = _mm256_cmpgt_epi64(k.q, t);
  return _mm256_blendv_epi8(_mm256_sub_epi64(t, k.q), t, lt);
}

inline __m256i add_mod(__m256i a, __m256i b, __m256i q) {
  const __m256i s = _mm256_add_epi64(a, b);
  const __m256i lt = _mm256_cmpgt_epi64(q, s);
  return _mm256_blendv_epi8(_mm256_sub_epi64(s, q), s, lt);
}

void axpy_avx2(std::uint64_t* dst, const std::uint64_t* src, std::size_t len, std::uint64_t c,
               std::uint64_t q) {
  if (c == 0) return;
  const ShoupConst k = make_shoup(c, q);
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + j));
    const __m256i d = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(dst + j));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + j), add_mod(d, shoup_mul(x, k), k.q));
  }
  for (; j < len; ++j) {
    std::uint64_t s = dst[j] + mulmod(c, src[j], q);
    dst[j] = s >= q ? s - q : s;
  }
}

void scale_avx2(std::uint64_t* row, std::size_t len, std::uint64_t c, std::uint64_t q) {
  const ShoupConst k = make_shoup(c, q);
  std::size_t j = 0;
  for (; j + 4 <= len; j += 4) {
    const __m256i x = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(row + j));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(row + j), shoup_mul(x, k));
  }
  for (; j < len; ++j) row[j] = mulmod(c, row[j], q);
}

constexpr RowOps kAvx2{Isa::kAvx2, "avx2", &axpy_avx2, &scale_avx2};

}  // namespace

namespace detail {
const RowOps* avx2_table() noexcept { return &kAvx2; }
}  // namespace detail

}  // namespace sgc::kernels
