#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

// Row kernels over GF(q) residues: the inner loops of elimination and of
// matrix products. A portable scalar reference is always built; an AVX2
// variant is compiled in a separate translation unit and picked at runtime
// when the CPU supports it and q < 2^31 (its Shoup-style reduction needs
// residues that fit a 32-bit lane).

namespace sgc::kernels {

enum class Isa { kScalar, kAvx2 };

struct RowOps {
  Isa isa;
  std::string_view name;
  /// dst[j] = dst[j] + c * src[j] mod q, all inputs reduced.
  void (*axpy)(std::uint64_t* dst, const std::uint64_t* src, std::size_t len, std::uint64_t c,
               std::uint64_t q);
  /// row[j] = c * row[j] mod q.
  void (*scale)(std::uint64_t* row, std::size_t len, std::uint64_t c, std::uint64_t q);
};

/// Largest modulus (exclusive) the AVX2 variant accepts.
inline constexpr std::uint64_t kAvx2ModulusLimit = std::uint64_t{1} << 31;

const RowOps& scalar_ops() noexcept;

/// The AVX2 table, or nullptr when it was not compiled in or the CPU lacks AVX2.
const RowOps* avx2_ops() noexcept;

/// Best variant for modulus q, honouring force_isa() and the SGC_ISA
/// environment variable ("scalar" or "avx2").
const RowOps& select(std::uint64_t q) noexcept;

/// Pins the variant process-wide; std::nullopt restores automatic selection.
/// Requests for an unavailable ISA fall back to scalar.
void force_isa(std::optional<Isa> isa) noexcept;

inline void axpy(std::span<std::uint64_t> dst, std::span<const std::uint64_t> src, std::uint64_t c,
                 std::uint64_t q) {
  select(q).axpy(dst.data(), src.data(), dst.size(), c, q);
}

inline void scale(std::span<std::uint64_t> row, std::uint64_t c, std::uint64_t q) {
  select(q).scale(row.data(), row.size(), c, q);
}

namespace detail {
// Defined in kernels_avx2.cpp when that TU is compiled.
const RowOps* avx2_table() noexcept;
}  // namespace detail

}  // namespace sgc::kernels
