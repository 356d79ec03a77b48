#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "sgc/error.hpp"

namespace sgc {

/// Validated prime modulus q with 2 <= q < 2^62.
///
/// Elements of GF(q) are carried around as least nonnegative residues in a
/// uint64_t; the arithmetic helpers below assume their inputs are already
/// reduced. Products are widened to 128 bits, hence the 2^62 ceiling.
class FieldModulus {
 public:
  static constexpr std::uint64_t kMaxExclusive = std::uint64_t{1} << 62;
  static constexpr std::uint64_t kDefault = 2147483647;  // 2^31 - 1

  /// Throws NotPrime for q < 2 or composite q, TooLarge for q >= 2^62.
  explicit FieldModulus(std::uint64_t q);

  std::uint64_t value() const noexcept { return q_; }

  std::uint64_t reduce(std::uint64_t a) const noexcept { return a % q_; }
  /// Maps a signed integer onto its residue.
  std::uint64_t from_signed(std::int64_t a) const noexcept;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    std::uint64_t s = a + b;
    return s >= q_ ? s - q_ : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + q_ - b;
  }
  std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : q_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % q_);
  }
  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept;
  /// Throws DivisionByZero for a == 0.
  std::uint64_t inv(std::uint64_t a) const;

  friend bool operator==(const FieldModulus&, const FieldModulus&) = default;

 private:
  std::uint64_t q_;
};

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(std::uint64_t n) noexcept;

/// Checked factory; same validation as the constructor.
FieldModulus make_field(std::uint64_t q);

/// A single field element tagged with its modulus. Binary operations require
/// identical moduli and throw DimensionMismatch otherwise.
class FieldElement {
 public:
  FieldElement(std::uint64_t value, FieldModulus modulus)
      : value_(modulus.reduce(value)), modulus_(modulus) {}

  std::uint64_t value() const noexcept { return value_; }
  const FieldModulus& modulus() const noexcept { return modulus_; }

  FieldElement operator+(const FieldElement& o) const;
  FieldElement operator-(const FieldElement& o) const;
  FieldElement operator*(const FieldElement& o) const;
  FieldElement operator/(const FieldElement& o) const;
  FieldElement operator-() const { return {modulus_.neg(value_), modulus_}; }
  FieldElement pow(std::uint64_t e) const { return {modulus_.pow(value_, e), modulus_}; }

  friend bool operator==(const FieldElement&, const FieldElement&) = default;

 private:
  void require_same(const FieldElement& o) const;

  std::uint64_t value_;
  FieldModulus modulus_;
};

/// Multiplicative inverse; throws DivisionByZero for zero.
FieldElement inv(const FieldElement& a);

/// Seedable generator used for every random draw in the library.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. Uniform residues are drawn by rejection on the raw 64-bit output
/// (no std::uniform_int_distribution, whose algorithm is unspecified), so a
/// given seed yields the same field elements on every platform.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t next_u64() { return engine_(); }
  /// Uniform integer in [0, bound); bound must be nonzero.
  std::uint64_t uniform_below(std::uint64_t bound);
  std::uint64_t uniform(const FieldModulus& q) { return uniform_below(q.value()); }

  /// Child generator seeded with hash(seed, label); does not advance *this.
  SeededRng derive(std::string_view label) const { return SeededRng(derive_seed(seed_, label)); }
  SeededRng derive(std::uint64_t label) const { return SeededRng(derive_seed(seed_, label)); }

  static std::uint64_t derive_seed(std::uint64_t parent, std::string_view label);
  static std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t label);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

/// `count` i.i.d. uniform residues.
std::vector<std::uint64_t> sample_uniform(SeededRng& rng, const FieldModulus& q,
                                          std::size_t count);

/// FNV-1a over the little-endian bytes of each word. Used for transcript and
/// decoded-sum fingerprints.
std::uint64_t fnv1a64(const std::vector<std::uint64_t>& words) noexcept;

}  // namespace sgc
