#include "sgc/field.hpp"

#include <array>
#include <string>

namespace sgc {

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

std::uint64_t powmod_u64(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, b, m);
    b = mulmod_u64(b, b, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  constexpr std::array<std::uint64_t, 12> kBases = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (auto a : kBases) {
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

FieldModulus::FieldModulus(std::uint64_t q) : q_(q) {
  if (q >= kMaxExclusive) {
    throw TooLarge("field modulus " + std::to_string(q) + " must be below 2^62");
  }
  if (!is_prime(q)) {
    throw NotPrime("field modulus " + std::to_string(q) + " is not prime");
  }
}

std::uint64_t FieldModulus::from_signed(std::int64_t a) const noexcept {
  if (a >= 0) return static_cast<std::uint64_t>(a) % q_;
  // -(a+1) avoids overflow at INT64_MIN.
  std::uint64_t m = (static_cast<std::uint64_t>(-(a + 1)) % q_ + 1) % q_;
  return neg(m);
}

std::uint64_t FieldModulus::pow(std::uint64_t base, std::uint64_t exp) const noexcept {
  return powmod_u64(base, exp, q_);
}

std::uint64_t FieldModulus::inv(std::uint64_t a) const {
  a %= q_;
  if (a == 0) throw DivisionByZero("inverse of zero in GF(" + std::to_string(q_) + ")");
  // Extended Euclid on signed 128-bit to stay clear of overflow near 2^62.
  __int128 t = 0, new_t = 1;
  __int128 r = q_, new_r = a;
  while (new_r != 0) {
    __int128 quot = r / new_r;
    __int128 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q_;
  return static_cast<std::uint64_t>(t);
}

FieldModulus make_field(std::uint64_t q) { return FieldModulus(q); }

void FieldElement::require_same(const FieldElement& o) const {
  if (!(modulus_ == o.modulus_)) {
    throw DimensionMismatch("field elements over different moduli");
  }
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
  require_same(o);
  return {modulus_.add(value_, o.value_), modulus_};
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
  require_same(o);
  return {modulus_.sub(value_, o.value_), modulus_};
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
  require_same(o);
  return {modulus_.mul(value_, o.value_), modulus_};
}

FieldElement FieldElement::operator/(const FieldElement& o) const {
  require_same(o);
  return {modulus_.mul(value_, modulus_.inv(o.value_)), modulus_};
}

FieldElement inv(const FieldElement& a) { return {a.modulus().inv(a.value()), a.modulus()}; }

std::uint64_t SeededRng::uniform_below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

std::uint64_t SeededRng::derive_seed(std::uint64_t parent, std::string_view label) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return splitmix64(splitmix64(parent) ^ h);
}

std::uint64_t SeededRng::derive_seed(std::uint64_t parent, std::uint64_t label) {
  return splitmix64(splitmix64(parent) ^ splitmix64(label ^ 0x5851f42d4c957f2dULL));
}

std::vector<std::uint64_t> sample_uniform(SeededRng& rng, const FieldModulus& q,
                                          std::size_t count) {
  std::vector<std::uint64_t> out(count);
  for (auto& v : out) v = rng.uniform(q);
  return out;
}

std::uint64_t fnv1a64(const std::vector<std::uint64_t>& words) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto w : words) {
    for (int b = 0; b < 8; ++b) {
      h ^= (w >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  }
  return h;
}

}  // namespace sgc
