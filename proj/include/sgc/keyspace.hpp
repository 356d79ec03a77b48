#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace sgc {

using ServerSet = std::vector<int>;  // sorted, 1-based server labels

/// C(n, k) with the convention C(n, k) = 0 when n < 0, k < 0 or n < k.
/// Throws InvalidParams if the value does not fit in 64 bits.
std::uint64_t binomial(std::int64_t n, std::int64_t k);

/// All k-subsets of [n] (1-based, each sorted) in lexicographic order.
std::vector<ServerSet> lex_subsets(int n, int k);

/// All S-subsets of [N] in lexicographic order. Group i (1-based) is the i-th
/// subset; this order fixes the key layout of every serialized scheme.
class KeyGroupIndex {
 public:
  /// Throws InvalidParams unless 1 <= S <= N.
  KeyGroupIndex(int N, int S);

  int servers() const noexcept { return N_; }
  int group_size() const noexcept { return S_; }
  std::size_t size() const noexcept { return groups_.size(); }

  const std::vector<ServerSet>& groups() const noexcept { return groups_; }
  /// 1-based access.
  const ServerSet& group(std::size_t i) const { return groups_.at(i - 1); }
  /// 1-based position of a sorted subset; throws InvalidParams if absent.
  std::size_t index_of(const ServerSet& subset) const;
  bool contains(std::size_t i, int server) const;

 private:
  int N_;
  int S_;
  std::vector<ServerSet> groups_;
  std::map<ServerSet, std::size_t> index_;
};

KeyGroupIndex enumerate_groups(int N, int S);

/// Per-server key availability S_n: 1-based group indices containing server n.
struct Availability {
  std::vector<std::vector<std::size_t>> per_server;  // per_server[n-1] = S_n, ascending
  const std::vector<std::size_t>& of(int server) const { return per_server.at(static_cast<std::size_t>(server - 1)); }
};

Availability availability(const KeyGroupIndex& groups);

/// Number of key groups meeting a server set of the given size: C(N,S) - C(N-x,S).
std::uint64_t omega_closed(int N, int S, int subset_size);

/// Sum over k of C(x,k) C(N-x,S-k): groups classified by how many members fall in the set.
std::uint64_t omega_split(int N, int S, int subset_size);

/// Counts groups with nonempty intersection with `servers` by enumeration.
std::uint64_t omega_bruteforce(const KeyGroupIndex& groups, const std::set<int>& servers);

/// 1-based columns of the demand matrix (equivalently rows of the message
/// vector) holding key pieces the server does not know:
/// pieces*K + i + (j-1)*C(N,S) for groups i excluding the server, j in [alpha].
std::vector<std::size_t> unavailable_key_columns(std::size_t pieces, std::size_t K, std::size_t alpha,
                                                 const KeyGroupIndex& groups, int server);

}  // namespace sgc
