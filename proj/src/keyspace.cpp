#include "sgc/keyspace.hpp"

#include <algorithm>
#include <string>

#include "sgc/error.hpp"

namespace sgc {

std::uint64_t binomial(std::int64_t n, std::int64_t k) {
  if (n < 0 || k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  unsigned __int128 acc = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<unsigned __int128>(n - k + i) / static_cast<unsigned __int128>(i);
    if (acc > UINT64_MAX) {
      throw InvalidParams("C(" + std::to_string(n) + "," + std::to_string(k) + ") overflows 64 bits");
    }
  }
  return static_cast<std::uint64_t>(acc);
}

std::vector<ServerSet> lex_subsets(int n, int k) {
  std::vector<ServerSet> out;
  if (k < 0 || k > n) return out;
  out.reserve(binomial(n, k));
  ServerSet cur(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) cur[static_cast<std::size_t>(i)] = i + 1;
  while (true) {
    out.push_back(cur);
    // Advance to the lexicographic successor.
    int i = k - 1;
    while (i >= 0 && cur[static_cast<std::size_t>(i)] == n - k + i + 1) --i;
    if (i < 0) break;
    ++cur[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j) cur[static_cast<std::size_t>(j)] = cur[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

KeyGroupIndex::KeyGroupIndex(int N, int S) : N_(N), S_(S) {
  if (S < 1 || S > N) {
    throw InvalidParams("key groups need 1 <= S <= N, got N=" + std::to_string(N) + " S=" + std::to_string(S));
  }
  groups_ = lex_subsets(N, S);
  for (std::size_t i = 0; i < groups_.size(); ++i) index_.emplace(groups_[i], i + 1);
}

std::size_t KeyGroupIndex::index_of(const ServerSet& subset) const {
  auto it = index_.find(subset);
  if (it == index_.end()) throw InvalidParams("not a key group of this index");
  return it->second;
}

bool KeyGroupIndex::contains(std::size_t i, int server) const {
  const auto& g = group(i);
  return std::binary_search(g.begin(), g.end(), server);
}

KeyGroupIndex enumerate_groups(int N, int S) { return KeyGroupIndex(N, S); }

Availability availability(const KeyGroupIndex& groups) {
  Availability a;
  a.per_server.resize(static_cast<std::size_t>(groups.servers()));
  for (std::size_t i = 1; i <= groups.size(); ++i)
    for (int s : groups.group(i)) a.per_server[static_cast<std::size_t>(s - 1)].push_back(i);
  return a;
}

std::uint64_t omega_closed(int N, int S, int subset_size) {
  return binomial(N, S) - binomial(N - subset_size, S);
}

std::uint64_t omega_split(int N, int S, int subset_size) {
  std::uint64_t total = 0;
  for (int k = 1; k <= S; ++k) total += binomial(subset_size, k) * binomial(N - subset_size, S - k);
  return total;
}

std::uint64_t omega_bruteforce(const KeyGroupIndex& groups, const std::set<int>& servers) {
  std::uint64_t count = 0;
  for (const auto& g : groups.groups()) {
    if (std::any_of(g.begin(), g.end(), [&](int s) { return servers.count(s) != 0; })) ++count;
  }
  return count;
}

std::vector<std::size_t> unavailable_key_columns(std::size_t pieces, std::size_t K, std::size_t alpha,
                                                 const KeyGroupIndex& groups, int server) {
  std::vector<std::size_t> cols;
  const std::size_t total = groups.size();
  for (std::size_t j = 1; j <= alpha; ++j) {
    for (std::size_t i = 1; i <= total; ++i) {
      if (!groups.contains(i, server)) cols.push_back(pieces * K + i + (j - 1) * total);
    }
  }
  return cols;
}

}  // namespace sgc
