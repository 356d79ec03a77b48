#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "sgc/matrix.hpp"
#include "sgc/scheme.hpp"

namespace sgc {

/// Gradients g_1..g_K (length L each) and keys Q_1..Q_{C(N,S)} (length
/// key_pieces * L / pieces each) for one round.
struct RoundState {
  std::size_t length = 0;     // L
  std::size_t piece_len = 0;  // L / pieces
  std::vector<std::vector<std::uint64_t>> gradients;
  std::vector<std::vector<std::uint64_t>> keys;
};

/// Gradient symbols are drawn first (dataset order), then key symbols (group
/// order). Throws BadLength unless the piece count divides L.
RoundState sample_round(const SchemeArtifact& scheme, std::size_t L, SeededRng& rng);

/// Message vector W with piece_len columns. Gradient piece (k, i) sits in
/// 1-based row k + (i-1)K; key piece (v, j) in row pieces*K + v + (j-1)C(N,S).
FieldMatrix build_W(const RoundState& round, const SchemeArtifact& scheme);

/// Inverse of build_W.
RoundState unpack_W(const FieldMatrix& W, const SchemeArtifact& scheme);

/// 0-based W rows a server may touch: its datasets' gradient pieces and the
/// pieces of every key group it belongs to.
std::vector<std::size_t> visible_rows(const SchemeArtifact& scheme, int server);

/// Copy of W with every row invisible to the server zeroed.
FieldMatrix server_view(const FieldMatrix& W, const SchemeArtifact& scheme, int server);

struct Transcript {
  std::vector<FieldMatrix> messages;  // messages[n-1] = X_n, r x piece_len
  std::size_t length = 0;             // L

  /// Largest message in symbols divided by L; 0 when L = 0.
  double normalized_cost() const;
};

/// X_n = C_n F W for every server.
Transcript encode(const SchemeArtifact& scheme, const FieldMatrix& W);

/// Only X_n = C_n F W, for the locality check.
FieldMatrix encode_server(const SchemeArtifact& scheme, const FieldMatrix& W, int server);

/// Recovers sum_k g_k from the responders' messages. Keeps the first `pieces`
/// rows of each C_U^{-1} it computes, so repeated rounds reuse them.
class Decoder {
 public:
  explicit Decoder(const SchemeArtifact& scheme) : scheme_(&scheme) {}

  /// Throws WrongSubsetSize unless `responders` holds Nr distinct labels in
  /// [1, N]; Singular if C_U is not invertible.
  std::vector<std::uint64_t> decode(const Transcript& transcript, ServerSet responders);

 private:
  const FieldMatrix& leading_inverse_rows(const ServerSet& responders);

  const SchemeArtifact* scheme_;
  std::map<ServerSet, FieldMatrix> cache_;
};

std::vector<std::uint64_t> decode(const SchemeArtifact& scheme, const Transcript& transcript,
                                  const ServerSet& responders);

/// sum_k g_k computed symbol by symbol.
std::vector<std::uint64_t> direct_sum(const RoundState& round, const FieldModulus& q);

struct RoundReport {
  std::size_t round = 0;
  std::uint64_t seed = 0;
  std::size_t length = 0;
  std::vector<std::size_t> message_symbols;  // per server
  ServerSet responders;
  std::uint64_t decoded_hash = 0;
  std::uint64_t direct_hash = 0;
  bool match = false;
};

/// Samples, encodes and decodes one round from `responders`.
RoundReport simulate_round(const SchemeArtifact& scheme, Decoder& decoder, std::size_t round_index,
                           std::size_t L, std::uint64_t seed, const ServerSet& responders);

}  // namespace sgc
