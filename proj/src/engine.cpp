#include "sgc/engine.hpp"

#include <algorithm>
#include <set>

#include "sgc/error.hpp"

namespace sgc {

RoundState sample_round(const SchemeArtifact& scheme, std::size_t L, SeededRng& rng) {
  const auto& d = scheme.dims;
  if (L % d.pieces != 0) {
    throw BadLength("gradient length " + std::to_string(L) + " is not divisible by the piece count " +
                    std::to_string(d.pieces));
  }
  RoundState round;
  round.length = L;
  round.piece_len = L / d.pieces;
  const FieldModulus& q = scheme.params.q;
  for (int k = 0; k < scheme.params.K; ++k) round.gradients.push_back(sample_uniform(rng, q, L));
  for (std::size_t v = 0; v < d.key_groups; ++v)
    round.keys.push_back(sample_uniform(rng, q, d.key_pieces * round.piece_len));
  return round;
}

FieldMatrix build_W(const RoundState& round, const SchemeArtifact& scheme) {
  const auto& d = scheme.dims;
  const auto K = static_cast<std::size_t>(scheme.params.K);
  const std::size_t ell = round.piece_len;
  FieldMatrix W(d.f_cols, ell, scheme.params.q);
  for (int k = 1; k <= scheme.params.K; ++k) {
    const auto& g = round.gradients[static_cast<std::size_t>(k - 1)];
    for (std::size_t i = 1; i <= d.pieces; ++i) {
      auto dst = W.row(gradient_column(K, k, i));
      std::copy_n(g.begin() + static_cast<std::ptrdiff_t>((i - 1) * ell), ell, dst.begin());
    }
  }
  const std::size_t key_base = d.pieces * K;
  for (std::size_t v = 1; v <= d.key_groups; ++v) {
    const auto& key = round.keys[v - 1];
    for (std::size_t j = 1; j <= d.key_pieces; ++j) {
      auto dst = W.row(key_base + key_piece_offset(d.key_groups, v, j));
      std::copy_n(key.begin() + static_cast<std::ptrdiff_t>((j - 1) * ell), ell, dst.begin());
    }
  }
  return W;
}

RoundState unpack_W(const FieldMatrix& W, const SchemeArtifact& scheme) {
  const auto& d = scheme.dims;
  const auto K = static_cast<std::size_t>(scheme.params.K);
  RoundState round;
  round.piece_len = W.cols();
  round.length = d.pieces * round.piece_len;
  const std::size_t ell = round.piece_len;
  for (int k = 1; k <= scheme.params.K; ++k) {
    std::vector<std::uint64_t> g;
    g.reserve(round.length);
    for (std::size_t i = 1; i <= d.pieces; ++i) {
      const auto src = W.row(gradient_column(K, k, i));
      g.insert(g.end(), src.begin(), src.end());
    }
    round.gradients.push_back(std::move(g));
  }
  const std::size_t key_base = d.pieces * K;
  for (std::size_t v = 1; v <= d.key_groups; ++v) {
    std::vector<std::uint64_t> key;
    key.reserve(d.key_pieces * ell);
    for (std::size_t j = 1; j <= d.key_pieces; ++j) {
      const auto src = W.row(key_base + key_piece_offset(d.key_groups, v, j));
      key.insert(key.end(), src.begin(), src.end());
    }
    round.keys.push_back(std::move(key));
  }
  return round;
}

std::vector<std::size_t> visible_rows(const SchemeArtifact& scheme, int server) {
  const auto& d = scheme.dims;
  const auto K = static_cast<std::size_t>(scheme.params.K);
  std::vector<std::size_t> rows;
  for (int k : scheme.assignment.datasets_of(server))
    for (std::size_t i = 1; i <= d.pieces; ++i) rows.push_back(gradient_column(K, k, i));
  const KeyGroupIndex groups(scheme.params.N, scheme.params.S);
  for (std::size_t v = 1; v <= d.key_groups; ++v) {
    if (!groups.contains(v, server)) continue;
    for (std::size_t j = 1; j <= d.key_pieces; ++j) rows.push_back(d.pieces * K + key_piece_offset(d.key_groups, v, j));
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

FieldMatrix server_view(const FieldMatrix& W, const SchemeArtifact& scheme, int server) {
  FieldMatrix out(W.rows(), W.cols(), W.modulus());
  for (auto r : visible_rows(scheme, server)) {
    const auto src = W.row(r);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return out;
}

double Transcript::normalized_cost() const {
  if (length == 0) return 0.0;
  std::size_t worst = 0;
  for (const auto& x : messages) worst = std::max(worst, x.rows() * x.cols());
  return static_cast<double>(worst) / static_cast<double>(length);
}

Transcript encode(const SchemeArtifact& scheme, const FieldMatrix& W) {
  if (W.rows() != scheme.dims.f_cols) {
    throw DimensionMismatch("message vector has " + std::to_string(W.rows()) + " rows, demand matrix expects " +
                            std::to_string(scheme.dims.f_cols));
  }
  const FieldMatrix all = scheme.coding.C * (scheme.demand.F * W);
  Transcript t;
  const std::size_t r = scheme.dims.messages_per_server;
  t.length = scheme.dims.pieces * W.cols();
  for (int n = 0; n < scheme.params.N; ++n) t.messages.push_back(all.block(static_cast<std::size_t>(n) * r, 0, r, W.cols()));
  return t;
}

FieldMatrix encode_server(const SchemeArtifact& scheme, const FieldMatrix& W, int server) {
  const std::size_t r = scheme.dims.messages_per_server;
  const FieldMatrix cn = scheme.coding.C.block(static_cast<std::size_t>(server - 1) * r, 0, r, scheme.coding.C.cols());
  return cn * (scheme.demand.F * W);
}

const FieldMatrix& Decoder::leading_inverse_rows(const ServerSet& responders) {
  auto it = cache_.find(responders);
  if (it != cache_.end()) return it->second;
  const FieldMatrix inv = invert(scheme_->coding.stacked(responders));
  return cache_.emplace(responders, inv.block(0, 0, scheme_->dims.pieces, inv.cols())).first->second;
}

std::vector<std::uint64_t> Decoder::decode(const Transcript& transcript, ServerSet responders) {
  const auto& p = scheme_->params;
  std::sort(responders.begin(), responders.end());
  const bool distinct = std::adjacent_find(responders.begin(), responders.end()) == responders.end();
  const bool in_range = std::all_of(responders.begin(), responders.end(), [&](int s) { return s >= 1 && s <= p.N; });
  if (static_cast<int>(responders.size()) != p.Nr || !distinct || !in_range) {
    throw WrongSubsetSize("decoding needs exactly Nr=" + std::to_string(p.Nr) + " distinct servers in [1, " +
                          std::to_string(p.N) + "], got " + std::to_string(responders.size()));
  }
  std::vector<FieldMatrix> received;
  for (int s : responders) received.push_back(transcript.messages.at(static_cast<std::size_t>(s - 1)));
  const FieldMatrix piece_sums = leading_inverse_rows(responders) * vstack(received);
  std::vector<std::uint64_t> out;
  out.reserve(transcript.length);
  for (std::size_t i = 0; i < piece_sums.rows(); ++i) {
    const auto row = piece_sums.row(i);
    out.insert(out.end(), row.begin(), row.end());
  }
  return out;
}

std::vector<std::uint64_t> decode(const SchemeArtifact& scheme, const Transcript& transcript,
                                  const ServerSet& responders) {
  Decoder decoder(scheme);
  return decoder.decode(transcript, responders);
}

std::vector<std::uint64_t> direct_sum(const RoundState& round, const FieldModulus& q) {
  std::vector<std::uint64_t> sum(round.length, 0);
  for (const auto& g : round.gradients)
    for (std::size_t j = 0; j < round.length; ++j) sum[j] = q.add(sum[j], g[j]);
  return sum;
}

RoundReport simulate_round(const SchemeArtifact& scheme, Decoder& decoder, std::size_t round_index,
                           std::size_t L, std::uint64_t seed, const ServerSet& responders) {
  SeededRng rng(seed);
  const RoundState round = sample_round(scheme, L, rng);
  const Transcript t = encode(scheme, build_W(round, scheme));
  RoundReport report;
  report.round = round_index;
  report.seed = seed;
  report.length = L;
  for (const auto& x : t.messages) report.message_symbols.push_back(x.rows() * x.cols());
  const auto decoded = decoder.decode(t, responders);
  const auto expected = direct_sum(round, scheme.params.q);
  report.responders = responders;
  std::sort(report.responders.begin(), report.responders.end());
  report.decoded_hash = fnv1a64(decoded);
  report.direct_hash = fnv1a64(expected);
  report.match = decoded == expected;
  return report;
}

}  // namespace sgc
