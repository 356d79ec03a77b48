#include <gtest/gtest.h>

#include "sgc/engine.hpp"
#include "sgc/error.hpp"

namespace sgc {
namespace {

const FieldModulus kQ = make_field(FieldModulus::kDefault);

const SchemeArtifact& example() {
  static const SchemeArtifact s =
      build_scheme({3, 3, 3, 2, 2, kQ}, DataAssignment(3, {{2, 3}, {1, 2}, {1, 2}}), 7);
  return s;
}

TEST(Round, ShapesAndBadLength) {
  SeededRng rng(1);
  const auto r = sample_round(example(), 3, rng);
  EXPECT_EQ(r.gradients.size(), 3u);
  for (const auto& g : r.gradients) EXPECT_EQ(g.size(), 3u);
  EXPECT_EQ(r.keys.size(), 3u);
  for (const auto& k : r.keys) EXPECT_EQ(k.size(), 1u);
  EXPECT_THROW(sample_round(example(), 7, rng), BadLength);
  const auto empty = sample_round(example(), 0, rng);
  EXPECT_EQ(empty.length, 0u);
  for (const auto& g : empty.gradients) EXPECT_TRUE(g.empty());
}

TEST(MessageVector, Layout) {
  SeededRng rng(2);
  const auto r = sample_round(example(), 3, rng);
  const auto W = build_W(r, example());
  EXPECT_EQ(W.rows(), 12u);
  EXPECT_EQ(W.cols(), 1u);
  // g_{2,3}: 1-based row k + (i-1)K = 2 + 2*3 = 8.
  EXPECT_EQ(W(7, 0), r.gradients[1][2]);
  // Q_{2,3} is group 3: row nK + 3 = 12.
  EXPECT_EQ(W(11, 0), r.keys[2][0]);
  const auto back = unpack_W(W, example());
  EXPECT_EQ(back.gradients, r.gradients);
  EXPECT_EQ(back.keys, r.keys);
}

TEST(Encode, ZeroInputAndCost) {
  const auto& s = example();
  const auto t0 = encode(s, FieldMatrix(12, 4, kQ));
  for (const auto& x : t0.messages) EXPECT_TRUE(x.is_zero());
  SeededRng rng(3);
  const auto r = sample_round(s, 12, rng);
  const auto t = encode(s, build_W(r, s));
  ASSERT_EQ(t.messages.size(), 3u);
  for (const auto& x : t.messages) EXPECT_EQ(x.rows() * x.cols(), 2u * 12 / 3);
  EXPECT_DOUBLE_EQ(t.normalized_cost(), 2.0 / 3.0);
  EXPECT_THROW(encode(s, FieldMatrix(11, 1, kQ)), DimensionMismatch);
}

TEST(Encode, LocalityAcrossSchemes) {
  SeededRng rng(4);
  for (const auto& p : {SchemeParams{3, 3, 3, 2, 2, kQ}, SchemeParams{4, 5, 4, 3, 3, kQ}, SchemeParams{3, 4, 4, 2, 2, kQ}}) {
    const auto s = build_scheme(p, random_assignment(p, rng), 9);
    const auto W = build_W(sample_round(s, 2 * s.dims.pieces, rng), s);
    for (int n = 1; n <= p.N; ++n) {
      const auto full = encode_server(s, W, n);
      EXPECT_EQ(encode_server(s, server_view(W, s, n), n), full);
      EXPECT_EQ(encode(s, W).messages[static_cast<std::size_t>(n - 1)], full);
    }
  }
}

TEST(Encode, VisibleRowsOfExampleServer1) {
  // Server 1 holds datasets 2 and 3 and keys {1,2}, {1,3}.
  const auto rows = visible_rows(example(), 1);
  std::vector<std::size_t> want;
  for (std::size_t i = 0; i < 3; ++i) {
    want.push_back(1 + 3 * i);
    want.push_back(2 + 3 * i);
  }
  want.push_back(9);
  want.push_back(10);
  std::sort(want.begin(), want.end());
  EXPECT_EQ(rows, want);
}

TEST(Decode, ZeroGradientsGiveZero) {
  const auto& s = example();
  SeededRng rng(5);
  auto r = sample_round(s, 6, rng);
  for (auto& g : r.gradients) std::fill(g.begin(), g.end(), 0);
  const auto t = encode(s, build_W(r, s));
  EXPECT_EQ(decode(s, t, {1, 2, 3}), std::vector<std::uint64_t>(6, 0));
}

TEST(Decode, FirstRowsOfFW) {
  const auto& s = example();
  SeededRng rng(6);
  const auto W = build_W(sample_round(s, 3, rng), s);
  const auto FW = s.demand.F * W;
  const auto t = encode(s, W);
  const auto sum = decode(s, t, {1, 2, 3});
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(sum[i], FW(i, 0));
}

TEST(Decode, EveryResponderSetRecoversTheSum) {
  SeededRng rng(7);
  for (const auto& p : {SchemeParams{3, 5, 4, 3, 3, kQ}, SchemeParams{4, 6, 4, 3, 4, kQ}, SchemeParams{2, 4, 3, 2, 3, kQ}}) {
    const auto s = build_scheme(p, std::nullopt, 2);
    Decoder dec(s);
    const auto subsets = lex_subsets(p.N, p.Nr);
    for (int round = 0; round < 5; ++round) {
      const auto r = sample_round(s, 3 * s.dims.pieces, rng);
      const auto t = encode(s, build_W(r, s));
      const auto expected = direct_sum(r, kQ);
      for (const auto& u : subsets) ASSERT_EQ(dec.decode(t, u), expected);
      // Responder order does not matter.
      ServerSet rev(subsets.front().rbegin(), subsets.front().rend());
      ASSERT_EQ(dec.decode(t, rev), expected);
    }
  }
}

TEST(Decode, WrongSubsetSize) {
  const auto& s = example();
  SeededRng rng(8);
  const auto t = encode(s, build_W(sample_round(s, 3, rng), s));
  EXPECT_THROW(decode(s, t, {1, 2}), WrongSubsetSize);
  EXPECT_THROW(decode(s, t, {1, 2, 2}), WrongSubsetSize);
  EXPECT_THROW(decode(s, t, {1, 2, 4}), WrongSubsetSize);
}

TEST(Simulate, ReportAndDeterminism) {
  const auto& s = example();
  Decoder dec(s);
  const auto a = simulate_round(s, dec, 0, 12, 99, {3, 1, 2});
  const auto b = simulate_round(s, dec, 0, 12, 99, {1, 2, 3});
  EXPECT_TRUE(a.match);
  EXPECT_EQ(a.responders, (ServerSet{1, 2, 3}));
  EXPECT_EQ(a.message_symbols, (std::vector<std::size_t>{8, 8, 8}));
  EXPECT_EQ(a.decoded_hash, a.direct_hash);
  EXPECT_EQ(a.decoded_hash, b.decoded_hash);
  const auto z = simulate_round(s, dec, 1, 0, 99, {1, 2, 3});
  EXPECT_TRUE(z.match);
}

}  // namespace
}  // namespace sgc
