#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "sgc/engine.hpp"
#include "sgc/error.hpp"
#include "sgc/serialize.hpp"
#include "sgc/verifier.hpp"

namespace sgc {
namespace {

const FieldModulus kQ = make_field(FieldModulus::kDefault);

SchemeArtifact example() {
  return build_scheme({3, 3, 3, 2, 2, kQ}, DataAssignment(3, {{2, 3}, {1, 2}, {1, 2}}), 7);
}

TEST(Serialize, MatrixRoundTrip) {
  SeededRng rng(1);
  const auto m = FieldMatrix::random(4, 5, kQ, rng);
  const auto j = matrix_to_json(m);
  EXPECT_EQ(j["q"], "2147483647");
  EXPECT_TRUE(j["data"][0].is_string());
  EXPECT_EQ(matrix_from_json(j, kQ), m);
  EXPECT_EQ(matrix_from_json(j, std::nullopt), m);
  EXPECT_THROW(matrix_from_json(j, make_field(7)), ParseError);
}

TEST(Serialize, MatrixRejectsMalformed) {
  auto j = matrix_to_json(FieldMatrix::identity(2, kQ));
  auto bad = j;
  bad["data"][0] = "2147483647";
  EXPECT_THROW(matrix_from_json(bad, kQ), ParseError);
  bad = j;
  bad["data"][0] = "12x";
  EXPECT_THROW(matrix_from_json(bad, kQ), ParseError);
  bad = j;
  bad["data"][0] = 1;
  EXPECT_THROW(matrix_from_json(bad, kQ), ParseError);
  bad = j;
  bad["rows"] = 3;
  EXPECT_THROW(matrix_from_json(bad, kQ), ParseError);
  bad = j;
  bad["q"] = "15";
  EXPECT_THROW(matrix_from_json(bad, std::nullopt), ParseError);
  bad = j;
  bad.erase("cols");
  EXPECT_THROW(matrix_from_json(bad, kQ), ParseError);
}

TEST(Serialize, ArtifactRoundTripIsBitExact) {
  const auto s = example();
  const std::string text = dump_json(artifact_to_json(s));
  const auto back = artifact_from_json(Json::parse(text));
  EXPECT_EQ(back.coding.C, s.coding.C);
  EXPECT_EQ(back.demand.F, s.demand.F);
  EXPECT_EQ(back.demand.F2, s.demand.F2);
  EXPECT_EQ(back.seed, s.seed);
  EXPECT_EQ(back.retries_used, s.retries_used);
  EXPECT_EQ(dump_json(artifact_to_json(back)), text);
  EXPECT_EQ(dump_json(certificate_to_json(certify(back))), dump_json(certificate_to_json(certify(s))));
}

TEST(Serialize, ArtifactRejectsInconsistentFiles) {
  const auto j = artifact_to_json(example());
  auto bad = j;
  bad["header"]["q"] = "7";
  EXPECT_THROW(artifact_from_json(bad), ParseError);
  bad = j;
  bad["header"]["Nr"] = 2;
  EXPECT_THROW(artifact_from_json(bad), ParseError);
  bad = j;
  bad["header"]["format_version"] = 2;
  EXPECT_THROW(artifact_from_json(bad), ParseError);
  bad = j;
  bad["assignment"]["D"][0] = Json::array({1});
  EXPECT_THROW(artifact_from_json(bad), ParseError);
  bad = j;
  bad["C"] = matrix_to_json(FieldMatrix(5, 6, kQ));
  EXPECT_THROW(artifact_from_json(bad), ParseError);
}

TEST(Serialize, AssignmentFile) {
  const auto a = assignment_from_json(Json::parse(R"({"D": [[2,3],[1,2],[1,2]]})"), 3);
  EXPECT_EQ(a.servers_of(1), (ServerSet{2, 3}));
  EXPECT_EQ(assignment_to_json(a).dump(), R"({"D":[[2,3],[1,2],[1,2]]})");
  EXPECT_THROW(assignment_from_json(Json::parse(R"({"D": [["a"]]})"), 3), ParseError);
  EXPECT_THROW(assignment_from_json(Json::parse(R"({"E": []})"), 3), ParseError);
}

TEST(Serialize, CertificateFields) {
  const auto j = certificate_to_json(certify(example()));
  EXPECT_TRUE(j["certified"].get<bool>());
  EXPECT_EQ(j["decodability"]["subsets_checked"], 1);
  EXPECT_TRUE(j["decodability"]["witness"].is_null());
  EXPECT_EQ(j["encodability"]["violation_count"], 0);
  EXPECT_EQ(j["security"]["mi_value"], "0");
  EXPECT_TRUE(j["security"]["determined_by_any_Nr"].get<bool>());
  EXPECT_TRUE(j["dims"]["demand_canonical"].get<bool>());
}

TEST(Serialize, RoundReportAndHex) {
  EXPECT_EQ(hex64(0xabc), "0x0000000000000abc");
  const auto s = example();
  Decoder dec(s);
  const auto r = simulate_round(s, dec, 0, 6, 3, {1, 2, 3});
  const auto j = round_report_to_json(r);
  EXPECT_TRUE(j["match"].get<bool>());
  EXPECT_EQ(j["L"], 6);
  EXPECT_EQ(j["decoded_hash"], j["direct_hash"]);
}

TEST(Serialize, Files) {
  const auto path = (std::filesystem::temp_directory_path() / "sgc_serialize_test.json").string();
  write_file(path, "{\"a\": 1}\n");
  EXPECT_EQ(read_file(path), "{\"a\": 1}\n");
  EXPECT_EQ(parse_json_file(path)["a"], 1);
  write_file(path, "{");
  EXPECT_THROW(parse_json_file(path), ParseError);
  std::remove(path.c_str());
  EXPECT_THROW(read_file(path), ParseError);
}

}  // namespace
}  // namespace sgc
