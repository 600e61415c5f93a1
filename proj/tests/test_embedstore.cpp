#include <bit>
#include <cmath>
#include <set>
#include <limits>
#include <random>

#include "../src/fileio.hpp"
#include "doctest.h"
#include "oracles.hpp"
#include "ssprobe/embedstore.hpp"
#include "ssprobe/error.hpp"

using namespace ssprobe;
using embedstore::FindingKind;

namespace {

EmbeddingSet smallSet() {
  EmbeddingSet s;
  s.modelId = "toy";
  s.modality = Modality::image;
  s.dim = 4;
  s.items = {{"a", Label::round, {{"layer", "pooled"}}},
             {"b", Label::sharp, {}},
             {"c", Label::round, {{"note", "ü, \"quoted\""}}}};
  s.matrix = {1.0f, 0.0f, -2.5f, 1e-38f, 0.1f, 0.2f, 0.3f, 0.4f, -0.0f, 3.0f, 0.0f, 1e30f};
  return s;
}

ErrorCode readCode(const std::filesystem::path& p) {
  try {
    embedstore::readSet(p);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("read unexpectedly succeeded");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("validateSet reports findings with row indices") {
  auto s = smallSet();
  CHECK(embedstore::validateSet(s).empty());

  s.matrix[2 * 4 + 1] = std::numeric_limits<float>::quiet_NaN();
  auto f = embedstore::validateSet(s);
  REQUIRE(f.size() == 1);
  CHECK(f[0].kind == FindingKind::NonFinite);
  CHECK(f[0].row == 2);

  s = smallSet();
  s.matrix[0] = std::numeric_limits<float>::infinity();
  for (int k = 4; k < 8; ++k) s.matrix[k] = 0.0f;
  s.items[2].id = "a";
  f = embedstore::validateSet(s);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == embedstore::Finding{FindingKind::NonFinite, 0, f[0].detail});
  CHECK(f[1].kind == FindingKind::ZeroNorm);
  CHECK(f[1].row == 1);
  CHECK(f[2].kind == FindingKind::DuplicateId);
  CHECK(f[2].row == 2);

  s = smallSet();
  s.matrix.pop_back();
  f = embedstore::validateSet(s);
  REQUIRE(f.size() == 1);
  CHECK(f[0].kind == FindingKind::DimMismatch);

  s = smallSet();
  s.dim = 0;
  CHECK(embedstore::validateSet(s).at(0).kind == FindingKind::DimMismatch);
}

TEST_CASE("binary round trip is bit exact") {
  testutil::TempDir dir;
  const auto s = smallSet();
  embedstore::writeSet(s, dir / "toy.embs");
  const auto back = embedstore::readSet(dir / "toy.embs");
  CHECK(back.modelId == s.modelId);
  CHECK(back.modality == s.modality);
  CHECK(back.items == s.items);
  REQUIRE(back.matrix.size() == s.matrix.size());
  for (std::size_t i = 0; i < s.matrix.size(); ++i) {
    CHECK(std::bit_cast<std::uint32_t>(back.matrix[i]) ==
          std::bit_cast<std::uint32_t>(s.matrix[i]));
  }
  embedstore::writeSet(back, dir / "again.embs");
  CHECK(detail::readFile(dir / "toy.embs.f32") == detail::readFile(dir / "again.embs.f32"));
}

TEST_CASE("matrix layout is magic plus little-endian rows") {
  EmbeddingSet s;
  s.modelId = "m";
  s.dim = 2;
  s.items = {{"x", Label::round, {}}};
  s.matrix = {1.0f, -2.0f};
  const auto bytes = embedstore::matrixBytes(s);
  const std::string expected("EMBS\x01\x00\x00\x80\x3f\x00\x00\x00\xc0", 13);
  CHECK(bytes == expected);

  const auto json = embedstore::sidecarJson(s, "m.embs.f32");
  CHECK(json.find("\"matrixFile\": \"m.embs.f32\"") != std::string::npos);
  CHECK(json.find("\"count\": 1") != std::string::npos);
  CHECK(json.find("\"dim\": 2") != std::string::npos);
}

TEST_CASE("format violations") {
  testutil::TempDir dir;
  const auto s = smallSet();
  embedstore::writeSet(s, dir / "toy.embs");
  const auto good = detail::readFile(dir / "toy.embs.f32");

  detail::writeFile(dir / "toy.embs.f32", good.substr(0, good.size() - 3));
  CHECK(readCode(dir / "toy.embs") == ErrorCode::FormatViolation);

  auto badMagic = good;
  badMagic[4] = '\x02';
  detail::writeFile(dir / "toy.embs.f32", badMagic);
  CHECK(readCode(dir / "toy.embs") == ErrorCode::FormatViolation);

  // sidecar says 5 rows, matrix holds 4
  EmbeddingSet five;
  five.modelId = "five";
  five.dim = 2;
  for (int i = 0; i < 5; ++i) {
    five.items.push_back({"r" + std::to_string(i), Label::round, {}});
    five.matrix.insert(five.matrix.end(), {1.0f, float(i)});
  }
  embedstore::writeSet(five, dir / "five.embs");
  auto shorter = five;
  shorter.items.pop_back();
  shorter.matrix.resize(8);
  detail::writeFile(dir / "five.embs.f32", embedstore::matrixBytes(shorter));
  CHECK(readCode(dir / "five.embs") == ErrorCode::FormatViolation);

  detail::writeFile(dir / "junk.embs", "{\"modelId\": 3}");
  CHECK(readCode(dir / "junk.embs") == ErrorCode::FormatViolation);
  detail::writeFile(dir / "junk.embs", "not json");
  CHECK(readCode(dir / "junk.embs") == ErrorCode::FormatViolation);
  CHECK(readCode(dir / "missing.embs") == ErrorCode::IoFailure);
}

TEST_CASE("writeSet refuses invalid sets") {
  testutil::TempDir dir;
  auto s = smallSet();
  s.matrix[0] = std::numeric_limits<float>::quiet_NaN();
  try {
    embedstore::writeSet(s, dir / "bad.embs");
    FAIL("expected InvalidSet");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidSet);
  }
  embedstore::writeSetUnchecked(s, dir / "bad.embs");
  const auto back = embedstore::readSet(dir / "bad.embs");
  CHECK(std::isnan(back.matrix[0]));
  CHECK(embedstore::validateSet(back).size() == 1);
}

TEST_CASE("CSV fixture mode") {
  testutil::TempDir dir;
  detail::writeFile(dir / "hand.csv",
                    "id,class,v0,v1,v2\n"
                    "a,round,1,0,0.1\n"
                    "b,sharp,-1,2.5e-3,0\n");
  const auto s = embedstore::readSet(dir / "hand.csv", Modality::text);
  CHECK(s.modelId == "hand");
  CHECK(s.modality == Modality::text);
  CHECK(s.dim == 3);
  CHECK(s.size() == 2);
  CHECK(s.matrix[2] == 0.1f);
  CHECK(s.matrix[4] == 2.5e-3f);
  CHECK(embedstore::validateSet(s).empty());

  // shortest decimal output parses back to the same floats
  detail::writeFile(dir / "again.csv", embedstore::toCsv(s));
  CHECK(embedstore::readSet(dir / "again.csv", Modality::text).matrix == s.matrix);

  detail::writeFile(dir / "bad.csv", "id,class,v0\na,fuzzy,1\n");
  CHECK(readCode(dir / "bad.csv") == ErrorCode::FormatViolation);
  detail::writeFile(dir / "bad.csv", "id,class,v0\na,round,1x\n");
  CHECK(readCode(dir / "bad.csv") == ErrorCode::FormatViolation);
  detail::writeFile(dir / "bad.csv", "id,class,v0,v1\na,round,1\n");
  CHECK(readCode(dir / "bad.csv") == ErrorCode::FormatViolation);
}

TEST_CASE("filterSet") {
  EmbeddingSet s;
  s.modelId = "bal";
  s.dim = 2;
  for (int i = 0; i < 10; ++i) {
    const std::string prefix = i < 6 ? "aud-" : "img-";
    s.items.push_back({prefix + std::to_string(i), i % 2 ? Label::sharp : Label::round, {}});
    s.matrix.insert(s.matrix.end(), {float(i + 1), float(-i)});
  }
  const auto round = embedstore::filterSet(s, Label::round);
  const auto sharp = embedstore::filterSet(s, Label::sharp);
  CHECK(round.size() == 5);
  CHECK(sharp.size() == 5);
  CHECK(round.dim == 2);
  CHECK(round.items[1].id == "aud-2");
  CHECK(round.row(1)[0] == 3.0f);

  // partition: every row lands in exactly one side
  std::multiset<std::string> all;
  for (const auto* part : {&round, &sharp})
    for (const auto& item : part->items) all.insert(item.id);
  CHECK(all.size() == s.size());
  for (const auto& item : s.items) CHECK(all.count(item.id) == 1);

  const auto audio = embedstore::filterSet(s, {std::nullopt, embedstore::idPrefix("aud-")});
  CHECK(audio.size() == 6);
  const auto roundAudio = embedstore::filterSet(s, {Label::round, embedstore::idPrefix("aud-")});
  CHECK(roundAudio.size() == 3);

  try {
    embedstore::filterSet(round, Label::sharp);
    FAIL("expected EmptyResult");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyResult);
  }
}
