#include <cmath>
#include <map>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "ssprobe/error.hpp"
#include "ssprobe/report.hpp"

using namespace ssprobe;
using doctest::Approx;

namespace {

const DatasetManifest& fullManifest() {
  static const auto m = stimuli::buildManifest(25, stimuli::defaultSpeakers(4));
  return m;
}

ScoreTable randomScores(const DatasetManifest& m, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  ScoreTable t;
  for (const auto& a : m.audio) t.rows.push_back({a.id, a.label(), u(gen), {}});
  return t;
}

std::string firstPhone(const std::string& ipa, std::size_t offset, bool vowel) {
  std::string best;
  for (const auto& p : oracle::phones()) {
    const std::string sym = p.ipa;
    if (p.vowel == vowel && ipa.compare(offset, sym.size(), sym) == 0 && sym.size() > best.size())
      best = sym;
  }
  return best;
}

}  // namespace

TEST_CASE("singleton and hand-computed means") {
  const auto& m = fullManifest();
  ScoreTable t;
  t.rows = {{"aud-muː-luː-muː-voice-a", Label::round, 0.5, {}}};
  auto p = report::phoneGroupMeans(t, m);
  REQUIRE(p.size() == 2);
  CHECK(p[0].groupKind == GroupKind::firstConsonant);
  CHECK(p[0].phone.ipa == "m");
  CHECK(p[0].meanScore == 0.5);
  CHECK(p[0].count == 1);
  CHECK(p[1].groupKind == GroupKind::firstVowel);
  CHECK(p[1].phone.ipa == "uː");
  CHECK(p[1].meanScore == 0.5);

  t.rows = {{"aud-kiː-tɛ-kiː-voice-a", Label::sharp, -0.2, {}},
            {"aud-kiː-saː-kiː-voice-b", Label::sharp, -0.4, {}}};
  p = report::phoneGroupMeans(t, m);
  REQUIRE(p.size() == 2);
  CHECK(p[0].phone.ipa == "k");
  CHECK(p[0].meanScore == Approx(-0.3).epsilon(1e-15));
  CHECK(p[0].count == 2);
}

TEST_CASE("unresolved ids are rejected") {
  ScoreTable t;
  t.rows = {{"img-round-round-0", Label::round, 0.5, {}}};
  try {
    report::phoneGroupMeans(t, fullManifest());
    FAIL("expected UnresolvedId");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnresolvedId);
  }
}

TEST_CASE("full dataset profiles: counts, mass and ordering") {
  const auto& m = fullManifest();
  const auto t = randomScores(m, 99);
  const auto profiles = report::phoneGroupMeans(t, m);
  std::size_t consonants = 0;
  std::size_t vowels = 0;
  for (const auto kind : {GroupKind::firstConsonant, GroupKind::firstVowel}) {
    std::size_t count = 0;
    double mass = 0;
    const PhoneGroupProfile* prev = nullptr;
    for (const auto& p : profiles) {
      if (p.groupKind != kind) continue;
      (kind == GroupKind::firstConsonant ? consonants : vowels) += 1;
      count += p.count;
      mass += p.meanScore * static_cast<double>(p.count);
      if (prev) {
        CHECK((prev->meanScore < p.meanScore ||
               (prev->meanScore == p.meanScore && prev->phone.ipa < p.phone.ipa)));
      }
      prev = &p;
      if (kind == GroupKind::firstConsonant) CHECK(p.count == 324);
      if (p.phone.ipa == "aː") CHECK(p.count == 1296);
      if (kind == GroupKind::firstVowel && p.phone.ipa != "aː") CHECK(p.count == 648);
    }
    double total = 0;
    for (const auto& r : t.rows) total += r.score;
    CHECK(count == t.rows.size());
    CHECK(std::abs(mass - total) <= 1e-9 * (1.0 + std::abs(total)));
  }
  CHECK(consonants == 12);
  CHECK(vowels == 5);
}

TEST_CASE("profiles match a regroup-and-average oracle") {
  const auto& m = fullManifest();
  std::map<std::string, std::string> ipaById;
  for (const auto& a : m.audio) ipaById[a.id] = a.ipa();
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 5; ++trial) {
    auto t = randomScores(m, 1000 + trial);
    std::shuffle(t.rows.begin(), t.rows.end(), gen);
    t.rows.resize(200 + trial * 300);
    std::map<std::string, std::pair<double, int>> cons, vows;
    for (const auto& r : t.rows) {
      const auto& ipa = ipaById.at(r.id);
      const auto c = firstPhone(ipa, 0, false);
      const auto v = firstPhone(ipa, c.size(), true);
      cons[c].first += r.score, cons[c].second += 1;
      vows[v].first += r.score, vows[v].second += 1;
    }
    const auto profiles = report::phoneGroupMeans(t, m);
    CHECK(profiles.size() == cons.size() + vows.size());
    for (const auto& p : profiles) {
      auto& groups = p.groupKind == GroupKind::firstConsonant ? cons : vows;
      const auto& [sum, n] = groups.at(std::string(p.phone.ipa));
      CHECK(p.count == static_cast<std::size_t>(n));
      CHECK(p.meanScore == sum / n);
    }
  }
}

TEST_CASE("profiles CSV") {
  ScoreTable t;
  t.rows = {{"aud-muː-luː-muː-voice-a", Label::round, 0.5, {}}};
  const auto text = report::profilesCsv(report::phoneGroupMeans(t, fullManifest()));
  CHECK(text ==
        "groupKind,ipa,shapeClass,count,meanScore\n"
        "firstConsonant,m,round,1,0.5\n"
        "firstVowel,uː,round,1,0.5\n");
}

TEST_CASE("summary table") {
  EvalResult a{"zeta", ScoreType::phonetic, 0.8, 0.4, 10, 5, 5, 0.01};
  EvalResult b{"alpha", ScoreType::phonetic, 1.0, 0.8165, 6, 3, 3, std::nullopt};
  EvalResult c{"alpha", ScoreType::geometric, 0.25, -0.5, 6, 3, 3, std::nullopt};

  const auto one = report::summaryCsv({b});
  CHECK(one ==
        "modelId,scoreType,auc,tau,n,p\n"
        "alpha,phonetic,1.000000,0.816500,6,\n"
        "(Random),,0.50,0.00,,\n");

  const auto many = report::summaryCsv({a, b, c});
  CHECK(many ==
        "modelId,scoreType,auc,tau,n,p\n"
        "alpha,geometric,0.250000,-0.500000,6,\n"
        "alpha,phonetic,1.000000,0.816500,6,\n"
        "zeta,phonetic,0.800000,0.400000,10,0.010000\n"
        "(Random),,0.50,0.00,,\n");
  CHECK(report::summaryCsv({c, b, a}) == many);

  const auto md = report::summaryMarkdown({b});
  CHECK(md ==
        "| Model | Score | AUC | τ | n | p |\n"
        "|---|---|---:|---:|---:|---:|\n"
        "| alpha | phonetic | 1.00 | 0.82 | 6 |  |\n"
        "| (Random) |  | 0.50 | 0.00 |  |  |\n");
  CHECK_THROWS_AS(report::summaryCsv({}), Error);
}

TEST_CASE("plot data and SVG") {
  const auto& m = fullManifest();
  const auto t = randomScores(m, 7);
  const auto data = report::plotData(report::phoneGroupMeans(t, m));
  CHECK(data.consonants.size() == 12);
  CHECK(data.vowels.size() == 5);
  for (const auto& p : data.consonants) CHECK(p.shape != ShapeClass::neutral);
  CHECK(std::any_of(data.vowels.begin(), data.vowels.end(),
                    [](const PlotPoint& p) { return p.shape == ShapeClass::neutral; }));

  ScoreTable single;
  single.rows = {{"aud-kiː-tɛ-kiː-voice-a", Label::sharp, -0.2, {}}};
  const auto small = report::plotData(report::phoneGroupMeans(single, m));
  CHECK(small.consonants.size() == 1);
  CHECK(small.vowels.size() == 1);

  const auto svg = report::plotSvg(data, "model geometric");
  CHECK(svg.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
  CHECK(svg.ends_with("</svg>\n"));
  CHECK(svg.find(">tʃ</text>") != std::string::npos);
  CHECK(svg.find("#1f4fd1") != std::string::npos);
  CHECK(svg.find("#d1281f") != std::string::npos);
  CHECK(svg == report::plotSvg(report::plotData(report::phoneGroupMeans(t, m)), "model geometric"));
  CHECK(report::plotSvg(small).find("<polygon") != std::string::npos);

  CHECK_THROWS_AS(report::plotData({}), Error);
}
