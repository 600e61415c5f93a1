#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "ssprobe/error.hpp"
#include "ssprobe/phonology.hpp"

using namespace ssprobe;
using phonology::enumeratePseudowords;
using phonology::validatePseudoword;

namespace {

ErrorCode codeOf(std::string_view ipa) {
  try {
    validatePseudoword(ipa);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected rejection of " << ipa);
  return ErrorCode::InvalidArgument;
}

const Pseudoword* find(std::string_view ipa) {
  for (const auto& w : enumeratePseudowords()) {
    if (w.ipa == ipa) return &w;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("inventory holds every listed phone with its shape class") {
  const auto inv = phonology::inventory();
  CHECK(inv.size() == 20);
  CHECK(std::count_if(inv.begin(), inv.end(),
                      [](const Phone& p) { return p.kind == PhoneKind::consonant; }) == 15);
  CHECK(std::count_if(inv.begin(), inv.end(),
                      [](const Phone& p) { return p.kind == PhoneKind::vowel; }) == 5);

  CHECK(phonology::findPhone("m") == Phone{"m", PhoneKind::consonant, ShapeClass::round});
  CHECK(phonology::findPhone("aː") == Phone{"aː", PhoneKind::vowel, ShapeClass::neutral});
  CHECK(phonology::findPhone("tʃ")->shape == ShapeClass::sharp);
  CHECK(phonology::findPhone("ɛ")->shape == ShapeClass::sharp);
  CHECK_FALSE(phonology::findPhone("x"));

  // same table as the oracle, same order
  REQUIRE(inv.size() == oracle::phones().size());
  for (std::size_t i = 0; i < inv.size(); ++i) {
    const auto& ref = oracle::phones()[i];
    CHECK(inv[i].ipa == ref.ipa);
    CHECK((inv[i].kind == PhoneKind::vowel) == ref.vowel);
    const char shape = inv[i].shape == ShapeClass::round   ? 'r'
                       : inv[i].shape == ShapeClass::sharp ? 's'
                                                           : 'n';
    CHECK(shape == ref.shape);
  }
}

TEST_CASE("enumeration matches a brute-force filter over all CVCVCV strings") {
  const auto expected = oracle::bruteForcePseudowords();
  const auto& words = enumeratePseudowords();
  REQUIRE(words.size() == expected.size());
  CHECK(words.size() == 972);
  std::size_t nRound = 0;
  for (const auto& w : words) {
    auto it = expected.find(w.ipa);
    REQUIRE(it != expected.end());
    CHECK((w.label == Label::round) == (it->second == 'r'));
    nRound += w.label == Label::round;
  }
  CHECK(nRound == 486);
  CHECK(words.size() - nRound == 486);
}

TEST_CASE("enumeration order is (class, ipa) and duplicate free") {
  const auto& words = enumeratePseudowords();
  for (std::size_t i = 1; i < words.size(); ++i) {
    const auto& a = words[i - 1];
    const auto& b = words[i];
    CHECK((a.label < b.label || (a.label == b.label && a.ipa < b.ipa)));
  }
  CHECK(words.front().label == Label::round);
  CHECK(words.back().label == Label::sharp);
}

TEST_CASE("every enumerated word satisfies the construction rules") {
  std::map<std::string_view, int> perInitial;
  for (const auto& w : enumeratePseudowords()) {
    CHECK(w.syllables[0] == w.syllables[2]);
    CHECK(w.syllables[0].consonant.shape != ShapeClass::neutral);
    const auto own = w.label == Label::round ? ShapeClass::round : ShapeClass::sharp;
    for (const auto& s : w.syllables) {
      CHECK((s.consonant.shape == own || s.consonant.shape == ShapeClass::neutral));
      CHECK((s.vowel.shape == own || s.vowel.shape == ShapeClass::neutral));
    }
    ++perInitial[w.syllables[0].consonant.ipa];
  }
  CHECK(perInitial.size() == 12);
  for (const auto& [ipa, n] : perInitial) CHECK_MESSAGE(n == 81, ipa);
}

TEST_CASE("validate inverts enumeration") {
  for (const auto& w : enumeratePseudowords()) {
    CHECK(validatePseudoword(w.ipa) == w);
  }
}

TEST_CASE("published example words") {
  for (auto ipa : {"muːluːmuː", "boːdaːboː", "laːnoːlaː"}) {
    REQUIRE(find(ipa));
    CHECK(find(ipa)->label == Label::round);
  }
  for (auto ipa : {"kiːtɛkiː", "zɛpaːzɛ", "tʃaːtiːtʃaː"}) {
    REQUIRE(find(ipa));
    CHECK(find(ipa)->label == Label::sharp);
  }
  CHECK_FALSE(find("kiːmuːkiː"));
  CHECK(validatePseudoword("boːdaːboː").label == Label::round);
  CHECK(validatePseudoword("[tʃaːtiːtʃaː]").ipa == "tʃaːtiːtʃaː");
}

TEST_CASE("validation errors") {
  CHECK(codeOf("kiːmuːkiː") == ErrorCode::Rule2Violation);
  CHECK(codeOf("faːmuːfaː") == ErrorCode::Rule3Violation);
  CHECK(codeOf("faːfaːfaː") == ErrorCode::Rule3Violation);
  CHECK(codeOf("muːluːnuː") == ErrorCode::Rule1Violation);
  CHECK(codeOf("muːluː") == ErrorCode::NotThreeSyllables);
  CHECK(codeOf("muːluːmuːmuː") == ErrorCode::NotThreeSyllables);
  CHECK(codeOf("uːmuːlm") == ErrorCode::NotThreeSyllables);
  CHECK(codeOf("xuːluːxuː") == ErrorCode::UnknownPhone);
  CHECK(codeOf("mu:lu:mu:") == ErrorCode::UnknownPhone);  // ASCII colon is not a length mark
  CHECK(codeOf("") == ErrorCode::NotThreeSyllables);
}

TEST_CASE("tokenizer prefers the longest symbol") {
  const auto phones = phonology::tokenize("tʃaːdʒɛt");
  REQUIRE(phones.size() == 5);
  CHECK(phones[0].ipa == "tʃ");
  CHECK(phones[1].ipa == "aː");
  CHECK(phones[2].ipa == "dʒ");
  CHECK(phones[3].ipa == "ɛ");
  CHECK(phones[4].ipa == "t");
}

TEST_CASE("grapheme forms") {
  CHECK(validatePseudoword("muːluːmuː").grapheme == "mulumu");
  CHECK(validatePseudoword("kiːtɛkiː").grapheme == "kiteki");
  CHECK(validatePseudoword("tʃaːtiːtʃaː").grapheme == "chaticha");
  CHECK(validatePseudoword("dʒaːsiːdʒaː").grapheme == "jasija");
  CHECK(phonology::graphemeOf(*phonology::findPhone("dʒ")) == "j");

  std::set<std::string> seen;
  for (const auto& w : enumeratePseudowords()) {
    CHECK(phonology::graphemeForm(w) == w.grapheme);
    CHECK_MESSAGE(seen.insert(w.grapheme).second, "collision on " << w.grapheme);
  }
}
