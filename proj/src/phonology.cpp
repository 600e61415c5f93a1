#include "ssprobe/phonology.hpp"

#include <algorithm>

#include "ssprobe/error.hpp"

namespace ssprobe {

std::string_view to_string(ShapeClass shape) {
  switch (shape) {
    case ShapeClass::round: return "round";
    case ShapeClass::sharp: return "sharp";
    case ShapeClass::neutral: return "neutral";
  }
  return "?";
}

std::string_view to_string(Label label) { return label == Label::round ? "round" : "sharp"; }

std::string_view to_string(PhoneKind kind) {
  return kind == PhoneKind::consonant ? "consonant" : "vowel";
}

std::optional<Label> parseLabel(std::string_view text) {
  if (text == "round") return Label::round;
  if (text == "sharp") return Label::sharp;
  return std::nullopt;
}

Label opposite(Label label) { return label == Label::round ? Label::sharp : Label::round; }

namespace phonology {
namespace {

using enum PhoneKind;
using enum ShapeClass;

constexpr std::array<Phone, 20> kInventory{{
    {"m", consonant, round},  {"n", consonant, round},   {"l", consonant, round},
    {"b", consonant, round},  {"d", consonant, round},   {"g", consonant, round},
    {"k", consonant, sharp},  {"t", consonant, sharp},   {"p", consonant, sharp},
    {"tʃ", consonant, sharp}, {"dʒ", consonant, sharp},  {"z", consonant, sharp},
    {"f", consonant, neutral}, {"s", consonant, neutral}, {"v", consonant, neutral},
    {"oː", vowel, round},     {"uː", vowel, round},
    {"ɛ", vowel, sharp},      {"iː", vowel, sharp},
    {"aː", vowel, neutral},
}};

struct GraphemeEntry {
  std::string_view ipa;
  std::string_view grapheme;
};

constexpr std::array<GraphemeEntry, 20> kGraphemes{{
    {"m", "m"},  {"n", "n"},  {"l", "l"},  {"b", "b"},  {"d", "d"},
    {"g", "g"},  {"k", "k"},  {"t", "t"},  {"p", "p"},  {"tʃ", "ch"},
    {"dʒ", "j"}, {"z", "z"},  {"f", "f"},  {"s", "s"},  {"v", "v"},
    {"oː", "o"}, {"uː", "u"}, {"ɛ", "e"},  {"iː", "i"}, {"aː", "a"},
}};

std::vector<Phone> select(PhoneKind kind, std::initializer_list<ShapeClass> shapes) {
  std::vector<Phone> out;
  for (const auto& p : kInventory) {
    if (p.kind == kind && std::find(shapes.begin(), shapes.end(), p.shape) != shapes.end()) {
      out.push_back(p);
    }
  }
  return out;
}

ShapeClass shapeOf(Label label) { return label == Label::round ? round : sharp; }

Pseudoword assemble(const std::array<Syllable, 3>& syllables, Label label) {
  Pseudoword word{syllables, label, {}, {}};
  for (const auto& s : syllables) {
    word.ipa.append(s.consonant.ipa);
    word.ipa.append(s.vowel.ipa);
  }
  word.grapheme = graphemeForm(word);
  return word;
}

std::vector<Pseudoword> buildAll() {
  std::vector<Pseudoword> words;
  for (Label label : {Label::round, Label::sharp}) {
    const auto initials = select(consonant, {shapeOf(label)});
    const auto middles = select(consonant, {shapeOf(label), neutral});
    const auto vowels = select(vowel, {shapeOf(label), neutral});
    for (const auto& c1 : initials) {
      for (const auto& v1 : vowels) {
        for (const auto& c2 : middles) {
          for (const auto& v2 : vowels) {
            const Syllable edge{c1, v1};
            words.push_back(assemble({edge, Syllable{c2, v2}, edge}, label));
          }
        }
      }
    }
  }
  std::sort(words.begin(), words.end(), [](const Pseudoword& a, const Pseudoword& b) {
    if (a.label != b.label) return a.label < b.label;
    return a.ipa < b.ipa;
  });
  return words;
}

}  // namespace

std::span<const Phone> inventory() { return kInventory; }

std::optional<Phone> findPhone(std::string_view ipa) {
  for (const auto& p : kInventory) {
    if (p.ipa == ipa) return p;
  }
  return std::nullopt;
}

std::vector<Phone> tokenize(std::string_view ipa) {
  std::vector<Phone> phones;
  std::size_t pos = 0;
  while (pos < ipa.size()) {
    const Phone* best = nullptr;
    for (const auto& p : kInventory) {
      if (ipa.substr(pos).starts_with(p.ipa) && (!best || p.ipa.size() > best->ipa.size())) {
        best = &p;
      }
    }
    if (!best) {
      throw Error(ErrorCode::UnknownPhone, "no inventory phone at byte " + std::to_string(pos) +
                                               " of \"" + std::string(ipa) + "\"");
    }
    phones.push_back(*best);
    pos += best->ipa.size();
  }
  return phones;
}

const std::vector<Pseudoword>& enumeratePseudowords() {
  static const std::vector<Pseudoword> words = buildAll();
  return words;
}

Pseudoword validatePseudoword(std::string_view ipa) {
  const std::string original(ipa);
  if (ipa.size() >= 2 && ipa.front() == '[' && ipa.back() == ']') {
    ipa = ipa.substr(1, ipa.size() - 2);
  }
  const auto phones = tokenize(ipa);
  bool alternating = phones.size() == 6;
  for (std::size_t i = 0; alternating && i < phones.size(); ++i) {
    alternating = phones[i].kind == (i % 2 == 0 ? consonant : vowel);
  }
  if (!alternating) {
    throw Error(ErrorCode::NotThreeSyllables, "\"" + original + "\" is not a CVCVCV sequence");
  }
  const std::array<Syllable, 3> syllables{Syllable{phones[0], phones[1]},
                                          Syllable{phones[2], phones[3]},
                                          Syllable{phones[4], phones[5]}};
  if (syllables[0] != syllables[2]) {
    throw Error(ErrorCode::Rule1Violation,
                "\"" + original + "\": first and last syllable differ");
  }
  const bool hasRound =
      std::any_of(phones.begin(), phones.end(), [](const Phone& p) { return p.shape == round; });
  const bool hasSharp =
      std::any_of(phones.begin(), phones.end(), [](const Phone& p) { return p.shape == sharp; });
  if (hasRound && hasSharp) {
    throw Error(ErrorCode::Rule2Violation, "\"" + original + "\" mixes round and sharp phones");
  }
  if (phones[0].shape == neutral) {
    throw Error(ErrorCode::Rule3Violation,
                "\"" + original + "\" starts with neutral consonant " + std::string(phones[0].ipa));
  }
  return assemble(syllables, phones[0].shape == round ? Label::round : Label::sharp);
}

std::string_view graphemeOf(const Phone& phone) {
  for (const auto& g : kGraphemes) {
    if (g.ipa == phone.ipa) return g.grapheme;
  }
  throw Error(ErrorCode::UnknownPhone, std::string(phone.ipa));
}

std::string graphemeForm(const Pseudoword& word) {
  std::string out;
  for (const auto& s : word.syllables) {
    out.append(graphemeOf(s.consonant));
    out.append(graphemeOf(s.vowel));
  }
  return out;
}

}  // namespace phonology
}  // namespace ssprobe
