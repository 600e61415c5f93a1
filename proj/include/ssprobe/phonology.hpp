#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ssprobe {

enum class PhoneKind { consonant, vowel };

/// Perceptual grouping of a single phone.
enum class ShapeClass { round, sharp, neutral };

/// Binary class carried by every stimulus, embedding row and score row.
/// `round` is the positive class throughout the toolkit.
enum class Label { round, sharp };

std::string_view to_string(ShapeClass shape);
std::string_view to_string(Label label);
std::string_view to_string(PhoneKind kind);
std::optional<Label> parseLabel(std::string_view text);
Label opposite(Label label);

struct Phone {
  std::string_view ipa;  // points into the static inventory
  PhoneKind kind;
  ShapeClass shape;

  bool operator==(const Phone&) const = default;
};

struct Syllable {
  Phone consonant;
  Phone vowel;

  bool operator==(const Syllable&) const = default;
};

/// A validated (CV)(CV)(CV) sequence. Construct through enumeratePseudowords()
/// or validatePseudoword(); both guarantee the three construction rules.
struct Pseudoword {
  std::array<Syllable, 3> syllables;
  Label label;
  std::string ipa;
  std::string grapheme;

  bool operator==(const Pseudoword&) const = default;
};

namespace phonology {

/// Full phone inventory: consonants (round, sharp, neutral) then vowels
/// (round, sharp, neutral), each group in its canonical listing order.
std::span<const Phone> inventory();

/// Looks up a phone by its IPA symbol.
std::optional<Phone> findPhone(std::string_view ipa);

/// Greedy longest-match tokenization over the inventory symbols.
/// Throws Error(UnknownPhone) on any unmatched input.
std::vector<Phone> tokenize(std::string_view ipa);

/// Every admissible pseudoword, sorted by (label, ipa).
const std::vector<Pseudoword>& enumeratePseudowords();

/// Parses and checks an IPA string. Optional surrounding brackets "[...]"
/// are accepted. Errors: UnknownPhone, NotThreeSyllables, Rule1Violation
/// (first and last syllable differ), Rule2Violation (round and sharp phones
/// mixed), Rule3Violation (neutral initial consonant).
Pseudoword validatePseudoword(std::string_view ipa);

/// Orthographic rendering of a single phone (e.g. "tʃ" -> "ch").
std::string_view graphemeOf(const Phone& phone);

/// Orthographic rendering of a word, phone by phone.
std::string graphemeForm(const Pseudoword& word);

}  // namespace phonology
}  // namespace ssprobe
