#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssprobe/phonology.hpp"

namespace ssprobe {

inline constexpr std::string_view kManifestVersion = "ssprobe-manifest/1";

struct ImagePromptSpec {
  std::string id;
  std::string adjective;
  Label label;
  int seed;
  std::string prompt;

  bool operator==(const ImagePromptSpec&) const = default;
};

struct AudioStimulusSpec {
  std::string id;
  Pseudoword word;
  std::string speaker;

  const std::string& ipa() const { return word.ipa; }
  const std::string& grapheme() const { return word.grapheme; }
  Label label() const { return word.label; }

  bool operator==(const AudioStimulusSpec&) const = default;
};

struct DatasetManifest {
  std::string version{kManifestVersion};
  std::vector<ImagePromptSpec> images;
  std::vector<AudioStimulusSpec> audio;

  bool operator==(const DatasetManifest&) const = default;
};

namespace stimuli {

std::span<const std::string_view> adjectives(Label label);

/// "A 3D-rendering of a <adjective> object", no trailing punctuation.
std::string promptFor(std::string_view adjective);

std::string imageId(Label label, std::string_view adjective, int seed);

/// "aud-" + syllables joined by '-' + "-" + speaker, e.g. "aud-muː-luː-muː-voice-a".
std::string audioId(const Pseudoword& word, std::string_view speaker);

/// 2 x 10 x seedsPerAdjective prompts ordered by (label, adjective, seed).
std::vector<ImagePromptSpec> imagePrompts(int seedsPerAdjective = 25);

/// One request per (pseudoword, speaker), word order first. Throws
/// DuplicateSpeaker / InvalidArgument on a bad speaker list.
std::vector<AudioStimulusSpec> audioStimuli(std::span<const std::string> speakers);

/// "voice-a", "voice-b", ... for count <= 26, "voice-<n>" beyond.
std::vector<std::string> defaultSpeakers(int count = 4);

DatasetManifest buildManifest(int seedsPerAdjective, std::span<const std::string> speakers);

/// Checks the manifest invariants; throws SchemaViolation on the first breach.
void checkManifest(const DatasetManifest& manifest);

std::string manifestToJson(const DatasetManifest& manifest);
DatasetManifest manifestFromJson(std::string_view text);

void writeManifest(const DatasetManifest& manifest, const std::filesystem::path& path);
DatasetManifest readManifest(const std::filesystem::path& path);

}  // namespace stimuli
}  // namespace ssprobe
