#include "ssprobe/stimuli.hpp"

#include <array>
#include <algorithm>
#include <limits>

#include "json.hpp"
#include <set>

#include "fileio.hpp"
#include "ssprobe/error.hpp"

namespace ssprobe::stimuli {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 10> kRoundAdjectives{
    "round", "circular", "soft", "fat", "chubby", "curved", "smooth", "plush", "plump", "rotund"};
constexpr std::array<std::string_view, 10> kSharpAdjectives{
    "sharp", "spiky", "angular", "jagged", "hard", "edgy", "pointed", "prickly", "rugged", "uneven"};

[[noreturn]] void schema(const std::string& detail) {
  throw Error(ErrorCode::SchemaViolation, detail);
}

const json& field(const json& obj, const char* key, json::value_t type, const std::string& where) {
  if (!obj.is_object()) schema(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) schema(where + ": missing field '" + key + "'");
  const bool ok = type == json::value_t::number_integer
                      ? (it->is_number_integer())
                      : it->type() == type;
  if (!ok) schema(where + ": field '" + key + "' has the wrong type");
  return *it;
}

std::string stringField(const json& obj, const char* key, const std::string& where) {
  return field(obj, key, json::value_t::string, where).get<std::string>();
}

Label labelField(const json& obj, const std::string& where) {
  const auto text = stringField(obj, "shapeClass", where);
  const auto label = parseLabel(text);
  if (!label) schema(where + ": unknown shapeClass \"" + text + "\"");
  return *label;
}

}  // namespace

std::span<const std::string_view> adjectives(Label label) {
  if (label == Label::round) return kRoundAdjectives;
  return kSharpAdjectives;
}

std::string promptFor(std::string_view adjective) {
  return "A 3D-rendering of a " + std::string(adjective) + " object";
}

std::string imageId(Label label, std::string_view adjective, int seed) {
  return "img-" + std::string(to_string(label)) + "-" + std::string(adjective) + "-" +
         std::to_string(seed);
}

std::string audioId(const Pseudoword& word, std::string_view speaker) {
  std::string id = "aud";
  for (const auto& s : word.syllables) {
    id += '-';
    id.append(s.consonant.ipa);
    id.append(s.vowel.ipa);
  }
  id += '-';
  id.append(speaker);
  return id;
}

std::vector<ImagePromptSpec> imagePrompts(int seedsPerAdjective) {
  if (seedsPerAdjective < 1) {
    throw Error(ErrorCode::InvalidArgument, "seedsPerAdjective must be >= 1");
  }
  std::vector<ImagePromptSpec> specs;
  specs.reserve(20 * static_cast<std::size_t>(seedsPerAdjective));
  for (Label label : {Label::round, Label::sharp}) {
    for (auto adjective : adjectives(label)) {
      for (int seed = 0; seed < seedsPerAdjective; ++seed) {
        specs.push_back({imageId(label, adjective, seed), std::string(adjective), label, seed,
                         promptFor(adjective)});
      }
    }
  }
  return specs;
}

std::vector<AudioStimulusSpec> audioStimuli(std::span<const std::string> speakers) {
  if (speakers.empty()) throw Error(ErrorCode::InvalidArgument, "speaker list is empty");
  std::set<std::string_view> seen;
  for (const auto& s : speakers) {
    if (s.empty()) throw Error(ErrorCode::InvalidArgument, "empty speaker tag");
    if (!seen.insert(s).second) throw Error(ErrorCode::DuplicateSpeaker, s);
  }
  const auto& words = phonology::enumeratePseudowords();
  std::vector<AudioStimulusSpec> specs;
  specs.reserve(words.size() * speakers.size());
  for (const auto& word : words) {
    for (const auto& speaker : speakers) {
      specs.push_back({audioId(word, speaker), word, speaker});
    }
  }
  return specs;
}

std::vector<std::string> defaultSpeakers(int count) {
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "speaker count must be >= 1");
  std::vector<std::string> out;
  for (int i = 0; i < count; ++i) {
    out.push_back(count <= 26 ? "voice-" + std::string(1, static_cast<char>('a' + i))
                              : "voice-" + std::to_string(i));
  }
  return out;
}

DatasetManifest buildManifest(int seedsPerAdjective, std::span<const std::string> speakers) {
  DatasetManifest m;
  m.images = imagePrompts(seedsPerAdjective);
  m.audio = audioStimuli(speakers);
  return m;
}

void checkManifest(const DatasetManifest& manifest) {
  if (manifest.version.empty()) schema("version is empty");
  std::set<std::string_view> ids;
  for (const auto& img : manifest.images) {
    if (!ids.insert(img.id).second) schema("duplicate image id " + img.id);
    const auto adj = adjectives(img.label);
    if (std::find(adj.begin(), adj.end(), img.adjective) == adj.end()) {
      schema(img.id + ": adjective \"" + img.adjective + "\" is not a " +
             std::string(to_string(img.label)) + " adjective");
    }
    if (img.seed < 0) schema(img.id + ": negative seed");
    if (img.prompt != promptFor(img.adjective)) schema(img.id + ": prompt does not match template");
  }
  ids.clear();
  for (const auto& aud : manifest.audio) {
    if (!ids.insert(aud.id).second) schema("duplicate audio id " + aud.id);
    if (aud.speaker.empty()) schema(aud.id + ": empty speaker");
  }
}

std::string manifestToJson(const DatasetManifest& manifest) {
  json images = json::array();
  for (const auto& img : manifest.images) {
    images.push_back({{"id", img.id},
                      {"adjective", img.adjective},
                      {"shapeClass", to_string(img.label)},
                      {"seed", img.seed},
                      {"prompt", img.prompt}});
  }
  json audio = json::array();
  for (const auto& aud : manifest.audio) {
    audio.push_back({{"id", aud.id},
                     {"shapeClass", to_string(aud.label())},
                     {"speaker", aud.speaker},
                     {"ipa", aud.ipa()},
                     {"grapheme", aud.grapheme()}});
  }
  const json doc{{"version", manifest.version}, {"images", images}, {"audio", audio}};
  return doc.dump(2) + "\n";
}

DatasetManifest manifestFromJson(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("not valid JSON: ") + e.what());
  }
  DatasetManifest m;
  m.version = stringField(doc, "version", "manifest");
  const auto& images = field(doc, "images", json::value_t::array, "manifest");
  const auto& audio = field(doc, "audio", json::value_t::array, "manifest");

  for (std::size_t i = 0; i < images.size(); ++i) {
    const std::string where = "images[" + std::to_string(i) + "]";
    const auto& e = images[i];
    ImagePromptSpec spec;
    spec.id = stringField(e, "id", where);
    spec.adjective = stringField(e, "adjective", where);
    spec.label = labelField(e, where);
    const auto& seed = field(e, "seed", json::value_t::number_integer, where);
    if (seed.get<long long>() < 0 || seed.get<long long>() > std::numeric_limits<int>::max()) {
      schema(where + ": seed out of range");
    }
    spec.seed = seed.get<int>();
    spec.prompt = stringField(e, "prompt", where);
    m.images.push_back(std::move(spec));
  }

  for (std::size_t i = 0; i < audio.size(); ++i) {
    const std::string where = "audio[" + std::to_string(i) + "]";
    const auto& e = audio[i];
    AudioStimulusSpec spec;
    spec.id = stringField(e, "id", where);
    spec.speaker = stringField(e, "speaker", where);
    const auto label = labelField(e, where);
    const auto ipa = stringField(e, "ipa", where);
    try {
      spec.word = phonology::validatePseudoword(ipa);
    } catch (const Error& err) {
      schema(where + ": " + err.what());
    }
    if (spec.word.label != label) schema(where + ": shapeClass disagrees with ipa");
    if (spec.word.ipa != ipa) schema(where + ": ipa must not be bracketed");
    if (stringField(e, "grapheme", where) != spec.word.grapheme) {
      schema(where + ": grapheme disagrees with ipa");
    }
    m.audio.push_back(std::move(spec));
  }
  checkManifest(m);
  return m;
}

void writeManifest(const DatasetManifest& manifest, const std::filesystem::path& path) {
  checkManifest(manifest);
  detail::writeFile(path, manifestToJson(manifest));
}

DatasetManifest readManifest(const std::filesystem::path& path) {
  return manifestFromJson(detail::readFile(path));
}

}  // namespace ssprobe::stimuli
