#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssprobe/embedstore.hpp"

namespace ssprobe {

enum class ScoreType { geometric, phonetic };

std::string_view to_string(ScoreType type);
std::optional<ScoreType> parseScoreType(std::string_view text);

/// Round-minus-sharp class-mean axis. It always points toward the round
/// mean, so a positive projection reads as "round-leaning".
struct SemanticDirection {
  static constexpr Label positiveClass = Label::round;

  std::vector<double> vector;
  Modality sourceModality = Modality::image;
  std::size_t nRound = 0;
  std::size_t nSharp = 0;
};

struct ScoreRow {
  std::string id;
  Label label;
  double score;
  std::map<std::string, std::string> meta;

  bool operator==(const ScoreRow&) const = default;
};

struct ScoreTable {
  ScoreType scoreType = ScoreType::geometric;
  std::string modelId;
  std::vector<ScoreRow> rows;

  std::vector<double> scores() const;
  std::vector<Label> labels() const;

  bool operator==(const ScoreTable&) const = default;
};

struct ProbeOptions {
  bool normalizeRows = false;
};

namespace probe {

/// Directions whose Euclidean norm is at or below this are rejected.
inline constexpr double kZeroDirectionTolerance = 1e-12;

/// mean(round rows) - mean(sharp rows), accumulated left to right in double.
/// With normalizeRows each row is scaled to unit length first.
/// Errors: InvalidSet, EmptyClass, ZeroDirection.
SemanticDirection classMeanDirection(const EmbeddingSet& set, ProbeOptions options = {});

/// cos(e, w), clamped to [-1, 1]. Errors: DimMismatch, ZeroNormInput.
double cosineScore(std::span<const float> embedding, const SemanticDirection& direction);
double cosineScore(std::span<const double> embedding, const SemanticDirection& direction);

/// Scores every row of `queries` against a direction built from `source`.
ScoreTable projectScores(const EmbeddingSet& source, const EmbeddingSet& queries,
                         ScoreType type, ProbeOptions options = {});

/// Audio queries against the image-derived direction.
ScoreTable geometricScores(const EmbeddingSet& imageSet, const EmbeddingSet& audioSet,
                           ProbeOptions options = {});

/// Image queries against the audio-derived direction.
ScoreTable phoneticScores(const EmbeddingSet& audioSet, const EmbeddingSet& imageSet,
                          ProbeOptions options = {});

/// CSV "id,class,score,modelId,scoreType,<meta keys...>", rows in table order.
std::string scoreTableCsv(const ScoreTable& table);
ScoreTable parseScoreTableCsv(std::string_view text, std::string_view fallbackModelId = "");

void writeScoreTable(const ScoreTable& table, const std::filesystem::path& path);
ScoreTable readScoreTable(const std::filesystem::path& path);

}  // namespace probe
}  // namespace ssprobe
