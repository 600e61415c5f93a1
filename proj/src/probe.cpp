#include "ssprobe/probe.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "fileio.hpp"
#include "ssprobe/csv.hpp"
#include "ssprobe/error.hpp"

namespace ssprobe {

std::string_view to_string(ScoreType type) {
  return type == ScoreType::geometric ? "geometric" : "phonetic";
}

std::optional<ScoreType> parseScoreType(std::string_view text) {
  if (text == "geometric") return ScoreType::geometric;
  if (text == "phonetic") return ScoreType::phonetic;
  return std::nullopt;
}

std::vector<double> ScoreTable::scores() const {
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.score);
  return out;
}

std::vector<Label> ScoreTable::labels() const {
  std::vector<Label> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r.label);
  return out;
}

namespace probe {
namespace {

void requireValid(const EmbeddingSet& set, std::string_view role) {
  const auto findings = embedstore::validateSet(set);
  if (!findings.empty()) {
    throw Error(ErrorCode::InvalidSet,
                std::string(role) + " set: " + embedstore::describe(findings.front()));
  }
}

template <typename T>
double cosineImpl(std::span<const T> e, const SemanticDirection& direction) {
  const auto& w = direction.vector;
  if (e.size() != w.size()) {
    throw Error(ErrorCode::DimMismatch, "embedding has dim " + std::to_string(e.size()) +
                                            ", direction has dim " + std::to_string(w.size()));
  }
  double dot = 0.0;
  double ee = 0.0;
  double ww = 0.0;
  for (std::size_t k = 0; k < w.size(); ++k) {
    const double x = static_cast<double>(e[k]);
    dot += x * w[k];
    ee += x * x;
    ww += w[k] * w[k];
  }
  if (ee == 0.0 || ww == 0.0) throw Error(ErrorCode::ZeroNormInput, "cosine of a zero vector");
  return std::clamp(dot / (std::sqrt(ee) * std::sqrt(ww)), -1.0, 1.0);
}

}  // namespace

SemanticDirection classMeanDirection(const EmbeddingSet& set, ProbeOptions options) {
  requireValid(set, "direction source");
  const std::size_t dim = set.dim;
  std::vector<double> roundSum(dim, 0.0);
  std::vector<double> sharpSum(dim, 0.0);
  std::size_t nRound = 0;
  std::size_t nSharp = 0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    const auto row = set.row(i);
    double scale = 1.0;
    if (options.normalizeRows) {
      double sq = 0.0;
      for (float v : row) sq += static_cast<double>(v) * v;
      scale = 1.0 / std::sqrt(sq);
    }
    const bool isRound = set.items[i].label == Label::round;
    auto& sum = isRound ? roundSum : sharpSum;
    ++(isRound ? nRound : nSharp);
    for (std::size_t k = 0; k < dim; ++k) {
      sum[k] += options.normalizeRows ? static_cast<double>(row[k]) * scale
                                      : static_cast<double>(row[k]);
    }
  }
  if (nRound == 0 || nSharp == 0) {
    throw Error(ErrorCode::EmptyClass, set.modelId + ": direction needs both round and sharp rows (" +
                                           std::to_string(nRound) + " round, " +
                                           std::to_string(nSharp) + " sharp)");
  }
  SemanticDirection dir;
  dir.sourceModality = set.modality;
  dir.nRound = nRound;
  dir.nSharp = nSharp;
  dir.vector.resize(dim);
  double sq = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    dir.vector[k] = roundSum[k] / static_cast<double>(nRound) -
                    sharpSum[k] / static_cast<double>(nSharp);
    sq += dir.vector[k] * dir.vector[k];
  }
  if (std::sqrt(sq) <= kZeroDirectionTolerance) {
    throw Error(ErrorCode::ZeroDirection, set.modelId + ": round and sharp means coincide");
  }
  return dir;
}

double cosineScore(std::span<const float> embedding, const SemanticDirection& direction) {
  return cosineImpl(embedding, direction);
}

double cosineScore(std::span<const double> embedding, const SemanticDirection& direction) {
  return cosineImpl(embedding, direction);
}

ScoreTable projectScores(const EmbeddingSet& source, const EmbeddingSet& queries, ScoreType type,
                         ProbeOptions options) {
  requireValid(queries, "query");
  if (queries.size() == 0) throw Error(ErrorCode::EmptyResult, "query set is empty");
  if (source.dim != queries.dim) {
    throw Error(ErrorCode::DimMismatch, "source dim " + std::to_string(source.dim) +
                                            " != query dim " + std::to_string(queries.dim));
  }
  const auto direction = classMeanDirection(source, options);
  ScoreTable table;
  table.scoreType = type;
  table.modelId = queries.modelId;
  table.rows.reserve(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    const auto& item = queries.items[i];
    table.rows.push_back({item.id, item.label, cosineScore(queries.row(i), direction), item.meta});
  }
  return table;
}

ScoreTable geometricScores(const EmbeddingSet& imageSet, const EmbeddingSet& audioSet,
                           ProbeOptions options) {
  return projectScores(imageSet, audioSet, ScoreType::geometric, options);
}

ScoreTable phoneticScores(const EmbeddingSet& audioSet, const EmbeddingSet& imageSet,
                          ProbeOptions options) {
  return projectScores(audioSet, imageSet, ScoreType::phonetic, options);
}

std::string scoreTableCsv(const ScoreTable& table) {
  std::set<std::string> metaKeys;
  for (const auto& r : table.rows) {
    for (const auto& [k, v] : r.meta) metaKeys.insert(k);
  }
  csv::Row header{"id", "class", "score", "modelId", "scoreType"};
  header.insert(header.end(), metaKeys.begin(), metaKeys.end());
  std::string out = csv::joinRow(header) + "\n";
  for (const auto& r : table.rows) {
    csv::Row row{r.id, std::string(to_string(r.label)), csv::shortest(r.score), table.modelId,
                 std::string(to_string(table.scoreType))};
    for (const auto& key : metaKeys) {
      auto it = r.meta.find(key);
      row.push_back(it == r.meta.end() ? std::string{} : it->second);
    }
    out += csv::joinRow(row) + "\n";
  }
  return out;
}

ScoreTable parseScoreTableCsv(std::string_view text, std::string_view fallbackModelId) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw Error(ErrorCode::FormatViolation, "score file is empty");
  const auto& header = rows[0];
  if (header.size() < 3 || header[0] != "id" || header[1] != "class" || header[2] != "score") {
    throw Error(ErrorCode::FormatViolation, "score header must begin id,class,score");
  }
  std::optional<std::size_t> modelCol;
  std::optional<std::size_t> typeCol;
  for (std::size_t c = 3; c < header.size(); ++c) {
    if (header[c] == "modelId") modelCol = c;
    if (header[c] == "scoreType") typeCol = c;
  }
  ScoreTable table;
  table.modelId = std::string(fallbackModelId);
  bool first = true;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string at = "score file line " + std::to_string(r + 1);
    if (row.size() != header.size()) throw Error(ErrorCode::FormatViolation, at + ": field count");
    const auto label = parseLabel(row[1]);
    if (!label) throw Error(ErrorCode::FormatViolation, at + ": unknown class \"" + row[1] + "\"");
    const double score = csv::parseDouble(row[2]);
    if (!std::isfinite(score)) throw Error(ErrorCode::FormatViolation, at + ": non-finite score");
    if (modelCol) {
      if (first) table.modelId = row[*modelCol];
      else if (row[*modelCol] != table.modelId)
        throw Error(ErrorCode::FormatViolation, at + ": mixed modelId values");
    }
    if (typeCol) {
      const auto type = parseScoreType(row[*typeCol]);
      if (!type) throw Error(ErrorCode::FormatViolation, at + ": unknown scoreType");
      if (first) table.scoreType = *type;
      else if (*type != table.scoreType)
        throw Error(ErrorCode::FormatViolation, at + ": mixed scoreType values");
    }
    ScoreRow out{row[0], *label, score, {}};
    for (std::size_t c = 3; c < header.size(); ++c) {
      if (c == modelCol || c == typeCol || row[c].empty()) continue;
      out.meta.emplace(header[c], row[c]);
    }
    table.rows.push_back(std::move(out));
    first = false;
  }
  return table;
}

void writeScoreTable(const ScoreTable& table, const std::filesystem::path& path) {
  detail::writeFile(path, scoreTableCsv(table));
}

ScoreTable readScoreTable(const std::filesystem::path& path) {
  return parseScoreTableCsv(detail::readFile(path), path.stem().string());
}

}  // namespace probe
}  // namespace ssprobe
