#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssprobe/phonology.hpp"

namespace ssprobe {

enum class Modality { image, audio, text };

std::string_view to_string(Modality modality);
std::optional<Modality> parseModality(std::string_view text);

struct EmbeddingItem {
  std::string id;
  Label label;
  std::map<std::string, std::string> meta;

  bool operator==(const EmbeddingItem&) const = default;
};

/// N x D encoder outputs; row i of `matrix` (row-major) belongs to items[i].
struct EmbeddingSet {
  std::string modelId;
  Modality modality = Modality::audio;
  std::size_t dim = 0;
  std::vector<EmbeddingItem> items;
  std::vector<float> matrix;

  std::size_t size() const { return items.size(); }
  std::span<const float> row(std::size_t i) const { return {matrix.data() + i * dim, dim}; }
  std::span<float> row(std::size_t i) { return {matrix.data() + i * dim, dim}; }

  bool operator==(const EmbeddingSet&) const = default;
};

namespace embedstore {

/// Matrix file prefix: "EMBS" followed by format version byte 0x01.
inline constexpr std::string_view kMagic{"EMBS\x01", 5};

enum class FindingKind { NonFinite, ZeroNorm, DuplicateId, DimMismatch };

std::string_view to_string(FindingKind kind);

struct Finding {
  FindingKind kind;
  std::optional<std::size_t> row;
  std::string detail;

  bool operator==(const Finding&) const = default;
};

std::vector<Finding> validateSet(const EmbeddingSet& set);

std::string describe(const Finding& finding);

/// Path of the raw matrix file written next to a sidecar.
std::filesystem::path matrixPathFor(const std::filesystem::path& sidecar);

/// Writes `sidecar` (JSON) and its matrix file. Throws InvalidSet when the
/// set has findings, IoFailure on filesystem errors.
void writeSet(const EmbeddingSet& set, const std::filesystem::path& sidecar);

/// Like writeSet but skips validation, so broken sets can be materialised
/// for inspection with validate-store.
void writeSetUnchecked(const EmbeddingSet& set, const std::filesystem::path& sidecar);

/// Reads a sidecar + matrix pair. Files ending in ".csv" are read in
/// fixture mode (see readCsvSet) with `csvModality`.
EmbeddingSet readSet(const std::filesystem::path& path, Modality csvModality = Modality::audio);

/// Fixture mode: header "id,class,v0,...,v{D-1}", one row per item.
/// modelId is the file stem.
EmbeddingSet readCsvSet(const std::filesystem::path& path, Modality modality);
std::string toCsv(const EmbeddingSet& set);

std::string sidecarJson(const EmbeddingSet& set, std::string_view matrixFile);
std::string matrixBytes(const EmbeddingSet& set);

struct Filter {
  std::optional<Label> label;
  std::function<bool(const EmbeddingItem&)> predicate;
};

/// Rows matching every given criterion, order preserved. Throws EmptyResult.
EmbeddingSet filterSet(const EmbeddingSet& set, const Filter& filter);
EmbeddingSet filterSet(const EmbeddingSet& set, Label label);

std::function<bool(const EmbeddingItem&)> idPrefix(std::string prefix);

}  // namespace embedstore
}  // namespace ssprobe
