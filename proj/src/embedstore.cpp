#include "ssprobe/embedstore.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <set>

#include "fileio.hpp"
#include "json.hpp"
#include "ssprobe/csv.hpp"
#include "ssprobe/error.hpp"

namespace ssprobe {

std::string_view to_string(Modality modality) {
  switch (modality) {
    case Modality::image: return "image";
    case Modality::audio: return "audio";
    case Modality::text: return "text";
  }
  return "?";
}

std::optional<Modality> parseModality(std::string_view text) {
  if (text == "image") return Modality::image;
  if (text == "audio") return Modality::audio;
  if (text == "text") return Modality::text;
  return std::nullopt;
}

namespace embedstore {
namespace {

using nlohmann::json;

[[noreturn]] void format(const std::string& detail) {
  throw Error(ErrorCode::FormatViolation, detail);
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) format(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) format(where + ": missing field '" + key + "'");
  return *it;
}

std::string stringMember(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_string()) format(where + ": field '" + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t countMember(const json& obj, const char* key, const std::string& where) {
  const auto& v = member(obj, key, where);
  if (!v.is_number_unsigned()) format(where + ": field '" + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

void ensureValid(const EmbeddingSet& set) {
  const auto findings = validateSet(set);
  if (findings.empty()) return;
  std::string msg = std::to_string(findings.size()) + " finding(s); first: " + describe(findings[0]);
  throw Error(ErrorCode::InvalidSet, msg);
}

}  // namespace

std::string_view to_string(FindingKind kind) {
  switch (kind) {
    case FindingKind::NonFinite: return "NonFinite";
    case FindingKind::ZeroNorm: return "ZeroNorm";
    case FindingKind::DuplicateId: return "DuplicateId";
    case FindingKind::DimMismatch: return "DimMismatch";
  }
  return "?";
}

std::vector<Finding> validateSet(const EmbeddingSet& set) {
  std::vector<Finding> findings;
  if (set.dim == 0) {
    findings.push_back({FindingKind::DimMismatch, std::nullopt, "dim must be >= 1"});
    return findings;
  }
  if (set.matrix.size() != set.items.size() * set.dim) {
    findings.push_back({FindingKind::DimMismatch, std::nullopt,
                        "matrix holds " + std::to_string(set.matrix.size()) + " values, expected " +
                            std::to_string(set.items.size()) + " x " + std::to_string(set.dim)});
    return findings;
  }
  std::set<std::string_view> ids;
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    if (!ids.insert(set.items[i].id).second) {
      findings.push_back({FindingKind::DuplicateId, i, "id \"" + set.items[i].id + "\" repeats"});
    }
    bool finite = true;
    double sq = 0.0;
    for (float v : set.row(i)) {
      if (!std::isfinite(v)) finite = false;
      sq += static_cast<double>(v) * v;
    }
    if (!finite) {
      findings.push_back({FindingKind::NonFinite, i, "row contains NaN or Inf"});
    } else if (sq == 0.0) {
      findings.push_back({FindingKind::ZeroNorm, i, "row has zero Euclidean norm"});
    }
  }
  return findings;
}

std::string describe(const Finding& finding) {
  std::string out = "{";
  if (finding.row) out += "row:" + std::to_string(*finding.row) + ", ";
  out += std::string(to_string(finding.kind)) + "} " + finding.detail;
  return out;
}

std::filesystem::path matrixPathFor(const std::filesystem::path& sidecar) {
  auto p = sidecar;
  p += ".f32";
  return p;
}

std::string sidecarJson(const EmbeddingSet& set, std::string_view matrixFile) {
  json items = json::array();
  for (const auto& item : set.items) {
    json meta = json::object();
    for (const auto& [k, v] : item.meta) meta[k] = v;
    items.push_back({{"id", item.id}, {"shapeClass", to_string(item.label)}, {"meta", meta}});
  }
  const json doc{{"modelId", set.modelId},
                 {"modality", to_string(set.modality)},
                 {"dim", set.dim},
                 {"count", set.items.size()},
                 {"matrixFile", matrixFile},
                 {"items", items}};
  return doc.dump(2) + "\n";
}

std::string matrixBytes(const EmbeddingSet& set) {
  std::string out(kMagic);
  out.reserve(kMagic.size() + set.matrix.size() * 4);
  for (float v : set.matrix) {
    const auto bits = std::bit_cast<std::uint32_t>(v);
    for (int b = 0; b < 4; ++b) out += static_cast<char>((bits >> (8 * b)) & 0xFFu);
  }
  return out;
}

void writeSetUnchecked(const EmbeddingSet& set, const std::filesystem::path& sidecar) {
  const auto matrixPath = matrixPathFor(sidecar);
  detail::writeFile(matrixPath, matrixBytes(set));
  detail::writeFile(sidecar, sidecarJson(set, matrixPath.filename().string()));
}

void writeSet(const EmbeddingSet& set, const std::filesystem::path& sidecar) {
  ensureValid(set);
  writeSetUnchecked(set, sidecar);
}

EmbeddingSet readSet(const std::filesystem::path& path, Modality csvModality) {
  if (path.extension() == ".csv") return readCsvSet(path, csvModality);

  const std::string text = detail::readFile(path);
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    format(path.string() + ": sidecar is not valid JSON: " + e.what());
  }
  const std::string where = path.string();
  EmbeddingSet set;
  set.modelId = stringMember(doc, "modelId", where);
  const auto modality = parseModality(stringMember(doc, "modality", where));
  if (!modality) format(where + ": unknown modality");
  set.modality = *modality;
  set.dim = countMember(doc, "dim", where);
  if (set.dim == 0) format(where + ": dim must be >= 1");
  const auto count = countMember(doc, "count", where);
  const auto matrixFile = stringMember(doc, "matrixFile", where);
  const auto& items = member(doc, "items", where);
  if (!items.is_array()) format(where + ": items must be an array");
  if (items.size() != count) {
    format(where + ": count is " + std::to_string(count) + " but items lists " +
           std::to_string(items.size()));
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string at = where + ": items[" + std::to_string(i) + "]";
    EmbeddingItem item;
    item.id = stringMember(items[i], "id", at);
    const auto label = parseLabel(stringMember(items[i], "shapeClass", at));
    if (!label) format(at + ": unknown shapeClass");
    item.label = *label;
    const auto& meta = member(items[i], "meta", at);
    if (!meta.is_object()) format(at + ": meta must be an object");
    for (const auto& [k, v] : meta.items()) {
      if (!v.is_string()) format(at + ": meta values must be strings");
      item.meta.emplace(k, v.get<std::string>());
    }
    set.items.push_back(std::move(item));
  }

  const auto matrixPath = path.parent_path() / matrixFile;
  const std::string bytes = detail::readFile(matrixPath);
  if (bytes.size() < kMagic.size() || std::string_view(bytes).substr(0, kMagic.size()) != kMagic) {
    format(matrixPath.string() + ": bad magic or version");
  }
  const std::size_t expected = kMagic.size() + count * set.dim * 4;
  if (bytes.size() != expected) {
    format(matrixPath.string() + ": holds " + std::to_string(bytes.size() - kMagic.size()) +
           " payload bytes, sidecar implies " + std::to_string(count * set.dim * 4));
  }
  set.matrix.resize(count * set.dim);
  const auto* p = reinterpret_cast<const unsigned char*>(bytes.data() + kMagic.size());
  for (std::size_t k = 0; k < set.matrix.size(); ++k, p += 4) {
    const std::uint32_t bits = std::uint32_t{p[0]} | (std::uint32_t{p[1]} << 8) |
                               (std::uint32_t{p[2]} << 16) | (std::uint32_t{p[3]} << 24);
    set.matrix[k] = std::bit_cast<float>(bits);
  }
  return set;
}

EmbeddingSet readCsvSet(const std::filesystem::path& path, Modality modality) {
  const auto rows = csv::parse(detail::readFile(path));
  const std::string where = path.string();
  if (rows.empty()) format(where + ": empty CSV");
  const auto& header = rows[0];
  if (header.size() < 3 || header[0] != "id" || header[1] != "class") {
    format(where + ": header must be id,class,v0,...");
  }
  EmbeddingSet set;
  set.modelId = path.stem().string();
  set.modality = modality;
  set.dim = header.size() - 2;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    const std::string at = where + ": line " + std::to_string(r + 1);
    if (row.size() != header.size()) format(at + ": wrong number of fields");
    const auto label = parseLabel(row[1]);
    if (!label) format(at + ": unknown class \"" + row[1] + "\"");
    set.items.push_back({row[0], *label, {}});
    for (std::size_t c = 2; c < row.size(); ++c) set.matrix.push_back(csv::parseFloat(row[c]));
  }
  return set;
}

std::string toCsv(const EmbeddingSet& set) {
  std::string out = "id,class";
  for (std::size_t d = 0; d < set.dim; ++d) out += ",v" + std::to_string(d);
  out += '\n';
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    out += csv::quote(set.items[i].id);
    out += ',';
    out += to_string(set.items[i].label);
    for (float v : set.row(i)) {
      out += ',';
      out += csv::shortest(v);
    }
    out += '\n';
  }
  return out;
}

EmbeddingSet filterSet(const EmbeddingSet& set, const Filter& filter) {
  EmbeddingSet out;
  out.modelId = set.modelId;
  out.modality = set.modality;
  out.dim = set.dim;
  for (std::size_t i = 0; i < set.items.size(); ++i) {
    const auto& item = set.items[i];
    if (filter.label && item.label != *filter.label) continue;
    if (filter.predicate && !filter.predicate(item)) continue;
    out.items.push_back(item);
    const auto r = set.row(i);
    out.matrix.insert(out.matrix.end(), r.begin(), r.end());
  }
  if (out.items.empty()) {
    throw Error(ErrorCode::EmptyResult, "filter selected no rows from " + set.modelId);
  }
  return out;
}

EmbeddingSet filterSet(const EmbeddingSet& set, Label label) {
  return filterSet(set, Filter{label, {}});
}

std::function<bool(const EmbeddingItem&)> idPrefix(std::string prefix) {
  return [prefix = std::move(prefix)](const EmbeddingItem& item) {
    return item.id.starts_with(prefix);
  };
}

}  // namespace embedstore
}  // namespace ssprobe
