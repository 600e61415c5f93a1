#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ssprobe/metrics.hpp"
#include "ssprobe/phonology.hpp"
#include "ssprobe/probe.hpp"
#include "ssprobe/stimuli.hpp"

namespace ssprobe {

enum class GroupKind { firstConsonant, firstVowel };

std::string_view to_string(GroupKind kind);

struct PhoneGroupProfile {
  Phone phone;
  GroupKind groupKind;
  double meanScore;
  std::size_t count;
};

struct PlotPoint {
  std::string ipa;
  double meanScore;
  ShapeClass shape;
  std::size_t count;
};

struct PlotData {
  std::vector<PlotPoint> consonants;
  std::vector<PlotPoint> vowels;
};

namespace report {

/// Groups scored audio items by the consonant and by the vowel of their
/// first syllable. Consonant profiles come first, then vowels; each block is
/// sorted ascending by mean score, ties by IPA. Errors: UnresolvedId.
std::vector<PhoneGroupProfile> phoneGroupMeans(const ScoreTable& table,
                                               const DatasetManifest& manifest);

/// "groupKind,ipa,shapeClass,count,meanScore"
std::string profilesCsv(std::span<const PhoneGroupProfile> profiles);

std::string_view randomBaselineLabel();

/// Rows sorted by (modelId, scoreType) followed by a "(Random)" baseline row
/// reading 0.50 / 0.00. Throws InvalidArgument when `results` is empty.
std::string summaryCsv(std::vector<EvalResult> results);
std::string summaryMarkdown(std::vector<EvalResult> results);

PlotData plotData(std::span<const PhoneGroupProfile> profiles);

/// Self-contained SVG strip chart, one column per series. Identical input
/// gives identical bytes.
std::string plotSvg(const PlotData& data, std::string_view title = "");

}  // namespace report
}  // namespace ssprobe
