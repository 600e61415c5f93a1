#include "ssprobe/report.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <unordered_map>

#include "ssprobe/csv.hpp"
#include "ssprobe/error.hpp"

namespace ssprobe {

std::string_view to_string(GroupKind kind) {
  return kind == GroupKind::firstConsonant ? "firstConsonant" : "firstVowel";
}

namespace report {
namespace {

struct Accumulator {
  Phone phone;
  double sum = 0.0;
  std::size_t count = 0;
};

std::vector<PhoneGroupProfile> finish(const std::map<std::string_view, Accumulator>& groups,
                                      GroupKind kind) {
  std::vector<PhoneGroupProfile> out;
  for (const auto& [ipa, acc] : groups) {
    out.push_back({acc.phone, kind, acc.sum / static_cast<double>(acc.count), acc.count});
  }
  std::sort(out.begin(), out.end(), [](const PhoneGroupProfile& a, const PhoneGroupProfile& b) {
    if (a.meanScore != b.meanScore) return a.meanScore < b.meanScore;
    return a.phone.ipa < b.phone.ipa;
  });
  return out;
}

std::vector<EvalResult> sortedResults(std::vector<EvalResult> results) {
  if (results.empty()) throw Error(ErrorCode::InvalidArgument, "no evaluation results to tabulate");
  std::stable_sort(results.begin(), results.end(), [](const EvalResult& a, const EvalResult& b) {
    if (a.modelId != b.modelId) return a.modelId < b.modelId;
    return a.scoreType < b.scoreType;
  });
  return results;
}

std::string xmlEscape(std::string_view text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string_view colorFor(ShapeClass shape) {
  switch (shape) {
    case ShapeClass::round: return "#1f4fd1";
    case ShapeClass::sharp: return "#d1281f";
    case ShapeClass::neutral: return "#808080";
  }
  return "#000000";
}

std::string marker(double cx, double cy, ShapeClass shape) {
  const std::string fill(colorFor(shape));
  if (shape == ShapeClass::round) {
    return "<circle cx=\"" + csv::fixed(cx, 2) + "\" cy=\"" + csv::fixed(cy, 2) +
           "\" r=\"5\" fill=\"" + fill + "\"/>";
  }
  if (shape == ShapeClass::neutral) {
    return "<rect x=\"" + csv::fixed(cx - 4, 2) + "\" y=\"" + csv::fixed(cy - 4, 2) +
           "\" width=\"8\" height=\"8\" fill=\"" + fill + "\"/>";
  }
  std::string points;
  for (int k = 0; k < 10; ++k) {
    const double radius = k % 2 == 0 ? 7.0 : 3.0;
    const double angle = -std::numbers::pi / 2 + k * std::numbers::pi / 5;
    if (k) points += ' ';
    points += csv::fixed(cx + radius * std::cos(angle), 2) + "," +
              csv::fixed(cy + radius * std::sin(angle), 2);
  }
  return "<polygon points=\"" + points + "\" fill=\"" + fill + "\"/>";
}

// One panel: points left to right in series order, y on the series' own scale.
std::string panel(const std::vector<PlotPoint>& points, std::string_view name, double x0,
                  double width, double top, double height) {
  std::string out;
  out += "<g class=\"series\" data-name=\"" + xmlEscape(name) + "\">\n";
  out += "<text x=\"" + csv::fixed(x0 + width / 2, 2) + "\" y=\"" + csv::fixed(top - 12, 2) +
         "\" text-anchor=\"middle\" font-size=\"14\">" + xmlEscape(name) + "</text>\n";
  out += "<line x1=\"" + csv::fixed(x0, 2) + "\" y1=\"" + csv::fixed(top, 2) + "\" x2=\"" +
         csv::fixed(x0, 2) + "\" y2=\"" + csv::fixed(top + height, 2) +
         "\" stroke=\"#000000\"/>\n";
  if (points.empty()) return out + "</g>\n";
  double lo = points.front().meanScore;
  double hi = points.front().meanScore;
  for (const auto& p : points) {
    lo = std::min(lo, p.meanScore);
    hi = std::max(hi, p.meanScore);
  }
  const double span = hi > lo ? hi - lo : 1.0;
  out += "<text x=\"" + csv::fixed(x0 - 4, 2) + "\" y=\"" + csv::fixed(top + 4, 2) +
         "\" text-anchor=\"end\" font-size=\"10\">" + csv::fixed(hi, 4) + "</text>\n";
  out += "<text x=\"" + csv::fixed(x0 - 4, 2) + "\" y=\"" + csv::fixed(top + height + 4, 2) +
         "\" text-anchor=\"end\" font-size=\"10\">" + csv::fixed(lo, 4) + "</text>\n";
  const double step = width / static_cast<double>(points.size() + 1);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto& p = points[i];
    const double cx = x0 + step * static_cast<double>(i + 1);
    const double frac = hi > lo ? (p.meanScore - lo) / span : 0.5;
    const double cy = top + height * (1.0 - frac);
    out += marker(cx, cy, p.shape) + "\n";
    out += "<text x=\"" + csv::fixed(cx, 2) + "\" y=\"" + csv::fixed(cy - 10, 2) +
           "\" text-anchor=\"middle\" font-size=\"12\">" + xmlEscape(p.ipa) + "</text>\n";
  }
  return out + "</g>\n";
}

}  // namespace

std::vector<PhoneGroupProfile> phoneGroupMeans(const ScoreTable& table,
                                               const DatasetManifest& manifest) {
  std::unordered_map<std::string_view, const AudioStimulusSpec*> byId;
  byId.reserve(manifest.audio.size());
  for (const auto& a : manifest.audio) byId.emplace(a.id, &a);

  std::map<std::string_view, Accumulator> consonants;
  std::map<std::string_view, Accumulator> vowels;
  for (const auto& row : table.rows) {
    auto it = byId.find(row.id);
    if (it == byId.end()) {
      throw Error(ErrorCode::UnresolvedId, "score row \"" + row.id + "\" is not an audio stimulus");
    }
    const auto& first = it->second->word.syllables[0];
    for (auto [groups, phone] : {std::pair{&consonants, first.consonant},
                                 std::pair{&vowels, first.vowel}}) {
      auto& acc = (*groups)[phone.ipa];
      acc.phone = phone;
      acc.sum += row.score;
      ++acc.count;
    }
  }
  auto out = finish(consonants, GroupKind::firstConsonant);
  auto v = finish(vowels, GroupKind::firstVowel);
  out.insert(out.end(), v.begin(), v.end());
  return out;
}

std::string profilesCsv(std::span<const PhoneGroupProfile> profiles) {
  std::string out = "groupKind,ipa,shapeClass,count,meanScore\n";
  for (const auto& p : profiles) {
    out += csv::joinRow({std::string(to_string(p.groupKind)), std::string(p.phone.ipa),
                         std::string(to_string(p.phone.shape)), std::to_string(p.count),
                         csv::shortest(p.meanScore)});
    out += '\n';
  }
  return out;
}

std::string_view randomBaselineLabel() { return "(Random)"; }

std::string summaryCsv(std::vector<EvalResult> results) {
  std::string out = "modelId,scoreType,auc,tau,n,p\n";
  for (const auto& r : sortedResults(std::move(results))) {
    out += csv::joinRow({r.modelId, std::string(to_string(r.scoreType)), csv::fixed(r.auc, 6),
                         csv::fixed(r.tau, 6), std::to_string(r.n),
                         r.pValue ? csv::fixed(*r.pValue, 6) : std::string{}});
    out += '\n';
  }
  out += std::string(randomBaselineLabel()) + ",,0.50,0.00,,\n";
  return out;
}

std::string summaryMarkdown(std::vector<EvalResult> results) {
  std::string out =
      "| Model | Score | AUC | τ | n | p |\n"
      "|---|---|---:|---:|---:|---:|\n";
  for (const auto& r : sortedResults(std::move(results))) {
    out += "| " + r.modelId + " | " + std::string(to_string(r.scoreType)) + " | " +
           csv::fixed(r.auc, 2) + " | " + csv::fixed(r.tau, 2) + " | " + std::to_string(r.n) +
           " | " + (r.pValue ? csv::fixed(*r.pValue, 4) : std::string{}) + " |\n";
  }
  out += "| " + std::string(randomBaselineLabel()) + " |  | 0.50 | 0.00 |  |  |\n";
  return out;
}

PlotData plotData(std::span<const PhoneGroupProfile> profiles) {
  if (profiles.empty()) throw Error(ErrorCode::InvalidArgument, "no profiles to plot");
  PlotData data;
  for (const auto& p : profiles) {
    PlotPoint point{std::string(p.phone.ipa), p.meanScore, p.phone.shape, p.count};
    (p.groupKind == GroupKind::firstConsonant ? data.consonants : data.vowels)
        .push_back(std::move(point));
  }
  return data;
}

std::string plotSvg(const PlotData& data, std::string_view title) {
  constexpr double width = 900;
  constexpr double height = 360;
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"900\" height=\"360\" "
      "viewBox=\"0 0 900 360\">\n"
      "<rect width=\"900\" height=\"360\" fill=\"#ffffff\"/>\n";
  if (!title.empty()) {
    out += "<text x=\"450\" y=\"22\" text-anchor=\"middle\" font-size=\"16\">" +
           xmlEscape(title) + "</text>\n";
  }
  out += panel(data.consonants, "consonants", 70, 520, 70, height - 120);
  out += panel(data.vowels, "vowels", 660, width - 690, 70, height - 120);
  out += "</svg>\n";
  return out;
}

}  // namespace report
}  // namespace ssprobe
