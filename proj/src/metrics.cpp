#include "ssprobe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "ssprobe/error.hpp"

namespace ssprobe::metrics {
namespace {

void checkInputs(std::span<const double> scores, std::span<const Label> labels) {
  if (scores.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, std::to_string(scores.size()) + " scores vs " +
                                               std::to_string(labels.size()) + " labels");
  }
  for (double s : scores) {
    if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "non-finite score");
  }
}

void requireBothClasses(const PairCounts& pc) {
  if (pc.nRound == 0 || pc.nSharp == 0) {
    throw Error(ErrorCode::OneClassOnly, std::to_string(pc.nRound) + " round, " +
                                             std::to_string(pc.nSharp) + " sharp");
  }
}

// 2U over a fixed score order; `order` sorts scores ascending.
double twiceUFromOrder(std::span<const double> scores, std::span<const Label> labels,
                       std::span<const std::size_t> order) {
  // Walk tie groups; the rank sum of the round members uses average ranks,
  // doubled to stay integral: 2*avgRank = (first + last) with 1-based ranks.
  double twiceRankSum = 0.0;
  std::size_t nRound = 0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    std::size_t roundInGroup = 0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]] == Label::round) ++roundInGroup;
      ++j;
    }
    twiceRankSum += static_cast<double>(roundInGroup) * static_cast<double>((i + 1) + j);
    nRound += roundInGroup;
    i = j;
  }
  const double nr = static_cast<double>(nRound);
  return twiceRankSum - nr * (nr + 1.0);
}

double aucFromTwiceU(double twiceU, std::size_t nRound, std::size_t nSharp) {
  const double pairs = static_cast<double>(nRound) * static_cast<double>(nSharp);
  const double u = twiceU / 2.0;
  // Above one half, take the complement of the smaller side so that
  // auc(labels) + auc(swapped labels) == 1 exactly in floating point.
  if (twiceU <= pairs) return u / pairs;
  return 1.0 - (pairs - u) / pairs;
}

std::vector<std::size_t> sortedOrder(std::span<const double> scores) {
  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });
  return order;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

// Unbiased draw in [0, bound) by rejection; std::uniform_int_distribution is
// not specified bit-for-bit across standard libraries.
std::uint64_t boundedDraw(std::mt19937_64& gen, std::uint64_t bound) {
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = gen();
  } while (x >= limit);
  return x % bound;
}

}  // namespace

PairCounts pairCounts(std::span<const double> scores, std::span<const Label> labels) {
  checkInputs(scores, labels);
  PairCounts pc;
  for (Label l : labels) ++(l == Label::round ? pc.nRound : pc.nSharp);
  const auto order = sortedOrder(scores);
  pc.twiceU = twiceUFromOrder(scores, labels, order);
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double t = static_cast<double>(j - i);
    pc.scoreTiePairs += t * (t - 1.0) / 2.0;
    i = j;
  }
  return pc;
}

double rocAuc(std::span<const double> scores, std::span<const Label> labels) {
  const auto pc = pairCounts(scores, labels);
  requireBothClasses(pc);
  return aucFromTwiceU(pc.twiceU, pc.nRound, pc.nSharp);
}

double kendallTauB(std::span<const double> scores, std::span<const Label> labels) {
  const auto pc = pairCounts(scores, labels);
  requireBothClasses(pc);
  const double n = static_cast<double>(scores.size());
  const double nr = static_cast<double>(pc.nRound);
  const double ns = static_cast<double>(pc.nSharp);
  const double totalPairs = n * (n - 1.0) / 2.0;
  const double labelTiePairs = nr * (nr - 1.0) / 2.0 + ns * (ns - 1.0) / 2.0;
  const double scoreUntied = totalPairs - pc.scoreTiePairs;
  if (scoreUntied == 0.0) throw Error(ErrorCode::AllScoresTied, "every score is identical");
  // C - D over cross-class pairs equals 2U - nRound*nSharp; same-label pairs
  // contribute nothing.
  const double concordanceExcess = pc.twiceU - nr * ns;
  const double tau = concordanceExcess / std::sqrt(scoreUntied * (totalPairs - labelTiePairs));
  return std::clamp(tau, -1.0, 1.0);
}

double kendallTauA(std::span<const double> scores, std::span<const Label> labels) {
  const auto pc = pairCounts(scores, labels);
  requireBothClasses(pc);
  const double n = static_cast<double>(scores.size());
  const double nr = static_cast<double>(pc.nRound);
  const double ns = static_cast<double>(pc.nSharp);
  return (pc.twiceU - nr * ns) / (n * (n - 1.0) / 2.0);
}

double permutationPValue(std::span<const double> scores, std::span<const Label> labels, int rounds,
                         std::uint64_t seed, Sidedness sidedness) {
  if (rounds < 1) throw Error(ErrorCode::InvalidArgument, "permutation rounds must be >= 1");
  const auto observed = pairCounts(scores, labels);
  requireBothClasses(observed);
  const auto order = sortedOrder(scores);

  std::size_t atLeast = 0;
  std::size_t atMost = 0;
  std::vector<Label> shuffled(labels.begin(), labels.end());
  for (int r = 0; r < rounds; ++r) {
    std::copy(labels.begin(), labels.end(), shuffled.begin());
    std::mt19937_64 gen(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(r))));
    for (std::size_t i = shuffled.size(); i > 1; --i) {
      std::swap(shuffled[i - 1], shuffled[boundedDraw(gen, i)]);
    }
    const double twiceU = twiceUFromOrder(scores, shuffled, order);
    if (twiceU >= observed.twiceU) ++atLeast;
    if (twiceU <= observed.twiceU) ++atMost;
  }
  const double denom = static_cast<double>(rounds) + 1.0;
  const double upper = (1.0 + static_cast<double>(atLeast)) / denom;
  if (sidedness == Sidedness::greater) return upper;
  const double lower = (1.0 + static_cast<double>(atMost)) / denom;
  return std::min(1.0, 2.0 * std::min(upper, lower));
}

EvalResult evaluate(const ScoreTable& table, const EvalOptions& options) {
  const auto scores = table.scores();
  const auto labels = table.labels();
  EvalResult result;
  result.modelId = table.modelId;
  result.scoreType = table.scoreType;
  const auto pc = pairCounts(scores, labels);
  requireBothClasses(pc);
  result.n = scores.size();
  result.nRound = pc.nRound;
  result.nSharp = pc.nSharp;
  result.auc = rocAuc(scores, labels);
  result.tau = kendallTauB(scores, labels);
  if (options.permutationRounds) {
    result.pValue = permutationPValue(scores, labels, *options.permutationRounds, options.seed,
                                      options.sidedness);
  }
  return result;
}

}  // namespace ssprobe::metrics
