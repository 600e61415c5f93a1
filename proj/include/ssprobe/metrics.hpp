#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssprobe/phonology.hpp"
#include "ssprobe/probe.hpp"

namespace ssprobe {

struct EvalResult {
  std::string modelId;
  ScoreType scoreType = ScoreType::geometric;
  double auc = 0.5;
  double tau = 0.0;
  std::size_t n = 0;
  std::size_t nRound = 0;
  std::size_t nSharp = 0;
  std::optional<double> pValue;
};

namespace metrics {

/// Pair statistics for a binary-labelled score list, computed by sorting.
/// `twiceU` is 2 x the Mann-Whitney U of the round class (ties count half),
/// kept doubled so it stays an exact integer.
struct PairCounts {
  std::size_t nRound = 0;
  std::size_t nSharp = 0;
  double twiceU = 0.0;
  double scoreTiePairs = 0.0;  // sum over tie groups of t(t-1)/2
};

PairCounts pairCounts(std::span<const double> scores, std::span<const Label> labels);

/// Mann-Whitney AUC with round as the positive class; equal scores get half
/// credit. Errors: LengthMismatch, OneClassOnly, InvalidArgument (non-finite).
double rocAuc(std::span<const double> scores, std::span<const Label> labels);

/// Kendall tau-b between scores and labels coded round=1, sharp=0.
/// Errors: as rocAuc, plus AllScoresTied.
double kendallTauB(std::span<const double> scores, std::span<const Label> labels);

/// Kendall tau-a, (C - D) / (n(n-1)/2), for comparison with tau-b.
double kendallTauA(std::span<const double> scores, std::span<const Label> labels);

enum class Sidedness { greater, twoSided };

/// Label-permutation test on the AUC. One-sided "greater":
/// p = (1 + #{shuffled AUC >= observed}) / (rounds + 1). Two-sided doubles
/// the smaller tail, capped at 1. Round r shuffles with a generator seeded
/// from (seed, r), so the result does not depend on evaluation order.
double permutationPValue(std::span<const double> scores, std::span<const Label> labels, int rounds,
                         std::uint64_t seed, Sidedness sidedness = Sidedness::greater);

struct EvalOptions {
  std::optional<int> permutationRounds;
  std::uint64_t seed = 0;
  Sidedness sidedness = Sidedness::greater;
};

EvalResult evaluate(const ScoreTable& table, const EvalOptions& options = {});

}  // namespace metrics
}  // namespace ssprobe
