#ifndef BELLNET_CAPTURE_H
#define BELLNET_CAPTURE_H

#include "bellnet/linkmath.h"
#include "bellnet/random.h"

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

/*
 * Two-node entanglement capture with coincidence heralding.
 *
 * One trial: each arm's photon survives the fiber with probability
 * s = 10^(-L/10). If both arrive the pair loads with a single joint draw
 * (etaJoint); a lone arrival loads with etaSingle. Each node then heralds:
 * an absorbed atom always does, an empty one only if all N fluorescence
 * cycles are missed (probability eps = p^N). A pair is declared when both
 * nodes herald in the same trial.
 */

namespace bellnet {

struct TrialRecord
{
  std::uint64_t trialIndex = 0;
  std::array<bool, 2> arrived{};
  std::array<bool, 2> absorbed{};
  std::array<bool, 2> heralded{};
  bool coincidence = false;
  bool truePair = false;

  bool operator== (const TrialRecord &) const = default;
};

struct PairFound
{
  std::uint64_t trialsUsed;
  TrialRecord record;
};

struct CampaignOptions
{
  std::uint64_t targetPairs = 1000;
  std::uint64_t masterSeed = 0;
  unsigned workers = 1;
  std::uint64_t maxTrialsPerPair = 1'000'000'000;
  bool keepTrials = false; ///< retain every TrialRecord for per-trial CSV output
};

struct CampaignStats
{
  std::uint64_t trialsTotal = 0;
  std::uint64_t pairsDeclared = 0;
  std::uint64_t pairsTrue = 0;
  double empiricalFidelity = 0.0;
  double meanTrialsPerPair = 0.0;
  double elapsedSimTime = 0.0;
  double confidenceHalfwidth = 0.0; ///< 95%, normal approximation, on empiricalFidelity
  std::uint64_t pairSearchesExhausted = 0;
  std::vector<TrialRecord> trials; ///< filled only with CampaignOptions::keepTrials

  bool Exhausted () const { return pairSearchesExhausted > 0; }
};

/// Seconds of simulated time one capture trial consumes.
double TrialDuration (const LinkBudget &budget);

TrialRecord RunTrial (const LinkBudget &budget, Rng &rng, std::uint64_t trialIndex = 0);

/// Repeats RunTrial until a coincidence; std::nullopt once maxTrials trials
/// have failed. When `sink` is given every trial is appended to it.
std::optional<PairFound> RunUntilPair (const LinkBudget &budget, Rng &rng, std::uint64_t maxTrials,
                                       std::vector<TrialRecord> *sink = nullptr);

/**
 * Runs targetPairs independent pair searches, search k drawing from
 * MakeStream(masterSeed, k). Searches are spread over `workers` threads and
 * folded in index order, so the result does not depend on the worker count.
 * Trial indices in `trials` are campaign-global.
 */
CampaignStats RunCampaign (const LinkBudget &budget, const CampaignOptions &opts);

} // namespace bellnet

#endif
