#include "bellnet/capture.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace bellnet {

double
TrialDuration (const LinkBudget &budget)
{
  return budget.nCycles * budget.tFluor + budget.trialOverhead;
}

TrialRecord
RunTrial (const LinkBudget &budget, Rng &rng, std::uint64_t trialIndex)
{
  const double s = budget.Survival ();
  const double eps = budget.Epsilon ();

  TrialRecord r;
  r.trialIndex = trialIndex;
  r.arrived = {Bernoulli (rng, s), Bernoulli (rng, s)};
  if (r.arrived[0] && r.arrived[1])
    {
      const bool loaded = Bernoulli (rng, budget.etaJoint);
      r.absorbed = {loaded, loaded};
    }
  else
    for (int i = 0; i < 2; ++i)
      r.absorbed[i] = r.arrived[i] && Bernoulli (rng, budget.etaSingle);

  for (int i = 0; i < 2; ++i)
    r.heralded[i] = r.absorbed[i] || Bernoulli (rng, eps);
  r.coincidence = r.heralded[0] && r.heralded[1];
  r.truePair = r.absorbed[0] && r.absorbed[1];
  return r;
}

std::optional<PairFound>
RunUntilPair (const LinkBudget &budget, Rng &rng, std::uint64_t maxTrials, std::vector<TrialRecord> *sink)
{
  if (maxTrials == 0)
    throw std::invalid_argument ("max_trials must be at least 1");
  budget.Validate ();
  for (std::uint64_t t = 0; t < maxTrials; ++t)
    {
      TrialRecord r = RunTrial (budget, rng, t);
      if (sink)
        sink->push_back (r);
      if (r.coincidence)
        return PairFound{t + 1, r};
    }
  return std::nullopt;
}

namespace {

struct SearchResult
{
  std::uint64_t trials = 0;
  bool found = false;
  bool truePair = false;
  std::vector<TrialRecord> log;
};

} // namespace

CampaignStats
RunCampaign (const LinkBudget &budget, const CampaignOptions &opts)
{
  if (opts.targetPairs == 0)
    throw std::invalid_argument ("target_pairs must be at least 1");
  budget.Validate ();

  std::vector<SearchResult> results (opts.targetPairs);
  auto search = [&] (std::uint64_t k) {
    Rng rng = MakeStream (opts.masterSeed, k);
    SearchResult &out = results[k];
    auto found = RunUntilPair (budget, rng, opts.maxTrialsPerPair, opts.keepTrials ? &out.log : nullptr);
    if (found)
      {
        out.trials = found->trialsUsed;
        out.found = true;
        out.truePair = found->record.truePair;
      }
    else
      out.trials = opts.maxTrialsPerPair;
  };

  const unsigned workers = std::max (1u, std::min<unsigned> (opts.workers, opts.targetPairs));
  if (workers == 1)
    for (std::uint64_t k = 0; k < opts.targetPairs; ++k)
      search (k);
  else
    {
      // Strided partition; each slot of `results` is written by one thread only.
      std::vector<std::jthread> pool;
      for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back ([&, w] {
          for (std::uint64_t k = w; k < opts.targetPairs; k += workers)
            search (k);
        });
    }

  CampaignStats stats;
  for (auto &r : results)
    {
      if (opts.keepTrials)
        for (auto &rec : r.log)
          {
            rec.trialIndex += stats.trialsTotal;
            stats.trials.push_back (rec);
          }
      stats.trialsTotal += r.trials;
      if (r.found)
        {
          ++stats.pairsDeclared;
          stats.pairsTrue += r.truePair ? 1 : 0;
        }
      else
        ++stats.pairSearchesExhausted;
    }

  stats.elapsedSimTime = static_cast<double> (stats.trialsTotal) * TrialDuration (budget);
  if (stats.pairsDeclared > 0)
    {
      const double n = static_cast<double> (stats.pairsDeclared);
      stats.empiricalFidelity = static_cast<double> (stats.pairsTrue) / n;
      stats.meanTrialsPerPair = static_cast<double> (stats.trialsTotal) / n;
      const double f = stats.empiricalFidelity;
      stats.confidenceHalfwidth = 1.959963984540054 * std::sqrt (f * (1.0 - f) / n);
    }
  return stats;
}

} // namespace bellnet
