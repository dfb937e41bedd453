#include "bellnet/report.h"

#include <fmt/format.h>

namespace bellnet {

std::string
FormatDouble (double v)
{
  return fmt::format ("{:.17g}", v);
}

std::string
BudgetCsvHeader ()
{
  return "loss_db,p_miss,n_cycles,eta_joint,eta_single,t_fluor,lambda,epsilon,snr_db,expected_trials,"
         "pair_time_s,herald_fidelity\n";
}

std::string
BudgetCsvRow (const LinkBudget &b)
{
  b.Validate ();
  const double eps = b.Epsilon ();
  const auto snr = SnrDb (eps);
  return fmt::format ("{},{},{},{},{},{},{},{},{},{},{},{}\n", FormatDouble (b.lossDb), FormatDouble (b.pMiss),
                      b.nCycles, FormatDouble (b.etaJoint), FormatDouble (b.etaSingle), FormatDouble (b.tFluor),
                      FormatDouble (b.Survival ()), FormatDouble (eps),
                      snr ? FormatDouble (*snr) : std::string ("unbounded"),
                      FormatDouble (ExpectedTrials (b.lossDb)), FormatDouble (PairGenerationTime (b)),
                      FormatDouble (HeraldFidelity (b)));
}

std::string
TrialCsvHeader ()
{
  return "trial_index,arrived_0,arrived_1,absorbed_0,absorbed_1,heralded_0,heralded_1,coincidence,"
         "true_pair\n";
}

std::string
TrialCsvRow (const TrialRecord &r)
{
  auto b = [] (bool v) { return v ? 1 : 0; };
  return fmt::format ("{},{},{},{},{},{},{},{},{}\n", r.trialIndex, b (r.arrived[0]), b (r.arrived[1]),
                      b (r.absorbed[0]), b (r.absorbed[1]), b (r.heralded[0]), b (r.heralded[1]),
                      b (r.coincidence), b (r.truePair));
}

std::string
TeleportCsvHeader ()
{
  return "seed,alpha0_re,alpha0_im,beta0_re,beta0_im,true_branch,reported_branch,fidelity\n";
}

std::string
TeleportCsvRow (std::uint64_t seed, Complex alpha0, Complex beta0, const TeleportRecord &r)
{
  return fmt::format ("{},{},{},{},{},{},{},{}\n", seed, FormatDouble (alpha0.real ()),
                      FormatDouble (alpha0.imag ()), FormatDouble (beta0.real ()), FormatDouble (beta0.imag ()),
                      OutcomeName (r.outcome), OutcomeName (r.reported), FormatDouble (r.fidelity));
}

std::string
CampaignSummary (const LinkBudget &budget, const CampaignStats &s)
{
  std::string out;
  auto kv = [&] (std::string_view key, const std::string &value) {
    out += fmt::format ("{}={}\n", key, value);
  };
  kv ("trials_total", std::to_string (s.trialsTotal));
  kv ("pairs_declared", std::to_string (s.pairsDeclared));
  kv ("pairs_true", std::to_string (s.pairsTrue));
  kv ("empirical_fidelity", FormatDouble (s.empiricalFidelity));
  kv ("confidence_halfwidth", FormatDouble (s.confidenceHalfwidth));
  kv ("mean_trials_per_pair", FormatDouble (s.meanTrialsPerPair));
  kv ("elapsed_sim_time", FormatDouble (s.elapsedSimTime));
  kv ("sim_time_per_pair",
      FormatDouble (s.pairsDeclared ? s.elapsedSimTime / static_cast<double> (s.pairsDeclared) : 0.0));
  kv ("pair_searches_exhausted", std::to_string (s.pairSearchesExhausted));
  kv ("analytic_herald_fidelity", FormatDouble (HeraldFidelity (budget)));
  kv ("analytic_mean_trials_per_pair", FormatDouble (1.0 / CoincidenceProb (budget)));
  kv ("analytic_pair_time", FormatDouble (PairGenerationTime (budget)));
  return out;
}

} // namespace bellnet
