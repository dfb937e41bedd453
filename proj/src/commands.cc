#include "bellnet/commands.h"

#include "bellnet/capture.h"
#include "bellnet/report.h"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace bellnet {

namespace {

// Writes `text` to `path`; false on any I/O failure.
bool
WriteFile (const std::string &path, const std::string &text)
{
  std::ofstream f (path, std::ios::binary | std::ios::trunc);
  if (!f)
    return false;
  f << text;
  f.flush ();
  return static_cast<bool> (f);
}

int
Emit (const Scenario &sc, const std::string &csv, std::ostream &out, std::ostream &err)
{
  if (sc.outputPath.empty ())
    {
      out << csv;
      return kExitOk;
    }
  if (!WriteFile (sc.outputPath, csv))
    {
      err << "error: cannot write '" << sc.outputPath << "'\n";
      return kExitIo;
    }
  return kExitOk;
}

} // namespace

std::pair<Complex, Complex>
RandomQubit (Rng &rng)
{
  std::normal_distribution<double> g;
  for (;;)
    {
      const Complex a{g (rng), g (rng)};
      const Complex b{g (rng), g (rng)};
      const double n = std::sqrt (std::norm (a) + std::norm (b));
      if (n > 1e-12)
        return {a / n, b / n};
    }
}

int
CmdBudget (const Scenario &sc, std::ostream &out, std::ostream &err)
{
  std::string csv = BudgetCsvHeader ();
  try
    {
      sc.Validate ();
      if (!sc.sweep)
        csv += BudgetCsvRow (sc.budget);
      else
        for (double v : sc.sweep->Points ())
          {
            LinkBudget b = sc.budget;
            SetBudgetParameter (b, sc.sweep->parameter, v);
            csv += BudgetCsvRow (b);
          }
    }
  catch (const std::exception &e)
    {
      err << "error: " << e.what () << "\n";
      return kExitUsage;
    }
  return Emit (sc, csv, out, err);
}

int
CmdCapture (const Scenario &sc, std::ostream &out, std::ostream &err)
{
  try
    {
      sc.Validate ();
    }
  catch (const std::exception &e)
    {
      err << "error: " << e.what () << "\n";
      return kExitUsage;
    }
  if (sc.perTrialCsv && sc.outputPath.empty ())
    {
      err << "error: per-trial CSV requested without an output path\n";
      return kExitUsage;
    }

  CampaignOptions opts;
  opts.targetPairs = sc.targetPairs;
  opts.masterSeed = sc.seed;
  opts.workers = sc.workers;
  opts.maxTrialsPerPair = sc.maxTrials;
  opts.keepTrials = sc.perTrialCsv;
  const CampaignStats stats = RunCampaign (sc.budget, opts);

  if (sc.perTrialCsv)
    {
      std::string csv = TrialCsvHeader ();
      for (const auto &t : stats.trials)
        csv += TrialCsvRow (t);
      if (!WriteFile (sc.outputPath, csv))
        {
          err << "error: cannot write '" << sc.outputPath << "'\n";
          return kExitIo;
        }
    }
  out << "seed=" << sc.seed << "\n" << CampaignSummary (sc.budget, stats);
  if (stats.Exhausted ())
    {
      err << "error: " << stats.pairSearchesExhausted << " pair search(es) hit max_trials\n";
      return kExitExhausted;
    }
  return kExitOk;
}

int
CmdTeleport (const Scenario &sc, std::ostream &out, std::ostream &err)
{
  try
    {
      sc.Validate ();
    }
  catch (const std::exception &e)
    {
      err << "error: " << e.what () << "\n";
      return kExitUsage;
    }

  const std::size_t runs = sc.teleportInputs.Runs ();
  std::string csv = TeleportCsvHeader ();
  std::array<std::array<std::uint64_t, 4>, 4> counts{};
  std::array<std::uint64_t, 4> reportedHist{};
  double sumFidelity = 0.0;
  double minFidelity = 1.0;

  for (std::size_t k = 0; k < runs; ++k)
    {
      const std::uint64_t runSeed = DeriveSeed (sc.seed, k);
      Rng rng (runSeed);
      Complex alpha0, beta0;
      if (sc.teleportInputs.randomCount)
        std::tie (alpha0, beta0) = RandomQubit (rng);
      else
        {
          std::tie (alpha0, beta0) = sc.teleportInputs.explicitStates[k];
          const double n = std::sqrt (std::norm (alpha0) + std::norm (beta0));
          if (!(n > 0.0) || !std::isfinite (n))
            {
              err << "error: teleport input " << k << " cannot be normalized\n";
              return kExitUsage;
            }
          alpha0 /= n;
          beta0 /= n;
        }
      OscillatorFrame frame;
      if (sc.frame)
        frame = *sc.frame;
      else
        {
          std::uniform_real_distribution<double> phase (0.0, 2.0 * std::numbers::pi);
          frame = {phase (rng), phase (rng)};
        }
      const TeleportRecord rec = TeleportOnce (alpha0, beta0, frame, sc.detector, rng);
      csv += TeleportCsvRow (runSeed, alpha0, beta0, rec);
      ++counts[static_cast<unsigned> (rec.outcome)][static_cast<unsigned> (rec.reported)];
      ++reportedHist[static_cast<unsigned> (rec.reported)];
      sumFidelity += rec.fidelity;
      minFidelity = std::min (minFidelity, rec.fidelity);
    }

  if (!sc.outputPath.empty () && !WriteFile (sc.outputPath, csv))
    {
      err << "error: cannot write '" << sc.outputPath << "'\n";
      return kExitIo;
    }

  out << "seed=" << sc.seed << "\n";
  out << "runs=" << runs << "\n";
  out << fmt::format ("mean_fidelity={:.12f}\n", sumFidelity / static_cast<double> (runs));
  out << fmt::format ("min_fidelity={:.12f}\n", minFidelity);
  out << "epsilon=" << FormatDouble (sc.detector.Epsilon ()) << "\n";
  for (auto o : kAllOutcomes)
    out << "reported_count[" << OutcomeName (o) << "]=" << reportedHist[static_cast<unsigned> (o)] << "\n";
  if (sc.detector.pMiss > 0.0)
    {
      const ConfusionMatrix analytic = ComputeConfusionMatrix (sc.detector);
      for (auto t : kAllOutcomes)
        {
          std::uint64_t rowTotal = 0;
          for (auto n : counts[static_cast<unsigned> (t)])
            rowTotal += n;
          for (auto r : kAllOutcomes)
            {
              const auto ti = static_cast<unsigned> (t), ri = static_cast<unsigned> (r);
              const double freq = rowTotal ? static_cast<double> (counts[ti][ri]) / rowTotal : 0.0;
              out << "confusion[" << OutcomeName (t) << "][" << OutcomeName (r)
                  << "]=" << FormatDouble (freq) << " analytic=" << FormatDouble (analytic[ti][ri])
                  << " count=" << counts[ti][ri] << "\n";
            }
        }
    }
  return kExitOk;
}

} // namespace bellnet
