// bellnet: link-budget arithmetic, capture campaigns and teleportation runs.
//
//   bellnet budget   [--sweep loss_db:0:30:31] [--out budget.csv]
//   bellnet capture  --seed 42 --pairs 10000 [--workers 4] [--per-trial-csv --out trials.csv]
//   bellnet teleport --seed 7 --runs 1000 [--out runs.csv]
//
// Every subcommand starts from the built-in scenario, overlays --config, then
// the individual flags. --print-config dumps the merged scenario and exits.

#include "bellnet/commands.h"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

namespace {

struct Flags
{
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<std::uint64_t> count; // --trials / --pairs / --runs
  std::optional<std::string> sweep;
  bool perTrialCsv = false;
  bool printConfig = false;
  std::optional<unsigned> workers;
  std::optional<std::uint64_t> maxTrials;
  std::optional<double> lossDb, pMiss, etaJoint, etaSingle, tFluor, overhead;
  std::optional<unsigned> nCycles;
};

void
AddCommon (CLI::App *cmd, Flags &f)
{
  cmd->add_option ("--config", f.config, "Scenario file (YAML)");
  cmd->add_option ("--seed", f.seed, "Master seed");
  cmd->add_option ("--out", f.out, "CSV output path");
  cmd->add_option ("--sweep", f.sweep, "name:start:stop:steps");
  cmd->add_flag ("--print-config", f.printConfig, "Print the effective scenario and exit");
  cmd->add_option ("--loss-db", f.lossDb, "Fiber loss per arm (dB)");
  cmd->add_option ("--p-miss", f.pMiss, "Per-cycle detector miss probability");
  cmd->add_option ("--n-cycles", f.nCycles, "Cycling-transition repetitions");
  cmd->add_option ("--eta-joint", f.etaJoint, "Joint loading probability");
  cmd->add_option ("--eta-single", f.etaSingle, "Single-arrival loading probability");
  cmd->add_option ("--t-fluor", f.tFluor, "Seconds per fluorescence cycle");
  cmd->add_option ("--overhead", f.overhead, "Extra seconds per capture trial");
}

bellnet::Scenario
Merge (const Flags &f, const std::string &subcommand)
{
  using namespace bellnet;
  Scenario sc = f.config.empty () ? DefaultScenario () : LoadScenario (f.config);
  if (f.seed)
    sc.seed = *f.seed;
  if (f.out)
    sc.outputPath = *f.out;
  if (f.sweep)
    sc.sweep = ParseSweep (*f.sweep);
  if (f.lossDb)
    sc.budget.lossDb = *f.lossDb;
  if (f.pMiss)
    sc.budget.pMiss = sc.detector.pMiss = *f.pMiss;
  if (f.nCycles)
    sc.budget.nCycles = sc.detector.nCycles = *f.nCycles;
  if (f.etaJoint)
    sc.budget.etaJoint = *f.etaJoint;
  if (f.etaSingle)
    sc.budget.etaSingle = *f.etaSingle;
  if (f.tFluor)
    sc.budget.tFluor = *f.tFluor;
  if (f.overhead)
    sc.budget.trialOverhead = *f.overhead;
  if (f.workers)
    sc.workers = *f.workers;
  if (f.maxTrials)
    sc.maxTrials = *f.maxTrials;
  if (f.perTrialCsv)
    sc.perTrialCsv = true;
  if (f.count)
    {
      if (subcommand == "capture")
        sc.targetPairs = *f.count;
      else if (subcommand == "teleport")
        sc.teleportInputs = TeleportInputs{*f.count, {}};
    }
  sc.Validate ();
  return sc;
}

} // namespace

int
main (int argc, char **argv)
{
  CLI::App app{"Entanglement capture and atomic teleportation simulator"};
  app.require_subcommand (1);
  Flags f;

  auto *budget = app.add_subcommand ("budget", "Closed-form link budget table");
  AddCommon (budget, f);

  auto *capture = app.add_subcommand ("capture", "Monte-Carlo capture campaign");
  AddCommon (capture, f);
  capture->add_option ("--pairs,--trials", f.count, "Number of pairs to collect");
  capture->add_option ("--workers", f.workers, "Worker threads");
  capture->add_option ("--max-trials", f.maxTrials, "Give up on a pair after this many trials");
  capture->add_flag ("--per-trial-csv", f.perTrialCsv, "Write every trial to --out");

  auto *teleport = app.add_subcommand ("teleport", "State-vector teleportation runs");
  AddCommon (teleport, f);
  teleport->add_option ("--runs", f.count, "Number of random input states");

  try
    {
      app.parse (argc, argv);
    }
  catch (const CLI::ParseError &e)
    {
      const int rc = app.exit (e);
      return rc == 0 ? bellnet::kExitOk : bellnet::kExitUsage;
    }

  const std::string name = app.get_subcommands ().front ()->get_name ();
  bellnet::Scenario sc;
  try
    {
      sc = Merge (f, name);
    }
  catch (const std::exception &e)
    {
      std::cerr << "error: " << e.what () << "\n";
      return bellnet::kExitUsage;
    }

  if (f.printConfig)
    {
      std::cout << bellnet::SerializeScenario (sc);
      return bellnet::kExitOk;
    }

  if (name == "budget")
    return bellnet::CmdBudget (sc, std::cout, std::cerr);
  if (name == "capture")
    return bellnet::CmdCapture (sc, std::cout, std::cerr);
  return bellnet::CmdTeleport (sc, std::cout, std::cerr);
}
