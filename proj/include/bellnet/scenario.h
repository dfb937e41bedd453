#ifndef BELLNET_SCENARIO_H
#define BELLNET_SCENARIO_H

#include "bellnet/linkmath.h"
#include "bellnet/qcore.h"
#include "bellnet/teleport.h"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace bellnet {

/// Bad scenario text, bad flag values, or inconsistent settings.
class ConfigError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

struct SweepSpec
{
  std::string parameter; ///< loss_db, p_miss, n_cycles, eta_joint, eta_single, t_fluor, trial_overhead
  double start = 0.0;
  double stop = 0.0;
  unsigned steps = 1;

  /// Evenly spaced points, endpoints included. Throws ConfigError on bad bounds.
  std::vector<double> Points () const;
  bool operator== (const SweepSpec &) const = default;
};

bool IsBudgetParameter (std::string_view name);

/// Parses "name:start:stop:steps".
SweepSpec ParseSweep (std::string_view text);

/// Sets the named budget field; n_cycles is rounded to the nearest integer.
void SetBudgetParameter (LinkBudget &budget, std::string_view name, double value);

struct TeleportInputs
{
  std::optional<std::uint64_t> randomCount;             ///< "random(count)"
  std::vector<std::pair<Complex, Complex>> explicitStates; ///< (alpha0, beta0) list

  std::size_t Runs () const { return randomCount ? *randomCount : explicitStates.size (); }
  bool operator== (const TeleportInputs &) const = default;
};

struct Scenario
{
  LinkBudget budget;
  DetectorModel detector{0.75, 30};
  TeleportInputs teleportInputs{1000, {}};
  std::optional<OscillatorFrame> frame; ///< nullopt: fresh random frame per run
  std::uint64_t seed = 42;
  std::string outputPath;
  std::optional<SweepSpec> sweep;

  std::uint64_t targetPairs = 1000;
  std::uint64_t maxTrials = 1'000'000'000;
  unsigned workers = 1;
  bool perTrialCsv = false;

  /// Checks the budget, the detector, and that both agree on (p, N).
  void Validate () const;
  bool operator== (const Scenario &) const = default;
};

/// L = 15 dB, p = 0.75, N = 30, t_fl = 30 ns, eta = 1, seed 42.
Scenario DefaultScenario ();

/// Reads the hierarchical text form (YAML). Keys absent from the text keep
/// the default-scenario values, except `seed`, which is mandatory.
Scenario ParseScenario (std::string_view text);
Scenario LoadScenario (const std::string &path);

/// Inverse of ParseScenario; doubles written with 17 significant digits.
std::string SerializeScenario (const Scenario &scenario);

} // namespace bellnet

#endif
