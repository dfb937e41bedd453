#ifndef BELLNET_COMMANDS_H
#define BELLNET_COMMANDS_H

#include "bellnet/scenario.h"

#include <cstdint>
#include <iosfwd>
#include <utility>

namespace bellnet {

/// Process exit codes shared by every subcommand.
enum ExitCode : int
{
  kExitOk = 0,
  kExitUsage = 1,
  kExitExhausted = 2,
  kExitIo = 3,
};

/// One budget CSV row per sweep point (a single row without a sweep). The
/// CSV goes to scenario.outputPath, or to `out` when that is empty.
int CmdBudget (const Scenario &scenario, std::ostream &out, std::ostream &err);

/// Runs the capture campaign; key=value summary on `out`. With perTrialCsv
/// the per-trial CSV is written to scenario.outputPath.
int CmdCapture (const Scenario &scenario, std::ostream &out, std::ostream &err);

/// One teleportation per input; per-run CSV to scenario.outputPath when set,
/// summary (mean fidelity, histogram, confusion matrices) on `out`.
int CmdTeleport (const Scenario &scenario, std::ostream &out, std::ostream &err);

/// Normalized (alpha0, beta0), uniform on the Bloch sphere.
std::pair<Complex, Complex> RandomQubit (Rng &rng);

} // namespace bellnet

#endif
