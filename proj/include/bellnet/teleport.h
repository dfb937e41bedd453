#ifndef BELLNET_TELEPORT_H
#define BELLNET_TELEPORT_H

#include "bellnet/atomics.h"

#include <array>
#include <string_view>
#include <vector>

/*
 * Atomic teleportation from atom 1 (Alice) to atom 3 (Bob) through the
 * entangled pair (atom 2, atom 3), with a complete Bell measurement on
 * atom 2 done by sequential elimination.
 *
 * Subsystem names are fixed: "atom1", "atom2", "atom3", each kAtomDim levels.
 */

namespace bellnet {

inline constexpr std::string_view kAtom1 = "atom1";
inline constexpr std::string_view kAtom2 = "atom2";
inline constexpr std::string_view kAtom3 = "atom3";

/// Per-cycle miss probability p and cycle count N of the fluorescence probe.
struct DetectorModel
{
  double pMiss = 0.0;
  unsigned nCycles = 1;

  /// Probability that a fluorescing atom goes unnoticed: p^N.
  double Epsilon () const;
  /// Throws std::invalid_argument when p is outside [0,1] or N is 0.
  void Validate () const;
  bool operator== (const DetectorModel &) const = default;
};

enum class ProbeStep
{
  ProbeC1,
  ProbeD,
  ProbeC2,
};

std::string_view ProbeStepName (ProbeStep s); // probe_c_1, probe_d, probe_c_2

struct FluorescenceEntry
{
  ProbeStep step;
  double truePopulation; ///< population of the probed levels just before the probe
  bool fluoresced;
  bool detected; ///< implies fluoresced
};

using FluorescenceLog = std::vector<FluorescenceEntry>;

struct BellMeasurement
{
  BellOutcome reported;
  BellOutcome trueBranch; ///< branch atom 2 actually collapsed into
  StateVector atom3;      ///< Bob's atom after the collapse
  FluorescenceLog log;
};

struct TeleportRecord
{
  BellOutcome outcome;  ///< true collapsed branch
  BellOutcome reported; ///< what Alice's detector told her
  double fidelity;
  FluorescenceLog log;
};

using ConfusionMatrix = std::array<std::array<double, 4>, 4>;

/// alpha0|c> + beta0 theta|a> on atom 1, renormalized.
StateVector PreparePhi1 (Complex alpha0, Complex beta0, const OscillatorFrame &frame);

/// (|a>2|b>3 + |b>2|a>3)/sqrt2
StateVector EntangledPairState ();

/**
 * Coherence transfer from atom 1 to atom 2, modeled as the permutation
 *
 *   c1 a2 -> c1 c2     a1 a2 -> c1 a2
 *   c1 b2 -> c1 d2     a1 b2 -> c1 b2
 *
 * completed on the rest of the (atom1, atom2) basis by c1 c2 -> a1 a2,
 * c1 d2 -> a1 b2. Throws std::invalid_argument if atom 1 has population
 * outside {a, c} or atom 2 outside {a, b}.
 */
StateVector PellizzariTransfer (const StateVector &joint);

/// <Bell_k|_atom2 applied to an atoms-2⊗3 state, for k in kAllOutcomes order.
std::array<Slice, 4> BellDecomposition (const StateVector &atoms23, const OscillatorFrame &frame);
std::array<double, 4> BellBranchWeights (const StateVector &atoms23, const OscillatorFrame &frame);

/**
 * Sequential-elimination readout of atom 2, which must already have had
 * BellMapSequence applied:
 *
 *   1. shelve d, probe c          -> detection reports A+
 *   2. unshelve d, probe {c, d}   -> detection reports B+
 *   3. swap a<->c, b<->d, shelve d, probe c -> detection reports B-
 *   4. otherwise                  -> A-
 *
 * Every probe collapses the state; a fluorescing atom is missed with
 * probability det.Epsilon(); an empty probe never clicks.
 */
BellMeasurement SequentialBellMeasurement (const StateVector &atoms23, const DetectorModel &det, Rng &rng);

/// Same sequence with every probe collapse forced to follow `branch` and a
/// perfect detector.
BellMeasurement SequentialBellMeasurementForced (const StateVector &atoms23, BellOutcome branch);

/// Bob's unitary for Alice's two-bit message. Throws std::invalid_argument if
/// atom 3 has population outside {a, b}.
StateVector BobCorrection (BellOutcome outcome, const StateVector &atom3);

/// alpha0|b> + beta0|a> on atom 3.
StateVector TeleportTarget (Complex alpha0, Complex beta0);

TeleportRecord TeleportOnce (Complex alpha0, Complex beta0, const OscillatorFrame &frame,
                             const DetectorModel &det, Rng &rng);

TeleportRecord TeleportForced (Complex alpha0, Complex beta0, const OscillatorFrame &frame,
                               BellOutcome branch);

/// Exact P(reported | true) by enumerating detect/miss at each probe.
/// Indexed [true][reported] in kAllOutcomes order.
ConfusionMatrix ComputeConfusionMatrix (const DetectorModel &det);

} // namespace bellnet

#endif
