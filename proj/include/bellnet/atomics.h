#ifndef BELLNET_ATOMICS_H
#define BELLNET_ATOMICS_H

#include "bellnet/qcore.h"

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

/*
 * Rubidium 5S1/2 ground-sublevel model used by every atom in the network.
 *
 *   a = |F=2, mF=-1>    b = |F=2, mF=+1>
 *   c = |F=1, mF=-1>    d = |F=1, mF=+1>
 *   x = shelf level in the F=2 manifold
 *   z = |F=1, mF=0>, the auxiliary level for the 2pi phase flip
 *
 * Excited states are adiabatically eliminated: all coherent control is an
 * effective two-level Raman rotation in the rotating frame of the shared
 * oscillator.
 */

namespace bellnet {

enum class Level : std::size_t
{
  a = 0,
  b = 1,
  c = 2,
  d = 3,
  x = 4,
  z = 5,
};

inline constexpr std::size_t kAtomDim = 6;

constexpr std::size_t
Index (Level l)
{
  return static_cast<std::size_t> (l);
}

std::string_view LevelName (Level l);
std::optional<Level> ParseLevel (std::string_view name);

/// The four outcomes of the complete Bell measurement on atom 2.
/// Declaration order is the two-bit message order 00, 01, 10, 11.
enum class BellOutcome : unsigned
{
  APlus = 0,
  AMinus = 1,
  BPlus = 2,
  BMinus = 3,
};

inline constexpr std::array<BellOutcome, 4> kAllOutcomes = {
  BellOutcome::APlus, BellOutcome::AMinus, BellOutcome::BPlus, BellOutcome::BMinus};

std::string_view OutcomeName (BellOutcome o);  // "A+", "A-", "B+", "B-"
std::string_view TwoBitMessage (BellOutcome o); // "00".."11"
std::optional<BellOutcome> ParseOutcome (std::string_view name);

/// Bare level each Bell state is carried to by the mapping pulses.
Level MappedLevel (BellOutcome o);

/// Accumulated oscillator phase; theta = exp[-i(omega_M t + xi)].
struct OscillatorFrame
{
  double omegaMt = 0.0;
  double xi = 0.0;

  Complex Theta () const { return std::polar (1.0, -(omegaMt + xi)); }
  bool operator== (const OscillatorFrame &) const = default;
};

struct PulseSpec
{
  Level u;
  Level v;
  double area;
  double phase;
  std::string label;

  Operator Matrix () const;
  /// Same pair, opposite rotation: R(area, phase + pi) = R(area, phase)^-1.
  PulseSpec Inverse () const;
};

/// Level that a population-carrying basis state `l` ends up in after `pulse`.
/// Only meaningful for pi (swap) and 2pi (sign) pulses.
Level FollowLevel (const PulseSpec &pulse, Level l);

/// Single-atom Bell basis vectors on atom 2's ground sublevels:
///   A± = (|c> ± theta|b>)/sqrt2,  B± = (|d> ± theta|a>)/sqrt2
StateVector BellState (BellOutcome kind, const OscillatorFrame &frame, std::string name = "atom");

/// The two pi/2 pulses on (c,b) and (d,a) that take A+, A-, B+, B- to
/// c, b, d, a respectively (each up to its own phase).
std::vector<PulseSpec> BellMapSequence (const OscillatorFrame &frame);

enum class NamedPulse
{
  ShelveD,
  UnshelveD,
  SwapAC,
  SwapBD,
  SwapAB,
  PhaseFlipA,
};

PulseSpec MakeNamedPulse (NamedPulse name);
/// Accepts shelve_d, unshelve_d, swap_ac, swap_bd, swap_ab, phase_flip_a.
/// Throws std::invalid_argument for anything else.
PulseSpec MakeNamedPulse (std::string_view name);

StateVector ApplyPulse (const StateVector &state, const PulseSpec &pulse, std::string_view target);
StateVector ApplySequence (const StateVector &state, const std::vector<PulseSpec> &pulses,
                           std::string_view target);

} // namespace bellnet

#endif
