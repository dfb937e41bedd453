#include "bellnet/atomics.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bellnet {

namespace {

constexpr std::array<std::string_view, kAtomDim> kLevelNames = {"a", "b", "c", "d", "x", "z"};
constexpr std::array<std::string_view, 4> kOutcomeNames = {"A+", "A-", "B+", "B-"};
constexpr std::array<std::string_view, 4> kMessages = {"00", "01", "10", "11"};

constexpr double kPi = std::numbers::pi;

} // namespace

std::string_view
LevelName (Level l)
{
  return kLevelNames.at (Index (l));
}

std::optional<Level>
ParseLevel (std::string_view name)
{
  for (std::size_t i = 0; i < kLevelNames.size (); ++i)
    if (kLevelNames[i] == name)
      return static_cast<Level> (i);
  return std::nullopt;
}

std::string_view
OutcomeName (BellOutcome o)
{
  return kOutcomeNames.at (static_cast<unsigned> (o));
}

std::string_view
TwoBitMessage (BellOutcome o)
{
  return kMessages.at (static_cast<unsigned> (o));
}

std::optional<BellOutcome>
ParseOutcome (std::string_view name)
{
  for (unsigned i = 0; i < 4; ++i)
    if (kOutcomeNames[i] == name || kMessages[i] == name)
      return static_cast<BellOutcome> (i);
  return std::nullopt;
}

Level
MappedLevel (BellOutcome o)
{
  switch (o)
    {
    case BellOutcome::APlus:
      return Level::c;
    case BellOutcome::AMinus:
      return Level::b;
    case BellOutcome::BPlus:
      return Level::d;
    case BellOutcome::BMinus:
      return Level::a;
    }
  throw std::logic_error ("bad BellOutcome");
}

Operator
PulseSpec::Matrix () const
{
  return TwoLevelRotation (kAtomDim, Index (u), Index (v), area, phase);
}

PulseSpec
PulseSpec::Inverse () const
{
  return {u, v, area, std::remainder (phase + kPi, 2.0 * kPi), label + "^-1"};
}

Level
FollowLevel (const PulseSpec &pulse, Level l)
{
  // An odd multiple of pi swaps the pair; an even multiple returns it.
  const double halfTurns = pulse.area / kPi;
  const bool swaps = std::abs (std::remainder (halfTurns, 2.0)) > 0.5;
  if (!swaps)
    return l;
  if (l == pulse.u)
    return pulse.v;
  if (l == pulse.v)
    return pulse.u;
  return l;
}

StateVector
BellState (BellOutcome kind, const OscillatorFrame &frame, std::string name)
{
  const Complex theta = frame.Theta ();
  std::vector<Complex> amp (kAtomDim);
  const double sign = (kind == BellOutcome::APlus || kind == BellOutcome::BPlus) ? 1.0 : -1.0;
  const bool aManifold = kind == BellOutcome::APlus || kind == BellOutcome::AMinus;
  const Level upper = aManifold ? Level::c : Level::d;
  const Level lower = aManifold ? Level::b : Level::a;
  amp[Index (upper)] = 1.0;
  amp[Index (lower)] = sign * theta;
  return MakeState (SpaceLabel::Single (std::move (name), kAtomDim), std::move (amp));
}

std::vector<PulseSpec>
BellMapSequence (const OscillatorFrame &frame)
{
  // With theta = e^{-i Phi}, a pi/2 rotation on (upper, lower) with phase
  // Phi + pi/2 sends (|upper> + theta|lower>)/sqrt2 to |upper> and
  // (|upper> - theta|lower>)/sqrt2 to -theta|lower>. The oscillator tracks
  // the preparation frame, so both manifolds use the same phase.
  const double phase = std::remainder (frame.omegaMt + frame.xi + kPi / 2.0, 2.0 * kPi);
  return {
    {Level::c, Level::b, kPi / 2.0, phase, "map_A"},
    {Level::d, Level::a, kPi / 2.0, phase, "map_B"},
  };
}

PulseSpec
MakeNamedPulse (NamedPulse name)
{
  switch (name)
    {
    case NamedPulse::ShelveD:
      return {Level::d, Level::x, kPi, 0.0, "shelve_d"};
    case NamedPulse::UnshelveD: {
      PulseSpec p = MakeNamedPulse (NamedPulse::ShelveD).Inverse ();
      p.label = "unshelve_d";
      return p;
    }
    case NamedPulse::SwapAC:
      return {Level::a, Level::c, kPi, 0.0, "swap_ac"};
    case NamedPulse::SwapBD:
      return {Level::b, Level::d, kPi, 0.0, "swap_bd"};
    case NamedPulse::SwapAB:
      return {Level::a, Level::b, kPi, 0.0, "swap_ab"};
    case NamedPulse::PhaseFlipA:
      return {Level::a, Level::z, 2.0 * kPi, 0.0, "phase_flip_a"};
    }
  throw std::logic_error ("bad NamedPulse");
}

PulseSpec
MakeNamedPulse (std::string_view name)
{
  static const std::array<std::pair<std::string_view, NamedPulse>, 6> table = {{
    {"shelve_d", NamedPulse::ShelveD},
    {"unshelve_d", NamedPulse::UnshelveD},
    {"swap_ac", NamedPulse::SwapAC},
    {"swap_bd", NamedPulse::SwapBD},
    {"swap_ab", NamedPulse::SwapAB},
    {"phase_flip_a", NamedPulse::PhaseFlipA},
  }};
  for (const auto &[key, value] : table)
    if (key == name)
      return MakeNamedPulse (value);
  throw std::invalid_argument ("unknown pulse name '" + std::string (name) + "'");
}

StateVector
ApplyPulse (const StateVector &state, const PulseSpec &pulse, std::string_view target)
{
  return Apply (state, pulse.Matrix (), target);
}

StateVector
ApplySequence (const StateVector &state, const std::vector<PulseSpec> &pulses, std::string_view target)
{
  StateVector s = state;
  for (const auto &p : pulses)
    s = ApplyPulse (s, p, target);
  return s;
}

} // namespace bellnet
