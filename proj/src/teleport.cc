#include "bellnet/teleport.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bellnet {

double
DetectorModel::Epsilon () const
{
  return std::pow (pMiss, static_cast<double> (nCycles));
}

void
DetectorModel::Validate () const
{
  if (!(pMiss >= 0.0 && pMiss <= 1.0))
    throw std::invalid_argument ("p_miss must lie in [0, 1]");
  if (nCycles == 0)
    throw std::invalid_argument ("n_cycles must be at least 1");
}

std::string_view
ProbeStepName (ProbeStep s)
{
  switch (s)
    {
    case ProbeStep::ProbeC1:
      return "probe_c_1";
    case ProbeStep::ProbeD:
      return "probe_d";
    case ProbeStep::ProbeC2:
      return "probe_c_2";
    }
  throw std::logic_error ("bad ProbeStep");
}

namespace {

constexpr std::array<std::size_t, 1> kProbeC = {Index (Level::c)};
constexpr std::array<std::size_t, 2> kProbeF1 = {Index (Level::c), Index (Level::d)};

std::vector<std::size_t>
Complement (std::initializer_list<Level> allowed)
{
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < kAtomDim; ++l)
    if (std::none_of (allowed.begin (), allowed.end (), [&] (Level a) { return Index (a) == l; }))
      out.push_back (l);
  return out;
}

void
RequireConfined (const StateVector &s, std::string_view atom, std::initializer_list<Level> allowed)
{
  const auto outside = Complement (allowed);
  if (Population (s, atom, outside) > kExactTol)
    throw std::invalid_argument (std::string (atom) + " has population outside its allowed levels");
}

BellOutcome
OutcomeForLevel (Level l)
{
  for (auto o : kAllOutcomes)
    if (MappedLevel (o) == l)
      return o;
  throw std::logic_error ("atom 2 ended outside the Bell-mapped levels");
}

struct ProbeDecision
{
  MeasureResult measured;
  bool detected;
};

// Shared body of the sampled and forced readouts. `decide` performs the
// projective probe and the detector draw for one step.
template <class Decide>
BellMeasurement
RunElimination (const StateVector &atoms23, Decide &&decide)
{
  if (atoms23.Space ().DimOf (kAtom2) != kAtomDim)
    throw std::invalid_argument ("atom2 must have the full level set");

  StateVector state = atoms23;
  std::vector<PulseSpec> history;
  FluorescenceLog log;

  auto pulse = [&] (NamedPulse name) {
    history.push_back (MakeNamedPulse (name));
    state = ApplyPulse (state, history.back (), kAtom2);
  };
  auto probe = [&] (ProbeStep step, std::span<const std::size_t> levels) {
    const double pop = Population (state, kAtom2, levels);
    ProbeDecision d = decide (state, levels, history);
    const bool fluoresced = d.measured.outcome == Projection::In;
    state = std::move (d.measured.collapsed);
    log.push_back ({step, pop, fluoresced, fluoresced && d.detected});
    return log.back ().detected;
  };

  BellOutcome reported;
  pulse (NamedPulse::ShelveD);
  if (probe (ProbeStep::ProbeC1, kProbeC))
    reported = BellOutcome::APlus;
  else
    {
      pulse (NamedPulse::UnshelveD);
      if (probe (ProbeStep::ProbeD, kProbeF1))
        reported = BellOutcome::BPlus;
      else
        {
          pulse (NamedPulse::SwapAC);
          pulse (NamedPulse::SwapBD);
          pulse (NamedPulse::ShelveD);
          reported = probe (ProbeStep::ProbeC2, kProbeC) ? BellOutcome::BMinus : BellOutcome::AMinus;
        }
    }

  // After the last collapse atom 2 sits in one bare level; walking the
  // pulses back recovers which mapped level (hence Bell state) it came from.
  std::optional<Level> finalLevel;
  for (std::size_t l = 0; l < kAtomDim; ++l)
    {
      const std::array<std::size_t, 1> one = {l};
      if (Population (state, kAtom2, one) > 1.0 - 1e-9)
        finalLevel = static_cast<Level> (l);
    }
  if (!finalLevel)
    throw std::logic_error ("atom 2 not in a definite level after readout");
  Level origin = *finalLevel;
  for (auto it = history.rbegin (); it != history.rend (); ++it)
    origin = FollowLevel (*it, origin);

  return {reported, OutcomeForLevel (origin), ConditionOn (state, kAtom2, Index (*finalLevel)),
          std::move (log)};
}

} // namespace

StateVector
PreparePhi1 (Complex alpha0, Complex beta0, const OscillatorFrame &frame)
{
  std::vector<Complex> amp (kAtomDim);
  amp[Index (Level::c)] = alpha0;
  amp[Index (Level::a)] = beta0 * frame.Theta ();
  return MakeState (SpaceLabel::Single (std::string (kAtom1), kAtomDim), std::move (amp));
}

StateVector
EntangledPairState ()
{
  SpaceLabel space ({{std::string (kAtom2), kAtomDim}, {std::string (kAtom3), kAtomDim}});
  std::vector<Complex> amp (space.TotalDim ());
  const std::array<std::size_t, 2> ab = {Index (Level::a), Index (Level::b)};
  const std::array<std::size_t, 2> ba = {Index (Level::b), Index (Level::a)};
  amp[space.FlatIndex (ab)] = 1.0;
  amp[space.FlatIndex (ba)] = 1.0;
  return MakeState (std::move (space), std::move (amp));
}

StateVector
PellizzariTransfer (const StateVector &joint)
{
  RequireConfined (joint, kAtom1, {Level::a, Level::c});
  RequireConfined (joint, kAtom2, {Level::a, Level::b});

  const auto &space = joint.Space ();
  const std::size_t p1 = space.Position (kAtom1);
  const std::size_t p2 = space.Position (kAtom2);

  using Pair = std::pair<Level, Level>;
  static const std::array<std::pair<Pair, Pair>, 6> moves = {{
    {{Level::c, Level::a}, {Level::c, Level::c}},
    {{Level::c, Level::b}, {Level::c, Level::d}},
    {{Level::a, Level::a}, {Level::c, Level::a}},
    {{Level::a, Level::b}, {Level::c, Level::b}},
    {{Level::c, Level::c}, {Level::a, Level::a}},
    {{Level::c, Level::d}, {Level::a, Level::b}},
  }};

  const auto amp = joint.Amplitudes ();
  std::vector<Complex> out (amp.size ());
  for (std::size_t idx = 0; idx < amp.size (); ++idx)
    {
      auto digits = space.Digits (idx);
      const Pair from{static_cast<Level> (digits[p1]), static_cast<Level> (digits[p2])};
      for (const auto &[src, dst] : moves)
        if (src == from)
          {
            digits[p1] = Index (dst.first);
            digits[p2] = Index (dst.second);
            break;
          }
      out[space.FlatIndex (digits)] = amp[idx];
    }
  return FromUnitaryImage (space, std::move (out));
}

std::array<Slice, 4>
BellDecomposition (const StateVector &atoms23, const OscillatorFrame &frame)
{
  std::array<Slice, 4> out;
  for (auto o : kAllOutcomes)
    {
      const StateVector bell = BellState (o, frame);
      out[static_cast<unsigned> (o)] = Contract (atoms23, kAtom2, bell.Amplitudes ());
    }
  return out;
}

std::array<double, 4>
BellBranchWeights (const StateVector &atoms23, const OscillatorFrame &frame)
{
  const auto slices = BellDecomposition (atoms23, frame);
  std::array<double, 4> w{};
  for (std::size_t i = 0; i < 4; ++i)
    w[i] = slices[i].Weight ();
  return w;
}

BellMeasurement
SequentialBellMeasurement (const StateVector &atoms23, const DetectorModel &det, Rng &rng)
{
  det.Validate ();
  const double eps = det.Epsilon ();
  return RunElimination (atoms23, [&] (const StateVector &s, std::span<const std::size_t> levels,
                                       const std::vector<PulseSpec> &) {
    MeasureResult m = ProjectMeasure (s, kAtom2, levels, rng);
    const bool detected = m.outcome == Projection::In && !Bernoulli (rng, eps);
    return ProbeDecision{std::move (m), detected};
  });
}

BellMeasurement
SequentialBellMeasurementForced (const StateVector &atoms23, BellOutcome branch)
{
  return RunElimination (atoms23, [&] (const StateVector &s, std::span<const std::size_t> levels,
                                       const std::vector<PulseSpec> &history) {
    Level where = MappedLevel (branch);
    for (const auto &p : history)
      where = FollowLevel (p, where);
    const bool in = std::find (levels.begin (), levels.end (), Index (where)) != levels.end ();
    MeasureResult m = ProjectMeasure (s, kAtom2, levels, in ? Projection::In : Projection::Out);
    return ProbeDecision{std::move (m), in};
  });
}

StateVector
BobCorrection (BellOutcome outcome, const StateVector &atom3)
{
  const std::string_view name = atom3.Space ().Subsystems ().at (0).name;
  if (atom3.Space ().Size () != 1)
    throw std::invalid_argument ("Bob's correction acts on a single atom");
  RequireConfined (atom3, name, {Level::a, Level::b});
  switch (outcome)
    {
    case BellOutcome::APlus:
      return atom3;
    case BellOutcome::AMinus:
      return ApplyPulse (atom3, MakeNamedPulse (NamedPulse::PhaseFlipA), name);
    case BellOutcome::BPlus:
      return ApplyPulse (atom3, MakeNamedPulse (NamedPulse::SwapAB), name);
    case BellOutcome::BMinus:
      return ApplySequence (
          atom3, {MakeNamedPulse (NamedPulse::SwapAB), MakeNamedPulse (NamedPulse::PhaseFlipA)}, name);
    }
  throw std::logic_error ("bad BellOutcome");
}

StateVector
TeleportTarget (Complex alpha0, Complex beta0)
{
  std::vector<Complex> amp (kAtomDim);
  amp[Index (Level::b)] = alpha0;
  amp[Index (Level::a)] = beta0;
  return MakeState (SpaceLabel::Single (std::string (kAtom3), kAtomDim), std::move (amp));
}

namespace {

// Preparation, transfer and Bell mapping; returns the atoms-2⊗3 state
// ready for readout.
StateVector
PrepareForReadout (Complex alpha0, Complex beta0, const OscillatorFrame &frame)
{
  const StateVector joint = Tensor (PreparePhi1 (alpha0, beta0, frame), EntangledPairState ());
  const StateVector transferred = PellizzariTransfer (joint);
  const std::array<std::size_t, 1> c = {Index (Level::c)};
  if (Population (transferred, kAtom1, c) < 1.0 - kExactTol)
    throw std::logic_error ("transfer did not leave atom 1 in |c>");
  const StateVector atoms23 = ConditionOn (transferred, kAtom1, Index (Level::c));
  return ApplySequence (atoms23, BellMapSequence (frame), kAtom2);
}

TeleportRecord
Finish (const BellMeasurement &m, Complex alpha0, Complex beta0)
{
  const StateVector corrected = BobCorrection (m.reported, m.atom3);
  return {m.trueBranch, m.reported, Fidelity (corrected, TeleportTarget (alpha0, beta0)), m.log};
}

} // namespace

TeleportRecord
TeleportOnce (Complex alpha0, Complex beta0, const OscillatorFrame &frame, const DetectorModel &det,
              Rng &rng)
{
  const StateVector ready = PrepareForReadout (alpha0, beta0, frame);
  return Finish (SequentialBellMeasurement (ready, det, rng), alpha0, beta0);
}

TeleportRecord
TeleportForced (Complex alpha0, Complex beta0, const OscillatorFrame &frame, BellOutcome branch)
{
  const StateVector ready = PrepareForReadout (alpha0, beta0, frame);
  return Finish (SequentialBellMeasurementForced (ready, branch), alpha0, beta0);
}

namespace {

// Classical walk of one bare level through the readout: `step` indexes the
// three probes; `weight` is the probability of the detect/miss history so far.
void
Enumerate (Level level, int step, double weight, double eps, std::array<double, 4> &row)
{
  auto follow = [&] (std::initializer_list<NamedPulse> pulses) {
    for (auto p : pulses)
      level = FollowLevel (MakeNamedPulse (p), level);
  };
  bool lit = false;
  BellOutcome onClick = BellOutcome::APlus;
  switch (step)
    {
    case 0:
      follow ({NamedPulse::ShelveD});
      lit = level == Level::c;
      onClick = BellOutcome::APlus;
      break;
    case 1:
      follow ({NamedPulse::UnshelveD});
      lit = level == Level::c || level == Level::d;
      onClick = BellOutcome::BPlus;
      break;
    case 2:
      follow ({NamedPulse::SwapAC, NamedPulse::SwapBD, NamedPulse::ShelveD});
      lit = level == Level::c;
      onClick = BellOutcome::BMinus;
      break;
    default:
      row[static_cast<unsigned> (BellOutcome::AMinus)] += weight;
      return;
    }
  if (lit)
    {
      row[static_cast<unsigned> (onClick)] += weight * (1.0 - eps);
      Enumerate (level, step + 1, weight * eps, eps, row);
    }
  else
    Enumerate (level, step + 1, weight, eps, row);
}

} // namespace

ConfusionMatrix
ComputeConfusionMatrix (const DetectorModel &det)
{
  det.Validate ();
  const double eps = det.Epsilon ();
  ConfusionMatrix m{};
  for (auto o : kAllOutcomes)
    Enumerate (MappedLevel (o), 0, 1.0, eps, m[static_cast<unsigned> (o)]);
  return m;
}

} // namespace bellnet
