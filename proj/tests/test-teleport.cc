#include "bellnet/teleport.h"

#include "oracles.h"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace bellnet;

namespace {

constexpr double kPi = std::numbers::pi;
const double kInvRt2 = 1.0 / std::sqrt (2.0);

SpaceLabel
Atoms23 ()
{
  return SpaceLabel ({{std::string (kAtom2), kAtomDim}, {std::string (kAtom3), kAtomDim}});
}

// Atom 2 in a bare level, atom 3 in |b>.
StateVector
Atom2In (Level l)
{
  return BasisState (Atoms23 (), {Index (l), Index (Level::b)});
}

StateVector
Atom3 (Complex onB, Complex onA)
{
  std::vector<Complex> amp (kAtomDim);
  amp[Index (Level::b)] = onB;
  amp[Index (Level::a)] = onA;
  return MakeState (SpaceLabel::Single (std::string (kAtom3), kAtomDim), amp);
}

Complex
At (const Slice &s, Level l)
{
  return s.amplitudes.at (Index (l));
}

// atoms 2⊗3 state just before readout
StateVector
ReadyState (Complex a0, Complex b0, const OscillatorFrame &f)
{
  auto t = PellizzariTransfer (Tensor (PreparePhi1 (a0, b0, f), EntangledPairState ()));
  return ApplySequence (ConditionOn (t, kAtom1, Index (Level::c)), BellMapSequence (f), kAtom2);
}

} // namespace

TEST_CASE ("PreparePhi1")
{
  auto c = PreparePhi1 (1.0, 0.0, {0.7, 0.1});
  CHECK (std::norm (c.Amplitude (Index (Level::c))) == doctest::Approx (1.0));
  auto a = PreparePhi1 (0.0, 1.0, {});
  CHECK (std::abs (a.Amplitude (Index (Level::a)) - 1.0) < kExactTol);
  // theta = e^{-i pi/2} = -i
  auto mix = PreparePhi1 (kInvRt2, kInvRt2, {0.0, kPi / 2});
  CHECK (std::abs (mix.Amplitude (Index (Level::c)) - kInvRt2) < kExactTol);
  CHECK (std::abs (mix.Amplitude (Index (Level::a)) - Complex (0.0, -kInvRt2)) < kExactTol);
  CHECK_THROWS (PreparePhi1 (0.0, 0.0, {}));
}

TEST_CASE ("EntangledPairState")
{
  auto psi = EntangledPairState ();
  CHECK (std::abs (psi.Amplitude ({Index (Level::a), Index (Level::b)}) - kInvRt2) < kExactTol);
  const std::array<std::size_t, 1> a = {Index (Level::a)}, b = {Index (Level::b)};
  CHECK (Population (psi, kAtom2, a) == doctest::Approx (0.5));
  CHECK (Population (psi, kAtom2, b) == doctest::Approx (0.5));
  auto anti = MakeState (Atoms23 (), [] {
    std::vector<Complex> v (36);
    v[Index (Level::a) * 6 + Index (Level::b)] = 1.0;
    v[Index (Level::b) * 6 + Index (Level::a)] = -1.0;
    return v;
  }());
  CHECK (Fidelity (psi, anti) < kExactTol);
}

TEST_CASE ("PellizzariTransfer on basis inputs")
{
  const auto psi = EntangledPairState ();
  SpaceLabel one = SpaceLabel::Single (std::string (kAtom1), kAtomDim);

  auto fromC = PellizzariTransfer (Tensor (BasisState (one, {Index (Level::c)}), psi));
  CHECK (std::abs (fromC.Amplitude ({Index (Level::c), Index (Level::c), Index (Level::b)}) - kInvRt2)
         < kExactTol);
  CHECK (std::abs (fromC.Amplitude ({Index (Level::c), Index (Level::d), Index (Level::a)}) - kInvRt2)
         < kExactTol);

  auto fromA = PellizzariTransfer (Tensor (BasisState (one, {Index (Level::a)}), psi));
  CHECK (std::abs (fromA.Amplitude ({Index (Level::c), Index (Level::a), Index (Level::b)}) - kInvRt2)
         < kExactTol);
  CHECK (std::abs (fromA.Amplitude ({Index (Level::c), Index (Level::b), Index (Level::a)}) - kInvRt2)
         < kExactTol);

  // atom 1 outside {a, c}
  CHECK_THROWS_AS (PellizzariTransfer (Tensor (BasisState (one, {Index (Level::d)}), psi)),
                   std::invalid_argument);
  // atom 2 outside {a, b}
  auto bad = Tensor (BasisState (one, {Index (Level::c)}),
                     BasisState (Atoms23 (), {Index (Level::c), Index (Level::a)}));
  CHECK_THROWS_AS (PellizzariTransfer (bad), std::invalid_argument);
}

TEST_CASE ("transferred state has the four-branch Bell decomposition")
{
  // <Bell_k|phi23> must equal the atom-3 factors
  //   A+: (a0|b> + b0|a>)/2   A-: (a0|b> - b0|a>)/2
  //   B+: (b0|b> + a0|a>)/2   B-: (-b0|b> + a0|a>)/2
  Rng rng (31);
  for (int i = 0; i < 100; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      const auto f = oracle::RandomFrame (rng);
      auto t = PellizzariTransfer (Tensor (PreparePhi1 (a0, b0, f), EntangledPairState ()));
      const std::array<std::size_t, 1> c = {Index (Level::c)};
      CHECK (Population (t, kAtom1, c) == doctest::Approx (1.0).epsilon (1e-12));
      auto phi23 = ConditionOn (t, kAtom1, Index (Level::c));
      const auto dec = BellDecomposition (phi23, f);

      const std::array<std::pair<Complex, Complex>, 4> expectBA = {{
        {a0 / 2.0, b0 / 2.0},
        {a0 / 2.0, -b0 / 2.0},
        {b0 / 2.0, a0 / 2.0},
        {-b0 / 2.0, a0 / 2.0},
      }};
      for (unsigned k = 0; k < 4; ++k)
        {
          CHECK (std::abs (At (dec[k], Level::b) - expectBA[k].first) < kExactTol);
          CHECK (std::abs (At (dec[k], Level::a) - expectBA[k].second) < kExactTol);
          CHECK (dec[k].Weight () == doctest::Approx (0.25).epsilon (1e-12));
        }
    }
}

TEST_CASE ("mapped |phi23> puts 1/4 on each bare level of atom 2")
{
  Rng rng (17);
  for (int i = 0; i < 20; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      auto ready = ReadyState (a0, b0, oracle::RandomFrame (rng));
      for (auto l : {Level::a, Level::b, Level::c, Level::d})
        {
          const std::array<std::size_t, 1> one = {Index (l)};
          auto m = ProjectMeasure (ready, kAtom2, one, Projection::In);
          CHECK (std::abs (m.probability - 0.25) < kExactTol);
        }
    }
}

TEST_CASE ("sequential readout with a perfect detector")
{
  Rng rng (1);
  const DetectorModel perfect{0.0, 30};
  CHECK (SequentialBellMeasurement (Atom2In (Level::c), perfect, rng).reported == BellOutcome::APlus);
  CHECK (SequentialBellMeasurement (Atom2In (Level::d), perfect, rng).reported == BellOutcome::BPlus);
  CHECK (SequentialBellMeasurement (Atom2In (Level::a), perfect, rng).reported == BellOutcome::BMinus);
  CHECK (SequentialBellMeasurement (Atom2In (Level::b), perfect, rng).reported == BellOutcome::AMinus);

  auto m = SequentialBellMeasurement (Atom2In (Level::c), perfect, rng);
  REQUIRE (m.log.size () == 1);
  CHECK (m.log[0].step == ProbeStep::ProbeC1);
  CHECK (m.log[0].truePopulation == doctest::Approx (1.0));
  CHECK (m.trueBranch == BellOutcome::APlus);

  auto b = SequentialBellMeasurement (Atom2In (Level::b), perfect, rng);
  CHECK (b.log.size () == 3);
  for (const auto &e : b.log)
    CHECK_FALSE (e.fluoresced);
}

TEST_CASE ("readout distribution for atom 2 in |c> with a leaky detector")
{
  for (double eps : {0.5, 0.1, 1e-3})
    {
      const auto dist = oracle::ReadoutDistribution (Atom2In (Level::c), eps);
      CHECK (dist[0] == doctest::Approx (1 - eps).epsilon (1e-12));
      CHECK (dist[1] == doctest::Approx (eps * eps).epsilon (1e-12));
      CHECK (dist[2] == doctest::Approx (eps * (1 - eps)).epsilon (1e-12));
      CHECK (dist[3] == 0.0);
    }
}

TEST_CASE ("confusion matrix agrees with the state-vector branch walk")
{
  for (double p : {0.0, 0.2, 0.75, 0.95, 1.0})
    for (unsigned n : {1u, 3u, 30u})
      {
        const DetectorModel det{p, n};
        const auto cm = ComputeConfusionMatrix (det);
        for (auto t : kAllOutcomes)
          {
            const auto dist = oracle::ReadoutDistribution (Atom2In (MappedLevel (t)), det.Epsilon ());
            double rowSum = 0.0;
            for (unsigned r = 0; r < 4; ++r)
              {
                CHECK (std::abs (cm[static_cast<unsigned> (t)][r] - dist[r]) < kExactTol);
                rowSum += cm[static_cast<unsigned> (t)][r];
              }
            CHECK (std::abs (rowSum - 1.0) < kExactTol);
          }
      }
}

TEST_CASE ("confusion matrix limits")
{
  const auto id = ComputeConfusionMatrix ({0.0, 30});
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j)
      CHECK (id[i][j] == (i == j ? 1.0 : 0.0));

  const DetectorModel tiny{1e-8, 1};
  const auto near = ComputeConfusionMatrix (tiny);
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 4; ++j)
      if (i != j)
        CHECK (near[i][j] < 1e-7);

  const double e = 0.3;
  const auto cm = ComputeConfusionMatrix ({e, 1});
  CHECK (cm[0][0] == doctest::Approx (1 - e));
  CHECK (cm[0][1] == doctest::Approx (e * e));
  CHECK (cm[0][2] == doctest::Approx (e * (1 - e)));
  CHECK (cm[0][3] == 0.0);
}

TEST_CASE ("sampled readout frequencies match the confusion matrix")
{
  const DetectorModel det{0.3, 1};
  const auto cm = ComputeConfusionMatrix (det);
  Rng rng (2718);
  const int n = 40000;
  for (auto t : kAllOutcomes)
    {
      std::array<int, 4> counts{};
      const auto input = Atom2In (MappedLevel (t));
      for (int i = 0; i < n; ++i)
        {
          auto m = SequentialBellMeasurement (input, det, rng);
          CHECK (m.trueBranch == t);
          ++counts[static_cast<unsigned> (m.reported)];
          for (const auto &e : m.log)
            CHECK ((!e.detected || e.fluoresced));
        }
      for (unsigned r = 0; r < 4; ++r)
        {
          const double p = cm[static_cast<unsigned> (t)][r];
          const double sigma = std::sqrt (p * (1 - p) / n);
          CHECK (std::abs (counts[r] / double (n) - p) <= 5 * sigma + 1e-15);
        }
    }
}

TEST_CASE ("Bob's corrections")
{
  const Complex a0{0.48, -0.36}, b0{0.0, 0.8};
  const auto target = TeleportTarget (a0, b0);

  auto aPlus = BobCorrection (BellOutcome::APlus, Atom3 (a0, b0));
  for (std::size_t k = 0; k < kAtomDim; ++k)
    CHECK (aPlus.Amplitude (k) == target.Amplitude (k));

  CHECK (Fidelity (BobCorrection (BellOutcome::AMinus, Atom3 (a0, -b0)), target)
         == doctest::Approx (1.0).epsilon (1e-12));
  CHECK (Fidelity (BobCorrection (BellOutcome::BPlus, Atom3 (b0, a0)), target)
         == doctest::Approx (1.0).epsilon (1e-12));
  CHECK (Fidelity (BobCorrection (BellOutcome::BMinus, Atom3 (-b0, a0)), target)
         == doctest::Approx (1.0).epsilon (1e-12));

  std::vector<Complex> leak (kAtomDim);
  leak[Index (Level::c)] = 1.0;
  auto bad = MakeState (SpaceLabel::Single (std::string (kAtom3), kAtomDim), leak);
  CHECK_THROWS_AS (BobCorrection (BellOutcome::APlus, bad), std::invalid_argument);
}

TEST_CASE ("teleportation with a perfect detector is exact on every branch")
{
  Rng rng (555);
  const DetectorModel perfect{0.0, 30};
  for (int i = 0; i < 100; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      const auto f = oracle::RandomFrame (rng);
      auto rec = TeleportOnce (a0, b0, f, perfect, rng);
      CHECK (rec.outcome == rec.reported);
      CHECK (std::abs (rec.fidelity - 1.0) < kExactTol);
      for (auto branch : kAllOutcomes)
        {
          auto forced = TeleportForced (a0, b0, f, branch);
          CHECK (forced.outcome == branch);
          CHECK (forced.reported == branch);
          CHECK (std::abs (forced.fidelity - 1.0) < kExactTol);
        }
    }
}

TEST_CASE ("property: frame offsets do not change the perfect-detector result")
{
  Rng rng (808);
  const DetectorModel perfect{0.0, 30};
  for (int i = 0; i < 20; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      const auto f = oracle::RandomFrame (rng);
      const OscillatorFrame shifted{f.omegaMt + 3.7, f.xi};
      for (auto branch : kAllOutcomes)
        CHECK (std::abs (TeleportForced (a0, b0, f, branch).fidelity
                         - TeleportForced (a0, b0, shifted, branch).fidelity)
               < kExactTol);
    }
}

TEST_CASE ("perfect-detector outcomes are uniform")
{
  Rng rng (4242);
  const DetectorModel perfect{0.0, 30};
  const int n = 10000;
  std::array<int, 4> counts{};
  for (int i = 0; i < n; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      ++counts[static_cast<unsigned> (TeleportOnce (a0, b0, oracle::RandomFrame (rng), perfect, rng).reported)];
    }
  const double sigma = std::sqrt (0.25 * 0.75 / n);
  for (int c : counts)
    CHECK (std::abs (c / double (n) - 0.25) < 5 * sigma);
}

TEST_CASE ("leaky detector: mean infidelity stays below 3 epsilon")
{
  Rng rng (9001);
  const DetectorModel det{0.75, 30};
  const double eps = det.Epsilon ();
  const int n = 100000;
  double infid = 0.0;
  for (int i = 0; i < n; ++i)
    {
      const auto [a0, b0] = oracle::RandomQubitAmplitudes (rng);
      const auto rec = TeleportOnce (a0, b0, oracle::RandomFrame (rng), det, rng);
      infid += 1.0 - rec.fidelity;
      if (rec.outcome == rec.reported)
        CHECK (std::abs (rec.fidelity - 1.0) < 1e-12);
    }
  CHECK (infid / n <= 3 * eps);
}

TEST_CASE ("detector model validation")
{
  CHECK (DetectorModel{0.75, 30}.Epsilon () == doctest::Approx (std::pow (0.75, 30)));
  CHECK_THROWS_AS (DetectorModel ({1.5, 3}).Validate (), std::invalid_argument);
  CHECK_THROWS_AS (DetectorModel ({0.5, 0}).Validate (), std::invalid_argument);
}
