#include "bellnet/linkmath.h"

#include "oracles.h"

#include <doctest.h>

#include <cmath>

using namespace bellnet;

TEST_CASE ("survival probability")
{
  CHECK (SurvivalProb (0.0) == 1.0);
  CHECK (std::abs (SurvivalProb (15.0) - 0.0316228) < 1e-6);
  CHECK (SurvivalProb (10.0) == doctest::Approx (0.1).epsilon (1e-15));
  CHECK_THROWS_AS (SurvivalProb (-1.0), std::invalid_argument);
}

TEST_CASE ("false positive probability")
{
  // 0.75^30 by repeated multiplication
  double direct = 1.0;
  for (int i = 0; i < 30; ++i)
    direct *= 0.75;
  CHECK (FalsePositiveProb (0.75, 30) == doctest::Approx (direct).epsilon (1e-14));
  CHECK (std::abs (FalsePositiveProb (0.75, 30) - 1.787e-4) / 1.787e-4 < 1e-3);
  CHECK (FalsePositiveProb (0.0, 7) == 0.0);
  CHECK (FalsePositiveProb (1.0, 7) == 1.0);
  CHECK_THROWS_AS (FalsePositiveProb (1.1, 3), std::invalid_argument);
  CHECK_THROWS_AS (FalsePositiveProb (-0.1, 3), std::invalid_argument);
  CHECK_THROWS_AS (FalsePositiveProb (0.5, 0), std::invalid_argument);
}

TEST_CASE ("signal to noise")
{
  CHECK (std::abs (*SnrDb (FalsePositiveProb (0.75, 30)) - 37.5) < 0.1);
  CHECK (*SnrDb (0.1) == doctest::Approx (10.0));
  CHECK (*SnrDb (1.0) == 0.0);
  CHECK_FALSE (SnrDb (0.0).has_value ());
  CHECK_THROWS_AS (SnrDb (2.0), std::invalid_argument);
}

TEST_CASE ("expected trials and pair time")
{
  CHECK (ExpectedTrials (15.0) == 1000.0);
  CHECK (ExpectedTrials (0.0) == 1.0);
  CHECK (ExpectedTrials (5.0) == doctest::Approx (10.0).epsilon (1e-15));

  LinkBudget base;
  CHECK (PairGenerationTime (base) == doctest::Approx (9.0e-4).epsilon (1e-12));
  LinkBudget lossless = base;
  lossless.lossDb = 0.0;
  CHECK (PairGenerationTime (lossless) == doctest::Approx (30e-9 * 30).epsilon (1e-15));
  LinkBudget oneCycle = base;
  oneCycle.nCycles = 1;
  CHECK (PairGenerationTime (oneCycle) == doctest::Approx (3.0e-5).epsilon (1e-12));
}

TEST_CASE ("herald fidelity matches the brute-force enumeration")
{
  const double s = 0.0316, eps = 1.787e-4;
  const auto [pc, pt] = oracle::HeraldEnumeration (s, 1.0, 1.0, eps);
  CHECK (HeraldFidelity (s, 1.0, 1.0, eps) == doctest::Approx (pt / pc).epsilon (1e-13));
  CHECK (std::abs (HeraldFidelity (s, 1.0, 1.0, eps) - 0.9891) < 1e-3);
  CHECK (HeraldFidelity (s, 1.0, 1.0, 0.0) == 1.0);
  CHECK (HeraldFidelity (1.0, 1.0, 1.0, 0.3) == 1.0);

  Rng rng (64);
  std::uniform_real_distribution<double> u (0.0, 1.0);
  for (int i = 0; i < 500; ++i)
    {
      const double sv = u (rng), ej = 0.05 + 0.95 * u (rng), es = 0.05 + 0.95 * u (rng), e = u (rng);
      const auto [c, t] = oracle::HeraldEnumeration (sv, ej, es, e);
      if (c < 1e-300)
        continue;
      CHECK (CoincidenceProb (sv, ej, es, e) == doctest::Approx (c).epsilon (1e-12));
      CHECK (HeraldFidelity (sv, ej, es, e) == doctest::Approx (t / c).epsilon (1e-12));
    }
  CHECK_THROWS_AS (HeraldFidelity (0.0, 1.0, 1.0, 0.0), std::domain_error);
}

TEST_CASE ("property: monotonicity")
{
  double prev = 2.0;
  for (double L = 0.0; L <= 40.0; L += 0.5)
    {
      CHECK (SurvivalProb (L) < prev);
      prev = SurvivalProb (L);
    }
  for (unsigned n = 1; n < 50; ++n)
    {
      CHECK (FalsePositiveProb (0.6, n + 1) < FalsePositiveProb (0.6, n));
      CHECK (FalsePositiveProb (0.5, n) < FalsePositiveProb (0.55, n));
    }
}

TEST_CASE ("property: expected trials times survival squared is one")
{
  for (double L = 0.0; L <= 60.0; L += 0.25)
    CHECK (std::abs (ExpectedTrials (L) * SurvivalProb (L) * SurvivalProb (L) - 1.0) < kExactTol);
}

TEST_CASE ("property: snr round trip")
{
  for (double lg = -12.0; lg <= 0.0; lg += 0.05)
    {
      const double eps = std::pow (10.0, lg);
      CHECK (std::abs (EpsilonFromSnr (*SnrDb (eps)) - eps) <= kExactTol * eps);
    }
}

TEST_CASE ("property: herald fidelity bound and limit")
{
  for (double L = 0.0; L <= 30.0; L += 1.0)
    for (double lg = -8.0; lg <= -2.0; lg += 0.5)
      {
        const double s = SurvivalProb (L), eps = std::pow (10.0, lg);
        const double bound = 1.0 - eps / s * (2.0 * (1.0 - s) / s);
        CHECK (HeraldFidelity (s, 1.0, 1.0, eps) >= bound - 1e-15);
      }
  // fidelity -> 1 as eps/lambda -> 0
  const double s = SurvivalProb (15.0);
  double prevGap = 1.0;
  for (double lg = -4.0; lg >= -14.0; lg -= 1.0)
    {
      const double gap = 1.0 - HeraldFidelity (s, 1.0, 1.0, std::pow (10.0, lg));
      CHECK (gap < prevGap);
      prevGap = gap;
    }
  CHECK (prevGap < 1e-11);
}

TEST_CASE ("budget validation")
{
  LinkBudget b;
  CHECK_NOTHROW (b.Validate ());
  b.etaJoint = 0.0;
  CHECK_THROWS_AS (b.Validate (), std::invalid_argument);
  b = {};
  b.tFluor = -1.0;
  CHECK_THROWS_AS (b.Validate (), std::invalid_argument);
  b = {};
  b.lossDb = -3.0;
  CHECK_THROWS_AS (b.Validate (), std::invalid_argument);
}
