#include "bellnet/linkmath.h"

#include <cmath>
#include <stdexcept>

namespace bellnet {

namespace {

void
RequireProbability (double p, const char *what)
{
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument (std::string (what) + " must lie in [0, 1]");
}

} // namespace

void
LinkBudget::Validate () const
{
  if (!(lossDb >= 0.0) || !std::isfinite (lossDb))
    throw std::invalid_argument ("loss_db must be a finite value >= 0");
  RequireProbability (pMiss, "p_miss");
  if (nCycles == 0)
    throw std::invalid_argument ("n_cycles must be at least 1");
  if (!(etaJoint > 0.0 && etaJoint <= 1.0))
    throw std::invalid_argument ("eta_joint must lie in (0, 1]");
  if (!(etaSingle > 0.0 && etaSingle <= 1.0))
    throw std::invalid_argument ("eta_single must lie in (0, 1]");
  if (!(tFluor > 0.0) || !std::isfinite (tFluor))
    throw std::invalid_argument ("t_fluor must be positive");
  if (!(trialOverhead >= 0.0) || !std::isfinite (trialOverhead))
    throw std::invalid_argument ("trial_overhead must be >= 0");
}

double
LinkBudget::Survival () const
{
  return SurvivalProb (lossDb);
}

double
LinkBudget::Epsilon () const
{
  return FalsePositiveProb (pMiss, nCycles);
}

double
SurvivalProb (double lossDb)
{
  if (!(lossDb >= 0.0))
    throw std::invalid_argument ("loss must be >= 0 dB");
  return std::pow (10.0, -lossDb / 10.0);
}

double
FalsePositiveProb (double pMiss, unsigned nCycles)
{
  RequireProbability (pMiss, "p_miss");
  if (nCycles == 0)
    throw std::invalid_argument ("n_cycles must be at least 1");
  return std::pow (pMiss, static_cast<double> (nCycles));
}

std::optional<double>
SnrDb (double epsilon)
{
  RequireProbability (epsilon, "epsilon");
  if (epsilon == 0.0)
    return std::nullopt;
  // Avoid printing -0 for eps == 1.
  return epsilon == 1.0 ? 0.0 : -10.0 * std::log10 (epsilon);
}

double
EpsilonFromSnr (double snrDb)
{
  return std::pow (10.0, -snrDb / 10.0);
}

double
ExpectedTrials (double lossDb)
{
  if (!(lossDb >= 0.0))
    throw std::invalid_argument ("loss must be >= 0 dB");
  return std::pow (10.0, lossDb / 5.0);
}

double
PairGenerationTime (const LinkBudget &budget)
{
  budget.Validate ();
  return budget.tFluor * budget.nCycles * std::pow (10.0, 2.0 * budget.lossDb / 10.0);
}

double
CoincidenceProb (double survival, double etaJoint, double etaSingle, double epsilon)
{
  RequireProbability (survival, "survival");
  RequireProbability (etaJoint, "eta_joint");
  RequireProbability (etaSingle, "eta_single");
  RequireProbability (epsilon, "epsilon");
  const double s = survival;
  const double q2 = s * s * etaJoint;
  const double q1 = 2.0 * s * (1.0 - s) * etaSingle;
  const double q0 = 1.0 - q2 - q1;
  return q2 + q1 * epsilon + q0 * epsilon * epsilon;
}

double
HeraldFidelity (double survival, double etaJoint, double etaSingle, double epsilon)
{
  const double pc = CoincidenceProb (survival, etaJoint, etaSingle, epsilon);
  if (pc <= 0.0)
    throw std::domain_error ("no coincidences possible: herald fidelity undefined");
  return survival * survival * etaJoint / pc;
}

double
HeraldFidelity (const LinkBudget &budget)
{
  budget.Validate ();
  return HeraldFidelity (budget.Survival (), budget.etaJoint, budget.etaSingle, budget.Epsilon ());
}

double
CoincidenceProb (const LinkBudget &budget)
{
  budget.Validate ();
  return CoincidenceProb (budget.Survival (), budget.etaJoint, budget.etaSingle, budget.Epsilon ());
}

} // namespace bellnet
