#ifndef BELLNET_LINKMATH_H
#define BELLNET_LINKMATH_H

#include <optional>

namespace bellnet {

/// Parameters of one entanglement link between two capture nodes.
struct LinkBudget
{
  double lossDb = 15.0;    ///< fiber loss per arm, dB
  double pMiss = 0.75;     ///< per-cycle detector miss probability
  unsigned nCycles = 30;   ///< cycling-transition repetitions per probe
  double etaJoint = 1.0;   ///< joint loading probability when both photons arrive
  double etaSingle = 1.0;  ///< loading probability when exactly one photon arrives
  double tFluor = 30e-9;   ///< seconds per fluorescence cycle
  double trialOverhead = 0.0; ///< extra seconds per capture trial

  /// Throws std::invalid_argument on out-of-range fields.
  void Validate () const;

  double Survival () const;
  double Epsilon () const;
  bool operator== (const LinkBudget &) const = default;
};

/// 10^(-L/10). Throws std::invalid_argument for negative loss.
double SurvivalProb (double lossDb);

/// p^N. Throws std::invalid_argument for p outside [0,1] or N == 0.
double FalsePositiveProb (double pMiss, unsigned nCycles);

/// -10 log10(eps); std::nullopt when eps == 0 (unbounded SNR).
/// Throws std::invalid_argument for eps outside [0,1].
std::optional<double> SnrDb (double epsilon);

/// 10^(-S/10)
double EpsilonFromSnr (double snrDb);

/// 10^(L/5) = 1/SurvivalProb(L)^2
double ExpectedTrials (double lossDb);

/// tFluor * nCycles * 10^(2L/10)
double PairGenerationTime (const LinkBudget &budget);

/*
 * Coincidence heralding with per-arm fiber survival s:
 *
 *   q2 = s^2 etaJoint            both atoms absorb (one joint draw)
 *   q1 = 2 s (1-s) etaSingle     exactly one atom absorbs
 *   q0 = 1 - q2 - q1             neither absorbs
 *
 * An empty node heralds falsely with probability eps, so
 *
 *   P(coincidence) = q2 + q1 eps + q0 eps^2
 *   fidelity       = q2 / P(coincidence)
 */
double CoincidenceProb (double survival, double etaJoint, double etaSingle, double epsilon);

/// Throws std::domain_error when the coincidence probability is zero.
double HeraldFidelity (double survival, double etaJoint, double etaSingle, double epsilon);

double HeraldFidelity (const LinkBudget &budget);
double CoincidenceProb (const LinkBudget &budget);

} // namespace bellnet

#endif
