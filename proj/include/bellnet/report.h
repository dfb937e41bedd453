#ifndef BELLNET_REPORT_H
#define BELLNET_REPORT_H

#include "bellnet/capture.h"
#include "bellnet/linkmath.h"
#include "bellnet/teleport.h"

#include <cstdint>
#include <string>

// Fixed CSV layouts. Rows end in '\n'; doubles use 17 significant digits.

namespace bellnet {

std::string FormatDouble (double v);

std::string BudgetCsvHeader ();
/// loss_db..trial inputs, then lambda, epsilon, snr_db ("unbounded" when
/// epsilon is 0), expected_trials, pair_time_s, herald_fidelity.
std::string BudgetCsvRow (const LinkBudget &budget);

std::string TrialCsvHeader ();
std::string TrialCsvRow (const TrialRecord &r);

std::string TeleportCsvHeader ();
std::string TeleportCsvRow (std::uint64_t seed, Complex alpha0, Complex beta0, const TeleportRecord &r);

/// key=value lines for a finished campaign.
std::string CampaignSummary (const LinkBudget &budget, const CampaignStats &stats);

} // namespace bellnet

#endif
