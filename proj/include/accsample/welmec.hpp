// Retro-evaluation of plans under the WELMEC 8.10 reading of the AQL/LQ
// conditions ("OC curve left of both anchor points"), in its continuous
// (Gamma-interpolated) and pointwise variants, side by side with the
// hypothesis-test risks.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "accsample/planner.hpp"

namespace accsample {

/// The pointwise variant is only defined on the discrete OC of a finite lot.
class UnsupportedModelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

struct WelmecRisks {
    Probability alpha_cont = 0.0;  // 1 - Pac at p_aql
    Probability beta_cont = 0.0;   // Pac at p_lq
};

/// Risks at the nominal levels: Gamma-interpolated for finite lots,
/// binomial for the infinite lot.
WelmecRisks welmec_risks(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {});

/// Pac(p_aql) <= 1 - alpha_max and Pac(p_lq) <= beta_max on the
/// interpolated curve. Both comparisons are non-strict.
bool welmec_admissible_continuous(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {},
                                  const RiskBounds& bounds = {});

/// Every realizable k/N >= p_aql has Pac <= 1 - alpha_max and every
/// k/N >= p_lq has Pac <= beta_max. Throws UnsupportedModelError for the
/// infinite lot.
bool welmec_admissible_pointwise(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {},
                                 const RiskBounds& bounds = {});

struct CandidateEvaluation {
    Plan plan;
    RiskPair risks;
    WelmecRisks welmec;
    bool hypothesis_admissible = false;
    bool continuous_admissible = false;
    std::optional<bool> pointwise_admissible;  // nullopt for the infinite lot
};

struct ComparisonReport {
    LotSize lot = LotSize::infinite();
    PlanResult hypothesis_plan;
    std::vector<CandidateEvaluation> evaluated_plans;
};

ComparisonReport compare_interpretations(const LotSize& lot, const QualitySpec& spec, const RiskBounds& bounds,
                                         const std::vector<Plan>& candidates,
                                         const PlannerOptions& options = {});

}  // namespace accsample
