#include "accsample/welmec.hpp"

namespace accsample {

WelmecRisks welmec_risks(const Plan& plan, const LotSize& lot, const QualitySpec& spec) {
    spec.validate();
    validate_plan(plan, lot);
    if (lot.is_infinite()) {
        return {1.0 - binomial_cdf(plan.c, plan.n, spec.p_aql), binomial_cdf(plan.c, plan.n, spec.p_lq)};
    }
    const Count size = lot.size();
    return {1.0 - interpolated_acceptance(plan, size, spec.p_aql),
            interpolated_acceptance(plan, size, spec.p_lq)};
}

bool welmec_admissible_continuous(const Plan& plan, const LotSize& lot, const QualitySpec& spec,
                                  const RiskBounds& bounds) {
    bounds.validate();
    const auto w = welmec_risks(plan, lot, spec);
    const double pac_aql = 1.0 - w.alpha_cont;
    return pac_aql <= 1.0 - bounds.alpha_max && w.beta_cont <= bounds.beta_max;
}

bool welmec_admissible_pointwise(const Plan& plan, const LotSize& lot, const QualitySpec& spec,
                                 const RiskBounds& bounds) {
    if (lot.is_infinite()) {
        throw UnsupportedModelError("pointwise WELMEC criterion is defined for finite lots only");
    }
    spec.validate();
    bounds.validate();
    validate_plan(plan, lot);
    const Count size = lot.size();
    const auto nd = static_cast<double>(size);
    const Count first_aql = snapped_ceil(spec.p_aql * nd);
    const Count first_lq = snapped_ceil(spec.p_lq * nd);
    for (Count k = first_aql; k <= size; ++k) {
        const double pac = hypergeometric_cdf(plan.c, plan.n, k, size);
        if (pac > 1.0 - bounds.alpha_max) return false;
        if (k >= first_lq && pac > bounds.beta_max) return false;
    }
    return true;
}

ComparisonReport compare_interpretations(const LotSize& lot, const QualitySpec& spec, const RiskBounds& bounds,
                                         const std::vector<Plan>& candidates, const PlannerOptions& options) {
    ComparisonReport report;
    report.lot = lot;
    report.hypothesis_plan = optimal_plan(lot, spec, bounds, options);
    report.evaluated_plans.reserve(candidates.size());
    for (const auto& plan : candidates) {
        CandidateEvaluation e;
        e.plan = plan;
        e.risks = risks(plan, lot, spec);
        e.welmec = welmec_risks(plan, lot, spec);
        e.hypothesis_admissible = is_admissible(plan, lot, spec, bounds);
        e.continuous_admissible = welmec_admissible_continuous(plan, lot, spec, bounds);
        if (lot.is_finite()) e.pointwise_admissible = welmec_admissible_pointwise(plan, lot, spec, bounds);
        report.evaluated_plans.push_back(e);
    }
    return report;
}

}  // namespace accsample
