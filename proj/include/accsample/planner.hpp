// Minimal-sample-size plan search and plan tables over lot-size ranges.

#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "accsample/risk_model.hpp"

namespace accsample {

/// No admissible plan exists below the configured sample-size cap.
class NoPlanError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The brute-force oracle refuses lots above its cost guard.
class CostGuardError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PlanResult {
    Plan plan;
    RiskPair risks;
    RealizedLevels realized;
};

struct PlanTableRow {
    Count lot = 0;
    PlanResult result;
};

struct PlanTable {
    std::vector<PlanTableRow> rows;  // ascending, contiguous in lot size
};

struct PlannerOptions {
    /// Largest sample size scanned for the infinite lot.
    Count scan_cap = 1'000'000;
    /// Worker threads for plan_table; 0 selects the hardware concurrency.
    unsigned threads = 0;
};

inline constexpr Count kOracleCostGuard = 2000;

/// Largest c <= n whose consumers' risk stays within beta_max, or nullopt if
/// even c = 0 exceeds it. The producers' risk is not checked.
std::optional<Count> max_acceptance_number(Count n, const LotSize& lot, const QualitySpec& spec = {},
                                           const RiskBounds& bounds = {});

/// Admissible plan with the smallest sample size; among those, the largest
/// admissible acceptance number. Throws NoPlanError when an infinite-lot
/// scan reaches options.scan_cap.
PlanResult optimal_plan(const LotSize& lot, const QualitySpec& spec = {}, const RiskBounds& bounds = {},
                        const PlannerOptions& options = {});

/// One optimal plan per lot size in [lot_min, lot_max].
PlanTable plan_table(Count lot_min, Count lot_max, const QualitySpec& spec = {},
                     const RiskBounds& bounds = {}, const PlannerOptions& options = {});

/// Exhaustive search over every (n, c) with 0 <= c <= n <= N using only
/// hypergeometric_cdf. Independent check of optimal_plan; N <= 2000.
PlanResult brute_force_oracle(Count lot, const QualitySpec& spec = {}, const RiskBounds& bounds = {});

}  // namespace accsample
