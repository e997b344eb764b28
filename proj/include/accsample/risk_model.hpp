// Producers'/consumers' risks, admissibility and OC curves of single
// sampling plans under the hypothesis-test reading of the AQL/LQ conditions.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "accsample/prob_kernel.hpp"

namespace accsample {

/// Slack granted when comparing a computed risk against its bound, so that
/// risks equal to the bound are not lost to the last ulp.
inline constexpr double kRiskTolerance = 1e-12;

struct QualitySpec {
    double p_aql = 0.01;
    double p_lq = 0.07;

    /// Throws DomainError unless 0 < p_aql < p_lq < 1.
    void validate() const;
};

struct RiskBounds {
    double alpha_max = 0.05;
    double beta_max = 0.05;

    /// Throws DomainError unless both bounds lie strictly inside (0, 1).
    void validate() const;
};

/// A quality level k/N realizable in a finite lot, or a nominal proportion
/// for the infinite lot (denominator 0).
struct QualityLevel {
    Count numerator = 0;
    Count denominator = 0;
    double value = 0.0;

    bool is_exact() const noexcept { return denominator > 0; }
    friend bool operator==(const QualityLevel&, const QualityLevel&) = default;
};

struct RealizedLevels {
    QualityLevel alpha;  // largest realizable level not above p_aql
    QualityLevel beta;   // smallest realizable level not below p_lq
};

struct RiskPair {
    Probability alpha = 0.0;
    Probability beta = 0.0;
};

/// floor(x) and ceil(x), snapping values within 1e-9 (relative) of an
/// integer onto it first, so that e.g. 0.07 * 700 yields 49.
Count snapped_floor(double x);
Count snapped_ceil(double x);

RealizedLevels realized_quality_levels(const LotSize& lot, const QualitySpec& spec);

/// Pac(c; n, level) under the hypergeometric (finite) or binomial model.
Probability acceptance_probability(const Plan& plan, const LotSize& lot, const QualityLevel& level);

Probability producers_risk(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {});
Probability consumers_risk(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {});
RiskPair risks(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {});

bool is_admissible(const Plan& plan, const LotSize& lot, const QualitySpec& spec = {},
                   const RiskBounds& bounds = {});

struct OcPoint {
    QualityLevel level;
    Probability pac = 0.0;
};

struct OcGridOptions {
    /// Uniform grid used for infinite lots when no explicit grid is given.
    std::size_t points = 151;
    double p_max = 0.15;
};

/// Operating characteristic of `plan`. Finite lots default to every
/// realizable level k/N; explicit grid values must then be realizable.
std::vector<OcPoint> oc_curve(const Plan& plan, const LotSize& lot,
                              const std::optional<std::vector<double>>& grid = std::nullopt,
                              const OcGridOptions& options = {});

/// Fraction of `trials` simulated lots accepted by `plan` at quality p.
/// Finite lots are sampled without replacement and require integral pN.
Probability monte_carlo_acceptance(const Plan& plan, const LotSize& lot, double p,
                                   std::int64_t trials, std::uint64_t seed);

}  // namespace accsample
