#include "accsample/risk_model.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace accsample {

namespace {

constexpr double kSnapRelative = 1e-9;

bool snaps_to(double x, double& nearest) {
    nearest = std::round(x);
    return std::abs(x - nearest) <= kSnapRelative * std::max(1.0, std::abs(x));
}

}  // namespace

void QualitySpec::validate() const {
    if (!(p_aql > 0.0 && p_aql < p_lq && p_lq < 1.0)) {
        throw DomainError("quality levels must satisfy 0 < p_aql < p_lq < 1");
    }
}

void RiskBounds::validate() const {
    if (!(alpha_max > 0.0 && alpha_max < 1.0 && beta_max > 0.0 && beta_max < 1.0)) {
        throw DomainError("risk bounds must lie strictly between 0 and 1");
    }
}

Count snapped_floor(double x) {
    double nearest = 0.0;
    return static_cast<Count>(snaps_to(x, nearest) ? nearest : std::floor(x));
}

Count snapped_ceil(double x) {
    double nearest = 0.0;
    return static_cast<Count>(snaps_to(x, nearest) ? nearest : std::ceil(x));
}

RealizedLevels realized_quality_levels(const LotSize& lot, const QualitySpec& spec) {
    spec.validate();
    if (lot.is_infinite()) {
        return {QualityLevel{0, 0, spec.p_aql}, QualityLevel{0, 0, spec.p_lq}};
    }
    const Count n = lot.size();
    const auto nd = static_cast<double>(n);
    const Count ka = snapped_floor(spec.p_aql * nd);
    const Count kb = snapped_ceil(spec.p_lq * nd);
    return {QualityLevel{ka, n, static_cast<double>(ka) / nd},
            QualityLevel{kb, n, static_cast<double>(kb) / nd}};
}

Probability acceptance_probability(const Plan& plan, const LotSize& lot, const QualityLevel& level) {
    validate_plan(plan, lot);
    if (lot.is_infinite()) return binomial_cdf(plan.c, plan.n, level.value);
    if (level.denominator != lot.size()) {
        throw DomainError("quality level is not expressed over the lot size");
    }
    return hypergeometric_cdf(plan.c, plan.n, level.numerator, lot.size());
}

Probability producers_risk(const Plan& plan, const LotSize& lot, const QualitySpec& spec) {
    const auto levels = realized_quality_levels(lot, spec);
    return 1.0 - acceptance_probability(plan, lot, levels.alpha);
}

Probability consumers_risk(const Plan& plan, const LotSize& lot, const QualitySpec& spec) {
    const auto levels = realized_quality_levels(lot, spec);
    return acceptance_probability(plan, lot, levels.beta);
}

RiskPair risks(const Plan& plan, const LotSize& lot, const QualitySpec& spec) {
    const auto levels = realized_quality_levels(lot, spec);
    return {1.0 - acceptance_probability(plan, lot, levels.alpha),
            acceptance_probability(plan, lot, levels.beta)};
}

bool is_admissible(const Plan& plan, const LotSize& lot, const QualitySpec& spec,
                   const RiskBounds& bounds) {
    bounds.validate();
    const auto r = risks(plan, lot, spec);
    return r.alpha <= bounds.alpha_max + kRiskTolerance && r.beta <= bounds.beta_max + kRiskTolerance;
}

std::vector<OcPoint> oc_curve(const Plan& plan, const LotSize& lot,
                              const std::optional<std::vector<double>>& grid,
                              const OcGridOptions& options) {
    validate_plan(plan, lot);
    std::vector<QualityLevel> levels;

    if (grid) {
        for (const double p : *grid) {
            if (!(p >= 0.0 && p <= 1.0)) throw DomainError("OC grid value outside [0, 1]");
            if (lot.is_infinite()) {
                levels.push_back({0, 0, p});
                continue;
            }
            const Count n = lot.size();
            double k = 0.0;
            if (!snaps_to(p * static_cast<double>(n), k)) {
                throw DomainError("OC grid value is not a realizable level k/N for this lot");
            }
            levels.push_back({static_cast<Count>(k), n, k / static_cast<double>(n)});
        }
    } else if (lot.is_finite()) {
        const Count n = lot.size();
        levels.reserve(static_cast<std::size_t>(n) + 1);
        for (Count k = 0; k <= n; ++k) {
            levels.push_back({k, n, static_cast<double>(k) / static_cast<double>(n)});
        }
    } else {
        if (options.points < 2 || !(options.p_max > 0.0 && options.p_max <= 1.0)) {
            throw DomainError("OC grid needs at least two points on (0, 1]");
        }
        const auto last = static_cast<double>(options.points - 1);
        for (std::size_t i = 0; i < options.points; ++i) {
            levels.push_back({0, 0, static_cast<double>(i) * options.p_max / last});
        }
    }

    std::vector<OcPoint> curve;
    curve.reserve(levels.size());
    for (const auto& level : levels) {
        curve.push_back({level, acceptance_probability(plan, lot, level)});
    }
    return curve;
}

Probability monte_carlo_acceptance(const Plan& plan, const LotSize& lot, double p,
                                   std::int64_t trials, std::uint64_t seed) {
    validate_plan(plan, lot);
    if (trials < 1) throw DomainError("monte_carlo_acceptance: trials must be >= 1");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("monte_carlo_acceptance: p outside [0, 1]");

    std::mt19937_64 rng(seed);
    std::int64_t accepted = 0;

    if (lot.is_infinite()) {
        std::binomial_distribution<Count> draw(plan.n, p);
        for (std::int64_t t = 0; t < trials; ++t) {
            if (draw(rng) <= plan.c) ++accepted;
        }
    } else {
        const Count size = lot.size();
        double k = 0.0;
        if (!snaps_to(p * static_cast<double>(size), k)) {
            throw DomainError("monte_carlo_acceptance: p * N must be an integer for a finite lot");
        }
        const auto defectives = static_cast<Count>(k);
        for (std::int64_t t = 0; t < trials; ++t) {
            Count remaining = size;
            Count remaining_bad = defectives;
            Count found = 0;
            for (Count i = 0; i < plan.n && found <= plan.c; ++i) {
                std::uniform_int_distribution<Count> pick(0, remaining - 1);
                if (pick(rng) < remaining_bad) {
                    ++found;
                    --remaining_bad;
                }
                --remaining;
            }
            if (found <= plan.c) ++accepted;
        }
    }
    return static_cast<double>(accepted) / static_cast<double>(trials);
}

}  // namespace accsample
