#include "accsample/planner.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace accsample {

namespace {

// Walks Pac(c) for c = 0, 1, ... at a fixed sample size and quality level,
// with the same summation order as the cdf functions.
template <typename Terms>
std::optional<Count> largest_c_within(Terms terms, Count n, Count full_support, double limit) {
    CompensatedSum cumulative;
    for (Count c = 0; c <= n; ++c) {
        double pac = 1.0;
        if (c < full_support) {
            cumulative.add(terms.next());
            pac = std::clamp(cumulative.value(), 0.0, 1.0);
        }
        if (pac > limit) {
            if (c == 0) return std::nullopt;
            return c - 1;
        }
    }
    return n;
}

PlanResult make_result(const Plan& plan, const LotSize& lot, const QualitySpec& spec) {
    return {plan, risks(plan, lot, spec), realized_quality_levels(lot, spec)};
}

}  // namespace

std::optional<Count> max_acceptance_number(Count n, const LotSize& lot, const QualitySpec& spec,
                                           const RiskBounds& bounds) {
    bounds.validate();
    validate_plan(Plan{n, 0}, lot);
    const auto levels = realized_quality_levels(lot, spec);
    const double limit = bounds.beta_max + kRiskTolerance;
    if (lot.is_infinite()) {
        return largest_c_within(BinomialTerms(n, levels.beta.value), n, n, limit);
    }
    HypergeometricTerms terms(n, levels.beta.numerator, lot.size());
    const Count full = terms.upper_support();
    return largest_c_within(std::move(terms), n, full, limit);
}

PlanResult optimal_plan(const LotSize& lot, const QualitySpec& spec, const RiskBounds& bounds,
                        const PlannerOptions& options) {
    spec.validate();
    bounds.validate();
    const Count last = lot.is_finite() ? lot.size() : options.scan_cap;
    for (Count n = 1; n <= last; ++n) {
        const auto c = max_acceptance_number(n, lot, spec, bounds);
        if (!c) continue;
        const Plan plan{n, *c};
        if (producers_risk(plan, lot, spec) <= bounds.alpha_max + kRiskTolerance) {
            return make_result(plan, lot, spec);
        }
    }
    if (lot.is_finite()) {
        // Unreachable: full inspection with c = floor(p_aql N) has zero risks.
        throw NoPlanError("no admissible plan for lot size " + lot.to_string());
    }
    throw NoPlanError("no admissible plan with sample size up to " + std::to_string(options.scan_cap));
}

PlanTable plan_table(Count lot_min, Count lot_max, const QualitySpec& spec, const RiskBounds& bounds,
                     const PlannerOptions& options) {
    if (lot_min < 1 || lot_max < lot_min) throw DomainError("plan_table: require 1 <= N_min <= N_max");
    spec.validate();
    bounds.validate();
    LogGammaTable::shared();  // build once before workers start

    const auto count = static_cast<std::size_t>(lot_max - lot_min + 1);
    PlanTable table;
    table.rows.resize(count);

    unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
    workers = std::clamp<unsigned>(workers, 1, static_cast<unsigned>(std::min<std::size_t>(count, 64)));

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto work = [&] {
        try {
            for (std::size_t i = next++; i < count; i = next++) {
                const Count lot = lot_min + static_cast<Count>(i);
                table.rows[i] = {lot, optimal_plan(LotSize::finite(lot), spec, bounds, options)};
            }
        } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
        }
    };

    if (workers == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

PlanResult brute_force_oracle(Count lot, const QualitySpec& spec, const RiskBounds& bounds) {
    if (lot < 1) throw DomainError("brute_force_oracle: lot size must be >= 1");
    if (lot > kOracleCostGuard) {
        throw CostGuardError("brute_force_oracle: lot size " + std::to_string(lot) + " exceeds cost guard " +
                             std::to_string(kOracleCostGuard));
    }
    spec.validate();
    bounds.validate();
    const auto levels = realized_quality_levels(LotSize::finite(lot), spec);
    const Count k_alpha = levels.alpha.numerator;
    const Count k_beta = levels.beta.numerator;

    for (Count n = 1; n <= lot; ++n) {
        std::optional<Count> best;
        for (Count c = 0; c <= n; ++c) {
            const double alpha = 1.0 - hypergeometric_cdf(c, n, k_alpha, lot);
            const double beta = hypergeometric_cdf(c, n, k_beta, lot);
            if (alpha <= bounds.alpha_max + kRiskTolerance && beta <= bounds.beta_max + kRiskTolerance) {
                best = c;
            }
        }
        if (best) return make_result(Plan{n, *best}, LotSize::finite(lot), spec);
    }
    throw NoPlanError("brute_force_oracle: no admissible plan for lot size " + std::to_string(lot));
}

}  // namespace accsample
