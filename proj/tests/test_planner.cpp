#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "accsample/planner.hpp"

using namespace accsample;
using Catch::Approx;

TEST_CASE("max_acceptance_number", "[planner]") {
    const auto inf = LotSize::infinite();
    // Binomial values at c = 3 and c = 4 bracket the bound.
    REQUIRE(binomial_cdf(3, 109, 0.07) <= 0.05);
    REQUIRE(binomial_cdf(4, 109, 0.07) == Approx(0.114).margin(1e-3));
    CHECK(max_acceptance_number(109, inf) == 3);
    CHECK(max_acceptance_number(22, LotSize::finite(43)) == 0);

    REQUIRE(std::pow(0.93, 5) == Approx(0.696).margin(1e-3));
    CHECK_FALSE(max_acceptance_number(5, inf).has_value());

    // Full inspection tolerates every defective count below ceil(0.07 N).
    CHECK(max_acceptance_number(100, LotSize::finite(100)) == 6);
    CHECK_THROWS_AS(max_acceptance_number(0, inf), DomainError);
    CHECK_THROWS_AS(max_acceptance_number(44, LotSize::finite(43)), DomainError);
}

TEST_CASE("optimal_plan reproduces the reference plans", "[planner]") {
    auto r = optimal_plan(LotSize::infinite());
    CHECK(r.plan == Plan{109, 3});
    CHECK(r.risks.alpha == Approx(0.0243).margin(5e-4));
    CHECK(r.risks.beta == Approx(0.0485).margin(5e-4));

    CHECK(optimal_plan(LotSize::finite(258)).plan == Plan{57, 1});

    r = optimal_plan(LotSize::finite(400));
    CHECK(r.plan == Plan{82, 2});
    CHECK(r.risks.alpha == Approx(0.028).margin(1e-3));

    CHECK(optimal_plan(LotSize::finite(10)).plan == Plan{10, 0});

    r = optimal_plan(LotSize::finite(143));
    CHECK(r.plan == Plan{51, 1});
    CHECK(r.risks.alpha == 0.0);

    r = optimal_plan(LotSize::finite(43));
    CHECK(r.plan == Plan{22, 0});
    CHECK(r.realized.beta.numerator == 4);
}

TEST_CASE("optimal_plan honours the scan cap", "[planner]") {
    PlannerOptions tight;
    tight.scan_cap = 100;
    CHECK_THROWS_AS(optimal_plan(LotSize::infinite(), {}, {}, tight), NoPlanError);
    tight.scan_cap = 109;
    CHECK(optimal_plan(LotSize::infinite(), {}, {}, tight).plan == Plan{109, 3});
}

TEST_CASE("plan_table", "[planner][table]") {
    const auto table = plan_table(1, 450);
    REQUIRE(table.rows.size() == 450);
    for (std::size_t i = 0; i < table.rows.size(); ++i) CHECK(table.rows[i].lot == static_cast<Count>(i + 1));

    CHECK(table.rows[0].result.plan == Plan{1, 0});
    CHECK(table.rows[0].result.risks.alpha == 0.0);
    CHECK(table.rows[0].result.risks.beta == 0.0);
    for (Count lot = 1; lot < 15; ++lot) CHECK(table.rows[lot - 1].result.plan == Plan{lot, 0});
    CHECK(table.rows[42].result.plan == Plan{22, 0});
    CHECK(table.rows[142].result.plan == Plan{51, 1});
    CHECK(table.rows[257].result.plan == Plan{57, 1});
    CHECK(table.rows[399].result.plan == Plan{82, 2});

    for (const auto& row : table.rows) {
        CHECK(is_admissible(row.result.plan, LotSize::finite(row.lot)));
        if (row.lot < 100 * (row.result.plan.c + 1)) CHECK(row.result.risks.alpha == 0.0);
    }

    SECTION("thread count does not change the result") {
        PlannerOptions one, four;
        one.threads = 1;
        four.threads = 4;
        const auto a = plan_table(300, 700, {}, {}, one);
        const auto b = plan_table(300, 700, {}, {}, four);
        REQUIRE(a.rows.size() == b.rows.size());
        for (std::size_t i = 0; i < a.rows.size(); ++i) {
            CHECK(a.rows[i].result.plan == b.rows[i].result.plan);
            CHECK(a.rows[i].result.risks.alpha == b.rows[i].result.risks.alpha);
        }
    }

    CHECK_THROWS_AS(plan_table(5, 4), DomainError);
    CHECK_THROWS_AS(plan_table(0, 4), DomainError);
}

TEST_CASE("brute_force_oracle", "[planner][oracle]") {
    CHECK(brute_force_oracle(258).plan == Plan{57, 1});
    CHECK(brute_force_oracle(14).plan == Plan{14, 0});
    CHECK(brute_force_oracle(600).plan == optimal_plan(LotSize::finite(600)).plan);
    CHECK_THROWS_AS(brute_force_oracle(2001), CostGuardError);

    for (Count lot = 1; lot <= 250; ++lot) {
        CHECK(brute_force_oracle(lot).plan == optimal_plan(LotSize::finite(lot)).plan);
    }
}

TEST_CASE("oracle equivalence under custom parameters", "[planner][oracle]") {
    const QualitySpec spec{0.02, 0.10};
    const RiskBounds bounds{0.10, 0.08};
    for (Count lot = 1; lot <= 150; ++lot) {
        CHECK(brute_force_oracle(lot, spec, bounds).plan == optimal_plan(LotSize::finite(lot), spec, bounds).plan);
    }
    const auto inf = optimal_plan(LotSize::infinite(), spec, bounds);
    CHECK(is_admissible(inf.plan, LotSize::infinite(), spec, bounds));
    CHECK_FALSE(is_admissible({inf.plan.n - 1, inf.plan.c}, LotSize::infinite(), spec, bounds));
}

TEST_CASE("minimality and sufficiency of the largest feasible c", "[planner][property]") {
    for (Count lot = 1; lot <= 300; ++lot) {
        const auto size = LotSize::finite(lot);
        const auto best = optimal_plan(size).plan;

        for (Count n = 1; n <= std::min(lot, best.n + 5); ++n) {
            const auto c_max = max_acceptance_number(n, size);
            bool any = false;
            for (Count c = 0; c <= n; ++c) any = any || is_admissible({n, c}, size);
            const bool via_c_max = c_max && is_admissible({n, *c_max}, size);
            CHECK(any == via_c_max);
            if (n < best.n) CHECK_FALSE(any);
        }
    }
}
