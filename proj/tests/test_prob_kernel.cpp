// Unit and property tests for the probability kernel.
//
// Exact references come from integer arithmetic (Pascal's triangle) and
// boost::multiprecision rationals; neither shares code with the log-space
// implementation under test.

#include <catch2/catch_amalgamated.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <thread>
#include <vector>

#include "accsample/prob_kernel.hpp"

using namespace accsample;
using Catch::Approx;
using boost::multiprecision::cpp_int;
using boost::multiprecision::cpp_rational;

namespace {

// C(a, b) for a <= 60 in exact 64-bit integers.
class Pascal {
public:
    explicit Pascal(int rows) : rows_(rows + 1) {
        for (int a = 0; a <= rows; ++a) {
            rows_[a].assign(a + 1, 1);
            for (int b = 1; b < a; ++b) rows_[a][b] = rows_[a - 1][b - 1] + rows_[a - 1][b];
        }
    }
    std::uint64_t operator()(int a, int b) const {
        if (b < 0 || b > a) return 0;
        return rows_[a][b];
    }

private:
    std::vector<std::vector<std::uint64_t>> rows_;
};

double exact_hypergeometric_cdf(const Pascal& choose, int c, int n, int k, int lot) {
    std::uint64_t numerator = 0;
    for (int x = 0; x <= c; ++x) numerator += choose(k, x) * choose(lot - k, n - x);
    return static_cast<double>(static_cast<long double>(numerator) / static_cast<long double>(choose(lot, n)));
}

cpp_rational exact_binomial_cdf(int c, int n, const cpp_rational& p) {
    cpp_rational sum = 0;
    cpp_int coeff = 1;
    for (int x = 0; x <= c; ++x) {
        if (x > 0) coeff = coeff * (n - x + 1) / x;
        cpp_rational term = coeff;
        for (int i = 0; i < x; ++i) term *= p;
        for (int i = 0; i < n - x; ++i) term *= (1 - p);
        sum += term;
    }
    return sum;
}

// C(a, b) for real a and integer b via the falling-factorial product.
long double product_binomial(long double a, int b) {
    long double acc = 1.0L;
    for (int i = 1; i <= b; ++i) acc *= (a - b + i) / i;
    return acc;
}

}  // namespace

TEST_CASE("LotSize parsing and plan validation", "[prob_kernel][types]") {
    CHECK(LotSize::parse("258").size() == 258);
    CHECK(LotSize::parse("inf").is_infinite());
    CHECK(LotSize::parse("258").to_string() == "258");
    CHECK(LotSize::infinite().to_string() == "inf");
    CHECK_THROWS_AS(LotSize::parse("0"), DomainError);
    CHECK_THROWS_AS(LotSize::parse("-3"), DomainError);
    CHECK_THROWS_AS(LotSize::parse("12x"), DomainError);
    CHECK_THROWS_AS(LotSize::parse(""), DomainError);
    CHECK_THROWS_AS(LotSize::infinite().size(), DomainError);

    CHECK(is_valid_plan({57, 1}, LotSize::finite(258)));
    CHECK_FALSE(is_valid_plan({0, 0}, LotSize::infinite()));
    CHECK_FALSE(is_valid_plan({3, 4}, LotSize::infinite()));
    CHECK_FALSE(is_valid_plan({11, 0}, LotSize::finite(10)));
    CHECK_THROWS_AS(validate_plan({2, 3}, LotSize::infinite()), DomainError);
}

TEST_CASE("log_binomial_coefficient", "[prob_kernel][lnC]") {
    CHECK(log_binomial_coefficient(5, 2) == Approx(std::log(10.0)).epsilon(1e-14));
    for (double n : {0.0, 1.0, 17.0, 1e6}) CHECK(log_binomial_coefficient(n, 0) == 0.0);

    SECTION("real first argument matches the product formula") {
        const long double expected = std::log(product_binomial(43.57L, 27));
        CHECK(log_binomial_coefficient(43.57, 27) == Approx(static_cast<double>(expected)).epsilon(1e-9));
    }

    SECTION("integer arguments up to 1e6") {
        for (double a : {60.0, 1000.0, 99999.0, 1e6}) {
            for (double b : {1.0, 2.0, 30.0, 31.0, std::floor(a / 3), std::floor(a / 2)}) {
                // Σ ln((a-b+i)/i) in long double as the reference.
                long double ref = 0.0L;
                for (long double i = 1; i <= b; ++i) ref += std::log((a - b + i) / i);
                CHECK(log_binomial_coefficient(a, b) == Approx(static_cast<double>(ref)).epsilon(1e-10));
            }
        }
    }

    SECTION("domain errors") {
        CHECK_THROWS_AS(log_binomial_coefficient(-1, 0), DomainError);
        CHECK_THROWS_AS(log_binomial_coefficient(5, 6), DomainError);
        CHECK_THROWS_AS(log_binomial_coefficient(5, -1), DomainError);
    }
}

TEST_CASE("LogGammaTable falls back beyond its cap", "[prob_kernel][table]") {
    const LogGammaTable small(10);
    CHECK(small.cap() == 10);
    CHECK(small.log_factorial(4) == Approx(std::log(24.0)).epsilon(1e-15));
    CHECK(small.log_factorial(20) == Approx(std::lgamma(21.0)).epsilon(1e-15));
    CHECK(LogGammaTable::shared().cap() == LogGammaTable::kDefaultCap);
}

TEST_CASE("generalized_log_binomial", "[prob_kernel][lnC]") {
    const double zero = -std::numeric_limits<double>::infinity();
    CHECK(generalized_log_binomial(5.0, 7) == zero);
    CHECK(generalized_log_binomial(5.0, -1) == zero);
    CHECK(generalized_log_binomial(5.0, 2) == Approx(std::log(10.0)).epsilon(1e-15));
    CHECK(generalized_log_binomial(43.57, 27) == Approx(log_binomial_coefficient(43.57, 27)).epsilon(1e-12));
    CHECK(std::exp(generalized_log_binomial(43.57, 27)) ==
          Approx(static_cast<double>(product_binomial(43.57L, 27))).epsilon(1e-9));

    // b up to a + 1 keeps every Gamma argument positive.
    CHECK(std::exp(generalized_log_binomial(99.99, 100)) ==
          Approx(static_cast<double>(product_binomial(99.99L, 100))).epsilon(1e-9));
    CHECK(std::exp(generalized_log_binomial(0.5, 1)) == Approx(0.5).epsilon(1e-15));
    // Beyond that Γ(a − b + 1) has a non-positive argument and the term is dropped.
    CHECK(generalized_log_binomial(99.99, 101) == zero);
    CHECK(generalized_log_binomial(0.5, 2) == zero);
    CHECK_THROWS_AS(generalized_log_binomial(-0.5, 1), DomainError);
}

TEST_CASE("binomial_cdf", "[prob_kernel][binomial]") {
    CHECK(binomial_cdf(3, 109, 0.01) == Approx(0.97569).margin(1e-5));
    CHECK(binomial_cdf(3, 109, 0.07) == Approx(0.04847).margin(1e-5));
    for (double p : {0.0, 0.3, 1.0}) CHECK(binomial_cdf(40, 40, p) == 1.0);
    CHECK(binomial_cdf(0, 10, 0.0) == 1.0);
    CHECK(binomial_cdf(9, 10, 1.0) == 0.0);

    SECTION("three-term exact rational oracle") {
        const double exact = exact_binomial_cdf(2, 86, cpp_rational(1, 100)).convert_to<double>();
        CHECK(exact == Approx(0.9444).margin(1e-4));
        CHECK(binomial_cdf(2, 86, 0.01) == Approx(exact).margin(1e-12));
    }

    SECTION("more exact comparisons") {
        for (int n : {1, 5, 50, 120}) {
            for (int c = 0; c <= std::min(n, 4); ++c) {
                for (int pct : {1, 7, 25}) {
                    const double exact = exact_binomial_cdf(c, n, cpp_rational(pct, 100)).convert_to<double>();
                    CHECK(binomial_cdf(c, n, pct / 100.0) == Approx(exact).margin(1e-12));
                }
            }
        }
    }

    CHECK_THROWS_AS(binomial_cdf(5, 4, 0.1), DomainError);
    CHECK_THROWS_AS(binomial_cdf(-1, 4, 0.1), DomainError);
    CHECK_THROWS_AS(binomial_cdf(1, 4, 1.5), DomainError);
}

TEST_CASE("hypergeometric_cdf", "[prob_kernel][hypergeometric]") {
    const Pascal choose(60);
    CHECK(hypergeometric_cdf(0, 21, 2, 25) == Approx(0.0200).margin(1e-12));
    CHECK(hypergeometric_cdf(0, 14, 2, 18) == Approx(exact_hypergeometric_cdf(choose, 0, 14, 2, 18)).margin(1e-12));
    CHECK(hypergeometric_cdf(0, 14, 2, 18) == Approx(0.0392).margin(1e-4));

    SECTION("full inspection observes every defective") {
        for (Count lot : {1, 7, 43, 500}) {
            for (Count k = 0; k <= std::min<Count>(lot, 6); ++k) {
                for (Count c = 0; c <= 3 && c <= lot; ++c) {
                    CHECK(hypergeometric_cdf(c, lot, k, lot) == (k <= c ? 1.0 : 0.0));
                }
            }
        }
    }

    CHECK(hypergeometric_pmf(3, 5, 2, 10) == 0.0);
    CHECK_THROWS_AS(hypergeometric_cdf(0, 5, 11, 10), DomainError);
    CHECK_THROWS_AS(hypergeometric_cdf(0, 11, 2, 10), DomainError);
    CHECK_THROWS_AS(hypergeometric_cdf(6, 5, 2, 10), DomainError);
}

TEST_CASE("exact-rational oracle for small lots", "[prob_kernel][property]") {
    const Pascal choose(60);
    double worst = 0.0;
    for (int lot = 1; lot <= 60; ++lot) {
        for (int n = 1; n <= lot; ++n) {
            for (int k = 0; k <= lot; ++k) {
                for (int c = 0; c <= std::min(3, n); ++c) {
                    const double diff = std::fabs(hypergeometric_cdf(c, n, k, lot) -
                                                  exact_hypergeometric_cdf(choose, c, n, k, lot));
                    worst = std::max(worst, diff);
                }
            }
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("pmf normalization", "[prob_kernel][property]") {
    double worst = 0.0;
    for (Count lot = 1; lot <= 500; lot += (lot < 40 ? 1 : 23)) {
        for (Count n = 0; n <= lot; n += 1 + lot / 17) {
            for (Count k = 0; k <= lot; k += 1 + lot / 13) {
                HypergeometricTerms terms(n, k, lot);
                CompensatedSum sum;
                for (Count x = 0; x <= n; ++x) sum.add(terms.next());
                worst = std::max(worst, std::fabs(sum.value() - 1.0));
            }
        }
    }
    CHECK(worst <= 1e-10);

    worst = 0.0;
    for (Count n = 1; n <= 1000; n += 37) {
        for (double p = 0.0; p <= 1.0; p += 0.05) {
            BinomialTerms terms(n, std::min(p, 1.0));
            CompensatedSum sum;
            for (Count x = 0; x <= n; ++x) sum.add(terms.next());
            worst = std::max(worst, std::fabs(sum.value() - 1.0));
        }
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("cdf monotonicity", "[prob_kernel][property]") {
    for (Count lot : {25, 143, 400}) {
        for (Count n = 1; n <= lot; n += 7) {
            for (Count k = 0; k <= lot; k += 3) {
                double previous = -1.0;
                for (Count c = 0; c <= std::min<Count>(n, 8); ++c) {
                    const double v = hypergeometric_cdf(c, n, k, lot);
                    CHECK(v >= previous);
                    previous = v;
                }
            }
            for (Count c = 0; c <= std::min<Count>(n, 4); ++c) {
                double previous = 2.0;
                for (Count k = 0; k <= lot; ++k) {
                    const double v = hypergeometric_cdf(c, n, k, lot);
                    CHECK(v <= previous + 1e-15);
                    previous = v;
                }
            }
        }
    }
    for (Count n : {5, 86, 109, 400}) {
        for (Count c = 0; c <= 5; ++c) {
            double previous = 2.0;
            for (int i = 0; i <= 100; ++i) {
                const double v = binomial_cdf(c, n, i / 100.0);
                CHECK(v <= previous + 1e-15);
                previous = v;
            }
        }
    }
}

TEST_CASE("hypergeometric converges to binomial for large lots", "[prob_kernel][property]") {
    const Count lot = 1'000'000;
    const Count k = lot / 100;
    double worst = 0.0;
    for (Count n = 1; n <= 200; ++n) {
        for (Count c = 0; c <= std::min<Count>(n, 5); ++c) {
            worst = std::max(worst, std::fabs(hypergeometric_cdf(c, n, k, lot) - binomial_cdf(c, n, 0.01)));
        }
    }
    CHECK(worst < 1e-3);
}

TEST_CASE("interpolated_acceptance", "[prob_kernel][interpolated]") {
    CHECK(interpolated_acceptance({27, 0}, 43, 0.01) == Approx(0.657).margin(1e-3));
    CHECK(interpolated_acceptance({101, 1}, 101, 0.01) == Approx(0.959).margin(5e-4));
    CHECK(interpolated_acceptance({14, 0}, 18, 2.0 / 18.0) == Approx(hypergeometric_cdf(0, 14, 2, 18)).margin(1e-12));
    CHECK(interpolated_acceptance({14, 0}, 18, 2.0 / 18.0) == Approx(0.0392).margin(1e-4));

    SECTION("reduces to the hypergeometric cdf at integral pN") {
        double worst = 0.0;
        for (Count lot = 1; lot <= 500; lot += (lot < 30 ? 1 : 19)) {
            for (Count n = 1; n <= lot; n += 1 + lot / 11) {
                for (Count k = 0; k <= lot; k += 1 + lot / 9) {
                    for (Count c = 0; c <= std::min<Count>(n, 4); ++c) {
                        const double p = static_cast<double>(k) / static_cast<double>(lot);
                        worst = std::max(worst, std::fabs(interpolated_acceptance({n, c}, lot, p) -
                                                          hypergeometric_cdf(c, n, k, lot)));
                    }
                }
            }
        }
        CHECK(worst <= 1e-9);
    }

    SECTION("Gamma path is continuous at integral defective counts") {
        for (Count lot : {18, 43, 143, 400}) {
            for (Count k : {1, 2, 5}) {
                for (Count n : {lot / 4, lot / 2, lot}) {
                    for (Count c = 0; c <= 2; ++c) {
                        CompensatedSum near;
                        for (Count x = 0; x <= c; ++x) {
                            near.add(interpolated_pmf(x, n, static_cast<double>(k) + 1e-8, lot));
                        }
                        CHECK(near.value() == Approx(hypergeometric_cdf(c, n, k, lot)).margin(1e-6));
                    }
                }
            }
        }
    }

    CHECK_THROWS_AS(interpolated_acceptance({27, 0}, 43, -0.1), DomainError);
    CHECK_THROWS_AS(interpolated_acceptance({27, 0}, 43, 1.1), DomainError);
    CHECK_THROWS_AS(interpolated_acceptance({44, 0}, 43, 0.01), DomainError);
}

TEST_CASE("shared table is safe for concurrent readers", "[prob_kernel][concurrency]") {
    const double expected = hypergeometric_cdf(2, 82, 4, 400);
    std::vector<double> seen(4, 0.0);
    {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < seen.size(); ++i) {
            pool.emplace_back([&seen, i] {
                double v = 0.0;
                for (int rep = 0; rep < 200; ++rep) v = hypergeometric_cdf(2, 82, 4, 400);
                seen[i] = v;
            });
        }
    }
    for (double v : seen) CHECK(v == expected);
}
