// Probability kernel for attribute acceptance sampling.
//
// Binomial (infinite lot), hypergeometric (finite lot) and Gamma-continued
// hypergeometric acceptance probabilities. All pmf terms are evaluated in
// log-space and accumulated with compensated summation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace accsample {

using Count = std::int64_t;
using Probability = double;

/// Raised for arguments outside a function's mathematical domain.
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Lot size: a finite count N >= 1 or the infinite-lot marker.
class LotSize {
public:
    static LotSize finite(Count n);
    static LotSize infinite() { return LotSize{}; }

    /// Parses a positive integer or the literal `inf`.
    static LotSize parse(const std::string& text);

    bool is_infinite() const { return !size_; }
    bool is_finite() const { return size_.has_value(); }
    /// Lot size; throws DomainError for the infinite lot.
    Count size() const;

    std::string to_string() const;

    friend bool operator==(const LotSize&, const LotSize&) = default;

private:
    LotSize() = default;
    explicit LotSize(Count n) : size_(n) {}
    std::optional<Count> size_;
};

/// Sampling plan: inspect n items, accept iff at most c are non-conforming.
struct Plan {
    Count n = 0;
    Count c = 0;

    friend bool operator==(const Plan&, const Plan&) = default;
};

/// Throws DomainError unless 1 <= n, 0 <= c <= n and, for finite lots, n <= N.
void validate_plan(const Plan& plan, const LotSize& lot);
bool is_valid_plan(const Plan& plan, const LotSize& lot) noexcept;

/// Neumaier-compensated running sum.
class CompensatedSum {
public:
    void add(double value) noexcept;
    double value() const noexcept { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Precomputed ln Gamma(k) for integer k in [1, cap]; read-only after
/// construction. Arguments beyond the cap fall back to std::lgamma.
class LogGammaTable {
public:
    static constexpr std::size_t kDefaultCap = 100002;

    explicit LogGammaTable(std::size_t cap = kDefaultCap);

    /// Process-wide table with the default cap, built on first use.
    static const LogGammaTable& shared();

    /// ln k! for k >= 0.
    double log_factorial(Count k) const;
    std::size_t cap() const noexcept { return values_.size() - 1; }

private:
    std::vector<double> values_;  // values_[k] = ln Gamma(k)
};

/// ln C(a, b) = lnΓ(a+1) − lnΓ(b+1) − lnΓ(a−b+1) for 0 <= b <= a.
double log_binomial_coefficient(double a, double b);

/// ln of the generalized binomial coefficient Γ(a+1) / (Γ(b+1) Γ(a−b+1))
/// for real a >= 0 and integer b. The coefficient is taken as zero (returns
/// -inf) unless b >= 0 and a − b + 1 > 0, which for integer a is the usual
/// convention C(a, b) = 0 for b > a. The value is therefore never negative.
double generalized_log_binomial(double a, Count b);

/// Streams binomial pmf terms P(x; n, p) for x = 0, 1, 2, ..., each
/// evaluated in log-space from the shared lnΓ table.
class BinomialTerms {
public:
    BinomialTerms(Count n, Probability p);
    /// Returns P(x) for the next x and advances; 0 once x > n.
    double next();

private:
    Count n_;
    Probability p_;
    Count x_ = 0;
    double log_p_ = 0.0;
    double log_q_ = 0.0;
};

/// Streams hypergeometric pmf terms P(x; n, K, N) for x = 0, 1, 2, ...
class HypergeometricTerms {
public:
    HypergeometricTerms(Count n, Count defectives, Count lot,
                        const LogGammaTable& table = LogGammaTable::shared());
    double next();
    Count lower_support() const noexcept { return lo_; }
    Count upper_support() const noexcept { return hi_; }

private:
    double log_pmf(Count x) const;

    const LogGammaTable* table_;
    Count n_, k_, lot_;
    Count lo_, hi_;
    Count x_ = 0;
    double log_total_;
};

double binomial_pmf(Count x, Count n, Probability p);
double hypergeometric_pmf(Count x, Count n, Count defectives, Count lot);

/// P(X <= c) for X ~ Binomial(n, p).
Probability binomial_cdf(Count c, Count n, Probability p);

/// P(X <= c) for X ~ Hypergeometric(draws n, K defectives, lot N).
/// Exactly 1 whenever c covers the whole support.
Probability hypergeometric_cdf(Count c, Count n, Count defectives, Count lot);

/// Single term of the Gamma-continued hypergeometric pmf with a real
/// defective count. May be negative for non-integer counts.
double interpolated_pmf(Count x, Count n, double defectives, Count lot);

/// Acceptance probability of `plan` for a lot of size N whose non-conforming
/// proportion p need not make pN an integer. Equals hypergeometric_cdf when
/// pN is integral; clamped to [0, 1].
Probability interpolated_acceptance(const Plan& plan, Count lot, double p);

}  // namespace accsample
