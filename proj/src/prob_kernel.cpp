#include "accsample/prob_kernel.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>

namespace accsample {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Absolute distance below which a real defective count is treated as integral.
constexpr double kIntegralSnap = 1e-9;

bool is_integral(double v) { return std::isfinite(v) && v == std::floor(v); }

}  // namespace

// ---------------------------------------------------------------------------
// LotSize / Plan

LotSize LotSize::finite(Count n) {
    if (n < 1) throw DomainError("lot size must be a positive integer, got " + std::to_string(n));
    return LotSize{n};
}

LotSize LotSize::parse(const std::string& text) {
    if (text == "inf" || text == "INF" || text == "Inf") return infinite();
    Count value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (text.empty() || ec != std::errc{} || ptr != last || value < 1) {
        throw DomainError("invalid lot size '" + text + "': expected a positive integer or 'inf'");
    }
    return LotSize{value};
}

Count LotSize::size() const {
    if (!size_) throw DomainError("infinite lot has no finite size");
    return *size_;
}

std::string LotSize::to_string() const { return size_ ? std::to_string(*size_) : "inf"; }

void validate_plan(const Plan& plan, const LotSize& lot) {
    if (plan.n < 1) throw DomainError("sample size must be at least 1");
    if (plan.c < 0 || plan.c > plan.n) {
        throw DomainError("acceptance number " + std::to_string(plan.c) + " outside [0, " +
                          std::to_string(plan.n) + "]");
    }
    if (lot.is_finite() && plan.n > lot.size()) {
        throw DomainError("sample size " + std::to_string(plan.n) + " exceeds lot size " +
                          std::to_string(lot.size()));
    }
}

bool is_valid_plan(const Plan& plan, const LotSize& lot) noexcept {
    return plan.n >= 1 && plan.c >= 0 && plan.c <= plan.n &&
           (lot.is_infinite() || plan.n <= lot.size());
}

// ---------------------------------------------------------------------------
// Summation and log-Gamma support

void CompensatedSum::add(double value) noexcept {
    const double t = sum_ + value;
    if (std::abs(sum_) >= std::abs(value)) {
        compensation_ += (sum_ - t) + value;
    } else {
        compensation_ += (value - t) + sum_;
    }
    sum_ = t;
}

LogGammaTable::LogGammaTable(std::size_t cap) : values_(std::max<std::size_t>(cap, 2) + 1) {
    values_[0] = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < values_.size(); ++k) {
        values_[k] = std::lgamma(static_cast<double>(k));
    }
}

const LogGammaTable& LogGammaTable::shared() {
    static const LogGammaTable table;
    return table;
}

double LogGammaTable::log_factorial(Count k) const {
    const auto idx = static_cast<std::size_t>(k) + 1;
    if (idx < values_.size()) return values_[idx];
    return std::lgamma(static_cast<double>(k) + 1.0);
}

double log_binomial_coefficient(double a, double b) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("log_binomial_coefficient: a must be >= 0");
    if (!(b >= 0.0) || !(b <= a)) throw DomainError("log_binomial_coefficient: b outside [0, a]");

    if (is_integral(a) && is_integral(b)) {
        const double k = std::min(b, a - b);
        if (k == 0.0) return 0.0;
        // Short products are more accurate than a difference of large lnΓ values.
        if (k <= 30.0) {
            double acc = 0.0;
            for (double i = 1.0; i <= k; i += 1.0) acc += std::log((a - k + i) / i);
            return acc;
        }
        const auto& t = LogGammaTable::shared();
        return t.log_factorial(static_cast<Count>(a)) - t.log_factorial(static_cast<Count>(b)) -
               t.log_factorial(static_cast<Count>(a - b));
    }
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

double generalized_log_binomial(double a, Count b) {
    if (!(a >= 0.0) || !std::isfinite(a)) throw DomainError("generalized_log_binomial: a must be >= 0");
    const auto bd = static_cast<double>(b);
    if (b < 0 || a - bd + 1.0 <= 0.0) return kNegInf;
    if (is_integral(a)) return log_binomial_coefficient(a, bd);
    return std::lgamma(a + 1.0) - std::lgamma(bd + 1.0) - std::lgamma(a - bd + 1.0);
}

// ---------------------------------------------------------------------------
// Term streams

BinomialTerms::BinomialTerms(Count n, Probability p) : n_(n), p_(p) {
    if (n < 0) throw DomainError("binomial: n must be >= 0");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial: p outside [0, 1]");
    if (p > 0.0 && p < 1.0) {
        log_p_ = std::log(p);
        log_q_ = std::log1p(-p);
    }
}

double BinomialTerms::next() {
    const Count x = x_++;
    if (x > n_) return 0.0;
    if (p_ == 0.0) return x == 0 ? 1.0 : 0.0;
    if (p_ == 1.0) return x == n_ ? 1.0 : 0.0;
    const auto& t = LogGammaTable::shared();
    const double log_choose = t.log_factorial(n_) - t.log_factorial(x) - t.log_factorial(n_ - x);
    return std::exp(log_choose + static_cast<double>(x) * log_p_ +
                    static_cast<double>(n_ - x) * log_q_);
}

HypergeometricTerms::HypergeometricTerms(Count n, Count defectives, Count lot,
                                         const LogGammaTable& table)
    : table_(&table), n_(n), k_(defectives), lot_(lot) {
    if (lot < 0 || defectives < 0 || defectives > lot || n < 0 || n > lot) {
        throw DomainError("hypergeometric: require 0 <= K <= N and 0 <= n <= N");
    }
    lo_ = std::max<Count>(0, n - (lot - defectives));
    hi_ = std::min(n, defectives);
    log_total_ = table_->log_factorial(lot) - table_->log_factorial(n) - table_->log_factorial(lot - n);
}

double HypergeometricTerms::log_pmf(Count x) const {
    const auto& t = *table_;
    const double good = t.log_factorial(k_) - t.log_factorial(x) - t.log_factorial(k_ - x);
    const Count rest = lot_ - k_;
    const double bad = t.log_factorial(rest) - t.log_factorial(n_ - x) - t.log_factorial(rest - n_ + x);
    return good + bad - log_total_;
}

double HypergeometricTerms::next() {
    const Count x = x_++;
    if (x < lo_ || x > hi_) return 0.0;
    return std::exp(log_pmf(x));
}

// ---------------------------------------------------------------------------
// Distribution functions

double binomial_pmf(Count x, Count n, Probability p) {
    if (x < 0 || x > n) return 0.0;
    BinomialTerms terms(n, p);
    for (Count i = 0; i < x; ++i) terms.next();
    return terms.next();
}

double hypergeometric_pmf(Count x, Count n, Count defectives, Count lot) {
    HypergeometricTerms terms(n, defectives, lot);
    if (x < terms.lower_support() || x > terms.upper_support()) return 0.0;
    for (Count i = 0; i < x; ++i) terms.next();
    return terms.next();
}

Probability binomial_cdf(Count c, Count n, Probability p) {
    if (n < 0 || c < 0 || c > n) throw DomainError("binomial_cdf: require 0 <= c <= n");
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binomial_cdf: p outside [0, 1]");
    if (c == n) return 1.0;
    BinomialTerms terms(n, p);
    CompensatedSum sum;
    for (Count x = 0; x <= c; ++x) sum.add(terms.next());
    return std::clamp(sum.value(), 0.0, 1.0);
}

Probability hypergeometric_cdf(Count c, Count n, Count defectives, Count lot) {
    if (c < 0 || c > n) throw DomainError("hypergeometric_cdf: require 0 <= c <= n");
    HypergeometricTerms terms(n, defectives, lot);
    if (c >= terms.upper_support()) return 1.0;
    if (c < terms.lower_support()) return 0.0;
    CompensatedSum sum;
    for (Count x = 0; x <= c; ++x) sum.add(terms.next());
    return std::clamp(sum.value(), 0.0, 1.0);
}

double interpolated_pmf(Count x, Count n, double defectives, Count lot) {
    if (lot < 1 || n < 0 || n > lot) throw DomainError("interpolated_pmf: require 0 <= n <= N");
    if (!(defectives >= 0.0) || !(defectives <= static_cast<double>(lot))) {
        throw DomainError("interpolated_pmf: defective count outside [0, N]");
    }
    if (x < 0 || x > n) return 0.0;
    const double good = generalized_log_binomial(defectives, x);
    const double bad = generalized_log_binomial(static_cast<double>(lot) - defectives, n - x);
    if (good == kNegInf || bad == kNegInf) return 0.0;
    const double log_total = log_binomial_coefficient(static_cast<double>(lot), static_cast<double>(n));
    return std::exp(good + bad - log_total);
}

Probability interpolated_acceptance(const Plan& plan, Count lot, double p) {
    validate_plan(plan, LotSize::finite(lot));
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("interpolated_acceptance: p outside [0, 1]");
    double defectives = p * static_cast<double>(lot);
    const double nearest = std::round(defectives);
    if (std::abs(defectives - nearest) <= kIntegralSnap) {
        return hypergeometric_cdf(plan.c, plan.n, static_cast<Count>(nearest), lot);
    }
    CompensatedSum sum;
    for (Count x = 0; x <= plan.c; ++x) sum.add(interpolated_pmf(x, plan.n, defectives, lot));
    return std::clamp(sum.value(), 0.0, 1.0);
}

}  // namespace accsample
