// Interval-based simplified sampling schemes: representation, lookup,
// text format and exhaustive risk validation.

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "accsample/risk_model.hpp"

namespace accsample {

/// Malformed scheme text. Carries the 1-based line number.
class SchemeParseError : public std::runtime_error {
public:
    SchemeParseError(std::size_t line, const std::string& what);
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Structurally invalid scheme (gap, overlap, not starting at N = 1) or a
/// rule that yields an invalid plan; `row` is the 0-based row index.
class SchemeValidationError : public std::runtime_error {
public:
    SchemeValidationError(std::size_t row, const std::string& what);
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

/// N outside the scheme's coverage.
class SchemeLookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PlanRule {
public:
    enum class Kind { fixed, full, offset };

    static PlanRule fixed(Count n, Count c) { return {Kind::fixed, n, c}; }
    static PlanRule full(Count c) { return {Kind::full, 0, c}; }
    static PlanRule offset(Count k, Count c) { return {Kind::offset, k, c}; }

    Kind kind() const noexcept { return kind_; }
    /// Sample size for fixed rules, subtracted offset for offset rules.
    Count value() const noexcept { return value_; }
    Count acceptance_number() const noexcept { return c_; }

    /// Plan for lot size N (not validated).
    Plan instantiate(Count lot) const noexcept;

    /// "N", "N-4" or the fixed sample size.
    std::string sample_label() const;
    /// Rule field of the text format: "full", "offset:4" or "n:82".
    std::string rule_token() const;

    friend bool operator==(const PlanRule&, const PlanRule&) = default;

private:
    PlanRule(Kind kind, Count value, Count c) : kind_(kind), value_(value), c_(c) {}
    Kind kind_;
    Count value_;
    Count c_;
};

struct SchemeRow {
    Count from = 1;
    std::optional<Count> to;  // nullopt = open-ended
    PlanRule rule = PlanRule::full(0);

    bool contains(Count lot) const noexcept { return lot >= from && (!to || lot <= *to); }
};

/// Ordered, contiguous rows starting at N = 1. Immutable once built.
class Scheme {
public:
    /// Throws SchemeValidationError on gaps, overlaps, reversed bounds, or a
    /// bounded row following an open-ended one.
    explicit Scheme(std::vector<SchemeRow> rows);

    const std::vector<SchemeRow>& rows() const noexcept { return rows_; }
    bool covers_all_lots() const noexcept { return !rows_.back().to; }

private:
    std::vector<SchemeRow> rows_;
};

/// The ten-row simplified scheme for AQL 1 %, LQ 7 % and 5 % risks.
Scheme default_mid_scheme();

Plan scheme_lookup(Count lot, const Scheme& scheme);

/// Parses lines of the form `from,to,rule,c` where `to` may be `inf` and
/// `rule` is `n:<int>`, `full` or `offset:<int>`. Blank lines, `#`
/// comments and a leading `from,to,rule,c` header are ignored.
Scheme parse_scheme(std::istream& in);
Scheme parse_scheme(const std::string& text);
std::string format_scheme(const Scheme& scheme);

struct RowValidation {
    std::size_t row = 0;
    SchemeRow range;
    Probability alpha_min = 0.0, alpha_max = 0.0;
    Probability beta_min = 0.0, beta_max = 0.0;
    // Lot size attaining each extremum; nullopt marks the binomial limit.
    std::optional<Count> alpha_min_at, alpha_max_at, beta_min_at, beta_max_at;
    bool admissible = false;
};

inline constexpr Count kDefaultValidationCap = 100'000;

/// Risks of every lot size covered by each row; the open-ended row is
/// evaluated on [from, lot_cap] plus the binomial limit.
std::vector<RowValidation> validate_scheme(const Scheme& scheme, const QualitySpec& spec = {},
                                           const RiskBounds& bounds = {},
                                           Count lot_cap = kDefaultValidationCap);

}  // namespace accsample
