#include "accsample/scheme.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <sstream>
#include <string_view>

namespace accsample {

SchemeParseError::SchemeParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

SchemeValidationError::SchemeValidationError(std::size_t row, const std::string& what)
    : std::runtime_error("row " + std::to_string(row + 1) + ": " + what), row_(row) {}

Plan PlanRule::instantiate(Count lot) const noexcept {
    switch (kind_) {
        case Kind::fixed: return {value_, c_};
        case Kind::full: return {lot, c_};
        case Kind::offset: return {lot - value_, c_};
    }
    return {value_, c_};
}

std::string PlanRule::sample_label() const {
    switch (kind_) {
        case Kind::fixed: return std::to_string(value_);
        case Kind::full: return "N";
        case Kind::offset: return "N-" + std::to_string(value_);
    }
    return {};
}

std::string PlanRule::rule_token() const {
    switch (kind_) {
        case Kind::fixed: return "n:" + std::to_string(value_);
        case Kind::full: return "full";
        case Kind::offset: return "offset:" + std::to_string(value_);
    }
    return {};
}

Scheme::Scheme(std::vector<SchemeRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) throw SchemeValidationError(0, "scheme has no rows");
    Count expected = 1;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& row = rows_[i];
        if (i > 0 && !rows_[i - 1].to) throw SchemeValidationError(i, "row follows an open-ended row");
        if (row.from != expected) {
            throw SchemeValidationError(i, "expected row to start at N = " + std::to_string(expected) +
                                               ", found " + std::to_string(row.from));
        }
        if (row.to && *row.to < row.from) throw SchemeValidationError(i, "row ends before it starts");
        if (row.rule.acceptance_number() < 0) throw SchemeValidationError(i, "negative acceptance number");
        if (row.to) expected = *row.to + 1;
    }
}

Scheme default_mid_scheme() {
    return Scheme({
        {1, 14, PlanRule::full(0)},
        {15, 18, PlanRule::fixed(14, 0)},
        {19, 25, PlanRule::offset(4, 0)},
        {26, 35, PlanRule::fixed(22, 0)},
        {36, 54, PlanRule::fixed(28, 0)},
        {55, 99, PlanRule::fixed(34, 0)},
        {100, 199, PlanRule::fixed(58, 1)},
        {200, 449, PlanRule::fixed(82, 2)},
        {450, 1499, PlanRule::fixed(86, 2)},
        {1500, std::nullopt, PlanRule::fixed(109, 3)},
    });
}

Plan scheme_lookup(Count lot, const Scheme& scheme) {
    if (lot < 1) throw DomainError("scheme_lookup: lot size must be >= 1");
    const auto& rows = scheme.rows();
    const auto it = std::find_if(rows.begin(), rows.end(), [lot](const SchemeRow& r) { return r.contains(lot); });
    if (it == rows.end()) {
        throw SchemeLookupError("lot size " + std::to_string(lot) + " is not covered by the scheme");
    }
    return it->rule.instantiate(lot);
}

// ---------------------------------------------------------------------------
// Text format

namespace {

std::string trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return std::string(s.substr(first, last - first + 1));
}

Count parse_count(const std::string& field, std::size_t line, const char* what) {
    Count value = 0;
    const auto* end = field.data() + field.size();
    auto [ptr, ec] = std::from_chars(field.data(), end, value);
    if (field.empty() || ec != std::errc{} || ptr != end || value < 0) {
        throw SchemeParseError(line, std::string("invalid ") + what + " '" + field + "'");
    }
    return value;
}

PlanRule parse_rule(const std::string& token, Count c, std::size_t line) {
    if (token == "full") return PlanRule::full(c);
    const auto colon = token.find(':');
    if (colon != std::string::npos) {
        const std::string kind = token.substr(0, colon);
        const std::string arg = trim(token.substr(colon + 1));
        if (kind == "n") {
            const Count n = parse_count(arg, line, "sample size");
            if (n < 1) throw SchemeParseError(line, "sample size must be >= 1");
            return PlanRule::fixed(n, c);
        }
        if (kind == "offset") return PlanRule::offset(parse_count(arg, line, "offset"), c);
    }
    throw SchemeParseError(line, "unknown rule '" + token + "' (expected n:<int>, full or offset:<int>)");
}

}  // namespace

Scheme parse_scheme(std::istream& in) {
    std::vector<SchemeRow> rows;
    std::string raw;
    std::size_t line = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;

        std::vector<std::string> fields;
        std::stringstream ss(text);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(trim(field));
        if (!text.empty() && text.back() == ',') fields.emplace_back();

        if (!seen_content && !fields.empty() && fields[0] == "from") {
            seen_content = true;
            continue;
        }
        seen_content = true;
        if (fields.size() != 4) {
            throw SchemeParseError(line, "expected 4 comma-separated fields, found " + std::to_string(fields.size()));
        }
        SchemeRow row;
        row.from = parse_count(fields[0], line, "lower bound");
        if (row.from < 1) throw SchemeParseError(line, "lower bound must be >= 1");
        if (fields[1] != "inf") row.to = parse_count(fields[1], line, "upper bound");
        const Count c = parse_count(fields[3], line, "acceptance number");
        row.rule = parse_rule(fields[2], c, line);
        rows.push_back(row);
    }
    if (rows.empty()) throw SchemeParseError(line, "scheme contains no rows");
    return Scheme(std::move(rows));
}

Scheme parse_scheme(const std::string& text) {
    std::istringstream in(text);
    return parse_scheme(in);
}

std::string format_scheme(const Scheme& scheme) {
    std::string out = "from,to,rule,c\n";
    for (const auto& row : scheme.rows()) {
        out += std::to_string(row.from) + ',' + (row.to ? std::to_string(*row.to) : "inf") + ',' +
               row.rule.rule_token() + ',' + std::to_string(row.rule.acceptance_number()) + '\n';
    }
    return out;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct Extremum {
    double value = 0.0;
    std::optional<Count> at;
    bool set = false;

    void offer_min(double v, std::optional<Count> where) {
        if (!set || v < value) *this = {v, where, true};
    }
    void offer_max(double v, std::optional<Count> where) {
        if (!set || v > value) *this = {v, where, true};
    }
};

}  // namespace

std::vector<RowValidation> validate_scheme(const Scheme& scheme, const QualitySpec& spec,
                                           const RiskBounds& bounds, Count lot_cap) {
    spec.validate();
    bounds.validate();
    const auto& rows = scheme.rows();
    const Count largest_boundary = rows.back().to ? *rows.back().to : rows.back().from;
    if (lot_cap < largest_boundary) {
        throw DomainError("validate_scheme: lot cap " + std::to_string(lot_cap) +
                          " is below the largest row boundary " + std::to_string(largest_boundary));
    }

    std::vector<RowValidation> report;
    report.reserve(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& row = rows[i];
        const Count last = row.to.value_or(lot_cap);
        Extremum a_min, a_max, b_min, b_max;

        for (Count lot = row.from; lot <= last; ++lot) {
            const Plan plan = row.rule.instantiate(lot);
            const auto lot_size = LotSize::finite(lot);
            if (!is_valid_plan(plan, lot_size)) {
                throw SchemeValidationError(i, "rule " + row.rule.rule_token() + " gives invalid plan (" +
                                                   std::to_string(plan.n) + ", " + std::to_string(plan.c) +
                                                   ") at N = " + std::to_string(lot));
            }
            const auto r = risks(plan, lot_size, spec);
            a_min.offer_min(r.alpha, lot);
            a_max.offer_max(r.alpha, lot);
            b_min.offer_min(r.beta, lot);
            b_max.offer_max(r.beta, lot);
        }
        if (!row.to) {
            if (row.rule.kind() != PlanRule::Kind::fixed) {
                throw SchemeValidationError(i, "open-ended row needs a fixed sample size");
            }
            const Plan plan = row.rule.instantiate(0);
            const auto r = risks(plan, LotSize::infinite(), spec);
            a_min.offer_min(r.alpha, std::nullopt);
            a_max.offer_max(r.alpha, std::nullopt);
            b_min.offer_min(r.beta, std::nullopt);
            b_max.offer_max(r.beta, std::nullopt);
        }

        RowValidation v;
        v.row = i;
        v.range = row;
        v.alpha_min = a_min.value;
        v.alpha_max = a_max.value;
        v.beta_min = b_min.value;
        v.beta_max = b_max.value;
        v.alpha_min_at = a_min.at;
        v.alpha_max_at = a_max.at;
        v.beta_min_at = b_min.at;
        v.beta_max_at = b_max.at;
        v.admissible = v.alpha_max <= bounds.alpha_max + kRiskTolerance &&
                       v.beta_max <= bounds.beta_max + kRiskTolerance;
        report.push_back(v);
    }
    return report;
}

}  // namespace accsample
