#include "accsample/report.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "json.hpp"

namespace accsample {

using Json = nlohmann::ordered_json;

namespace {

double rounded6(double p) { return std::round(p * 1e6) / 1e6; }

Json lot_json(const LotSize& lot) {
    if (lot.is_infinite()) return "inf";
    return lot.size();
}

Json level_json(const QualityLevel& level) {
    Json j;
    if (level.is_exact()) {
        j["numerator"] = level.numerator;
        j["denominator"] = level.denominator;
    }
    j["p"] = level.value;
    return j;
}

std::string level_text(const QualityLevel& level) {
    if (level.is_exact()) {
        return fmt::format("{}/{} ({:.6f})", level.numerator, level.denominator, level.value);
    }
    return fmt::format("{:.6f}", level.value);
}

std::string at_text(const std::optional<Count>& at) { return at ? std::to_string(*at) : "inf"; }

Json at_json(const std::optional<Count>& at) {
    if (at) return *at;
    return "inf";
}

Json plan_result_json(const LotSize& lot, const PlanResult& r) {
    Json j;
    j["lot"] = lot_json(lot);
    j["plan"] = {{"n", r.plan.n}, {"c", r.plan.c}};
    j["risks"] = {{"alpha", rounded6(r.risks.alpha)}, {"beta", rounded6(r.risks.beta)}};
    j["realized"] = {{"p_alpha", level_json(r.realized.alpha)}, {"p_beta", level_json(r.realized.beta)}};
    return j;
}

std::string table_row_csv(const std::string& lot, const PlanResult& r) {
    return fmt::format("{},{},{},{},{},{},{}\n", lot, r.plan.n, r.plan.c, format_probability(r.risks.alpha),
                       format_probability(r.risks.beta), r.realized.alpha.numerator, r.realized.beta.numerator);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

}  // namespace

std::string format_probability(double p) { return fmt::format("{:.6f}", p); }

std::string format_percent(double p) {
    // Avoid printing "-0.00" for tiny negative rounding residue.
    const double pct = 100.0 * p;
    return fmt::format("{:.2f}", std::abs(pct) < 5e-3 ? 0.0 : pct);
}

// ---------------------------------------------------------------------------
// Plans and tables

void write_plan_text(std::ostream& out, const LotSize& lot, const PlanResult& r) {
    fmt::print(out, "N        {}\n", lot.to_string());
    fmt::print(out, "n        {}\n", r.plan.n);
    fmt::print(out, "c        {}\n", r.plan.c);
    fmt::print(out, "alpha    {} %\n", format_percent(r.risks.alpha));
    fmt::print(out, "beta     {} %\n", format_percent(r.risks.beta));
    fmt::print(out, "p_alpha  {}\n", level_text(r.realized.alpha));
    fmt::print(out, "p_beta   {}\n", level_text(r.realized.beta));
}

void write_plan_csv(std::ostream& out, const LotSize& lot, const PlanResult& r) {
    out << kPlanTableHeader << '\n' << table_row_csv(lot.to_string(), r);
}

std::string plan_json(const LotSize& lot, const PlanResult& r) { return plan_result_json(lot, r).dump(2) + "\n"; }

void write_plan_table_csv(std::ostream& out, const PlanTable& table) {
    std::string buffer = kPlanTableHeader;
    buffer += '\n';
    for (const auto& row : table.rows) buffer += table_row_csv(std::to_string(row.lot), row.result);
    out << buffer;
}

void write_plan_table_text(std::ostream& out, const PlanTable& table) {
    fmt::print(out, "{:>8} {:>6} {:>3} {:>9} {:>9}\n", "N", "n", "c", "alpha %", "beta %");
    for (const auto& row : table.rows) {
        const auto& r = row.result;
        fmt::print(out, "{:>8} {:>6} {:>3} {:>9} {:>9}\n", row.lot, r.plan.n, r.plan.c,
                   format_percent(r.risks.alpha), format_percent(r.risks.beta));
    }
}

std::string plan_table_json(const PlanTable& table) {
    Json rows = Json::array();
    for (const auto& row : table.rows) rows.push_back(plan_result_json(LotSize::finite(row.lot), row.result));
    return rows.dump(2) + "\n";
}

std::vector<ParsedTableRow> parse_plan_table_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kPlanTableHeader) {
        throw std::runtime_error("plan table: missing or unexpected header");
    }
    std::vector<ParsedTableRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) f.push_back(field);
        if (f.size() != 7) throw std::runtime_error(fmt::format("plan table line {}: expected 7 fields", line_no));
        auto count = [&](const std::string& s) {
            Count v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size()) {
                throw std::runtime_error(fmt::format("plan table line {}: bad integer '{}'", line_no, s));
            }
            return v;
        };
        auto real = [&](const std::string& s) {
            std::size_t used = 0;
            const double v = std::stod(s, &used);
            if (used != s.size()) throw std::runtime_error(fmt::format("plan table line {}: bad number", line_no));
            return v;
        };
        rows.push_back({count(f[0]), Plan{count(f[1]), count(f[2])}, real(f[3]), real(f[4]), count(f[5]),
                        count(f[6])});
    }
    return rows;
}

// ---------------------------------------------------------------------------
// OC curves

void write_oc_csv(std::ostream& out, const std::vector<OcPoint>& curve) {
    std::string buffer = kOcHeader;
    buffer += '\n';
    for (const auto& pt : curve) {
        buffer += fmt::format("{},{},{:.6f},{}\n", pt.level.numerator, pt.level.denominator, pt.level.value,
                              format_probability(pt.pac));
    }
    out << buffer;
}

void write_oc_text(std::ostream& out, const std::vector<OcPoint>& curve) {
    fmt::print(out, "{:>10} {:>10}\n", "p %", "Pac %");
    for (const auto& pt : curve) {
        fmt::print(out, "{:>10} {:>10}\n", format_percent(pt.level.value), format_percent(pt.pac));
    }
}

std::string oc_json(const std::vector<OcPoint>& curve) {
    Json arr = Json::array();
    for (const auto& pt : curve) arr.push_back({{"p", rounded6(pt.level.value)}, {"pac", rounded6(pt.pac)}});
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Scheme validation

void write_validation_csv(std::ostream& out, const std::vector<RowValidation>& rows) {
    out << "from,to,n,c,alpha_from,alpha_to,beta_from,beta_to,admissible\n";
    for (const auto& v : rows) {
        fmt::print(out, "{},{},{},{},{},{},{},{},{}\n", v.range.from,
                   v.range.to ? std::to_string(*v.range.to) : "inf", v.range.rule.sample_label(),
                   v.range.rule.acceptance_number(), format_percent(v.alpha_min), format_percent(v.alpha_max),
                   format_percent(v.beta_min), format_percent(v.beta_max), v.admissible ? "true" : "false");
    }
}

void write_validation_text(std::ostream& out, const std::vector<RowValidation>& rows) {
    fmt::print(out, "{:>6} {:>6} {:>6} {:>3} | {:>6} {:>6} | {:>6} {:>6} | {:>10} {:>10} | {}\n", "from", "to", "n",
               "c", "a_from", "a_to", "b_from", "b_to", "a_min@N", "b_min@N", "admissible");
    bool all = true;
    for (const auto& v : rows) {
        all = all && v.admissible;
        fmt::print(out, "{:>6} {:>6} {:>6} {:>3} | {:>6} {:>6} | {:>6} {:>6} | {:>10} {:>10} | {}\n", v.range.from,
                   v.range.to ? std::to_string(*v.range.to) : "inf", v.range.rule.sample_label(),
                   v.range.rule.acceptance_number(), format_percent(v.alpha_min), format_percent(v.alpha_max),
                   format_percent(v.beta_min), format_percent(v.beta_max), at_text(v.alpha_min_at),
                   at_text(v.beta_min_at), yes_no(v.admissible));
    }
    fmt::print(out, "risks in %; verdict: {}\n", all ? "all rows admissible" : "scheme NOT admissible");
}

std::string validation_json(const std::vector<RowValidation>& rows) {
    Json arr = Json::array();
    for (const auto& v : rows) {
        Json j;
        j["from"] = v.range.from;
        j["to"] = v.range.to ? Json(*v.range.to) : Json("inf");
        j["rule"] = v.range.rule.rule_token();
        j["c"] = v.range.rule.acceptance_number();
        j["alpha"] = {{"min", rounded6(v.alpha_min)}, {"min_at", at_json(v.alpha_min_at)},
                      {"max", rounded6(v.alpha_max)}, {"max_at", at_json(v.alpha_max_at)}};
        j["beta"] = {{"min", rounded6(v.beta_min)}, {"min_at", at_json(v.beta_min_at)},
                     {"max", rounded6(v.beta_max)}, {"max_at", at_json(v.beta_max_at)}};
        j["admissible"] = v.admissible;
        arr.push_back(j);
    }
    return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Comparison

void write_comparison_text(std::ostream& out, const ComparisonReport& report) {
    const auto& h = report.hypothesis_plan;
    fmt::print(out, "lot size {}\n", report.lot.to_string());
    fmt::print(out, "hypothesis-optimal plan ({}, {}): alpha {} %, beta {} %\n\n", h.plan.n, h.plan.c,
               format_percent(h.risks.alpha), format_percent(h.risks.beta));
    fmt::print(out, "{:>6} {:>4} | {:>8} {:>8} | {:>10} {:>10} | {:>10} {:>10} {:>9}\n", "n", "c", "alpha %",
               "beta %", "a_cont %", "b_cont %", "hypothesis", "continuous", "pointwise");
    for (const auto& e : report.evaluated_plans) {
        fmt::print(out, "{:>6} {:>4} | {:>8} {:>8} | {:>10} {:>10} | {:>10} {:>10} {:>9}\n", e.plan.n, e.plan.c,
                   format_percent(e.risks.alpha), format_percent(e.risks.beta), format_percent(e.welmec.alpha_cont),
                   format_percent(e.welmec.beta_cont), yes_no(e.hypothesis_admissible),
                   yes_no(e.continuous_admissible),
                   e.pointwise_admissible ? yes_no(*e.pointwise_admissible) : std::string("n/a"));
    }
}

std::string comparison_json(const ComparisonReport& report) {
    Json j;
    j["lot"] = lot_json(report.lot);
    j["hypothesis_plan"] = plan_result_json(report.lot, report.hypothesis_plan);
    Json arr = Json::array();
    for (const auto& e : report.evaluated_plans) {
        Json c;
        c["plan"] = {{"n", e.plan.n}, {"c", e.plan.c}};
        c["risks"] = {{"alpha", rounded6(e.risks.alpha)}, {"beta", rounded6(e.risks.beta)}};
        c["welmec_risks"] = {{"alpha_cont", rounded6(e.welmec.alpha_cont)},
                             {"beta_cont", rounded6(e.welmec.beta_cont)}};
        c["hypothesis_admissible"] = e.hypothesis_admissible;
        c["continuous_admissible"] = e.continuous_admissible;
        c["pointwise_admissible"] = e.pointwise_admissible ? Json(*e.pointwise_admissible) : Json(nullptr);
        arr.push_back(c);
    }
    j["evaluated_plans"] = arr;
    return j.dump(2) + "\n";
}

}  // namespace accsample
