// CSV, JSON and plain-text renderings of plans, tables, OC curves, scheme
// validations and interpretation comparisons. Probabilities carry six
// decimals in machine formats and two decimal percent digits in text.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "accsample/planner.hpp"
#include "accsample/scheme.hpp"
#include "accsample/welmec.hpp"

namespace accsample {

inline constexpr const char* kPlanTableHeader = "N,n,c,alpha,beta,p_alpha_num,p_beta_num";
inline constexpr const char* kOcHeader = "p_numerator,p_denominator_or_0_for_infinite,p_value,acceptance_probability";

std::string format_probability(double p);  // "0.024315"
std::string format_percent(double p);      // "2.43"

// Plans and tables
void write_plan_text(std::ostream& out, const LotSize& lot, const PlanResult& result);
void write_plan_csv(std::ostream& out, const LotSize& lot, const PlanResult& result);
std::string plan_json(const LotSize& lot, const PlanResult& result);

void write_plan_table_csv(std::ostream& out, const PlanTable& table);
void write_plan_table_text(std::ostream& out, const PlanTable& table);
std::string plan_table_json(const PlanTable& table);

struct ParsedTableRow {
    Count lot = 0;
    Plan plan;
    double alpha = 0.0;
    double beta = 0.0;
    Count p_alpha_num = 0;
    Count p_beta_num = 0;
};

/// Reads a table written by write_plan_table_csv. Throws std::runtime_error
/// on a wrong header or malformed row.
std::vector<ParsedTableRow> parse_plan_table_csv(std::istream& in);

// OC curves
void write_oc_csv(std::ostream& out, const std::vector<OcPoint>& curve);
void write_oc_text(std::ostream& out, const std::vector<OcPoint>& curve);
std::string oc_json(const std::vector<OcPoint>& curve);

// Scheme validation, laid out like the published scheme table
void write_validation_csv(std::ostream& out, const std::vector<RowValidation>& rows);
void write_validation_text(std::ostream& out, const std::vector<RowValidation>& rows);
std::string validation_json(const std::vector<RowValidation>& rows);

// Interpretation comparison
void write_comparison_text(std::ostream& out, const ComparisonReport& report);
std::string comparison_json(const ComparisonReport& report);

}  // namespace accsample
