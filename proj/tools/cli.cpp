#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "CLI11.hpp"
#include "accsample/planner.hpp"
#include "accsample/report.hpp"
#include "accsample/risk_model.hpp"
#include "accsample/scheme.hpp"
#include "accsample/welmec.hpp"

namespace accsample::cli {

namespace {

/// Raised for bad user input that CLI11 itself does not catch.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a scheme fails validation (exit code 4).
class ValidationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    QualitySpec spec;
    RiskBounds bounds;
    std::string format;  // empty selects the command's default
    std::string output;
    std::uint64_t seed = 1;
    Count lot_cap = kDefaultValidationCap;
    Count scan_cap = 1'000'000;
    unsigned threads = 0;

    PlannerOptions planner() const { return {scan_cap, threads}; }

    void validate() const {
        spec.validate();
        bounds.validate();
        if (!format.empty() && format != "csv" && format != "json" && format != "text") {
            throw UsageError("--format must be csv, json or text");
        }
    }

    std::string format_or(const char* fallback) const { return format.empty() ? fallback : format; }
};

LotSize parse_lot(const std::string& text) {
    try {
        return LotSize::parse(text);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

Plan parse_candidate(const std::string& token) {
    const auto colon = token.find(':');
    if (colon == std::string::npos) throw UsageError("candidate '" + token + "' is not of the form n:c");
    try {
        std::size_t used_n = 0, used_c = 0;
        const std::string ns = token.substr(0, colon), cs = token.substr(colon + 1);
        const long long n = std::stoll(ns, &used_n);
        const long long c = std::stoll(cs, &used_c);
        if (used_n != ns.size() || used_c != cs.size()) throw std::invalid_argument("trailing");
        return Plan{n, c};
    } catch (const std::exception&) {
        throw UsageError("candidate '" + token + "' is not of the form n:c");
    }
}

void check_plan(const Plan& plan, const LotSize& lot) {
    try {
        validate_plan(plan, lot);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

Scheme load_scheme(bool builtin, const std::string& file) {
    if (builtin == !file.empty()) throw UsageError("specify exactly one of --builtin or --file");
    if (builtin) return default_mid_scheme();
    std::ifstream in(file);
    if (!in) throw UsageError("cannot open scheme file '" + file + "'");
    return parse_scheme(in);
}

// Output sink: --output file or the caller's stream.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary);
            if (!file_) throw UsageError("cannot open output file '" + path + "'");
            stream_ = &file_;
        }
    }
    std::ostream& get() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Attribute acceptance sampling plans for lot conformity assessment"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.set_config("--config", "", "key = value file with defaults for the global options");
    app.add_option("--aql", cfg.spec.p_aql, "Acceptable quality level (proportion)")->capture_default_str();
    app.add_option("--lq", cfg.spec.p_lq, "Limit quality (proportion)")->capture_default_str();
    app.add_option("--alpha-max", cfg.bounds.alpha_max, "Maximum producers' risk")->capture_default_str();
    app.add_option("--beta-max", cfg.bounds.beta_max, "Maximum consumers' risk")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format: csv, json or text");
    app.add_option("--output", cfg.output, "Write results to this file instead of stdout");
    app.add_option("--seed", cfg.seed, "Random seed for simulations")->capture_default_str();
    app.add_option("--n-cap", cfg.lot_cap, "Largest lot size checked for open-ended scheme rows")
        ->capture_default_str();
    app.add_option("--scan-cap", cfg.scan_cap, "Largest sample size scanned for infinite lots")
        ->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads for table generation (0 = all cores)");

    // plan
    std::string plan_lot;
    auto* plan_cmd = app.add_subcommand("plan", "Optimal plan for one lot size");
    plan_cmd->add_option("--lot-size", plan_lot, "Positive integer or 'inf'")->required();

    // table
    Count table_from = 0, table_to = 0;
    auto* table_cmd = app.add_subcommand("table", "Optimal plans for a range of lot sizes (CSV)");
    table_cmd->add_option("--from", table_from)->required();
    table_cmd->add_option("--to", table_to)->required();

    // oc
    Count oc_n = 0, oc_c = 0;
    std::string oc_lot;
    std::vector<double> oc_grid;
    OcGridOptions grid_opts;
    auto* oc_cmd = app.add_subcommand("oc", "Operating characteristic curve data");
    oc_cmd->add_option("--n", oc_n)->required();
    oc_cmd->add_option("--c", oc_c)->required();
    oc_cmd->add_option("--lot-size", oc_lot)->required();
    oc_cmd->add_option("--grid", oc_grid, "Explicit quality levels")->delimiter(',');
    oc_cmd->add_option("--grid-points", grid_opts.points, "Grid size for infinite lots")->capture_default_str();
    oc_cmd->add_option("--grid-max", grid_opts.p_max, "Grid end for infinite lots")->capture_default_str();

    // scheme
    auto* scheme_cmd = app.add_subcommand("scheme", "Simplified sampling schemes");
    scheme_cmd->require_subcommand(1);
    bool scheme_builtin = false;
    std::string scheme_file;
    Count lookup_lot = 0;
    auto* validate_cmd = scheme_cmd->add_subcommand("validate", "Risk extrema of every scheme row");
    validate_cmd->add_flag("--builtin", scheme_builtin, "Use the built-in scheme");
    validate_cmd->add_option("--file", scheme_file, "Scheme file (from,to,rule,c lines)");
    auto* lookup_cmd = scheme_cmd->add_subcommand("lookup", "Plan a scheme assigns to a lot size");
    lookup_cmd->add_flag("--builtin", scheme_builtin, "Use the built-in scheme");
    lookup_cmd->add_option("--file", scheme_file, "Scheme file (from,to,rule,c lines)");
    lookup_cmd->add_option("--lot-size", lookup_lot)->required();

    // compare
    std::string compare_lot;
    std::vector<std::string> candidates;
    auto* compare_cmd = app.add_subcommand("compare", "Hypothesis vs. WELMEC risks of candidate plans");
    compare_cmd->add_option("--lot-size", compare_lot)->required();
    compare_cmd->add_option("--candidates", candidates, "Comma-separated n:c pairs")->delimiter(',')->required();

    // simulate
    Count sim_n = 0, sim_c = 0;
    std::string sim_lot;
    double sim_p = 0.0;
    std::int64_t sim_trials = 0;
    auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo check of an acceptance probability");
    sim_cmd->add_option("--n", sim_n)->required();
    sim_cmd->add_option("--c", sim_c)->required();
    sim_cmd->add_option("--lot-size", sim_lot)->required();
    sim_cmd->add_option("--p", sim_p)->required();
    sim_cmd->add_option("--trials", sim_trials)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kSuccess;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    }

    try {
        cfg.validate();

        if (*plan_cmd) {
            const LotSize lot = parse_lot(plan_lot);
            const auto result = optimal_plan(lot, cfg.spec, cfg.bounds, cfg.planner());
            Sink sink(cfg.output, out);
            const auto fmt = cfg.format_or("text");
            if (fmt == "json") sink.get() << plan_json(lot, result);
            else if (fmt == "csv") write_plan_csv(sink.get(), lot, result);
            else write_plan_text(sink.get(), lot, result);
        } else if (*table_cmd) {
            if (table_from < 1 || table_to < table_from) throw UsageError("table needs 1 <= --from <= --to");
            const auto table = plan_table(table_from, table_to, cfg.spec, cfg.bounds, cfg.planner());
            Sink sink(cfg.output, out);
            const auto fmt = cfg.format_or("csv");
            if (fmt == "json") sink.get() << plan_table_json(table);
            else if (fmt == "text") write_plan_table_text(sink.get(), table);
            else write_plan_table_csv(sink.get(), table);
        } else if (*oc_cmd) {
            const LotSize lot = parse_lot(oc_lot);
            const Plan plan{oc_n, oc_c};
            check_plan(plan, lot);
            std::optional<std::vector<double>> grid;
            if (!oc_grid.empty()) grid = oc_grid;
            std::vector<OcPoint> curve;
            try {
                curve = oc_curve(plan, lot, grid, grid_opts);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            Sink sink(cfg.output, out);
            const auto fmt = cfg.format_or("csv");
            if (fmt == "json") sink.get() << oc_json(curve);
            else if (fmt == "text") write_oc_text(sink.get(), curve);
            else write_oc_csv(sink.get(), curve);
        } else if (*validate_cmd) {
            const Scheme scheme = load_scheme(scheme_builtin, scheme_file);
            const auto report = validate_scheme(scheme, cfg.spec, cfg.bounds, cfg.lot_cap);
            Sink sink(cfg.output, out);
            const auto fmt = cfg.format_or("text");
            if (fmt == "json") sink.get() << validation_json(report);
            else if (fmt == "csv") write_validation_csv(sink.get(), report);
            else write_validation_text(sink.get(), report);
            for (const auto& row : report) {
                if (!row.admissible) throw ValidationFailure(fmt::format("scheme row {} is not admissible", row.row + 1));
            }
        } else if (*lookup_cmd) {
            const Scheme scheme = load_scheme(scheme_builtin, scheme_file);
            if (lookup_lot < 1) throw UsageError("--lot-size must be a positive integer");
            const Plan plan = scheme_lookup(lookup_lot, scheme);
            Sink sink(cfg.output, out);
            const auto fmt = cfg.format_or("text");
            if (fmt == "json") {
                fmt::print(sink.get(), "{{\"lot\": {}, \"plan\": {{\"n\": {}, \"c\": {}}}}}\n", lookup_lot, plan.n,
                           plan.c);
            } else if (fmt == "csv") {
                fmt::print(sink.get(), "N,n,c\n{},{},{}\n", lookup_lot, plan.n, plan.c);
            } else {
                fmt::print(sink.get(), "N {}: n = {}, c = {}\n", lookup_lot, plan.n, plan.c);
            }
        } else if (*compare_cmd) {
            const LotSize lot = parse_lot(compare_lot);
            std::vector<Plan> plans;
            for (const auto& token : candidates) {
                plans.push_back(parse_candidate(token));
                check_plan(plans.back(), lot);
            }
            const auto report = compare_interpretations(lot, cfg.spec, cfg.bounds, plans, cfg.planner());
            Sink sink(cfg.output, out);
            if (cfg.format_or("text") == "json") sink.get() << comparison_json(report);
            else write_comparison_text(sink.get(), report);
        } else if (*sim_cmd) {
            const LotSize lot = parse_lot(sim_lot);
            const Plan plan{sim_n, sim_c};
            check_plan(plan, lot);
            if (sim_trials < 1) throw UsageError("--trials must be >= 1");
            double estimate = 0.0;
            try {
                estimate = monte_carlo_acceptance(plan, lot, sim_p, sim_trials, cfg.seed);
            } catch (const DomainError& e) {
                throw UsageError(e.what());
            }
            const double analytic =
                lot.is_infinite()
                    ? binomial_cdf(plan.c, plan.n, sim_p)
                    : hypergeometric_cdf(plan.c, plan.n, snapped_floor(sim_p * static_cast<double>(lot.size())),
                                         lot.size());
            const double sigma = std::sqrt(analytic * (1.0 - analytic) / static_cast<double>(sim_trials));
            const double deviation = sigma > 0.0 ? (estimate - analytic) / sigma : 0.0;
            Sink sink(cfg.output, out);
            if (cfg.format_or("text") == "json") {
                fmt::print(sink.get(),
                           "{{\"estimate\": {:.6f}, \"analytic\": {:.6f}, \"sigma\": {:.6f}, \"deviation_sigma\": "
                           "{:.3f}, \"trials\": {}, \"seed\": {}}}\n",
                           estimate, analytic, sigma, deviation, sim_trials, cfg.seed);
            } else {
                fmt::print(sink.get(), "estimate   {:.6f}\nanalytic   {:.6f}\nsigma      {:.6f}\ndeviation  {:.3f} sigma\n",
                           estimate, analytic, sigma, deviation);
            }
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kUsageError;
    } catch (const SchemeParseError& e) {
        err << "error: scheme file " << e.what() << '\n';
        return kUsageError;
    } catch (const NoPlanError& e) {
        err << "error: " << e.what() << '\n';
        return kNoPlan;
    } catch (const SchemeValidationError& e) {
        err << "error: scheme " << e.what() << '\n';
        return kValidationFailure;
    } catch (const SchemeLookupError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    } catch (const ValidationFailure& e) {
        err << "error: " << e.what() << '\n';
        return kValidationFailure;
    }
    return kSuccess;
}

}  // namespace accsample::cli
