#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "kieval/fixtures.hpp"
#include "kieval/ingest.hpp"
#include "kieval/matching.hpp"
#include "kieval/metrics.hpp"
#include "kieval/model.hpp"
#include "kieval/report.hpp"
#include "kieval/rpa.hpp"

namespace {

// Exit codes: 0 success, 1 validation findings, 2 input/usage errors.
constexpr int kOk = 0;
constexpr int kFindings = 1;
constexpr int kInputError = 2;

struct CommonOpts {
    std::string gt_path;
    std::string pred_path;
    std::string normalize = "none";
    std::string missing_doc = "error";
    bool infer_group_type = false;
    bool no_timestamp = false;
    int jobs = 1;
    std::string out;
};

const std::map<std::string, kieval::Normalization> kNormModes{
    {"none", kieval::Normalization::None},
    {"trim", kieval::Normalization::Trim},
    {"casefold", kieval::Normalization::Casefold},
    {"trim+casefold", kieval::Normalization::TrimCasefold},
};

kieval::EvalConfig make_config(const CommonOpts& o) {
    kieval::EvalConfig cfg;
    cfg.normalization = kNormModes.at(o.normalize);
    cfg.missing_doc_policy = o.missing_doc == "empty" ? kieval::MissingDocPolicy::TreatAsEmpty
                                                      : kieval::MissingDocPolicy::Error;
    cfg.infer_group_type = o.infer_group_type;
    return cfg;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--gt", o.gt_path, "Ground-truth dataset JSON")->required();
    cmd->add_option("--pred", o.pred_path, "Prediction dataset JSON")->required();
    cmd->add_option("--normalize", o.normalize, "Value normalization")
        ->check(CLI::IsMember({"none", "trim", "casefold", "trim+casefold"}));
    cmd->add_option("--missing-doc", o.missing_doc, "Unpaired document policy")
        ->check(CLI::IsMember({"error", "empty"}));
    cmd->add_flag("--infer-group-type", o.infer_group_type,
                  "Derive group type from the entity-type dot prefix when absent");
    cmd->add_flag("--no-timestamp", o.no_timestamp, "Omit the timestamp from JSON output");
    cmd->add_option("--jobs", o.jobs, "Worker threads for per-document evaluation")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--out", o.out, "Write the main output to a file instead of stdout");
}

kieval::RunManifest make_manifest(const CommonOpts& o, const kieval::EvalConfig& cfg,
                                  std::int64_t warnings) {
    kieval::RunManifest m;
    m.config = cfg;
    m.inputs.push_back({o.gt_path, kieval::fnv1a64_file_hex(o.gt_path)});
    m.inputs.push_back({o.pred_path, kieval::fnv1a64_file_hex(o.pred_path)});
    if (!o.no_timestamp) m.timestamp = kieval::utc_timestamp_now();
    m.warnings = warnings;
    return m;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw kieval::IngestError("cannot write '" + out_path + "'");
        out << text;
    }
}

// Structural invariants must hold before any scoring; a violation in either
// input is an input error here (the validate command reports them as findings).
void reject_invalid(const kieval::DatasetFile& file) {
    for (const auto& doc : file.documents) {
        auto v = kieval::validate_document(doc);
        if (!v.empty())
            throw kieval::IngestError(file.source_path + ": " + v.front());
    }
}

int run_evaluate(const CommonOpts& o, const std::string& format, bool per_doc,
                 bool per_type) {
    auto cfg = make_config(o);
    auto gt = kieval::parse_dataset_file(o.gt_path, cfg);
    auto pred = kieval::parse_dataset_file(o.pred_path, cfg);
    reject_invalid(gt);
    reject_invalid(pred);
    auto pairs = kieval::pair_documents(gt, pred, cfg);
    auto docs = kieval::evaluate_pairs(pairs, o.jobs);
    auto report = kieval::aggregate(docs, per_doc);
    auto manifest = make_manifest(
        o, cfg, static_cast<std::int64_t>(gt.unknown_field_warnings +
                                          pred.unknown_field_warnings));

    if (format == "csv")
        emit(o.out, kieval::render_report_csv(report, per_type));
    else if (format == "table")
        emit(o.out, kieval::render_report_table(report, per_type));
    else
        emit(o.out, kieval::render_report_json(report, manifest));
    return kOk;
}

int run_sweep(const CommonOpts& o, const std::vector<double>& tau_list, double tau_min,
              double tau_max, int tau_steps, double auto_rate_floor) {
    auto cfg = make_config(o);

    std::vector<double> grid = tau_list;
    if (grid.empty()) {
        if (tau_steps < 2 || tau_max < tau_min)
            throw CLI::ValidationError("--tau-steps/--tau-min/--tau-max form an empty grid");
        for (int i = 0; i < tau_steps; ++i)
            grid.push_back(tau_min + (tau_max - tau_min) * i / (tau_steps - 1));
    }
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (grid[i] < 0.0 || grid[i] > 1.0)
            throw CLI::ValidationError("tau values must lie in [0,1]");
        if (i > 0 && grid[i] <= grid[i - 1])
            throw CLI::ValidationError("tau grid must be strictly increasing");
    }
    cfg.tau_grid = grid;

    auto gt = kieval::parse_dataset_file(o.gt_path, cfg);
    auto pred = kieval::parse_dataset_file(o.pred_path, cfg);
    reject_invalid(gt);
    reject_invalid(pred);
    auto pairs = kieval::pair_documents(gt, pred, cfg);

    std::vector<kieval::DocumentExtraction> gts, preds;
    std::vector<kieval::GroupMatchResult> matches;
    for (const auto& [g, p] : pairs) {
        gts.push_back(g);
        preds.push_back(p);
        matches.push_back(kieval::match_groups(p, g));
    }
    auto input = kieval::collect_sweep_input(preds, matches, gts);
    auto points = kieval::sweep(input, grid);
    auto knee = kieval::knee_point(points, auto_rate_floor);
    auto manifest = make_manifest(
        o, cfg, static_cast<std::int64_t>(gt.unknown_field_warnings +
                                          pred.unknown_field_warnings));

    emit(o.out, kieval::render_sweep_csv(points));
    // Keep the CSV stream clean: the summary goes to stderr when the curve
    // goes to stdout.
    std::string summary =
        kieval::render_sweep_summary_json(points, knee, auto_rate_floor, manifest);
    if (o.out.empty())
        std::cerr << summary;
    else
        std::cout << summary;
    return kOk;
}

int run_validate(const std::string& path, const std::string& normalize, bool infer) {
    kieval::EvalConfig cfg;
    cfg.normalization = kNormModes.at(normalize);
    cfg.infer_group_type = infer;
    auto file = kieval::parse_dataset_file(path, cfg);

    std::size_t violations = 0;
    for (const auto& doc : file.documents) {
        for (const auto& v : kieval::validate_document(doc)) {
            std::cout << v << '\n';
            ++violations;
        }
    }
    if (file.unknown_field_warnings > 0)
        std::cerr << path << ": ignored " << file.unknown_field_warnings
                  << " unknown field(s)\n";
    return violations == 0 ? kOk : kFindings;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"KIE evaluation: group-matched entity/group F1, correction-cost "
                 "aligned score, and confidence-threshold sweep"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kieval::kToolVersion);

    CommonOpts eval_opts;
    std::string format = "json";
    bool per_doc = false;
    bool per_type = false;
    auto* cmd_eval = app.add_subcommand("evaluate", "Score predictions against ground truth");
    add_common(cmd_eval, eval_opts);
    cmd_eval->add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"json", "csv", "table"}));
    cmd_eval->add_flag("--per-doc", per_doc, "Include a per-document breakdown (JSON only)");
    cmd_eval->add_flag("--per-type", per_type,
                       "Include per-entity-type rows in csv/table output");

    CommonOpts sweep_opts;
    std::vector<double> tau_list;
    double tau_min = 0.0, tau_max = 1.0, auto_rate_floor = 0.0;
    int tau_steps = 101;
    auto* cmd_sweep =
        app.add_subcommand("sweep", "Confidence-threshold trade-off curve (CSV)");
    add_common(cmd_sweep, sweep_opts);
    cmd_sweep->add_option("--tau-list", tau_list, "Explicit threshold grid");
    cmd_sweep->add_option("--tau-min", tau_min, "Grid start (default 0)");
    cmd_sweep->add_option("--tau-max", tau_max, "Grid end (default 1)");
    cmd_sweep->add_option("--tau-steps", tau_steps, "Grid size (default 101)");
    cmd_sweep->add_option("--auto-rate-floor", auto_rate_floor,
                          "Automation-rate floor for the knee point");

    std::string validate_path, validate_norm = "none";
    bool validate_infer = false;
    auto* cmd_validate = app.add_subcommand("validate", "Check a dataset file");
    cmd_validate->add_option("path", validate_path, "Dataset JSON")->required();
    cmd_validate->add_option("--normalize", validate_norm, "Value normalization")
        ->check(CLI::IsMember({"none", "trim", "casefold", "trim+casefold"}));
    cmd_validate->add_flag("--infer-group-type", validate_infer,
                           "Derive group type from the entity-type dot prefix");

    try {
        app.parse(argc, argv);
        if (*cmd_eval) return run_evaluate(eval_opts, format, per_doc, per_type);
        if (*cmd_sweep)
            return run_sweep(sweep_opts, tau_list, tau_min, tau_max, tau_steps,
                             auto_rate_floor);
        if (*cmd_validate) return run_validate(validate_path, validate_norm, validate_infer);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kInputError;
    } catch (const kieval::IngestError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const kieval::MissingConfidenceError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}
