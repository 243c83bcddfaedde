#include "kieval/report.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace kieval {

namespace {

using ordered_json = nlohmann::ordered_json;

// Shortest round-trip decimal form, deterministic across runs.
std::string full(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, end);
}

std::string fixed4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.4f", v);
    return buf;
}

ordered_json triple_json(const F1Triple& t) {
    return {{"precision", t.precision}, {"recall", t.recall}, {"f1", t.f1}};
}

ordered_json counts_json(const Counts& c) {
    return {{"tp", c.tp},     {"fp", c.fp},   {"fn", c.fn},  {"subs", c.subs},
            {"add", c.add},   {"del", c.del}, {"error", c.error()}};
}

ordered_json scores_json(const MetricReport& rep) {
    ordered_json scores;
    scores["legacy_entity_f1"] = triple_json(rep.legacy_entity_f1);
    scores["kieval_entity_f1"] = triple_json(rep.kieval_entity_f1);
    scores["kieval_group_f1"] =
        rep.kieval_group_f1 ? triple_json(*rep.kieval_group_f1) : ordered_json(nullptr);
    scores["kieval_aligned"] = rep.kieval_aligned;
    return scores;
}

}  // namespace

std::string fnv1a64_hex(std::string_view bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string fnv1a64_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return fnv1a64_hex(buf.str());
}

std::string utc_timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::vector<DocResult> evaluate_pairs(
    const std::vector<std::pair<DocumentExtraction, DocumentExtraction>>& pairs,
    int jobs) {
    std::vector<DocResult> results(pairs.size());
    if (jobs < 1) jobs = 1;
    if (jobs == 1 || pairs.size() < 2) {
        for (std::size_t i = 0; i < pairs.size(); ++i)
            results[i] = evaluate_document(pairs[i].first, pairs[i].second);
        return results;
    }
    std::vector<std::thread> workers;
    std::size_t n = pairs.size();
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            for (std::size_t i = w; i < n; i += static_cast<std::size_t>(jobs))
                results[i] = evaluate_document(pairs[i].first, pairs[i].second);
        });
    }
    for (auto& t : workers) t.join();
    return results;
}

std::string render_report_json(const MetricReport& rep, const RunManifest& manifest) {
    ordered_json root;

    ordered_json m;
    m["tool"] = "kieval";
    m["version"] = manifest.version;
    ordered_json cfg;
    cfg["normalization"] = to_string(manifest.config.normalization);
    cfg["missing_doc_policy"] = to_string(manifest.config.missing_doc_policy);
    cfg["infer_group_type"] = manifest.config.infer_group_type;
    if (manifest.config.tau_grid) cfg["tau_grid"] = *manifest.config.tau_grid;
    m["config"] = cfg;
    m["inputs"] = ordered_json::array();
    for (const auto& in : manifest.inputs)
        m["inputs"].push_back({{"path", in.path}, {"digest", in.digest}});
    if (manifest.timestamp) m["timestamp"] = *manifest.timestamp;
    m["warnings"] = manifest.warnings;
    root["manifest"] = m;

    root["scores"] = scores_json(rep);

    ordered_json counts = counts_json(rep.ledger.overall);
    counts["legacy_tp"] = rep.legacy.tp;
    counts["legacy_fp"] = rep.legacy.fp;
    counts["legacy_fn"] = rep.legacy.fn;
    counts["group_tp"] = rep.groups.applicable ? ordered_json(rep.groups.tp) : nullptr;
    counts["group_fp"] = rep.groups.applicable ? ordered_json(rep.groups.fp) : nullptr;
    counts["group_fn"] = rep.groups.applicable ? ordered_json(rep.groups.fn) : nullptr;
    counts["gt_entities"] = rep.gt_entities;
    counts["pred_entities"] = rep.pred_entities;
    counts["documents"] = rep.documents;
    root["counts"] = counts;

    ordered_json per_type = ordered_json::object();
    for (const auto& [type, c] : rep.ledger.per_entity_type) per_type[type] = counts_json(c);
    root["per_type"] = per_type;

    ordered_json per_group = ordered_json::object();
    for (const auto& [type, c] : rep.ledger.per_group_type)
        per_group[type.empty() ? "(ungrouped)" : type] = counts_json(c);
    root["per_group_type"] = per_group;

    if (!rep.per_doc.empty()) {
        ordered_json docs = ordered_json::array();
        for (const auto& d : rep.per_doc) {
            MetricReport one = aggregate({d});
            ordered_json jd;
            jd["id"] = d.doc_id;
            jd["scores"] = scores_json(one);
            jd["counts"] = counts_json(d.ledger.overall);
            docs.push_back(jd);
        }
        root["per_doc"] = docs;
    }

    return root.dump(2) + "\n";
}

std::string render_report_csv(const MetricReport& rep, bool per_type) {
    std::ostringstream out;
    out << "key,value\n";
    auto row = [&](const char* k, const std::string& v) { out << k << ',' << v << '\n'; };
    row("legacy_entity_precision", full(rep.legacy_entity_f1.precision));
    row("legacy_entity_recall", full(rep.legacy_entity_f1.recall));
    row("legacy_entity_f1", full(rep.legacy_entity_f1.f1));
    row("kieval_entity_precision", full(rep.kieval_entity_f1.precision));
    row("kieval_entity_recall", full(rep.kieval_entity_f1.recall));
    row("kieval_entity_f1", full(rep.kieval_entity_f1.f1));
    row("kieval_group_f1", rep.kieval_group_f1 ? full(rep.kieval_group_f1->f1) : "-");
    row("kieval_aligned", full(rep.kieval_aligned));
    const auto& c = rep.ledger.overall;
    row("tp", std::to_string(c.tp));
    row("fp", std::to_string(c.fp));
    row("fn", std::to_string(c.fn));
    row("subs", std::to_string(c.subs));
    row("add", std::to_string(c.add));
    row("del", std::to_string(c.del));
    row("error", std::to_string(c.error()));
    row("documents", std::to_string(rep.documents));
    if (per_type) {
        for (const auto& [type, tc] : rep.ledger.per_entity_type) {
            auto t = f1_from_counts(tc.tp, tc.fp, tc.fn);
            out << "type." << type << ".f1," << full(t.f1) << '\n';
            out << "type." << type << ".tp," << tc.tp << '\n';
            out << "type." << type << ".fp," << tc.fp << '\n';
            out << "type." << type << ".fn," << tc.fn << '\n';
            out << "type." << type << ".error," << tc.error() << '\n';
        }
        for (const auto& [type, tc] : rep.ledger.per_group_type) {
            std::string key = type.empty() ? "(ungrouped)" : type;
            out << "group_type." << key << ".tp," << tc.tp << '\n';
            out << "group_type." << key << ".error," << tc.error() << '\n';
        }
    }
    return out.str();
}

std::string render_report_table(const MetricReport& rep, bool per_type) {
    std::ostringstream out;
    auto row = [&](const std::string& name, const std::string& v) {
        out << "  " << name;
        for (std::size_t i = name.size(); i < 22; ++i) out << ' ';
        out << v << '\n';
    };
    out << "Scores\n";
    row("Entity F1", fixed4(rep.legacy_entity_f1.f1));
    row("KIEval Entity F1", fixed4(rep.kieval_entity_f1.f1));
    row("KIEval Group F1", rep.kieval_group_f1 ? fixed4(rep.kieval_group_f1->f1) : "-");
    row("KIEval Aligned", fixed4(rep.kieval_aligned));
    const auto& c = rep.ledger.overall;
    out << "Corrections\n";
    row("Subs", std::to_string(c.subs));
    row("Add", std::to_string(c.add));
    row("Del", std::to_string(c.del));
    row("Error", std::to_string(c.error()));
    out << "Counts\n";
    row("TP", std::to_string(c.tp));
    row("FP", std::to_string(c.fp));
    row("FN", std::to_string(c.fn));
    row("Documents", std::to_string(rep.documents));
    if (per_type && !rep.ledger.per_entity_type.empty()) {
        out << "Per entity type (P / R / F1, Error)\n";
        for (const auto& [type, tc] : rep.ledger.per_entity_type) {
            auto t = f1_from_counts(tc.tp, tc.fp, tc.fn);
            row(type, fixed4(t.precision) + " / " + fixed4(t.recall) + " / " +
                          fixed4(t.f1) + ", " + std::to_string(tc.error()));
        }
    }
    return out.str();
}

std::string render_sweep_csv(const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "tau,auto_rate,kieval_aligned_tau,reviewed,subs_tau,del_tau,add,n_pr_star\n";
    for (const auto& p : points) {
        out << full(p.tau) << ',' << full(p.auto_rate) << ',' << full(p.kieval_aligned_tau)
            << ',' << p.reviewed << ',' << p.subs_tau << ',' << p.del_tau << ',' << p.add
            << ',' << p.n_pr_star << '\n';
    }
    return out.str();
}

std::optional<SweepPoint> knee_point(const std::vector<SweepPoint>& points,
                                     double auto_rate_floor) {
    std::optional<SweepPoint> best;
    for (const auto& p : points) {
        if (p.auto_rate < auto_rate_floor) continue;
        if (!best || p.tau > best->tau) best = p;
    }
    return best;
}

std::string render_sweep_summary_json(const std::vector<SweepPoint>& points,
                                      const std::optional<SweepPoint>& knee,
                                      double auto_rate_floor,
                                      const RunManifest& manifest) {
    ordered_json root;
    root["tool"] = "kieval";
    root["version"] = manifest.version;
    root["points"] = points.size();
    root["auto_rate_floor"] = auto_rate_floor;
    if (knee) {
        root["knee"] = {{"tau", knee->tau},
                        {"auto_rate", knee->auto_rate},
                        {"kieval_aligned_tau", knee->kieval_aligned_tau}};
    } else {
        root["knee"] = nullptr;
    }
    return root.dump(2) + "\n";
}

}  // namespace kieval
