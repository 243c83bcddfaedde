#include "kieval/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace kieval {

namespace {

bool is_space(unsigned char c) { return std::isspace(c) != 0; }

// Infers a group type from the dot-prefix shared by all entities of an
// ungrouped group ("menu.nm" -> "menu"). Returns empty when there is no
// common prefix, in which case the group stays ungrouped.
std::string common_prefix(const std::vector<ExtractedEntity>& entities) {
    std::string prefix;
    for (const auto& e : entities) {
        auto dot = e.entity_type.find('.');
        if (dot == std::string::npos || dot == 0) return {};
        std::string p = e.entity_type.substr(0, dot);
        if (prefix.empty())
            prefix = p;
        else if (prefix != p)
            return {};
    }
    return prefix;
}

const std::set<std::string> kDocKeys{"id", "groups"};
const std::set<std::string> kGroupKeys{"group_type", "entities"};
const std::set<std::string> kEntityKeys{"type", "value", "confidence"};

std::size_t count_unknown(const nlohmann::json& obj, const std::set<std::string>& known) {
    std::size_t n = 0;
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key())) ++n;
    return n;
}

}  // namespace

std::string normalize_value(std::string_view v, Normalization mode) {
    std::string out(v);
    if (mode == Normalization::Trim || mode == Normalization::TrimCasefold) {
        std::size_t b = 0, e = out.size();
        while (b < e && is_space(out[b])) ++b;
        while (e > b && is_space(out[e - 1])) --e;
        out = out.substr(b, e - b);
    }
    if (mode == Normalization::Casefold || mode == Normalization::TrimCasefold) {
        std::transform(out.begin(), out.end(), out.begin(),
                       [](unsigned char c) { return std::tolower(c); });
    }
    return out;
}

DatasetFile parse_dataset(std::string_view text, const EvalConfig& config,
                          std::string source_path) {
    nlohmann::json root;
    try {
        root = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& ex) {
        throw IngestError(source_path + ": " + ex.what());
    }

    auto require = [&](bool cond, const std::string& msg) {
        if (!cond) throw IngestError(source_path + ": " + msg);
    };

    require(root.is_object() && root.contains("documents") && root["documents"].is_array(),
            "expected top-level object with a \"documents\" array");

    DatasetFile file;
    file.source_path = std::move(source_path);
    std::set<std::string> seen_ids;

    for (const auto& jdoc : root["documents"]) {
        require(jdoc.is_object(), "document entry is not an object");
        file.unknown_field_warnings += count_unknown(jdoc, kDocKeys);
        require(jdoc.contains("id") && jdoc["id"].is_string(),
                "document missing string \"id\"");

        DocumentExtraction doc;
        doc.doc_id = jdoc["id"].get<std::string>();
        require(!doc.doc_id.empty(), "document has empty id");
        require(seen_ids.insert(doc.doc_id).second,
                "duplicate doc id '" + doc.doc_id + "'");

        // Reserved bucket first; ungrouped input groups merge into it.
        doc.groups.push_back(EntityGroup{});

        const auto jgroups = jdoc.value("groups", nlohmann::json::array());
        require(jgroups.is_array(), "doc '" + doc.doc_id + "': \"groups\" is not an array");
        for (const auto& jgroup : jgroups) {
            require(jgroup.is_object(), "doc '" + doc.doc_id + "': group is not an object");
            file.unknown_field_warnings += count_unknown(jgroup, kGroupKeys);

            EntityGroup group;
            if (jgroup.contains("group_type") && !jgroup["group_type"].is_null()) {
                require(jgroup["group_type"].is_string(),
                        "doc '" + doc.doc_id + "': group_type is not a string");
                group.group_type = jgroup["group_type"].get<std::string>();
                require(!group.group_type->empty(),
                        "doc '" + doc.doc_id + "': group_type is empty");
            }

            const auto jentities = jgroup.value("entities", nlohmann::json::array());
            require(jentities.is_array(),
                    "doc '" + doc.doc_id + "': \"entities\" is not an array");
            for (const auto& jent : jentities) {
                require(jent.is_object() && jent.contains("type") && jent["type"].is_string() &&
                            jent.contains("value") && jent["value"].is_string(),
                        "doc '" + doc.doc_id + "': entity needs string \"type\" and \"value\"");
                file.unknown_field_warnings += count_unknown(jent, kEntityKeys);

                ExtractedEntity ent;
                ent.entity_type = jent["type"].get<std::string>();
                require(!ent.entity_type.empty(),
                        "doc '" + doc.doc_id + "': entity has empty type");
                ent.value = normalize_value(jent["value"].get<std::string>(),
                                            config.normalization);
                if (jent.contains("confidence") && !jent["confidence"].is_null()) {
                    require(jent["confidence"].is_number(),
                            "doc '" + doc.doc_id + "': confidence is not a number");
                    // Range is a model invariant, left to validate_document.
                    ent.confidence = jent["confidence"].get<double>();
                }
                group.entities.push_back(std::move(ent));
            }

            if (!group.group_type && config.infer_group_type && !group.entities.empty()) {
                std::string inferred = common_prefix(group.entities);
                if (!inferred.empty()) group.group_type = std::move(inferred);
            }

            if (group.is_nongroup()) {
                auto& bucket = doc.groups[0].entities;
                bucket.insert(bucket.end(), group.entities.begin(), group.entities.end());
            } else {
                require(!group.entities.empty(),
                        "doc '" + doc.doc_id + "': group '" + *group.group_type +
                            "' is empty");
                doc.groups.push_back(std::move(group));
            }
        }

        file.documents.push_back(std::move(doc));
    }

    return file;
}

DatasetFile parse_dataset_file(const std::string& path, const EvalConfig& config) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IngestError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str(), config, path);
}

std::vector<std::pair<DocumentExtraction, DocumentExtraction>> pair_documents(
    const DatasetFile& gt, const DatasetFile& pred, const EvalConfig& config) {
    auto find = [](const DatasetFile& f, const std::string& id) -> const DocumentExtraction* {
        for (const auto& d : f.documents)
            if (d.doc_id == id) return &d;
        return nullptr;
    };
    auto empty_doc = [](const std::string& id) {
        return DocumentExtraction{id, {EntityGroup{}}};
    };

    std::vector<std::pair<DocumentExtraction, DocumentExtraction>> pairs;
    for (const auto& g : gt.documents) {
        if (const auto* p = find(pred, g.doc_id)) {
            pairs.emplace_back(g, *p);
        } else if (config.missing_doc_policy == MissingDocPolicy::TreatAsEmpty) {
            pairs.emplace_back(g, empty_doc(g.doc_id));
        } else {
            throw IngestError("doc '" + g.doc_id + "' present in ground truth '" +
                              gt.source_path + "' but missing from predictions");
        }
    }
    for (const auto& p : pred.documents) {
        if (find(gt, p.doc_id)) continue;
        if (config.missing_doc_policy == MissingDocPolicy::TreatAsEmpty)
            pairs.emplace_back(empty_doc(p.doc_id), p);
        else
            throw IngestError("doc '" + p.doc_id + "' present in predictions '" +
                              pred.source_path + "' but missing from ground truth");
    }
    return pairs;
}

}  // namespace kieval
