#pragma once

#include <optional>
#include <string>
#include <vector>

namespace kieval {

// One extracted unit: an entity type label plus its verbatim text value.
// Confidence is optional; the threshold sweep requires it, nothing else does.
struct ExtractedEntity {
    std::string entity_type;
    std::string value;
    std::optional<double> confidence;

    bool operator==(const ExtractedEntity&) const = default;
};

// A set of contextually linked entities. group_type == nullopt marks the
// reserved non-group bucket; it is out-of-band so a user-visible group type
// literally named "nongroup" cannot collide with it.
struct EntityGroup {
    std::optional<std::string> group_type;
    std::vector<ExtractedEntity> entities;

    bool is_nongroup() const { return !group_type.has_value(); }
    bool operator==(const EntityGroup&) const = default;
};

// One document's extraction (prediction or ground truth). groups[0] is always
// the non-group bucket, inserted empty when the input had none.
struct DocumentExtraction {
    std::string doc_id;
    std::vector<EntityGroup> groups;

    std::size_t entity_count() const {
        std::size_t n = 0;
        for (const auto& g : groups) n += g.entities.size();
        return n;
    }
    bool operator==(const DocumentExtraction&) const = default;
};

enum class Normalization { None, Trim, Casefold, TrimCasefold };

enum class MissingDocPolicy { Error, TreatAsEmpty };

struct EvalConfig {
    Normalization normalization = Normalization::None;
    MissingDocPolicy missing_doc_policy = MissingDocPolicy::Error;
    std::optional<std::vector<double>> tau_grid;
    bool infer_group_type = false;
};

// Checks the structural invariants of a document. Violations are returned as
// data, one human-readable line each; an empty list means the document is
// well-formed. Never mutates the input.
std::vector<std::string> validate_document(const DocumentExtraction& doc);

const char* to_string(Normalization n);
const char* to_string(MissingDocPolicy p);

}  // namespace kieval
