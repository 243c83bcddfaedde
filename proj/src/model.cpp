#include "kieval/model.hpp"

namespace kieval {

std::vector<std::string> validate_document(const DocumentExtraction& doc) {
    std::vector<std::string> violations;
    auto add = [&](std::string msg) { violations.push_back(std::move(msg)); };

    if (doc.doc_id.empty()) add("document has empty id");

    if (doc.groups.empty() || !doc.groups[0].is_nongroup()) {
        add("doc '" + doc.doc_id + "': first group is not the non-group bucket");
    }

    std::size_t nongroup_count = 0;
    for (std::size_t gi = 0; gi < doc.groups.size(); ++gi) {
        const auto& g = doc.groups[gi];
        if (g.is_nongroup()) {
            ++nongroup_count;
        } else {
            if (g.group_type->empty())
                add("doc '" + doc.doc_id + "': group " + std::to_string(gi) +
                    " has empty group_type");
            if (g.entities.empty())
                add("doc '" + doc.doc_id + "': group " + std::to_string(gi) +
                    " ('" + *g.group_type + "') is empty");
        }
        for (std::size_t ei = 0; ei < g.entities.size(); ++ei) {
            const auto& e = g.entities[ei];
            if (e.entity_type.empty())
                add("doc '" + doc.doc_id + "': entity " + std::to_string(ei) +
                    " in group " + std::to_string(gi) + " has empty type");
            if (e.confidence && (*e.confidence < 0.0 || *e.confidence > 1.0))
                add("doc '" + doc.doc_id + "': entity '" + e.entity_type +
                    "'='" + e.value + "' has confidence " +
                    std::to_string(*e.confidence) + " outside [0,1]");
        }
    }
    if (nongroup_count != 1)
        add("doc '" + doc.doc_id + "': expected exactly one non-group bucket, found " +
            std::to_string(nongroup_count));

    return violations;
}

const char* to_string(Normalization n) {
    switch (n) {
        case Normalization::None: return "none";
        case Normalization::Trim: return "trim";
        case Normalization::Casefold: return "casefold";
        case Normalization::TrimCasefold: return "trim+casefold";
    }
    return "?";
}

const char* to_string(MissingDocPolicy p) {
    return p == MissingDocPolicy::Error ? "error" : "empty";
}

}  // namespace kieval
