#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "kieval/model.hpp"

namespace kieval {

enum class EntityLabel { TP, Subs, Add, Del };

// Score between two groups: identical (type, value) entities counted with
// multiset semantics, plus the per-entity-type breakdown.
struct PairScore {
    int pred_index = -1;
    int gt_index = -1;
    std::int64_t score = 0;
    std::map<std::string, std::int64_t> per_type;
};

struct GroupMatchResult {
    // pairs[0] is always the non-group buckets (0, 0).
    std::vector<PairScore> pairs;
    std::vector<int> unmatched_pred_groups;
    std::vector<int> unmatched_gt_groups;
    // Labels indexed [group][entity], parallel to the documents.
    // Prediction entities carry TP/Subs/Del; ground-truth entities TP/Subs/Add.
    std::vector<std::vector<EntityLabel>> pred_labels;
    std::vector<std::vector<EntityLabel>> gt_labels;

    std::int64_t total_score() const {
        std::int64_t t = 0;
        for (const auto& p : pairs) t += p.score;
        return t;
    }
};

PairScore matching_score(const EntityGroup& pred, const EntityGroup& gt);

// Matches prediction groups to ground-truth groups. Non-group buckets are
// force-paired as pairs[0]; remaining groups are assigned per group type by a
// maximum-score assignment. Ties are broken toward the lexicographically
// smallest pair set by ascending (gt index, pred index). Every entity gets
// exactly one label.
GroupMatchResult match_groups(const DocumentExtraction& pred,
                              const DocumentExtraction& gt);

// Exhaustive oracle for match_groups: enumerates all injective per-type
// assignments and applies the same tie-break. Throws when any group type has
// more than max_groups_per_type groups on either side.
GroupMatchResult brute_force_match(const DocumentExtraction& pred,
                                   const DocumentExtraction& gt,
                                   int max_groups_per_type = 8);

const char* to_string(EntityLabel label);

}  // namespace kieval
