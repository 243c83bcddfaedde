#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kieval/matching.hpp"
#include "kieval/model.hpp"

namespace kieval {

struct F1Triple {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

struct Counts {
    std::int64_t tp = 0, fp = 0, fn = 0;
    std::int64_t subs = 0, add = 0, del = 0;

    std::int64_t error() const { return subs + add + del; }
    Counts& operator+=(const Counts& o) {
        tp += o.tp; fp += o.fp; fn += o.fn;
        subs += o.subs; add += o.add; del += o.del;
        return *this;
    }
};

// TP/FP/FN and Subs/Add/Del, overall and sliced per entity type and per
// group type. Ungrouped entities land under the empty group-type key.
struct CountLedger {
    Counts overall;
    std::map<std::string, Counts> per_entity_type;
    std::map<std::string, Counts> per_group_type;

    CountLedger& operator+=(const CountLedger& o);
};

struct GroupCounts {
    std::int64_t tp = 0, fp = 0, fn = 0;
    bool applicable = false;  // false when neither side has grouped entities
};

// Everything derived from one (gt, pred) document pair.
struct DocResult {
    std::string doc_id;
    CountLedger ledger;           // group-matched entity statistics
    GroupCounts groups;
    Counts legacy;                // grouping-blind exact-match counts
    std::int64_t gt_entities = 0;
    std::int64_t pred_entities = 0;
};

// Fills tp/fp/fn slices from the match (group-matched entity statistics).
void entity_statistics(const GroupMatchResult& match, const DocumentExtraction& pred,
                       const DocumentExtraction& gt, CountLedger& ledger);

// Fills subs/add/del slices (minimum correction steps per matched cell, plus
// wholesale Add/Del for unmatched groups).
void correction_costs(const GroupMatchResult& match, const DocumentExtraction& pred,
                      const DocumentExtraction& gt, CountLedger& ledger);

GroupCounts group_statistics(const GroupMatchResult& match, const DocumentExtraction& pred,
                             const DocumentExtraction& gt);

// Grouping-blind multiset matching of (type, value) pairs over the whole
// document, the conventional entity-level baseline.
Counts legacy_entity_counts(const DocumentExtraction& pred, const DocumentExtraction& gt);

DocResult evaluate_document(const DocumentExtraction& gt, const DocumentExtraction& pred);

// F1 from raw counts; zero denominators score 0.
F1Triple f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn);

// tp / (tp + error); both zero scores 0 here (the vacuously-perfect
// empty-vs-empty case is handled at report level).
double aligned_score(std::int64_t tp, std::int64_t error);

struct MetricReport {
    std::int64_t documents = 0;
    std::int64_t gt_entities = 0;
    std::int64_t pred_entities = 0;
    CountLedger ledger;
    GroupCounts groups;
    Counts legacy;

    F1Triple legacy_entity_f1;
    F1Triple kieval_entity_f1;
    std::optional<F1Triple> kieval_group_f1;  // nullopt = inapplicable ("-")
    double kieval_aligned = 0.0;

    std::vector<DocResult> per_doc;  // kept only when requested
};

// Micro-average: sums counts across documents, then scores once. Documents
// with no entities on either side count as vacuously perfect.
MetricReport aggregate(const std::vector<DocResult>& docs, bool keep_per_doc = false);

}  // namespace kieval
