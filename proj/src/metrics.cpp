#include "kieval/metrics.hpp"

namespace kieval {

namespace {

const std::string& group_key(const EntityGroup& g) {
    static const std::string ungrouped;
    return g.is_nongroup() ? ungrouped : *g.group_type;
}

template <typename Fn>
void for_each_label(const std::vector<std::vector<EntityLabel>>& labels,
                    const DocumentExtraction& doc, Fn&& fn) {
    for (std::size_t gi = 0; gi < doc.groups.size(); ++gi)
        for (std::size_t ei = 0; ei < doc.groups[gi].entities.size(); ++ei)
            fn(doc.groups[gi], doc.groups[gi].entities[ei], labels[gi][ei]);
}

}  // namespace

CountLedger& CountLedger::operator+=(const CountLedger& o) {
    overall += o.overall;
    for (const auto& [k, v] : o.per_entity_type) per_entity_type[k] += v;
    for (const auto& [k, v] : o.per_group_type) per_group_type[k] += v;
    return *this;
}

void entity_statistics(const GroupMatchResult& match, const DocumentExtraction& pred,
                       const DocumentExtraction& gt, CountLedger& ledger) {
    auto bump = [&](const EntityGroup& g, const ExtractedEntity& e, auto member) {
        ledger.overall.*member += 1;
        ledger.per_entity_type[e.entity_type].*member += 1;
        ledger.per_group_type[group_key(g)].*member += 1;
    };
    // TP is counted once (matched pairs), FP from prediction-side leftovers,
    // FN from ground-truth-side leftovers.
    for_each_label(match.pred_labels, pred, [&](const auto& g, const auto& e, EntityLabel l) {
        bump(g, e, l == EntityLabel::TP ? &Counts::tp : &Counts::fp);
    });
    for_each_label(match.gt_labels, gt, [&](const auto& g, const auto& e, EntityLabel l) {
        if (l != EntityLabel::TP) bump(g, e, &Counts::fn);
    });
}

void correction_costs(const GroupMatchResult& match, const DocumentExtraction& pred,
                      const DocumentExtraction& gt, CountLedger& ledger) {
    auto bump = [&](const EntityGroup& g, const ExtractedEntity& e, auto member) {
        ledger.overall.*member += 1;
        ledger.per_entity_type[e.entity_type].*member += 1;
        ledger.per_group_type[group_key(g)].*member += 1;
    };
    // A substitution is counted on the prediction side only; it corrects one
    // prediction entity into one ground-truth entity.
    for_each_label(match.pred_labels, pred, [&](const auto& g, const auto& e, EntityLabel l) {
        if (l == EntityLabel::Subs) bump(g, e, &Counts::subs);
        else if (l == EntityLabel::Del) bump(g, e, &Counts::del);
    });
    for_each_label(match.gt_labels, gt, [&](const auto& g, const auto& e, EntityLabel l) {
        if (l == EntityLabel::Add) bump(g, e, &Counts::add);
    });
}

GroupCounts group_statistics(const GroupMatchResult& match, const DocumentExtraction& pred,
                             const DocumentExtraction& gt) {
    GroupCounts gc;
    gc.applicable = gt.groups.size() > 1 || pred.groups.size() > 1;
    if (!gc.applicable) return gc;

    for (std::size_t i = 1; i < match.pairs.size(); ++i) {
        const auto& pair = match.pairs[i];
        const auto gt_size = static_cast<std::int64_t>(gt.groups[pair.gt_index].entities.size());
        const auto pr_size =
            static_cast<std::int64_t>(pred.groups[pair.pred_index].entities.size());
        // Full multiset equality: every entity matched on both sides.
        if (pair.score == gt_size && pair.score == pr_size) ++gc.tp;
    }
    gc.fn = static_cast<std::int64_t>(gt.groups.size()) - 1 - gc.tp;
    gc.fp = static_cast<std::int64_t>(pred.groups.size()) - 1 - gc.tp;
    return gc;
}

Counts legacy_entity_counts(const DocumentExtraction& pred, const DocumentExtraction& gt) {
    std::map<std::pair<std::string, std::string>, std::int64_t> gt_counts;
    for (const auto& g : gt.groups)
        for (const auto& e : g.entities) ++gt_counts[{e.entity_type, e.value}];

    Counts c;
    std::int64_t gt_total = 0;
    for (const auto& [k, n] : gt_counts) gt_total += n;

    std::int64_t pred_total = 0;
    for (const auto& g : pred.groups) {
        for (const auto& e : g.entities) {
            ++pred_total;
            auto it = gt_counts.find({e.entity_type, e.value});
            if (it != gt_counts.end() && it->second > 0) {
                --it->second;
                ++c.tp;
            }
        }
    }
    c.fp = pred_total - c.tp;
    c.fn = gt_total - c.tp;
    return c;
}

DocResult evaluate_document(const DocumentExtraction& gt, const DocumentExtraction& pred) {
    GroupMatchResult match = match_groups(pred, gt);

    DocResult r;
    r.doc_id = gt.doc_id;
    entity_statistics(match, pred, gt, r.ledger);
    correction_costs(match, pred, gt, r.ledger);
    r.groups = group_statistics(match, pred, gt);
    r.legacy = legacy_entity_counts(pred, gt);
    r.gt_entities = static_cast<std::int64_t>(gt.entity_count());
    r.pred_entities = static_cast<std::int64_t>(pred.entity_count());
    return r;
}

F1Triple f1_from_counts(std::int64_t tp, std::int64_t fp, std::int64_t fn) {
    F1Triple t;
    if (tp + fp > 0) t.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0) t.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (t.precision + t.recall > 0.0)
        t.f1 = 2.0 * t.precision * t.recall / (t.precision + t.recall);
    return t;
}

double aligned_score(std::int64_t tp, std::int64_t error) {
    if (tp + error == 0) return 0.0;
    return static_cast<double>(tp) / static_cast<double>(tp + error);
}

MetricReport aggregate(const std::vector<DocResult>& docs, bool keep_per_doc) {
    MetricReport rep;
    rep.documents = static_cast<std::int64_t>(docs.size());
    for (const auto& d : docs) {
        rep.ledger += d.ledger;
        rep.legacy += d.legacy;
        rep.gt_entities += d.gt_entities;
        rep.pred_entities += d.pred_entities;
        if (d.groups.applicable) {
            rep.groups.applicable = true;
            rep.groups.tp += d.groups.tp;
            rep.groups.fp += d.groups.fp;
            rep.groups.fn += d.groups.fn;
        }
    }

    const bool vacuously_perfect =
        rep.documents > 0 && rep.gt_entities == 0 && rep.pred_entities == 0;
    if (vacuously_perfect) {
        rep.legacy_entity_f1 = {1.0, 1.0, 1.0};
        rep.kieval_entity_f1 = {1.0, 1.0, 1.0};
        rep.kieval_aligned = 1.0;
    } else {
        rep.legacy_entity_f1 = f1_from_counts(rep.legacy.tp, rep.legacy.fp, rep.legacy.fn);
        rep.kieval_entity_f1 =
            f1_from_counts(rep.ledger.overall.tp, rep.ledger.overall.fp, rep.ledger.overall.fn);
        rep.kieval_aligned = aligned_score(rep.ledger.overall.tp, rep.ledger.overall.error());
    }
    if (rep.groups.applicable)
        rep.kieval_group_f1 = f1_from_counts(rep.groups.tp, rep.groups.fp, rep.groups.fn);

    if (keep_per_doc) rep.per_doc = docs;
    return rep;
}

}  // namespace kieval
