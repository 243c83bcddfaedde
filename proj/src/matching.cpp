#include "kieval/matching.hpp"

#include <algorithm>
#include <stdexcept>

#include "kieval/hungarian.hpp"

namespace kieval {

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

// Groups of one type on one side, as document group indices in input order.
struct TypeSlot {
    std::vector<int> gt_groups;
    std::vector<int> pred_groups;
};

std::map<std::string, TypeSlot> slot_by_type(const DocumentExtraction& pred,
                                             const DocumentExtraction& gt) {
    std::map<std::string, TypeSlot> slots;
    for (std::size_t i = 1; i < gt.groups.size(); ++i)
        slots[gt.groups[i].group_type.value_or("")].gt_groups.push_back(static_cast<int>(i));
    for (std::size_t i = 1; i < pred.groups.size(); ++i)
        slots[pred.groups[i].group_type.value_or("")].pred_groups.push_back(static_cast<int>(i));
    return slots;
}

// Correction cost of treating (pred, gt) as a matched pair:
// sum over entity types of max(FP, FN) for that type.
std::int64_t pair_error(const EntityGroup& pred, const EntityGroup& gt) {
    PairScore ps = matching_score(pred, gt);
    std::map<std::string, std::int64_t> pred_n, gt_n;
    for (const auto& e : pred.entities) ++pred_n[e.entity_type];
    for (const auto& e : gt.entities) ++gt_n[e.entity_type];

    std::int64_t error = 0;
    for (const auto& [type, n] : pred_n) {
        auto git = gt_n.find(type);
        std::int64_t s = ps.per_type.count(type) ? ps.per_type.at(type) : 0;
        std::int64_t fn = (git != gt_n.end() ? git->second : 0) - s;
        error += std::max(n - s, fn);
    }
    for (const auto& [type, n] : gt_n)
        if (!pred_n.count(type)) error += n;
    return error;
}

// Assignment weights encode three stacked objectives: maximize matching
// score, then minimize total correction cost, then maximize exact group
// matches. The stacking makes the reported Error / Subs / group-TP values
// canonical over the set of score-optimal assignments, so they do not depend
// on group input order or on which side is called the prediction.
Matrix weight_matrix(const DocumentExtraction& pred, const DocumentExtraction& gt,
                     const TypeSlot& slot) {
    const std::size_t gts = slot.gt_groups.size();
    const std::size_t preds = slot.pred_groups.size();
    Matrix score(gts, std::vector<std::int64_t>(preds, 0));
    Matrix saved(gts, std::vector<std::int64_t>(preds, 0));
    Matrix exact(gts, std::vector<std::int64_t>(preds, 0));
    std::int64_t saved_max = 1;
    for (std::size_t g = 0; g < gts; ++g) {
        const auto& gt_group = gt.groups[slot.gt_groups[g]];
        for (std::size_t p = 0; p < preds; ++p) {
            const auto& pr_group = pred.groups[slot.pred_groups[p]];
            std::int64_t s = matching_score(pr_group, gt_group).score;
            // Cost saved by pairing instead of deleting pr and adding gt.
            std::int64_t w = static_cast<std::int64_t>(pr_group.entities.size()) +
                             static_cast<std::int64_t>(gt_group.entities.size()) -
                             pair_error(pr_group, gt_group);
            score[g][p] = s;
            saved[g][p] = w;
            exact[g][p] = (s == static_cast<std::int64_t>(pr_group.entities.size()) &&
                           s == static_cast<std::int64_t>(gt_group.entities.size()))
                              ? 1
                              : 0;
            saved_max = std::max(saved_max, w);
        }
    }
    const std::int64_t want = static_cast<std::int64_t>(std::min(gts, preds));
    const std::int64_t k2 = static_cast<std::int64_t>(gts * preds) + 1;
    const std::int64_t k1 = k2 * (want * saved_max + 1);
    Matrix combined(gts, std::vector<std::int64_t>(preds, 0));
    for (std::size_t g = 0; g < gts; ++g)
        for (std::size_t p = 0; p < preds; ++p)
            combined[g][p] = score[g][p] * k1 + saved[g][p] * k2 + exact[g][p];
    return combined;
}

// Max total over the free rows/cols of m.
std::int64_t free_optimal_total(const Matrix& m, const std::vector<char>& used_g,
                                const std::vector<char>& used_p) {
    Matrix sub;
    for (std::size_t g = 0; g < m.size(); ++g) {
        if (used_g[g]) continue;
        std::vector<std::int64_t> row;
        for (std::size_t p = 0; p < m[g].size(); ++p)
            if (!used_p[p]) row.push_back(m[g][p]);
        sub.push_back(std::move(row));
    }
    if (sub.empty() || sub[0].empty()) return 0;
    auto assignment = max_score_assignment(sub);
    return assignment_total(sub, assignment);
}

// Lexicographically smallest maximum-score full assignment for one type:
// scan cells in ascending (gt, pred) order and keep a cell whenever the
// optimum is still attainable with it forced in.
std::vector<std::pair<int, int>> lex_min_optimal(const Matrix& m) {
    const std::size_t gts = m.size();
    const std::size_t preds = gts ? m[0].size() : 0;
    const std::size_t want = std::min(gts, preds);

    const std::int64_t opt = free_optimal_total(
        m, std::vector<char>(gts, 0), std::vector<char>(preds, 0));

    std::vector<char> used_g(gts, 0), used_p(preds, 0);
    std::vector<std::pair<int, int>> chosen;  // local (gt, pred) indices
    std::int64_t forced_score = 0;
    for (std::size_t g = 0; g < gts && chosen.size() < want; ++g) {
        if (used_g[g]) continue;
        for (std::size_t p = 0; p < preds; ++p) {
            if (used_p[p]) continue;
            used_g[g] = used_p[p] = 1;
            std::int64_t rest = free_optimal_total(m, used_g, used_p);
            if (forced_score + m[g][p] + rest == opt) {
                forced_score += m[g][p];
                chosen.emplace_back(static_cast<int>(g), static_cast<int>(p));
                break;
            }
            used_g[g] = used_p[p] = 0;
        }
    }
    return chosen;
}

// Per-pair entity labeling: identical entities pair up greedily in input
// order as TP, then the first min(FP, FN) leftovers on each side become Subs,
// and the remainder Del (prediction) / Add (ground truth), per entity type.
void label_pair(const EntityGroup& pred, const EntityGroup& gt,
                std::vector<EntityLabel>& pred_labels,
                std::vector<EntityLabel>& gt_labels) {
    std::map<std::string, std::vector<std::size_t>> pred_by_type, gt_by_type;
    for (std::size_t i = 0; i < pred.entities.size(); ++i)
        pred_by_type[pred.entities[i].entity_type].push_back(i);
    for (std::size_t i = 0; i < gt.entities.size(); ++i)
        gt_by_type[gt.entities[i].entity_type].push_back(i);

    pred_labels.assign(pred.entities.size(), EntityLabel::Del);
    gt_labels.assign(gt.entities.size(), EntityLabel::Add);

    for (auto& [type, pred_idx] : pred_by_type) {
        auto git = gt_by_type.find(type);
        if (git == gt_by_type.end()) continue;
        auto& gt_idx = git->second;

        std::vector<char> gt_taken(gt_idx.size(), 0);
        std::vector<std::size_t> pred_left;
        for (std::size_t pi : pred_idx) {
            bool matched = false;
            for (std::size_t k = 0; k < gt_idx.size(); ++k) {
                if (gt_taken[k]) continue;
                if (gt.entities[gt_idx[k]].value == pred.entities[pi].value) {
                    gt_taken[k] = 1;
                    pred_labels[pi] = EntityLabel::TP;
                    gt_labels[gt_idx[k]] = EntityLabel::TP;
                    matched = true;
                    break;
                }
            }
            if (!matched) pred_left.push_back(pi);
        }
        std::vector<std::size_t> gt_left;
        for (std::size_t k = 0; k < gt_idx.size(); ++k)
            if (!gt_taken[k]) gt_left.push_back(gt_idx[k]);

        const std::size_t subs = std::min(pred_left.size(), gt_left.size());
        for (std::size_t k = 0; k < subs; ++k) {
            pred_labels[pred_left[k]] = EntityLabel::Subs;
            gt_labels[gt_left[k]] = EntityLabel::Subs;
        }
    }
}

GroupMatchResult finish(const DocumentExtraction& pred, const DocumentExtraction& gt,
                        std::vector<std::pair<int, int>> grouped_pairs) {
    GroupMatchResult result;

    PairScore nongroup = matching_score(pred.groups.at(0), gt.groups.at(0));
    nongroup.pred_index = 0;
    nongroup.gt_index = 0;
    result.pairs.push_back(std::move(nongroup));

    std::sort(grouped_pairs.begin(), grouped_pairs.end());
    std::vector<char> gt_matched(gt.groups.size(), 0), pred_matched(pred.groups.size(), 0);
    gt_matched[0] = pred_matched[0] = 1;
    for (auto [gi, pi] : grouped_pairs) {
        PairScore ps = matching_score(pred.groups[pi], gt.groups[gi]);
        ps.pred_index = pi;
        ps.gt_index = gi;
        result.pairs.push_back(std::move(ps));
        gt_matched[gi] = 1;
        pred_matched[pi] = 1;
    }
    for (std::size_t i = 1; i < gt.groups.size(); ++i)
        if (!gt_matched[i]) result.unmatched_gt_groups.push_back(static_cast<int>(i));
    for (std::size_t i = 1; i < pred.groups.size(); ++i)
        if (!pred_matched[i]) result.unmatched_pred_groups.push_back(static_cast<int>(i));

    result.pred_labels.resize(pred.groups.size());
    result.gt_labels.resize(gt.groups.size());
    for (const auto& pair : result.pairs)
        label_pair(pred.groups[pair.pred_index], gt.groups[pair.gt_index],
                   result.pred_labels[pair.pred_index], result.gt_labels[pair.gt_index]);
    for (int gi : result.unmatched_gt_groups)
        result.gt_labels[gi].assign(gt.groups[gi].entities.size(), EntityLabel::Add);
    for (int pi : result.unmatched_pred_groups)
        result.pred_labels[pi].assign(pred.groups[pi].entities.size(), EntityLabel::Del);

    return result;
}

}  // namespace

PairScore matching_score(const EntityGroup& pred, const EntityGroup& gt) {
    std::map<std::string, std::map<std::string, std::int64_t>> pred_counts;
    for (const auto& e : pred.entities) ++pred_counts[e.entity_type][e.value];

    std::map<std::string, std::map<std::string, std::int64_t>> gt_counts;
    for (const auto& e : gt.entities) ++gt_counts[e.entity_type][e.value];

    PairScore ps;
    for (const auto& [type, values] : pred_counts) {
        auto git = gt_counts.find(type);
        if (git == gt_counts.end()) continue;
        std::int64_t s = 0;
        for (const auto& [value, n] : values) {
            auto vit = git->second.find(value);
            if (vit != git->second.end()) s += std::min(n, vit->second);
        }
        if (s > 0) ps.per_type[type] = s;
        ps.score += s;
    }
    return ps;
}

GroupMatchResult match_groups(const DocumentExtraction& pred,
                              const DocumentExtraction& gt) {
    std::vector<std::pair<int, int>> grouped_pairs;
    for (const auto& [type, slot] : slot_by_type(pred, gt)) {
        if (slot.gt_groups.empty() || slot.pred_groups.empty()) continue;
        Matrix m = weight_matrix(pred, gt, slot);
        for (auto [g, p] : lex_min_optimal(m))
            grouped_pairs.emplace_back(slot.gt_groups[g], slot.pred_groups[p]);
    }
    return finish(pred, gt, std::move(grouped_pairs));
}

GroupMatchResult brute_force_match(const DocumentExtraction& pred,
                                   const DocumentExtraction& gt,
                                   int max_groups_per_type) {
    std::vector<std::pair<int, int>> grouped_pairs;
    for (const auto& [type, slot] : slot_by_type(pred, gt)) {
        if (slot.gt_groups.empty() || slot.pred_groups.empty()) continue;
        const int gts = static_cast<int>(slot.gt_groups.size());
        const int preds = static_cast<int>(slot.pred_groups.size());
        if (gts > max_groups_per_type || preds > max_groups_per_type)
            throw std::runtime_error("brute_force_match: instance too large for type '" +
                                     type + "'");

        Matrix m = weight_matrix(pred, gt, slot);
        const int want = std::min(gts, preds);

        std::vector<std::pair<int, int>> best, current;
        std::int64_t best_total = -1;
        std::vector<char> used_p(preds, 0);

        // Enumerate all injections of min(gts, preds) gt rows into pred cols.
        auto recurse = [&](auto&& self, int g, int taken, std::int64_t total) -> void {
            if (taken == want) {
                auto sorted = current;
                std::sort(sorted.begin(), sorted.end());
                if (total > best_total || (total == best_total && sorted < best)) {
                    best_total = total;
                    best = std::move(sorted);
                }
                return;
            }
            if (g >= gts || gts - g < want - taken) return;
            for (int p = 0; p < preds; ++p) {
                if (used_p[p]) continue;
                used_p[p] = 1;
                current.emplace_back(g, p);
                self(self, g + 1, taken + 1, total + m[g][p]);
                current.pop_back();
                used_p[p] = 0;
            }
            self(self, g + 1, taken, total);  // leave gt row g unmatched
        };
        recurse(recurse, 0, 0, 0);

        for (auto [g, p] : best)
            grouped_pairs.emplace_back(slot.gt_groups[g], slot.pred_groups[p]);
    }
    return finish(pred, gt, std::move(grouped_pairs));
}

const char* to_string(EntityLabel label) {
    switch (label) {
        case EntityLabel::TP: return "tp";
        case EntityLabel::Subs: return "subs";
        case EntityLabel::Add: return "add";
        case EntityLabel::Del: return "del";
    }
    return "?";
}

}  // namespace kieval
