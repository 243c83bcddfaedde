#include "kieval/rpa.hpp"

#include <algorithm>

namespace kieval {

SweepInput collect_sweep_input(const std::vector<DocumentExtraction>& preds,
                               const std::vector<GroupMatchResult>& matches,
                               const std::vector<DocumentExtraction>& gts) {
    SweepInput input;
    for (std::size_t d = 0; d < preds.size(); ++d) {
        const auto& doc = preds[d];
        const auto& match = matches[d];
        for (std::size_t gi = 0; gi < doc.groups.size(); ++gi) {
            const auto& g = doc.groups[gi];
            for (std::size_t ei = 0; ei < g.entities.size(); ++ei) {
                const auto& e = g.entities[ei];
                if (!e.confidence)
                    throw MissingConfidenceError(
                        "doc '" + doc.doc_id + "': entity '" + e.entity_type + "'='" +
                        e.value + "' has no confidence; the threshold sweep needs one on "
                        "every prediction");
                input.predictions.push_back({*e.confidence, match.pred_labels[gi][ei]});
            }
        }
        for (std::size_t gi = 0; gi < gts[d].groups.size(); ++gi)
            for (EntityLabel l : match.gt_labels[gi])
                if (l == EntityLabel::Add) ++input.add_count;
    }
    return input;
}

std::vector<SweepPoint> sweep(const SweepInput& input, const std::vector<double>& tau_grid) {
    const auto total = static_cast<std::int64_t>(input.predictions.size());

    std::vector<SweepPoint> points;
    points.reserve(tau_grid.size());
    for (double tau : tau_grid) {
        SweepPoint pt;
        pt.tau = tau;
        pt.add = input.add_count;
        std::int64_t reviewed_del = 0;
        for (const auto& p : input.predictions) {
            const bool reviewed = p.confidence < tau;
            if (reviewed) ++pt.reviewed;
            if (p.label == EntityLabel::Subs && !reviewed) ++pt.subs_tau;
            if (p.label == EntityLabel::Del) {
                if (reviewed) ++reviewed_del;
                else ++pt.del_tau;
            }
        }
        pt.n_pr_star = total - reviewed_del;
        pt.auto_rate =
            total > 0 ? 1.0 - static_cast<double>(pt.reviewed) / static_cast<double>(total)
                      : 1.0;
        const std::int64_t denom = pt.n_pr_star + pt.add;
        pt.kieval_aligned_tau =
            denom > 0 ? 1.0 - static_cast<double>(pt.subs_tau + pt.del_tau + pt.add) /
                                  static_cast<double>(denom)
                      : 1.0;
        points.push_back(pt);
    }
    return points;
}

std::vector<double> default_tau_grid() {
    std::vector<double> grid(101);
    for (int i = 0; i <= 100; ++i) grid[i] = i / 100.0;
    return grid;
}

}  // namespace kieval
