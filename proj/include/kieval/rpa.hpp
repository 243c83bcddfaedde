#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "kieval/matching.hpp"
#include "kieval/model.hpp"

namespace kieval {

// One point of the confidence-threshold trade-off curve.
struct SweepPoint {
    double tau = 0.0;
    double auto_rate = 0.0;
    double kieval_aligned_tau = 0.0;
    std::int64_t reviewed = 0;        // prediction entities with confidence < tau
    std::int64_t subs_tau = 0;        // substitution errors left after review
    std::int64_t del_tau = 0;         // deletion errors left after review
    std::int64_t add = 0;             // additions, never fixed by review
    std::int64_t n_pr_star = 0;       // prediction count after review
};

struct MissingConfidenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// One prediction entity's review-relevant state across the dataset.
struct PredOutcome {
    double confidence = 0.0;
    EntityLabel label = EntityLabel::TP;
};

struct SweepInput {
    std::vector<PredOutcome> predictions;
    std::int64_t add_count = 0;  // dataset-wide Add (unreviewable misses)
};

// Gathers every prediction entity's confidence and error label. Throws
// MissingConfidenceError naming the document and entity when any prediction
// lacks a confidence; nothing is computed past the first offender.
SweepInput collect_sweep_input(const std::vector<DocumentExtraction>& preds,
                               const std::vector<GroupMatchResult>& matches,
                               const std::vector<DocumentExtraction>& gts);

// Evaluates the curve over the grid. Review membership is strict: entities
// with confidence < tau are reviewed, ties at tau stay automated. Reviewed
// substitutions are corrected in place, reviewed deletions removed.
std::vector<SweepPoint> sweep(const SweepInput& input, const std::vector<double>& tau_grid);

std::vector<double> default_tau_grid();  // 101 points, 0.00 .. 1.00

}  // namespace kieval
