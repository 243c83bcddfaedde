#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace kieval {

// Maximum-total-score assignment on a rectangular score matrix
// (rows x cols, scores >= 0). Returns for each row the assigned column or -1.
// Exactly min(rows, cols) rows are assigned. O(k^3) shortest augmenting path
// formulation on a zero-padded square matrix with negated scores.
inline std::vector<int> max_score_assignment(
    const std::vector<std::vector<std::int64_t>>& score) {
    const int rows = static_cast<int>(score.size());
    const int cols = rows ? static_cast<int>(score[0].size()) : 0;
    const int dim = std::max(rows, cols);
    if (dim == 0) return {};

    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;

    // cost[i][j] = -score, zero-padded; 1-based with a dummy row/col 0.
    std::vector<std::vector<std::int64_t>> cost(
        dim + 1, std::vector<std::int64_t>(dim + 1, 0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) cost[i + 1][j + 1] = -score[i][j];

    std::vector<std::int64_t> u(dim + 1, 0), v(dim + 1, 0);
    std::vector<int> p(dim + 1, 0), way(dim + 1, 0);
    for (int i = 1; i <= dim; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<std::int64_t> minv(dim + 1, kInf);
        std::vector<char> used(dim + 1, 0);
        do {
            used[j0] = 1;
            int i0 = p[j0], j1 = 0;
            std::int64_t delta = kInf;
            for (int j = 1; j <= dim; ++j) {
                if (used[j]) continue;
                std::int64_t cur = cost[i0][j] - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= dim; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }

    std::vector<int> assignment(rows, -1);
    int assigned = 0;
    const int want = std::min(rows, cols);
    for (int j = 1; j <= dim; ++j) {
        int i = p[j];
        if (i >= 1 && i <= rows && j <= cols) {
            assignment[i - 1] = j - 1;
            ++assigned;
        }
    }
    // Padding can only absorb rows/cols beyond min(rows, cols).
    (void)assigned;
    return assignment;
}

// Total score of an assignment produced by max_score_assignment.
inline std::int64_t assignment_total(
    const std::vector<std::vector<std::int64_t>>& score,
    const std::vector<int>& assignment) {
    std::int64_t total = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i)
        if (assignment[i] >= 0) total += score[i][assignment[i]];
    return total;
}

}  // namespace kieval
