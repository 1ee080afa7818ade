#include "framecheck/hungarian.hpp"

#include <algorithm>
#include <limits>

namespace framecheck {

Assignment solve_assignment(const CostMatrix& cost, double pad_cost) {
    const std::size_t rows = cost.rows();
    const std::size_t cols = cost.cols();
    const std::size_t n = std::max(rows, cols);
    Assignment result;
    result.row_to_col.assign(rows, -1);
    if (n == 0) return result;

    auto at = [&](std::size_t r, std::size_t c) { return (r < rows && c < cols) ? cost(r, c) : pad_cost; };

    // 1-based potentials u (rows), v (cols); match[c] = row matched to column c.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0);
    std::vector<double> v(n + 1, 0.0);
    std::vector<std::size_t> match(n + 1, 0);
    std::vector<std::size_t> way(n + 1, 0);
    std::vector<double> min_slack(n + 1);
    std::vector<char> used(n + 1);

    for (std::size_t row = 1; row <= n; ++row) {
        match[0] = row;
        std::size_t col0 = 0;
        std::fill(min_slack.begin(), min_slack.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[col0] = 1;
            const std::size_t r0 = match[col0];
            double delta = inf;
            std::size_t col1 = 0;
            for (std::size_t c = 1; c <= n; ++c) {
                if (used[c]) continue;
                const double slack = at(r0 - 1, c - 1) - u[r0] - v[c];
                if (slack < min_slack[c]) {
                    min_slack[c] = slack;
                    way[c] = col0;
                }
                if (min_slack[c] < delta) {
                    delta = min_slack[c];
                    col1 = c;
                }
            }
            for (std::size_t c = 0; c <= n; ++c) {
                if (used[c]) {
                    u[match[c]] += delta;
                    v[c] -= delta;
                } else {
                    min_slack[c] -= delta;
                }
            }
            col0 = col1;
        } while (match[col0] != 0);
        // Augment along the alternating path.
        do {
            const std::size_t col1 = way[col0];
            match[col0] = match[col1];
            col0 = col1;
        } while (col0 != 0);
    }

    for (std::size_t c = 1; c <= n; ++c) {
        const std::size_t r = match[c] - 1;
        if (r < rows && c - 1 < cols) {
            result.row_to_col[r] = static_cast<long>(c - 1);
            result.cost += cost(r, c - 1);
        }
    }
    return result;
}

}  // namespace framecheck
