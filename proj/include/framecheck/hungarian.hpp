#pragma once

#include <cstddef>
#include <vector>

namespace framecheck {

/// Dense row-major cost matrix.
class CostMatrix {
public:
    CostMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

struct Assignment {
    /// Column assigned to each row; -1 when the row went to a padding column.
    std::vector<long> row_to_col;
    /// Sum of real (non-padding) costs.
    double cost = 0.0;
};

/// Minimum-cost assignment (Kuhn-Munkres with potentials, O(n^3)).
/// Rectangular inputs are padded to square with `pad_cost` entries, which
/// should exceed every real cost so padding never displaces a real match.
Assignment solve_assignment(const CostMatrix& cost, double pad_cost);

}  // namespace framecheck
