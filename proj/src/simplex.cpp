#include "qif/simplex.hpp"

#include <cmath>

namespace qif {

std::optional<std::vector<double>> solve_equality_feasibility(std::vector<double> a,
                                                              std::vector<double> b,
                                                              std::size_t rows, std::size_t cols,
                                                              double tol) {
    constexpr double kPivotEps = 1e-11;

    // Flip rows so b >= 0, then add one artificial variable per row. The
    // tableau holds the structural columns, the artificial columns and the
    // right-hand side; the phase-1 objective minimizes the artificial sum.
    for (std::size_t i = 0; i < rows; ++i) {
        if (b[i] < 0.0) {
            b[i] = -b[i];
            for (std::size_t j = 0; j < cols; ++j) a[i * cols + j] = -a[i * cols + j];
        }
    }

    std::size_t width = cols + rows + 1;
    std::vector<double> t((rows + 1) * width, 0.0);
    auto cell = [&](std::size_t i, std::size_t j) -> double& { return t[i * width + j]; };

    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) cell(i, j) = a[i * cols + j];
        cell(i, cols + i) = 1.0;
        cell(i, width - 1) = b[i];
    }
    // objective row: reduced costs for min sum of artificials, expressed with
    // the artificial basis priced out
    for (std::size_t j = 0; j < width; ++j) {
        double s = 0.0;
        for (std::size_t i = 0; i < rows; ++i) s += cell(i, j);
        cell(rows, j) = -s;
    }
    for (std::size_t i = 0; i < rows; ++i) cell(rows, cols + i) = 0.0;

    std::vector<std::size_t> basis(rows);
    for (std::size_t i = 0; i < rows; ++i) basis[i] = cols + i;

    while (true) {
        // Bland: entering = lowest-index structural column with negative
        // reduced cost; artificials never re-enter.
        std::size_t enter = cols;
        for (std::size_t j = 0; j < cols; ++j) {
            if (cell(rows, j) < -kPivotEps) {
                enter = j;
                break;
            }
        }
        if (enter == cols) break; // optimal

        std::size_t leave = rows;
        double best_ratio = 0.0;
        for (std::size_t i = 0; i < rows; ++i) {
            double aij = cell(i, enter);
            if (aij <= kPivotEps) continue;
            double ratio = cell(i, width - 1) / aij;
            if (leave == rows || ratio < best_ratio ||
                (ratio == best_ratio && basis[i] < basis[leave])) {
                leave = i;
                best_ratio = ratio;
            }
        }
        if (leave == rows) return std::nullopt; // unbounded; cannot happen in phase 1

        double piv = cell(leave, enter);
        for (std::size_t j = 0; j < width; ++j) cell(leave, j) /= piv;
        for (std::size_t i = 0; i <= rows; ++i) {
            if (i == leave) continue;
            double f = cell(i, enter);
            if (f == 0.0) continue;
            for (std::size_t j = 0; j < width; ++j) cell(i, j) -= f * cell(leave, j);
        }
        basis[leave] = enter;
    }

    double objective = -cell(rows, width - 1);
    if (objective > tol) return std::nullopt;

    std::vector<double> x(cols, 0.0);
    for (std::size_t i = 0; i < rows; ++i)
        if (basis[i] < cols) x[basis[i]] = cell(i, width - 1);
    return x;
}

} // namespace qif
