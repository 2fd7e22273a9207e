#pragma once

#include <cstddef>
#include <vector>

#include "semistatic/rational.hpp"

namespace semistatic {

enum class RowSense { LessEqual, Equal, GreaterEqual };

// minimize objective . x subject to each row, with per-variable sign constraints.
struct LinearProgram {
    struct Row {
        Vector coefficients;
        RowSense sense = RowSense::Equal;
        Rational rhs;
    };

    std::size_t variables = 0;
    Vector objective;
    std::vector<bool> free;  // false: x_j >= 0
    std::vector<Row> rows;

    explicit LinearProgram(std::size_t n = 0) : variables(n), objective(zeros(n)), free(n, false) {}
    void add_row(Vector coefficients, RowSense sense, Rational rhs);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational value;
    Vector x;
    // One multiplier per row; value == duals . rhs at optimality.
    Vector duals;
};

// Exact two-phase revised simplex with an explicit basis inverse and Bland's rule.
LpSolution solve_lp(const LinearProgram& lp);

}  // namespace semistatic
