#pragma once

#include <utility>
#include <vector>

#include "hammology/rational.hpp"

namespace hammology {

// Dense two-phase simplex over exact rationals, Bland's rule throughout.
// Instances here are tiny (miniball radii, center polytopes), so a plain
// tableau is the right tool; exactness is the requirement, not speed.

enum class RowSense { LessEq, GreaterEq, Eq };
enum class LpStatus { Optimal, Infeasible, Unbounded };

using LinearTerm = std::pair<int, Rational>;  // (variable index, coefficient)

class LinearProgram {
public:
    /// Adds a nonnegative variable, returns its index.
    int add_variable();
    int add_variables(int count);

    /// Objective is minimized; unset coefficients are zero.
    void set_objective(int variable, const Rational& coefficient);

    void add_constraint(std::vector<LinearTerm> terms, RowSense sense, Rational rhs);

    int variable_count() const { return variable_count_; }

    struct Row {
        std::vector<LinearTerm> terms;
        RowSense sense;
        Rational rhs;
    };
    const std::vector<Row>& rows() const { return rows_; }
    const std::vector<Rational>& objective() const { return objective_; }

private:
    int variable_count_ = 0;
    std::vector<Rational> objective_;
    std::vector<Row> rows_;
};

struct LpSolution {
    LpStatus status = LpStatus::Infeasible;
    Rational objective;
    std::vector<Rational> values;  // structural variables, on Optimal
};

LpSolution solve(const LinearProgram& program);

} // namespace hammology
