#include "hammology/linprog.hpp"

#include <algorithm>

#include "hammology/errors.hpp"

namespace hammology {

int LinearProgram::add_variable() {
    objective_.emplace_back(0);
    return variable_count_++;
}

int LinearProgram::add_variables(int count) {
    int first = variable_count_;
    for (int i = 0; i < count; ++i) add_variable();
    return first;
}

void LinearProgram::set_objective(int variable, const Rational& coefficient) {
    objective_[variable] = coefficient;
}

void LinearProgram::add_constraint(std::vector<LinearTerm> terms, RowSense sense, Rational rhs) {
    rows_.push_back(Row{std::move(terms), sense, std::move(rhs)});
}

namespace {

// Tableau layout: m constraint rows over columns [structural | slack |
// artificial | rhs]; a separate reduced-cost row. basis_[i] is the column
// basic in row i.
class Tableau {
public:
    Tableau(const LinearProgram& program) {
        const int m = static_cast<int>(program.rows().size());
        structural_ = program.variable_count();

        // Count slack columns first so column indices are stable.
        int slacks = 0;
        for (const auto& row : program.rows())
            if (row.sense != RowSense::Eq) ++slacks;
        slack_base_ = structural_;
        artificial_base_ = structural_ + slacks;
        // Worst case one artificial per row.
        columns_ = artificial_base_ + m;

        rows_.assign(m, std::vector<Rational>(columns_ + 1, Rational(0)));
        basis_.assign(m, -1);
        artificial_count_ = 0;

        int next_slack = slack_base_;
        for (int i = 0; i < m; ++i) {
            const auto& row = program.rows()[i];
            for (const auto& [var, coeff] : row.terms) rows_[i][var] += coeff;
            rows_[i][columns_] = row.rhs;

            bool flipped = rows_[i][columns_] < 0;
            if (flipped) {
                for (int j = 0; j <= columns_; ++j) rows_[i][j] = -rows_[i][j];
            }
            RowSense sense = row.sense;
            if (flipped && sense == RowSense::LessEq) sense = RowSense::GreaterEq;
            else if (flipped && sense == RowSense::GreaterEq) sense = RowSense::LessEq;

            if (sense == RowSense::LessEq) {
                rows_[i][next_slack] = 1;
                basis_[i] = next_slack;
                ++next_slack;
            } else if (sense == RowSense::GreaterEq) {
                rows_[i][next_slack] = -1;
                ++next_slack;
            }
            if (basis_[i] == -1) {
                int art = artificial_base_ + artificial_count_++;
                rows_[i][art] = 1;
                basis_[i] = art;
            }
        }
        allowed_.assign(columns_, true);
    }

    LpSolution run(const LinearProgram& program) {
        // Phase 1: minimize the sum of artificials.
        if (artificial_count_ > 0) {
            std::vector<Rational> phase1(columns_, Rational(0));
            for (int a = 0; a < artificial_count_; ++a) phase1[artificial_base_ + a] = 1;
            make_reduced(phase1);
            if (iterate() != LpStatus::Optimal)
                throw InternalError("phase-1 simplex cannot be unbounded");
            if (objective_value() != 0) return LpSolution{LpStatus::Infeasible, Rational(0), {}};
            for (int a = 0; a < artificial_count_; ++a) allowed_[artificial_base_ + a] = false;
            pivot_out_artificials();
        }

        // Phase 2: the real objective.
        std::vector<Rational> costs(columns_, Rational(0));
        for (int v = 0; v < structural_; ++v) costs[v] = program.objective()[v];
        make_reduced(costs);
        LpStatus status = iterate();
        if (status != LpStatus::Optimal) return LpSolution{status, Rational(0), {}};

        LpSolution solution;
        solution.status = LpStatus::Optimal;
        solution.objective = objective_value();
        solution.values.assign(structural_, Rational(0));
        for (std::size_t i = 0; i < basis_.size(); ++i)
            if (basis_[i] < structural_) solution.values[basis_[i]] = rows_[i][columns_];
        return solution;
    }

private:
    Rational objective_value() const { return -reduced_[columns_]; }

    void make_reduced(const std::vector<Rational>& costs) {
        reduced_.assign(columns_ + 1, Rational(0));
        for (int j = 0; j < columns_; ++j) reduced_[j] = costs[j];
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            const Rational& cb = costs[basis_[i]];
            if (cb == 0) continue;
            for (int j = 0; j <= columns_; ++j)
                if (rows_[i][j] != 0) reduced_[j] -= cb * rows_[i][j];
        }
    }

    void pivot(int row, int col) {
        Rational pivot_value = rows_[row][col];
        if (pivot_value != 1)
            for (int j = 0; j <= columns_; ++j)
                if (rows_[row][j] != 0) rows_[row][j] /= pivot_value;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (static_cast<int>(i) == row) continue;
            const Rational factor = rows_[i][col];
            if (factor == 0) continue;
            for (int j = 0; j <= columns_; ++j)
                if (rows_[row][j] != 0) rows_[i][j] -= factor * rows_[row][j];
        }
        const Rational factor = reduced_[col];
        if (factor != 0)
            for (int j = 0; j <= columns_; ++j)
                if (rows_[row][j] != 0) reduced_[j] -= factor * rows_[row][j];
        basis_[row] = col;
    }

    // Bland's rule: smallest eligible entering column, smallest basic
    // variable among minimum-ratio rows. Guarantees termination under the
    // heavy degeneracy these polytopes produce.
    LpStatus iterate() {
        for (;;) {
            int entering = -1;
            for (int j = 0; j < columns_; ++j) {
                if (!allowed_[j]) continue;
                if (reduced_[j] < 0) {
                    entering = j;
                    break;
                }
            }
            if (entering == -1) return LpStatus::Optimal;

            int leaving = -1;
            Rational best_ratio;
            for (std::size_t i = 0; i < rows_.size(); ++i) {
                if (rows_[i][entering] <= 0) continue;
                Rational ratio = rows_[i][columns_] / rows_[i][entering];
                if (leaving == -1 || ratio < best_ratio ||
                    (ratio == best_ratio && basis_[i] < basis_[leaving])) {
                    leaving = static_cast<int>(i);
                    best_ratio = ratio;
                }
            }
            if (leaving == -1) return LpStatus::Unbounded;
            pivot(leaving, entering);
        }
    }

    // After phase 1 a zero-valued artificial may remain basic; swap it for
    // any allowed column with a nonzero coefficient, or leave the redundant
    // row in place (it stays at zero and artificials are barred).
    void pivot_out_artificials() {
        for (std::size_t i = 0; i < basis_.size(); ++i) {
            if (basis_[i] < artificial_base_) continue;
            for (int j = 0; j < artificial_base_; ++j) {
                if (rows_[i][j] != 0) {
                    pivot(static_cast<int>(i), j);
                    break;
                }
            }
        }
    }

    int structural_ = 0;
    int slack_base_ = 0;
    int artificial_base_ = 0;
    int artificial_count_ = 0;
    int columns_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<Rational> reduced_;
    std::vector<int> basis_;
    std::vector<bool> allowed_;
};

} // namespace

LpSolution solve(const LinearProgram& program) {
    Tableau tableau(program);
    return tableau.run(program);
}

} // namespace hammology
