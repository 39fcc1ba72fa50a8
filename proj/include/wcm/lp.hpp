#pragma once

// Bounded-variable linear programming: model container plus a revised
// simplex solver. Maximization only. The solver keeps a warm-start basis
// inside the model so that cut loops and branching re-solve cheaply.

#include <string>
#include <vector>

namespace wcm {

enum class RowSense { le, eq, ge };

enum class LpStatus { optimal, infeasible, unbounded, iteration_limit };

struct LpModel {
    // Columns.
    std::vector<double> obj;
    std::vector<double> lb;
    std::vector<double> ub;
    std::vector<char> integral;  // branching intent; ignored by solve_lp
    std::vector<std::vector<std::pair<int, double>>> cols;  // (row, coef)

    // Rows.
    std::vector<RowSense> sense;
    std::vector<double> rhs;

    // Basis memory for warm starts; managed by solve_lp and the mutators.
    std::vector<signed char> basis_hint;

    int num_vars() const { return static_cast<int>(obj.size()); }
    int num_rows() const { return static_cast<int>(rhs.size()); }

    int add_var(double lb, double ub, double obj, bool integral = false);
    // Validates variable ids and merges duplicate terms; returns the row id.
    int add_row(const std::vector<std::pair<int, double>>& terms, RowSense s, double rhs);
    void set_bounds(int var, double lb, double ub);
    void set_objective_coeff(int var, double c);

    // Debugging dump in LP text format.
    std::string to_lp_text() const;
};

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    double objective = 0.0;
    std::vector<double> x;  // structural variables only
    long iterations = 0;
};

struct LpOptions {
    long max_iterations = 100000000;
};

// Solves max obj'x subject to the model rows and bounds. When optimal, the
// returned point satisfies every row and bound within 1e-7.
LpSolution solve_lp(LpModel& model, const LpOptions& opts = {});

// Largest violation of any row or bound at x; used by tests and asserts.
double max_infeasibility(const LpModel& model, const std::vector<double>& x);

}  // namespace wcm
