#pragma once

#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace advgrasp {

enum class RowSense { LessEqual, Equal, GreaterEqual };

enum class LpStatus { Optimal, Infeasible, Unbounded, IterationLimit };

std::string_view to_string(LpStatus status);

struct SimplexOptions {
  double feasibility_tol = 1e-9;
  double optimality_tol = 1e-9;
  double pivot_tol = 1e-9;
  int max_iterations = 0;  ///< 0: 100 * (rows + columns)
};

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd x;       ///< primal values when Optimal
  double objective = 0.0;  ///< c . x when Optimal
  int iterations = 0;
};

/// minimize c.x subject to rows and x >= 0, solved by a dense two-phase
/// tableau simplex. Rows are equilibrated; pricing is Dantzig with a Harris
/// ratio test, switching to Bland's rule after a run of degenerate pivots so
/// the method cannot cycle. The returned x is recomputed from the original
/// rows with the final basis.
class LinearProgram {
 public:
  explicit LinearProgram(int num_vars);

  int num_vars() const { return num_vars_; }
  int num_rows() const { return static_cast<int>(rhs_.size()); }

  void set_objective(int var, double coeff) { cost_[var] = coeff; }
  void add_row(const Eigen::RowVectorXd& coeffs, RowSense sense, double rhs);

  LpResult solve(const SimplexOptions& options = {}) const;

 private:
  int num_vars_;
  Eigen::VectorXd cost_;
  std::vector<Eigen::RowVectorXd> rows_;
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
};

}  // namespace advgrasp
