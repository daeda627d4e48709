#include "advgrasp/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/LU>

namespace advgrasp {

std::string_view to_string(LpStatus status) {
  switch (status) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
    case LpStatus::IterationLimit: return "iteration_limit";
  }
  return "unknown";
}

LinearProgram::LinearProgram(int num_vars)
    : num_vars_(num_vars), cost_(Eigen::VectorXd::Zero(num_vars)) {
  if (num_vars < 1) throw std::invalid_argument("LinearProgram: need at least one variable");
}

void LinearProgram::add_row(const Eigen::RowVectorXd& coeffs, RowSense sense, double rhs) {
  if (coeffs.size() != num_vars_) throw std::invalid_argument("LinearProgram: row width mismatch");
  rows_.push_back(coeffs);
  senses_.push_back(sense);
  rhs_.push_back(rhs);
}

namespace {

// After this many consecutive degenerate pivots the entering rule switches
// from Dantzig to Bland, which cannot cycle.
constexpr int kDegenerateRunBeforeBland = 50;

// Dense tableau: m constraint rows plus the objective row (last); the last
// column is the right-hand side. The objective row holds reduced costs and
// minus the current objective value.
class Tableau {
 public:
  Tableau(int rows, int cols) : t_(Eigen::MatrixXd::Zero(rows + 1, cols + 1)), basis_(rows, -1) {}

  int rows() const { return static_cast<int>(t_.rows()) - 1; }
  int cols() const { return static_cast<int>(t_.cols()) - 1; }
  double& at(int r, int c) { return t_(r, c); }
  double at(int r, int c) const { return t_(r, c); }
  double& rhs(int r) { return t_(r, cols()); }
  double rhs(int r) const { return t_(r, cols()); }
  double& cost(int c) { return t_(rows(), c); }
  double objective() const { return -t_(rows(), cols()); }
  std::vector<int>& basis() { return basis_; }
  const std::vector<int>& basis() const { return basis_; }
  Eigen::MatrixXd& raw() { return t_; }

  void pivot(int r, int c) {
    t_.row(r) /= t_(r, c);
    for (int i = 0; i <= rows(); ++i) {
      if (i == r) continue;
      const double factor = t_(i, c);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    t_(r, c) = 1.0;
    basis_[r] = c;
  }

  LpStatus optimize(const std::vector<bool>& allowed, const SimplexOptions& opt, int& iterations,
                    int max_iterations) {
    int degenerate_run = 0;
    while (true) {
      const bool bland = degenerate_run >= kDegenerateRunBeforeBland;
      int enter = -1;
      double most_negative = -opt.optimality_tol;
      for (int c = 0; c < cols(); ++c) {
        if (!allowed[c] || cost(c) >= -opt.optimality_tol) continue;
        if (bland) {
          enter = c;
          break;
        }
        if (cost(c) < most_negative) {
          most_negative = cost(c);
          enter = c;
        }
      }
      if (enter < 0) return LpStatus::Optimal;
      if (iterations >= max_iterations) return LpStatus::IterationLimit;

      const int leave = bland ? bland_ratio(enter, opt) : harris_ratio(enter, opt);
      if (leave < 0) return LpStatus::Unbounded;
      const double step = std::max(rhs(leave), 0.0) / at(leave, enter);
      degenerate_run = step <= opt.feasibility_tol ? degenerate_run + 1 : 0;
      pivot(leave, enter);
      ++iterations;
    }
  }

 private:
  // Two-pass ratio test: relax each bound by the feasibility tolerance, then
  // take the largest pivot element among rows within the relaxed minimum.
  int harris_ratio(int enter, const SimplexOptions& opt) const {
    double relaxed = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows(); ++r) {
      const double a = at(r, enter);
      if (a > opt.pivot_tol) {
        relaxed = std::min(relaxed, (std::max(rhs(r), 0.0) + opt.feasibility_tol) / a);
      }
    }
    int leave = -1;
    double best_pivot = 0.0;
    for (int r = 0; r < rows(); ++r) {
      const double a = at(r, enter);
      if (a > opt.pivot_tol && std::max(rhs(r), 0.0) / a <= relaxed && a > best_pivot) {
        best_pivot = a;
        leave = r;
      }
    }
    return leave;
  }

  // Textbook minimum ratio, ties broken by the smallest basic column index.
  int bland_ratio(int enter, const SimplexOptions& opt) const {
    int leave = -1;
    double best = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows(); ++r) {
      const double a = at(r, enter);
      if (a <= opt.pivot_tol) continue;
      const double ratio = std::max(rhs(r), 0.0) / a;
      if (leave < 0 || ratio < best - 1e-12 * std::max(1.0, best) ||
          (ratio <= best + 1e-12 * std::max(1.0, best) && basis_[r] < basis_[leave])) {
        best = std::min(best, ratio);
        leave = r;
      }
    }
    return leave;
  }

  Eigen::MatrixXd t_;
  std::vector<int> basis_;
};

}  // namespace

LpResult LinearProgram::solve(const SimplexOptions& options) const {
  const int m = num_rows();
  const int n = num_vars_;

  // Standard form with equilibrated rows and nonnegative right-hand sides.
  // Column layout: structural | slack/surplus | artificial.
  std::vector<RowSense> sense(senses_);
  std::vector<double> b(rhs_);
  Eigen::MatrixXd a(m, n);
  int slack_count = 0;
  int artificial_count = 0;
  for (int r = 0; r < m; ++r) {
    a.row(r) = rows_[r];
    const double row_max = a.row(r).cwiseAbs().maxCoeff();
    if (row_max > 0.0) {
      a.row(r) /= row_max;
      b[r] /= row_max;
    }
    if (b[r] < 0.0) {
      a.row(r) *= -1.0;
      b[r] = -b[r];
      if (sense[r] == RowSense::LessEqual) {
        sense[r] = RowSense::GreaterEqual;
      } else if (sense[r] == RowSense::GreaterEqual) {
        sense[r] = RowSense::LessEqual;
      }
    }
    if (sense[r] != RowSense::Equal) ++slack_count;
    if (sense[r] != RowSense::LessEqual) ++artificial_count;
  }

  const int first_artificial = n + slack_count;
  const int total_cols = first_artificial + artificial_count;
  Eigen::MatrixXd standard = Eigen::MatrixXd::Zero(m, total_cols);
  standard.leftCols(n) = a;
  Tableau tab(m, total_cols);

  int next_slack = n;
  int next_artificial = first_artificial;
  for (int r = 0; r < m; ++r) {
    switch (sense[r]) {
      case RowSense::LessEqual:
        standard(r, next_slack) = 1.0;
        tab.basis()[r] = next_slack++;
        break;
      case RowSense::GreaterEqual:
        standard(r, next_slack++) = -1.0;
        standard(r, next_artificial) = 1.0;
        tab.basis()[r] = next_artificial++;
        break;
      case RowSense::Equal:
        standard(r, next_artificial) = 1.0;
        tab.basis()[r] = next_artificial++;
        break;
    }
  }
  tab.raw().topLeftCorner(m, total_cols) = standard;
  for (int r = 0; r < m; ++r) tab.rhs(r) = b[r];

  const int max_iterations =
      options.max_iterations > 0 ? options.max_iterations : 100 * (m + total_cols);
  LpResult result;
  int iterations = 0;
  double b_scale = 1.0;
  for (double v : b) b_scale = std::max(b_scale, v);

  // Phase 1: minimize the sum of artificials, priced out of the basic rows.
  if (artificial_count > 0) {
    for (int c = first_artificial; c < total_cols; ++c) tab.cost(c) = 1.0;
    for (int r = 0; r < m; ++r) {
      if (tab.basis()[r] >= first_artificial) tab.raw().row(m) -= tab.raw().row(r);
    }
    const std::vector<bool> allowed(total_cols, true);
    const LpStatus phase1 = tab.optimize(allowed, options, iterations, max_iterations);
    result.iterations = iterations;
    if (phase1 == LpStatus::IterationLimit) {
      result.status = phase1;
      return result;
    }
    if (tab.objective() > options.feasibility_tol * b_scale) {
      result.status = LpStatus::Infeasible;
      return result;
    }
    // Drive zero-level artificials out of the basis on their largest entry.
    for (int r = 0; r < m; ++r) {
      if (tab.basis()[r] < first_artificial) continue;
      int pivot_col = -1;
      double best = 1e-9;
      for (int c = 0; c < first_artificial; ++c) {
        if (std::abs(tab.at(r, c)) > best) {
          best = std::abs(tab.at(r, c));
          pivot_col = c;
        }
      }
      // No candidate: the row is redundant and its artificial stays basic at
      // zero; artificials are barred from entering in phase 2.
      if (pivot_col >= 0) tab.pivot(r, pivot_col);
    }
  }

  // Phase 2: the real objective over structural and slack columns.
  tab.raw().row(m).setZero();
  for (int c = 0; c < n; ++c) tab.cost(c) = cost_(c);
  for (int r = 0; r < m; ++r) {
    const int bc = tab.basis()[r];
    const double cb = bc < n ? cost_(bc) : 0.0;
    if (cb != 0.0) tab.raw().row(m) -= cb * tab.raw().row(r);
  }
  std::vector<bool> allowed(total_cols, false);
  std::fill(allowed.begin(), allowed.begin() + first_artificial, true);
  const LpStatus phase2 = tab.optimize(allowed, options, iterations, max_iterations);
  result.iterations = iterations;
  result.status = phase2;
  if (phase2 != LpStatus::Optimal) return result;

  // Recompute the basic solution from the original rows; this discards the
  // rounding accumulated in the tableau over many pivots.
  Eigen::MatrixXd basis_matrix(m, m);
  for (int r = 0; r < m; ++r) basis_matrix.col(r) = standard.col(tab.basis()[r]);
  const Eigen::Map<const Eigen::VectorXd> b_vec(b.data(), m);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(basis_matrix);
  Eigen::VectorXd x_basic;
  if (lu.isInvertible()) {
    x_basic = lu.solve(b_vec);
  } else {
    x_basic.resize(m);
    for (int r = 0; r < m; ++r) x_basic(r) = tab.rhs(r);
  }

  result.x = Eigen::VectorXd::Zero(n);
  for (int r = 0; r < m; ++r) {
    const int bc = tab.basis()[r];
    if (bc < n) result.x(bc) = std::max(x_basic(r), 0.0);
  }
  result.objective = cost_.dot(result.x);
  return result;
}

}  // namespace advgrasp
