#include <random>

#include <gtest/gtest.h>

#include "advgrasp/simplex.hpp"

namespace advgrasp {
namespace {

Eigen::RowVectorXd row(std::initializer_list<double> v) {
  Eigen::RowVectorXd r(static_cast<Eigen::Index>(v.size()));
  int i = 0;
  for (double x : v) r(i++) = x;
  return r;
}

TEST(Simplex, TextbookMaximization) {
  // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> (2, 6), 36
  LinearProgram lp(2);
  lp.set_objective(0, -3);
  lp.set_objective(1, -5);
  lp.add_row(row({1, 0}), RowSense::LessEqual, 4);
  lp.add_row(row({0, 2}), RowSense::LessEqual, 12);
  lp.add_row(row({3, 2}), RowSense::LessEqual, 18);
  const LpResult r = lp.solve();
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, -36, 1e-9);
  EXPECT_NEAR(r.x(0), 2, 1e-9);
  EXPECT_NEAR(r.x(1), 6, 1e-9);
}

TEST(Simplex, EqualityAndGreaterRows) {
  // min x + y s.t. x + 2y = 4, x >= 1 -> (1, 1.5), 2.5
  LinearProgram lp(2);
  lp.set_objective(0, 1);
  lp.set_objective(1, 1);
  lp.add_row(row({1, 2}), RowSense::Equal, 4);
  lp.add_row(row({1, 0}), RowSense::GreaterEqual, 1);
  const LpResult r = lp.solve();
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 2.5, 1e-12);
}

TEST(Simplex, NegativeRightHandSide) {
  // -x <= -3 means x >= 3
  LinearProgram lp(1);
  lp.set_objective(0, 1);
  lp.add_row(row({-1}), RowSense::LessEqual, -3);
  const LpResult r = lp.solve();
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.x(0), 3, 1e-12);
}

TEST(Simplex, Infeasible) {
  LinearProgram lp(1);
  lp.add_row(row({1}), RowSense::LessEqual, 1);
  lp.add_row(row({1}), RowSense::GreaterEqual, 2);
  EXPECT_EQ(lp.solve().status, LpStatus::Infeasible);
}

TEST(Simplex, Unbounded) {
  LinearProgram lp(2);
  lp.set_objective(0, -1);
  lp.add_row(row({1, -1}), RowSense::LessEqual, 1);
  EXPECT_EQ(lp.solve().status, LpStatus::Unbounded);
}

TEST(Simplex, RedundantEqualities) {
  LinearProgram lp(2);
  lp.set_objective(0, 1);
  lp.set_objective(1, 2);
  lp.add_row(row({1, 1}), RowSense::Equal, 2);
  lp.add_row(row({2, 2}), RowSense::Equal, 4);
  const LpResult r = lp.solve();
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, 2, 1e-12);
}

TEST(Simplex, DegenerateCyclingExample) {
  // Beale's example, which cycles under the textbook Dantzig rule.
  LinearProgram lp(4);
  lp.set_objective(0, -0.75);
  lp.set_objective(1, 150);
  lp.set_objective(2, -0.02);
  lp.set_objective(3, 6);
  lp.add_row(row({0.25, -60, -0.04, 9}), RowSense::LessEqual, 0);
  lp.add_row(row({0.5, -90, -0.02, 3}), RowSense::LessEqual, 0);
  lp.add_row(row({0, 0, 1, 0}), RowSense::LessEqual, 1);
  const LpResult r = lp.solve();
  ASSERT_EQ(r.status, LpStatus::Optimal);
  EXPECT_NEAR(r.objective, -0.05, 1e-12);
}

TEST(Simplex, IterationLimit) {
  LinearProgram lp(2);
  lp.set_objective(0, -1);
  lp.set_objective(1, -1);
  lp.add_row(row({1, 0}), RowSense::LessEqual, 1);
  lp.add_row(row({0, 1}), RowSense::LessEqual, 1);
  SimplexOptions opt;
  opt.max_iterations = 1;
  EXPECT_EQ(lp.solve(opt).status, LpStatus::IterationLimit);
}

// Random feasible boxes: min c.x over {Ax <= b, 0 <= x <= 1} with c >= 0 has
// optimum 0 at x = 0 whenever b >= 0.
TEST(Simplex, RandomFeasibleSolutionsSatisfyRows) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 6;
    LinearProgram lp(n);
    for (int j = 0; j < n; ++j) lp.set_objective(j, u(rng));
    std::vector<std::pair<Eigen::RowVectorXd, double>> rows;
    for (int i = 0; i < 8; ++i) {
      Eigen::RowVectorXd a(n);
      for (int j = 0; j < n; ++j) a(j) = u(rng);
      rows.emplace_back(a, 1.0 + u(rng) * 0.5);
      lp.add_row(a, RowSense::LessEqual, rows.back().second);
    }
    for (int j = 0; j < n; ++j) {
      Eigen::RowVectorXd a = Eigen::RowVectorXd::Zero(n);
      a(j) = 1;
      rows.emplace_back(a, 1.0);
      lp.add_row(a, RowSense::LessEqual, 1.0);
    }
    const LpResult r = lp.solve();
    ASSERT_EQ(r.status, LpStatus::Optimal);
    for (const auto& [a, b] : rows) EXPECT_LE(a.dot(r.x), b + 1e-9);
    EXPECT_LE(r.objective, 1e-12);  // x = 0 is feasible
  }
}

TEST(Simplex, StatusNames) {
  EXPECT_EQ(to_string(LpStatus::Optimal), "optimal");
  EXPECT_EQ(to_string(LpStatus::Infeasible), "infeasible");
}

}  // namespace
}  // namespace advgrasp
