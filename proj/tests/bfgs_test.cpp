// Copyright 2026 The robust-iswap Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "robust_iswap/bfgs.hpp"

#include <cmath>

#include <gtest/gtest.h>

namespace robust_iswap {
namespace {

double rosenbrock(const Eigen::VectorXd& x, Eigen::VectorXd& g) {
  double f = 0.0;
  g.setZero();
  for (Eigen::Index i = 0; i + 1 < x.size(); ++i) {
    const double a = x(i + 1) - x(i) * x(i);
    const double b = 1.0 - x(i);
    f += 100.0 * a * a + b * b;
    g(i) += -400.0 * x(i) * a - 2.0 * b;
    g(i + 1) += 200.0 * a;
  }
  return f;
}

TEST(Bfgs, RosenbrockTwoDimensional) {
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  BfgsOptions opt;
  opt.gradient_tolerance = 1e-10;
  const BfgsResult r = bfgs_minimize(rosenbrock, x0, opt);
  EXPECT_TRUE(r.reached_gradient);
  EXPECT_NEAR(r.x(0), 1.0, 1e-8);
  EXPECT_NEAR(r.x(1), 1.0, 1e-8);
  EXPECT_LT(r.iterations, 100);
}

TEST(Bfgs, RosenbrockTenDimensional) {
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(10, -0.5);
  const BfgsResult r = bfgs_minimize(rosenbrock, x0, BfgsOptions{});
  EXPECT_LT((r.x - Eigen::VectorXd::Ones(10)).norm(), 1e-7);
}

TEST(Bfgs, TraceIsNonIncreasing) {
  Eigen::VectorXd x0(4);
  x0 << -1.2, 1.0, -0.3, 2.0;
  int accepted = 0;
  const BfgsResult r = bfgs_minimize(rosenbrock, x0, BfgsOptions{},
                                     [&](const Eigen::VectorXd&, double) { ++accepted; });
  ASSERT_FALSE(r.trace.empty());
  EXPECT_EQ(static_cast<std::size_t>(accepted), r.trace.size());
  for (std::size_t k = 1; k < r.trace.size(); ++k) EXPECT_LE(r.trace[k], r.trace[k - 1]);
}

TEST(Bfgs, QuadraticConvergesQuickly) {
  Eigen::MatrixXd a(3, 3);
  a << 4, 1, 0, 1, 3, 0.5, 0, 0.5, 2;
  Eigen::VectorXd b(3);
  b << 1, -2, 0.5;
  auto quad = [&](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = a * x - b;
    return 0.5 * x.dot(a * x) - b.dot(x);
  };
  const BfgsResult r = bfgs_minimize(quad, Eigen::VectorXd::Zero(3), BfgsOptions{});
  EXPECT_LT((r.x - a.ldlt().solve(b)).norm(), 1e-9);
  EXPECT_LE(r.iterations, 12);
}

TEST(Bfgs, StopsAtCostTolerance) {
  auto sq = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = 2.0 * x;
    return x.squaredNorm();
  };
  BfgsOptions opt;
  opt.cost_tolerance = 1e-3;
  Eigen::VectorXd x0 = Eigen::VectorXd::Constant(5, 3.0);
  const BfgsResult r = bfgs_minimize(sq, x0, opt);
  EXPECT_TRUE(r.reached_cost);
  EXPECT_LE(r.f, 1e-3);
}

TEST(Bfgs, NonFiniteStartIsReported) {
  auto bad = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    g = x;
    return std::nan("");
  };
  const BfgsResult r = bfgs_minimize(bad, Eigen::VectorXd::Ones(2), BfgsOptions{});
  EXPECT_TRUE(r.non_finite);
  EXPECT_EQ(r.iterations, 0);
}

TEST(Bfgs, BacktracksOutOfNonFiniteRegion) {
  // Finite only for x < 1; the minimum sits at 0.5.
  auto barrier = [](const Eigen::VectorXd& x, Eigen::VectorXd& g) {
    if (x(0) >= 1.0) {
      g.setConstant(std::nan(""));
      return std::numeric_limits<double>::infinity();
    }
    const double d = x(0) - 0.5;
    g(0) = 2.0 * d + 0.01 / ((1.0 - x(0)) * (1.0 - x(0)));
    return d * d + 0.01 / (1.0 - x(0));
  };
  Eigen::VectorXd x0(1);
  x0 << -3.0;
  const BfgsResult r = bfgs_minimize(barrier, x0, BfgsOptions{});
  EXPECT_TRUE(std::isfinite(r.f));
  EXPECT_LT(r.x(0), 1.0);
  EXPECT_TRUE(r.reached_gradient);
}

TEST(Bfgs, IterationCapRespected) {
  Eigen::VectorXd x0(2);
  x0 << -1.2, 1.0;
  BfgsOptions opt;
  opt.max_iterations = 5;
  const BfgsResult r = bfgs_minimize(rosenbrock, x0, opt);
  EXPECT_EQ(r.iterations, 5);
  EXPECT_FALSE(r.reached_gradient);
}

}  // namespace
}  // namespace robust_iswap
