#include <gtest/gtest.h>

#include <sstream>

#include "repcut/error.hpp"
#include "repcut/lp.hpp"
#include "support/generators.hpp"

namespace repcut {
namespace {

TEST(Lp, SingleLowerBoundRow) {
  LinearProgram lp;
  const int x = lp.add_variable(1.0);
  lp.add_constraint({{x, 1.0}}, Relation::GreaterEqual, 3.0);
  LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.values[x], 3.0, 1e-12);
  EXPECT_NEAR(s.objective, 3.0, 1e-12);
}

TEST(Lp, ContradictoryRowIsInfeasible) {
  LinearProgram lp;
  const int x = lp.add_variable(0.0);
  lp.add_constraint({{x, 1.0}}, Relation::LessEqual, -1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Infeasible);
}

TEST(Lp, Unbounded) {
  LinearProgram lp;
  const int x = lp.add_variable(-1.0);
  const int y = lp.add_variable(0.0);
  lp.add_constraint({{x, 1.0}, {y, -1.0}}, Relation::LessEqual, 1.0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::Unbounded);
}

TEST(Lp, FixedAndFreeVariables) {
  // minimize |z - 2.5| + 0*f with z fixed through bounds, f free; z + f = 1.
  LinearProgram lp;
  const int z = lp.add_variable(0.0, 2.5, 2.5);
  const int f = lp.add_variable(0.0, -LinearProgram::kInf, LinearProgram::kInf);
  const int t = lp.add_variable(1.0);
  lp.add_constraint({{z, 1.0}, {f, 1.0}}, Relation::Equal, 1.0);
  lp.add_constraint({{t, 1.0}, {f, 1.0}}, Relation::GreaterEqual, -1.0);
  LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.values[f], -1.5, 1e-9);
  EXPECT_NEAR(s.values[t], 0.5, 1e-9);
  EXPECT_NEAR(s.objective, 0.5, 1e-9);
}

TEST(Lp, RedundantEqualities) {
  LinearProgram lp;
  const int a = lp.add_variable(1.0);
  const int b = lp.add_variable(2.0);
  lp.add_constraint({{a, 1.0}, {b, 1.0}}, Relation::Equal, 1.0);
  lp.add_constraint({{a, 2.0}, {b, 2.0}}, Relation::Equal, 2.0);
  LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  EXPECT_NEAR(s.objective, 1.0, 1e-12);
}

TEST(Lp, DimensionMismatchIsStructural) {
  LinearProgram lp;
  lp.add_variable(1.0);
  EXPECT_THROW(lp.add_constraint({{3, 1.0}}, Relation::Equal, 1.0), StructuralError);
  EXPECT_THROW(lp.add_variable(1.0, 2.0, 1.0), StructuralError);
}

TEST(Lp, WeakDualityOnTransportProblem) {
  // Two sources (supply 3, 2), two sinks (demand 4, 1), costs [[1,3],[2,1]].
  LinearProgram lp;
  int x[2][2];
  const double c[2][2] = {{1, 3}, {2, 1}};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) x[i][j] = lp.add_variable(c[i][j]);
  lp.add_constraint({{x[0][0], 1}, {x[0][1], 1}}, Relation::LessEqual, 3);
  lp.add_constraint({{x[1][0], 1}, {x[1][1], 1}}, Relation::LessEqual, 2);
  lp.add_constraint({{x[0][0], 1}, {x[1][0], 1}}, Relation::GreaterEqual, 4);
  lp.add_constraint({{x[0][1], 1}, {x[1][1], 1}}, Relation::GreaterEqual, 1);
  LpSolution s = solve_lp(lp);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  // Dual prices u >= 0 on supplies, v >= 0 on demands with v_j - u_i <= c_ij
  // bound the primal from below. u = (1, 0), v = (2, 1) is feasible with
  // value 4*2 + 1*1 - 3*1 = 6; u = 0, v = (1, 1) gives 5.
  EXPECT_GE(s.objective, 6.0 - 1e-9);
  EXPECT_GE(s.objective, 5.0 - 1e-9);
  EXPECT_NEAR(s.objective, 6.0, 1e-9);
}

TEST(Lp, DeterministicAcrossSolves) {
  CounterRng rng(99);
  LinearProgram lp;
  for (int j = 0; j < 6; ++j) lp.add_variable(testing::uniform_int(rng, -3, 5), 0.0, 4.0);
  for (int i = 0; i < 5; ++i) {
    std::vector<LinearTerm> terms;
    for (int j = 0; j < 6; ++j) terms.push_back({j, double(testing::uniform_int(rng, -2, 3))});
    lp.add_constraint(terms, Relation::LessEqual, testing::uniform_int(rng, 1, 6));
  }
  LpSolution a = solve_lp(lp), b = solve_lp(lp);
  ASSERT_EQ(a.status, b.status);
  EXPECT_EQ(a.objective, b.objective);
  for (int j = 0; j < 6; ++j) EXPECT_EQ(a.values[j], b.values[j]);
}

// Exhaustive vertex enumeration for boxed 3-variable programs: every vertex
// is the solution of 3 tight constraints drawn from rows and box faces.
double vertex_oracle(const LinearProgram& lp, bool& feasible) {
  struct Face {
    Eigen::Vector3d a;
    double b;
  };
  std::vector<Face> faces;
  for (const LinearConstraint& c : lp.constraints()) {
    Eigen::Vector3d a = Eigen::Vector3d::Zero();
    for (const LinearTerm& t : c.terms) a[t.var] += t.coef;
    faces.push_back({a, c.rhs});
  }
  for (int j = 0; j < 3; ++j) {
    Eigen::Vector3d e = Eigen::Vector3d::Unit(j);
    faces.push_back({e, lp.lower()[j]});
    faces.push_back({e, lp.upper()[j]});
  }
  feasible = false;
  double best = std::numeric_limits<double>::infinity();
  const int f = static_cast<int>(faces.size());
  for (int i = 0; i < f; ++i)
    for (int j = i + 1; j < f; ++j)
      for (int k = j + 1; k < f; ++k) {
        Eigen::Matrix3d m;
        m.row(0) = faces[i].a.transpose();
        m.row(1) = faces[j].a.transpose();
        m.row(2) = faces[k].a.transpose();
        if (std::abs(m.determinant()) < 1e-9) continue;
        Eigen::Vector3d x = m.fullPivLu().solve(Eigen::Vector3d(faces[i].b, faces[j].b, faces[k].b));
        if (max_violation(lp, x) > 1e-9) continue;
        feasible = true;
        double obj = 0.0;
        for (int v = 0; v < 3; ++v) obj += lp.cost()[v] * x[v];
        best = std::min(best, obj);
      }
  return best;
}

TEST(LpProperty, MatchesVertexEnumeration) {
  int optimal = 0, infeasible = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    CounterRng rng(seed, 11);
    LinearProgram lp;
    for (int j = 0; j < 3; ++j) lp.add_variable(testing::uniform_int(rng, -4, 4), 0.0, 5.0);
    const int rows = testing::uniform_int(rng, 1, 4);
    for (int i = 0; i < rows; ++i) {
      std::vector<LinearTerm> terms;
      for (int j = 0; j < 3; ++j) terms.push_back({j, double(testing::uniform_int(rng, -3, 3))});
      const auto rel = static_cast<Relation>(rng.below(3));
      lp.add_constraint(terms, rel, testing::uniform_int(rng, -4, 8));
    }
    bool feasible = false;
    const double expected = vertex_oracle(lp, feasible);
    LpSolution s = solve_lp(lp);
    if (!feasible) {
      EXPECT_EQ(s.status, LpStatus::Infeasible) << "seed " << seed;
      ++infeasible;
      continue;
    }
    ASSERT_EQ(s.status, LpStatus::Optimal) << "seed " << seed;
    EXPECT_LE(max_violation(lp, s.values), 1e-9);
    EXPECT_NEAR(s.objective, expected, 1e-9) << "seed " << seed;
    ++optimal;
  }
  EXPECT_GT(optimal, 100);
  EXPECT_GT(infeasible, 10);
}

TEST(Lp, WritesLpFormat) {
  LinearProgram lp;
  const int x = lp.add_variable(2.0, 0.0, 1.0, "x_a");
  const int y = lp.add_variable(-1.0, 0.0, 0.0, "y");
  lp.add_constraint({{x, 1.0}, {y, -1.0}}, Relation::GreaterEqual, 0.5, "row");
  std::ostringstream out;
  write_lp_format(lp, out);
  const std::string text = out.str();
  EXPECT_NE(text.find("Minimize\n obj: 2 x_a - 1 y"), std::string::npos);
  EXPECT_NE(text.find(" row: 1 x_a - 1 y >= 0.5"), std::string::npos);
  EXPECT_NE(text.find(" 0 <= x_a <= 1"), std::string::npos);
  EXPECT_NE(text.find(" y = 0"), std::string::npos);
  EXPECT_NE(text.find("End"), std::string::npos);
}

}  // namespace
}  // namespace repcut
