#pragma once

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace repcut {

enum class Relation { LessEqual, Equal, GreaterEqual };

struct LinearTerm {
  int var;
  double coef;
};

struct LinearConstraint {
  std::vector<LinearTerm> terms;
  Relation relation;
  double rhs;
  std::string name;
};

/// minimize offset + c^T x  subject to rows and per-variable bounds.
class LinearProgram {
 public:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  int add_variable(double cost, double lo = 0.0, double hi = kInf, std::string name = {});
  void add_constraint(std::vector<LinearTerm> terms, Relation relation, double rhs,
                      std::string name = {});

  int num_variables() const { return static_cast<int>(cost_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const std::vector<double>& cost() const { return cost_; }
  const std::vector<double>& lower() const { return lo_; }
  const std::vector<double>& upper() const { return hi_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<LinearConstraint>& constraints() const { return rows_; }

  double offset = 0.0;

 private:
  std::vector<double> cost_, lo_, hi_;
  std::vector<std::string> names_;
  std::vector<LinearConstraint> rows_;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Eigen::VectorXd values;
  double objective = 0.0;  // includes the offset
  int iterations = 0;
};

inline constexpr double kLpTolerance = 1e-9;

/// Two-phase revised simplex with an explicit basis inverse, refactored
/// periodically. Dantzig pricing; after 10(n+m) consecutive degenerate pivots
/// the phase switches to Bland's rule, which cannot cycle. Fixed variables
/// are substituted out before solving. Deterministic for identical input.
LpSolution solve_lp(const LinearProgram& lp);

/// Largest violation of a row or bound by the given point.
double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x);

/// CPLEX LP file format.
void write_lp_format(const LinearProgram& lp, std::ostream& out);

}  // namespace repcut
