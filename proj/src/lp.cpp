#include "repcut/lp.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>

#include "repcut/error.hpp"

namespace repcut {

int LinearProgram::add_variable(double cost, double lo, double hi, std::string name) {
  if (!std::isfinite(cost)) throw StructuralError("LP: non-finite objective coefficient");
  if (std::isnan(lo) || std::isnan(hi) || lo > hi || lo == kInf || hi == -kInf)
    throw StructuralError("LP: bad bounds on variable " + std::to_string(cost_.size()));
  cost_.push_back(cost);
  lo_.push_back(lo);
  hi_.push_back(hi);
  names_.push_back(std::move(name));
  return num_variables() - 1;
}

void LinearProgram::add_constraint(std::vector<LinearTerm> terms, Relation relation,
                                   double rhs, std::string name) {
  if (!std::isfinite(rhs)) throw StructuralError("LP: non-finite right-hand side");
  for (const LinearTerm& t : terms) {
    if (t.var < 0 || t.var >= num_variables())
      throw StructuralError("LP: constraint refers to variable " + std::to_string(t.var) +
                            " of " + std::to_string(num_variables()));
    if (!std::isfinite(t.coef)) throw StructuralError("LP: non-finite coefficient");
  }
  rows_.push_back({std::move(terms), relation, rhs, std::move(name)});
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kRefactorEvery = 64;
constexpr int kIterationCap = 200000;

// How an original variable maps onto nonnegative standard-form columns:
// x = shift + sign * col  (+ second column with opposite sign for free vars).
struct VarMap {
  double shift = 0.0;
  int col = -1;
  double sign = 1.0;
  int neg_col = -1;
};

struct StandardForm {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd cost;
  std::vector<char> artificial;
  std::vector<int> initial_basis;
  int num_structural = 0;
};

class Simplex {
 public:
  Simplex(const StandardForm& sf) : sf_(sf), m_(sf.a.rows()), n_(sf.a.cols()) {
    basis_ = sf.initial_basis;
    is_basic_.assign(n_, 0);
    for (int j : basis_) is_basic_[j] = 1;
    refactor();
  }

  // Returns false when the phase is unbounded.
  bool run(const Eigen::VectorXd& cost, bool allow_artificial) {
    bool bland = false;
    long degenerate = 0;
    const long degenerate_limit = 10L * (n_ + m_);
    int since_refactor = 0;
    while (true) {
      if (++iterations_ > kIterationCap) throw Error("LP: iteration cap reached");
      Eigen::VectorXd cb(m_);
      for (int i = 0; i < m_; ++i) cb[i] = cost[basis_[i]];
      const Eigen::VectorXd y = binv_.transpose() * cb;
      const Eigen::VectorXd d = cost - sf_.a.transpose() * y;

      int enter = -1;
      double best = -kLpTolerance;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j] || (!allow_artificial && sf_.artificial[j])) continue;
        if (d[j] < best) {
          enter = j;
          if (bland) break;
          best = d[j];
        }
      }
      if (enter < 0) return true;

      const Eigen::VectorXd u = binv_ * sf_.a.col(enter);
      int leave = -1;
      double theta = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (u[i] <= kPivotTol) continue;
        const double ratio = std::max(0.0, xb_[i]) / u[i];
        if (leave < 0 || ratio < theta - 1e-12) {
          leave = i;
          theta = ratio;
        } else if (ratio <= theta + 1e-12) {
          const bool better = bland ? basis_[i] < basis_[leave] : u[i] > u[leave];
          if (better) {
            leave = i;
            theta = std::min(theta, ratio);
          }
        }
      }
      if (leave < 0) return false;

      if (theta <= 1e-12 && ++degenerate > degenerate_limit) bland = true;
      pivot(leave, enter, u, theta);
      if (++since_refactor >= kRefactorEvery) {
        refactor();
        since_refactor = 0;
      }
    }
  }

  // Pushes zero-level artificials out of the basis where a structural or
  // slack column can replace them; rows where none can are redundant.
  void evict_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!sf_.artificial[basis_[r]]) continue;
      const Eigen::RowVectorXd row = binv_.row(r) * sf_.a;
      int enter = -1;
      double best = kPivotTol;
      for (int j = 0; j < n_; ++j) {
        if (is_basic_[j] || sf_.artificial[j]) continue;
        if (std::abs(row[j]) > best) {
          best = std::abs(row[j]);
          enter = j;
        }
      }
      if (enter < 0) continue;
      const Eigen::VectorXd u = binv_ * sf_.a.col(enter);
      pivot(r, enter, u, 0.0);
    }
    refactor();
  }

  Eigen::VectorXd values() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n_);
    for (int i = 0; i < m_; ++i) x[basis_[i]] = std::max(0.0, xb_[i]);
    return x;
  }

  int iterations() const { return iterations_; }

 private:
  void pivot(int r, int enter, const Eigen::VectorXd& u, double theta) {
    const double p = u[r];
    binv_.row(r) /= p;
    for (int i = 0; i < m_; ++i)
      if (i != r && u[i] != 0.0) binv_.row(i) -= u[i] * binv_.row(r);
    for (int i = 0; i < m_; ++i)
      if (i != r) xb_[i] -= theta * u[i];
    xb_[r] = theta;
    is_basic_[basis_[r]] = 0;
    basis_[r] = enter;
    is_basic_[enter] = 1;
  }

  void refactor() {
    Eigen::MatrixXd bmat(m_, m_);
    for (int i = 0; i < m_; ++i) bmat.col(i) = sf_.a.col(basis_[i]);
    binv_ = bmat.partialPivLu().inverse();
    xb_ = binv_ * sf_.b;
    for (int i = 0; i < m_; ++i)
      if (std::abs(xb_[i]) < 1e-13) xb_[i] = 0.0;
  }

  const StandardForm& sf_;
  int m_, n_;
  std::vector<int> basis_;
  std::vector<char> is_basic_;
  Eigen::MatrixXd binv_;
  Eigen::VectorXd xb_;
  int iterations_ = 0;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int nvar = lp.num_variables();
  std::vector<VarMap> map(nvar);
  int ncols = 0;
  struct BoundRow {
    int col;
    double cap;
  };
  std::vector<BoundRow> bound_rows;
  for (int j = 0; j < nvar; ++j) {
    const double lo = lp.lower()[j], hi = lp.upper()[j];
    VarMap& vm = map[j];
    if (lo == hi) {
      vm.shift = lo;
    } else if (std::isfinite(lo)) {
      vm.shift = lo;
      vm.col = ncols++;
      if (std::isfinite(hi)) bound_rows.push_back({vm.col, hi - lo});
    } else if (std::isfinite(hi)) {
      vm.shift = hi;
      vm.sign = -1.0;
      vm.col = ncols++;
    } else {
      vm.col = ncols++;
      vm.neg_col = ncols++;
    }
  }

  // Rows over standard columns, with fixed parts moved to the right side.
  struct Row {
    std::map<int, double> coef;
    Relation rel;
    double rhs;
  };
  std::vector<Row> rows;
  for (const LinearConstraint& c : lp.constraints()) {
    Row row{{}, c.relation, c.rhs};
    for (const LinearTerm& t : c.terms) {
      const VarMap& vm = map[t.var];
      row.rhs -= t.coef * vm.shift;
      if (vm.col >= 0) row.coef[vm.col] += t.coef * vm.sign;
      if (vm.neg_col >= 0) row.coef[vm.neg_col] -= t.coef;
    }
    std::erase_if(row.coef, [](const auto& kv) { return kv.second == 0.0; });
    if (row.coef.empty()) {
      const double tol = kLpTolerance * (1.0 + std::abs(c.rhs));
      const bool ok = (row.rel == Relation::LessEqual && 0.0 <= row.rhs + tol) ||
                      (row.rel == Relation::GreaterEqual && 0.0 >= row.rhs - tol) ||
                      (row.rel == Relation::Equal && std::abs(row.rhs) <= tol);
      if (!ok) return LpSolution{LpStatus::Infeasible, Eigen::VectorXd::Zero(nvar), 0.0, 0};
      continue;
    }
    rows.push_back(std::move(row));
  }
  for (const BoundRow& br : bound_rows) rows.push_back({{{br.col, 1.0}}, Relation::LessEqual, br.cap});

  for (Row& row : rows) {
    if (row.rhs < 0.0) {
      row.rhs = -row.rhs;
      for (auto& kv : row.coef) kv.second = -kv.second;
      if (row.rel == Relation::LessEqual) row.rel = Relation::GreaterEqual;
      else if (row.rel == Relation::GreaterEqual) row.rel = Relation::LessEqual;
    }
  }

  const int m = static_cast<int>(rows.size());
  int total = ncols;
  for (const Row& row : rows) total += row.rel == Relation::GreaterEqual ? 2 : 1;

  StandardForm sf;
  sf.num_structural = ncols;
  sf.a = Eigen::MatrixXd::Zero(m, total);
  sf.b = Eigen::VectorXd::Zero(m);
  sf.cost = Eigen::VectorXd::Zero(total);
  sf.artificial.assign(total, 0);
  for (int j = 0; j < nvar; ++j) {
    if (map[j].col >= 0) sf.cost[map[j].col] += lp.cost()[j] * map[j].sign;
    if (map[j].neg_col >= 0) sf.cost[map[j].neg_col] -= lp.cost()[j];
  }
  int next = ncols;
  bool any_artificial = false;
  for (int i = 0; i < m; ++i) {
    for (const auto& [col, v] : rows[i].coef) sf.a(i, col) = v;
    sf.b[i] = rows[i].rhs;
    if (rows[i].rel == Relation::LessEqual) {
      sf.a(i, next) = 1.0;
      sf.initial_basis.push_back(next++);
    } else {
      if (rows[i].rel == Relation::GreaterEqual) sf.a(i, next++) = -1.0;
      sf.a(i, next) = 1.0;
      sf.artificial[next] = 1;
      sf.initial_basis.push_back(next++);
      any_artificial = true;
    }
  }

  LpSolution sol;
  sol.values = Eigen::VectorXd::Zero(nvar);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(total);
  if (m > 0) {
    Simplex simplex(sf);
    if (any_artificial) {
      Eigen::VectorXd phase1 = Eigen::VectorXd::Zero(total);
      for (int j = 0; j < total; ++j)
        if (sf.artificial[j]) phase1[j] = 1.0;
      simplex.run(phase1, true);
      const Eigen::VectorXd x1 = simplex.values();
      double infeasibility = 0.0;
      for (int j = 0; j < total; ++j)
        if (sf.artificial[j]) infeasibility += x1[j];
      if (infeasibility > kLpTolerance * (1.0 + sf.b.cwiseAbs().sum())) {
        sol.status = LpStatus::Infeasible;
        sol.iterations = simplex.iterations();
        return sol;
      }
      simplex.evict_artificials();
    }
    const bool bounded = simplex.run(sf.cost, false);
    sol.iterations = simplex.iterations();
    if (!bounded) {
      sol.status = LpStatus::Unbounded;
      return sol;
    }
    x = simplex.values();
  } else {
    for (int j = 0; j < ncols; ++j)
      if (sf.cost[j] < 0.0) {
        sol.status = LpStatus::Unbounded;
        return sol;
      }
  }

  for (int j = 0; j < nvar; ++j) {
    const VarMap& vm = map[j];
    double v = vm.shift;
    if (vm.col >= 0) v += vm.sign * x[vm.col];
    if (vm.neg_col >= 0) v -= x[vm.neg_col];
    sol.values[j] = v;
  }
  sol.status = LpStatus::Optimal;
  sol.objective = lp.offset;
  for (int j = 0; j < nvar; ++j) sol.objective += lp.cost()[j] * sol.values[j];
  return sol;
}

double max_violation(const LinearProgram& lp, const Eigen::VectorXd& x) {
  double worst = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) {
    worst = std::max(worst, lp.lower()[j] - x[j]);
    worst = std::max(worst, x[j] - lp.upper()[j]);
  }
  for (const LinearConstraint& c : lp.constraints()) {
    double lhs = 0.0;
    for (const LinearTerm& t : c.terms) lhs += t.coef * x[t.var];
    if (c.relation != Relation::GreaterEqual) worst = std::max(worst, lhs - c.rhs);
    if (c.relation != Relation::LessEqual) worst = std::max(worst, c.rhs - lhs);
  }
  return worst;
}

namespace {

std::string lp_name(const LinearProgram& lp, int j) {
  const std::string& n = lp.names()[j];
  const bool usable = !n.empty() && std::all_of(n.begin(), n.end(), [](char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '.' ||
           ch == '(' || ch == ')' || ch == ',';
  }) && !std::isdigit(static_cast<unsigned char>(n[0])) && n[0] != '.';
  return usable ? n : "x" + std::to_string(j);
}

void write_terms(std::ostream& out, const LinearProgram& lp,
                 const std::vector<LinearTerm>& terms) {
  bool first = true;
  for (const LinearTerm& t : terms) {
    if (t.coef == 0.0) continue;
    out << (t.coef < 0 ? " - " : (first ? " " : " + ")) << std::abs(t.coef) << ' '
        << lp_name(lp, t.var);
    first = false;
  }
  if (first) out << " 0 " << (lp.num_variables() > 0 ? lp_name(lp, 0) : "x0");
}

}  // namespace

void write_lp_format(const LinearProgram& lp, std::ostream& out) {
  out.precision(17);
  out << "\\ objective offset " << lp.offset << "\n";
  out << "Minimize\n obj:";
  std::vector<LinearTerm> obj;
  for (int j = 0; j < lp.num_variables(); ++j) obj.push_back({j, lp.cost()[j]});
  write_terms(out, lp, obj);
  out << "\nSubject To\n";
  for (int i = 0; i < lp.num_constraints(); ++i) {
    const LinearConstraint& c = lp.constraints()[i];
    out << ' ' << (c.name.empty() ? "c" + std::to_string(i) : c.name) << ':';
    write_terms(out, lp, c.terms);
    out << (c.relation == Relation::LessEqual ? " <= "
            : c.relation == Relation::Equal   ? " = "
                                              : " >= ")
        << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < lp.num_variables(); ++j) {
    const double lo = lp.lower()[j], hi = lp.upper()[j];
    const std::string n = lp_name(lp, j);
    if (lo == hi) out << ' ' << n << " = " << lo << '\n';
    else if (!std::isfinite(lo) && !std::isfinite(hi)) out << ' ' << n << " free\n";
    else if (!std::isfinite(lo)) out << " -inf <= " << n << " <= " << hi << '\n';
    else if (std::isfinite(hi)) out << ' ' << lo << " <= " << n << " <= " << hi << '\n';
    else if (lo != 0.0) out << ' ' << n << " >= " << lo << '\n';
  }
  out << "End\n";
}

}  // namespace repcut
