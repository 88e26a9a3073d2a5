#pragma once

#include "blotto/rational.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace blotto::lp {

enum class Relation { LessEqual, GreaterEqual, Equal, Less, Greater };
enum class Status { Optimal, Infeasible, Unbounded };

struct Constraint {
  std::vector<std::pair<int, Rational>> terms;
  Relation relation = Relation::LessEqual;
  Rational rhs;
};

// maximize objective . z subject to the constraints and variable bounds.
class LinearProgram {
 public:
  // Returns the variable index. A missing bound means unbounded on that side.
  int add_variable(Rational objective = 0, std::optional<Rational> lower = Rational(0),
                   std::optional<Rational> upper = std::nullopt);
  void add_constraint(std::vector<std::pair<int, Rational>> terms, Relation relation,
                      Rational rhs);
  void set_objective(int var, Rational coefficient);

  int num_variables() const { return static_cast<int>(objective_.size()); }
  const std::vector<Rational>& objective() const { return objective_; }
  const std::vector<std::optional<Rational>>& lower() const { return lower_; }
  const std::vector<std::optional<Rational>>& upper() const { return upper_; }
  const std::vector<Constraint>& constraints() const { return constraints_; }
  bool has_strict_rows() const;

 private:
  std::vector<Rational> objective_;
  std::vector<std::optional<Rational>> lower_;
  std::vector<std::optional<Rational>> upper_;
  std::vector<Constraint> constraints_;
};

struct Result {
  Status status = Status::Infeasible;
  Rational objective;
  std::vector<Rational> values;
  // Set when the program had strict rows: the largest t such that every strict
  // row holds with slack t (0 when no positive slack exists). When the slack is
  // unbounded, margin_unbounded is set and margin reports the slack used.
  std::optional<Rational> margin;
  bool margin_unbounded = false;
};

// Exact two-phase primal simplex with Bland's rule.
//
// Strict rows a.z > b are handled by maximizing t subject to a.z >= b + t, t >= 0;
// the program is feasible iff t* > 0. The reported solution then satisfies every
// strict row strictly; the objective is optimized with slack t*/2 fixed.
Result solve(const LinearProgram& program);

// Checks a candidate point against every row and bound exactly.
bool satisfies(const LinearProgram& program, const std::vector<Rational>& values);

}  // namespace blotto::lp
