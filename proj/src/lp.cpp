#include "blotto/lp.hpp"

#include "blotto/errors.hpp"

#include <cstddef>
#include <limits>

namespace blotto::lp {

int LinearProgram::add_variable(Rational objective, std::optional<Rational> lower,
                                std::optional<Rational> upper) {
  if (lower && upper && *lower > *upper) throw InvalidInput("variable bounds are inverted");
  objective_.push_back(std::move(objective));
  lower_.push_back(std::move(lower));
  upper_.push_back(std::move(upper));
  return num_variables() - 1;
}

void LinearProgram::add_constraint(std::vector<std::pair<int, Rational>> terms,
                                   Relation relation, Rational rhs) {
  for (const auto& [var, coef] : terms)
    if (var < 0 || var >= num_variables()) throw InvalidInput("constraint on unknown variable");
  constraints_.push_back({std::move(terms), relation, std::move(rhs)});
}

void LinearProgram::set_objective(int var, Rational coefficient) {
  objective_.at(static_cast<std::size_t>(var)) = std::move(coefficient);
}

bool LinearProgram::has_strict_rows() const {
  for (const auto& c : constraints_)
    if (c.relation == Relation::Less || c.relation == Relation::Greater) return true;
  return false;
}

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// Dense tableau in canonical form: rows hold B^-1 A | B^-1 b, cost holds the
// reduced costs of the current objective (maximization).
struct Tableau {
  std::size_t rows = 0;
  std::size_t cols = 0;  // structural columns, rhs stored separately
  std::vector<std::vector<Rational>> a;
  std::vector<Rational> rhs;
  std::vector<std::size_t> basis;
  std::vector<Rational> cost;
  Rational value;

  void pivot(std::size_t r, std::size_t c) {
    Rational inv = 1 / a[r][c];
    for (std::size_t j = 0; j < cols; ++j)
      if (sgn(a[r][j]) != 0) a[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || sgn(a[i][c]) == 0) continue;
      Rational f = a[i][c];
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(a[r][j]) != 0) a[i][j] -= f * a[r][j];
      rhs[i] -= f * rhs[r];
    }
    if (sgn(cost[c]) != 0) {
      Rational f = cost[c];
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(a[r][j]) != 0) cost[j] -= f * a[r][j];
      value += f * rhs[r];
    }
    basis[r] = c;
  }

  void set_objective(const std::vector<Rational>& c) {
    cost = c;
    value = 0;
    for (std::size_t i = 0; i < rows; ++i) {
      const Rational& cb = c[basis[i]];
      if (sgn(cb) == 0) continue;
      for (std::size_t j = 0; j < cols; ++j)
        if (sgn(a[i][j]) != 0) cost[j] -= cb * a[i][j];
      value += cb * rhs[i];
    }
  }

  // Returns false when unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    for (;;) {
      std::size_t enter = kNone;
      for (std::size_t j = 0; j < cols; ++j)
        if (allowed[j] && sgn(cost[j]) > 0) {
          enter = j;
          break;
        }
      if (enter == kNone) return true;
      std::size_t leave = kNone;
      Rational best;
      for (std::size_t i = 0; i < rows; ++i) {
        if (sgn(a[i][enter]) <= 0) continue;
        Rational ratio = rhs[i] / a[i][enter];
        if (leave == kNone || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave == kNone) return false;
      pivot(leave, enter);
    }
  }

  void drop_row(std::size_t r) {
    a.erase(a.begin() + static_cast<std::ptrdiff_t>(r));
    rhs.erase(rhs.begin() + static_cast<std::ptrdiff_t>(r));
    basis.erase(basis.begin() + static_cast<std::ptrdiff_t>(r));
    --rows;
  }
};

// z_j = offset_j + sum over (column, sign) parts.
struct VarMap {
  Rational offset;
  std::vector<std::pair<std::size_t, int>> parts;
};

Result solve_nonstrict(const LinearProgram& p) {
  const int nv = p.num_variables();
  std::vector<VarMap> map(static_cast<std::size_t>(nv));
  std::size_t ncols = 0;
  struct Row {
    std::vector<std::pair<std::size_t, Rational>> terms;
    Relation rel;
    Rational rhs;
  };
  std::vector<Row> rows;
  for (int j = 0; j < nv; ++j) {
    auto& vm = map[static_cast<std::size_t>(j)];
    const auto& lo = p.lower()[static_cast<std::size_t>(j)];
    const auto& hi = p.upper()[static_cast<std::size_t>(j)];
    if (lo) {
      vm.offset = *lo;
      vm.parts.push_back({ncols, 1});
      if (hi) rows.push_back({{{ncols, Rational(1)}}, Relation::LessEqual, *hi - *lo});
      ++ncols;
    } else if (hi) {
      vm.offset = *hi;
      vm.parts.push_back({ncols++, -1});
    } else {
      vm.parts.push_back({ncols++, 1});
      vm.parts.push_back({ncols++, -1});
    }
  }
  for (const auto& c : p.constraints()) {
    Row row{{}, c.relation, c.rhs};
    std::vector<Rational> dense(ncols);
    for (const auto& [var, coef] : c.terms) {
      const auto& vm = map[static_cast<std::size_t>(var)];
      row.rhs -= coef * vm.offset;
      for (auto [col, s] : vm.parts) dense[col] += s > 0 ? coef : Rational(-coef);
    }
    for (std::size_t col = 0; col < ncols; ++col)
      if (sgn(dense[col]) != 0) row.terms.push_back({col, dense[col]});
    rows.push_back(std::move(row));
  }

  // Normalize to non-negative right-hand sides and count auxiliary columns.
  std::size_t nslack = 0, nart = 0;
  for (auto& row : rows) {
    if (sgn(row.rhs) < 0) {
      row.rhs = -row.rhs;
      for (auto& t : row.terms) t.second = -t.second;
      if (row.rel == Relation::LessEqual) row.rel = Relation::GreaterEqual;
      else if (row.rel == Relation::GreaterEqual) row.rel = Relation::LessEqual;
    }
    if (row.rel != Relation::Equal) ++nslack;
    if (row.rel != Relation::LessEqual) ++nart;
  }

  Tableau t;
  t.rows = rows.size();
  t.cols = ncols + nslack + nart;
  t.a.assign(t.rows, std::vector<Rational>(t.cols));
  t.rhs.resize(t.rows);
  t.basis.resize(t.rows);
  std::vector<bool> is_art(t.cols, false);
  std::size_t next_slack = ncols, next_art = ncols + nslack;
  for (std::size_t i = 0; i < t.rows; ++i) {
    for (const auto& [col, coef] : rows[i].terms) t.a[i][col] = coef;
    t.rhs[i] = rows[i].rhs;
    switch (rows[i].rel) {
      case Relation::LessEqual:
        t.a[i][next_slack] = 1;
        t.basis[i] = next_slack++;
        break;
      case Relation::GreaterEqual:
        t.a[i][next_slack++] = -1;
        [[fallthrough]];
      default:
        t.a[i][next_art] = 1;
        is_art[next_art] = true;
        t.basis[i] = next_art++;
        break;
    }
  }

  std::vector<bool> allowed(t.cols, true);
  if (nart > 0) {
    std::vector<Rational> phase1(t.cols);
    for (std::size_t j = 0; j < t.cols; ++j)
      if (is_art[j]) phase1[j] = -1;
    t.set_objective(phase1);
    t.optimize(allowed);
    if (sgn(t.value) < 0) return Result{Status::Infeasible, 0, {}, std::nullopt, false};
    for (std::size_t i = 0; i < t.rows;) {
      if (!is_art[t.basis[i]]) {
        ++i;
        continue;
      }
      std::size_t col = kNone;
      for (std::size_t j = 0; j < t.cols; ++j)
        if (!is_art[j] && sgn(t.a[i][j]) != 0) {
          col = j;
          break;
        }
      if (col == kNone) {
        t.drop_row(i);
      } else {
        t.pivot(i, col);
        ++i;
      }
    }
    for (std::size_t j = 0; j < t.cols; ++j)
      if (is_art[j]) allowed[j] = false;
  }

  std::vector<Rational> phase2(t.cols);
  Rational constant = 0;
  for (int j = 0; j < nv; ++j) {
    const Rational& c = p.objective()[static_cast<std::size_t>(j)];
    if (sgn(c) == 0) continue;
    const auto& vm = map[static_cast<std::size_t>(j)];
    constant += c * vm.offset;
    for (auto [col, s] : vm.parts) phase2[col] += s > 0 ? c : Rational(-c);
  }
  t.set_objective(phase2);
  if (!t.optimize(allowed)) return Result{Status::Unbounded, 0, {}, std::nullopt, false};

  std::vector<Rational> colval(t.cols);
  for (std::size_t i = 0; i < t.rows; ++i) colval[t.basis[i]] = t.rhs[i];
  Result res;
  res.status = Status::Optimal;
  res.values.resize(static_cast<std::size_t>(nv));
  for (int j = 0; j < nv; ++j) {
    const auto& vm = map[static_cast<std::size_t>(j)];
    Rational v = vm.offset;
    for (auto [col, s] : vm.parts) v += s > 0 ? colval[col] : Rational(-colval[col]);
    res.values[static_cast<std::size_t>(j)] = v;
  }
  res.objective = t.value + constant;
  return res;
}

// Rewrites strict rows with slack variable `slack` (or a fixed slack when
// slack < 0 and fixed is given).
LinearProgram relax_strict(const LinearProgram& p, int slack_var, const Rational* fixed) {
  LinearProgram q;
  for (int j = 0; j < p.num_variables(); ++j)
    q.add_variable(fixed ? p.objective()[static_cast<std::size_t>(j)] : Rational(0),
                   p.lower()[static_cast<std::size_t>(j)], p.upper()[static_cast<std::size_t>(j)]);
  if (!fixed) q.add_variable(1, Rational(0), std::nullopt);
  for (const auto& c : p.constraints()) {
    auto terms = c.terms;
    Relation rel = c.relation;
    Rational rhs = c.rhs;
    if (rel == Relation::Greater || rel == Relation::Less) {
      bool greater = rel == Relation::Greater;
      rel = greater ? Relation::GreaterEqual : Relation::LessEqual;
      if (fixed) rhs += greater ? *fixed : Rational(-*fixed);
      else terms.push_back({slack_var, greater ? Rational(-1) : Rational(1)});
    }
    q.add_constraint(std::move(terms), rel, std::move(rhs));
  }
  return q;
}

}  // namespace

Result solve(const LinearProgram& program) {
  if (!program.has_strict_rows()) return solve_nonstrict(program);

  const int slack = program.num_variables();
  LinearProgram margin_lp = relax_strict(program, slack, nullptr);
  Result m = solve_nonstrict(margin_lp);
  bool unbounded = false;
  if (m.status == Status::Unbounded) {
    unbounded = true;
    LinearProgram capped = relax_strict(program, slack, nullptr);
    Rational one(1);
    LinearProgram q;
    // Same program with the slack bounded by one.
    for (int j = 0; j < capped.num_variables(); ++j)
      q.add_variable(capped.objective()[static_cast<std::size_t>(j)],
                     capped.lower()[static_cast<std::size_t>(j)],
                     j == slack ? std::optional<Rational>(one)
                                : capped.upper()[static_cast<std::size_t>(j)]);
    for (const auto& c : capped.constraints()) q.add_constraint(c.terms, c.relation, c.rhs);
    m = solve_nonstrict(q);
  }
  if (m.status != Status::Optimal || sgn(m.objective) <= 0) {
    Result r;
    r.status = Status::Infeasible;
    r.margin = Rational(0);
    return r;
  }
  Rational margin = m.objective;

  bool zero_objective = true;
  for (const auto& c : program.objective())
    if (sgn(c) != 0) zero_objective = false;
  Result r;
  if (zero_objective) {
    r.status = Status::Optimal;
    r.values.assign(m.values.begin(), m.values.begin() + slack);
    r.objective = 0;
  } else {
    Rational half = margin / 2;
    r = solve_nonstrict(relax_strict(program, -1, &half));
  }
  r.margin = margin;
  r.margin_unbounded = unbounded;
  return r;
}

bool satisfies(const LinearProgram& program, const std::vector<Rational>& values) {
  if (static_cast<int>(values.size()) != program.num_variables()) return false;
  for (int j = 0; j < program.num_variables(); ++j) {
    const auto& lo = program.lower()[static_cast<std::size_t>(j)];
    const auto& hi = program.upper()[static_cast<std::size_t>(j)];
    if (lo && values[static_cast<std::size_t>(j)] < *lo) return false;
    if (hi && values[static_cast<std::size_t>(j)] > *hi) return false;
  }
  for (const auto& c : program.constraints()) {
    Rational lhs = 0;
    for (const auto& [var, coef] : c.terms) lhs += coef * values[static_cast<std::size_t>(var)];
    bool ok = false;
    switch (c.relation) {
      case Relation::LessEqual: ok = lhs <= c.rhs; break;
      case Relation::GreaterEqual: ok = lhs >= c.rhs; break;
      case Relation::Equal: ok = lhs == c.rhs; break;
      case Relation::Less: ok = lhs < c.rhs; break;
      case Relation::Greater: ok = lhs > c.rhs; break;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace blotto::lp
