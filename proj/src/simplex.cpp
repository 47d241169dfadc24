#include "carpool/simplex.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <stdexcept>

namespace carpool {

void LinearProgram::add_row(std::vector<Rat> coeffs, Sense sense,
                            Rat rhs_value) {
  if (coeffs.size() != num_vars())
    throw std::invalid_argument("row width mismatch");
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(std::move(rhs_value));
}

namespace {

// Dictionary tableau. Column layout: [original vars | slack/surplus | artificials].
struct Tableau {
  std::size_t n_orig = 0;
  std::size_t n_total = 0;
  std::vector<std::vector<Rat>> a;  // m rows
  std::vector<Rat> b;               // current basic values
  std::vector<Rat> z;               // reduced-cost row: z_j - c_j
  Rat objective;                    // current objective value
  std::vector<int> basis;           // basic column per row
  std::vector<char> artificial;     // per column
  std::vector<int> row_dual_col;    // column whose z entry carries the row dual
  std::vector<Rat> row_dual_sign;

  std::size_t m() const { return a.size(); }

  void pivot(std::size_t row, std::size_t col) {
    Rat p = a[row][col];
    for (auto& v : a[row]) v /= p;
    b[row] /= p;
    for (std::size_t i = 0; i < m(); ++i) {
      if (i == row || a[i][col] == 0) continue;
      Rat f = a[i][col];
      for (std::size_t j = 0; j < n_total; ++j) a[i][j] -= f * a[row][j];
      b[i] -= f * b[row];
    }
    if (z[col] != 0) {
      Rat f = z[col];
      for (std::size_t j = 0; j < n_total; ++j) z[j] -= f * a[row][j];
      objective -= f * b[row];
    }
    basis[row] = static_cast<int>(col);
  }

  // Installs costs c (length n_total) for the current basis.
  void set_costs(const std::vector<Rat>& c) {
    z.assign(n_total, Rat(0));
    objective = 0;
    for (std::size_t j = 0; j < n_total; ++j) z[j] = -c[j];
    for (std::size_t i = 0; i < m(); ++i) {
      int bj = basis[i];
      if (z[bj] == 0) continue;
      Rat f = z[bj];
      for (std::size_t j = 0; j < n_total; ++j) z[j] -= f * a[i][j];
      objective -= f * b[i];
    }
  }

  // Bland's rule; returns false when no entering column remains.
  // allow_artificial gates artificial columns from entering.
  LpStatus run(bool allow_artificial) {
    while (true) {
      std::size_t enter = n_total;
      for (std::size_t j = 0; j < n_total; ++j) {
        if (!allow_artificial && artificial[j]) continue;
        if (z[j] < 0) {
          enter = j;
          break;
        }
      }
      if (enter == n_total) return LpStatus::Optimal;

      std::size_t leave = m();
      Rat best_ratio;
      for (std::size_t i = 0; i < m(); ++i) {
        if (a[i][enter] <= 0) continue;
        Rat ratio = b[i] / a[i][enter];
        if (leave == m() || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m()) return LpStatus::Unbounded;
      pivot(leave, enter);
    }
  }

  LpSolution extract(const LinearProgram& lp) const {
    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.x.assign(n_orig, Rat(0));
    for (std::size_t i = 0; i < m(); ++i)
      if (basis[i] >= 0 && static_cast<std::size_t>(basis[i]) < n_orig)
        sol.x[basis[i]] = b[i];
    sol.value = 0;
    for (std::size_t j = 0; j < n_orig; ++j)
      sol.value += lp.objective[j] * sol.x[j];
    sol.duals.assign(m(), Rat(0));
    for (std::size_t i = 0; i < m(); ++i)
      sol.duals[i] = row_dual_sign[i] * z[row_dual_col[i]];
    return sol;
  }
};

Tableau build_tableau(const LinearProgram& lp) {
  std::size_t m = lp.rows.size();
  std::size_t n = lp.num_vars();

  // Normalize rows so rhs >= 0.
  std::vector<std::vector<Rat>> rows = lp.rows;
  std::vector<Rat> rhs = lp.rhs;
  std::vector<Sense> senses = lp.senses;
  for (std::size_t i = 0; i < m; ++i) {
    if (rhs[i] < 0) {
      for (auto& v : rows[i]) v = -v;
      rhs[i] = -rhs[i];
      if (senses[i] == Sense::LE)
        senses[i] = Sense::GE;
      else if (senses[i] == Sense::GE)
        senses[i] = Sense::LE;
    }
  }

  std::size_t n_aux = 0, n_art = 0;
  for (Sense s : senses) {
    if (s != Sense::EQ) ++n_aux;
    if (s != Sense::LE) ++n_art;
  }

  Tableau t;
  t.n_orig = n;
  t.n_total = n + n_aux + n_art;
  t.a.assign(m, std::vector<Rat>(t.n_total, Rat(0)));
  t.b = rhs;
  t.basis.assign(m, -1);
  t.artificial.assign(t.n_total, 0);
  t.row_dual_col.assign(m, 0);
  t.row_dual_sign.assign(m, Rat(1));

  std::size_t aux = n, art = n + n_aux;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) t.a[i][j] = rows[i][j];
    switch (senses[i]) {
      case Sense::LE:
        t.a[i][aux] = 1;
        t.basis[i] = static_cast<int>(aux);
        t.row_dual_col[i] = static_cast<int>(aux);
        ++aux;
        break;
      case Sense::GE:
        t.a[i][aux] = -1;
        t.row_dual_col[i] = static_cast<int>(aux);
        t.row_dual_sign[i] = -1;
        ++aux;
        t.a[i][art] = 1;
        t.basis[i] = static_cast<int>(art);
        t.artificial[art] = 1;
        ++art;
        break;
      case Sense::EQ:
        t.a[i][art] = 1;
        t.basis[i] = static_cast<int>(art);
        t.artificial[art] = 1;
        t.row_dual_col[i] = static_cast<int>(art);
        ++art;
        break;
    }
  }

  // Row duals read from the reduced-cost row need the sign flip applied to
  // rows that were negated above.
  for (std::size_t i = 0; i < m; ++i)
    if (lp.rhs[i] < 0) t.row_dual_sign[i] = -t.row_dual_sign[i];
  return t;
}

// Returns an optimal tableau, or a status when there is none.
LpStatus solve_to_tableau(const LinearProgram& lp, Tableau& t) {
  t = build_tableau(lp);
  std::size_t m = t.m();

  bool any_artificial = false;
  for (char f : t.artificial)
    if (f) any_artificial = true;

  if (any_artificial) {
    std::vector<Rat> phase1(t.n_total, Rat(0));
    for (std::size_t j = 0; j < t.n_total; ++j)
      if (t.artificial[j]) phase1[j] = -1;
    t.set_costs(phase1);
    LpStatus st = t.run(true);
    if (st != LpStatus::Optimal || t.objective != 0) return LpStatus::Infeasible;

    // Pivot artificials out of the basis where possible.
    for (std::size_t i = 0; i < m; ++i) {
      if (!t.artificial[t.basis[i]]) continue;
      for (std::size_t j = 0; j < t.n_total; ++j) {
        if (t.artificial[j]) continue;
        if (t.a[i][j] != 0) {
          t.pivot(i, j);
          break;
        }
      }
    }
  }

  std::vector<Rat> phase2(t.n_total, Rat(0));
  for (std::size_t j = 0; j < t.n_orig; ++j) phase2[j] = lp.objective[j];
  t.set_costs(phase2);
  return t.run(false);
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  Tableau t;
  LpStatus st = solve_to_tableau(lp, t);
  if (st != LpStatus::Optimal) {
    LpSolution sol;
    sol.status = st;
    return sol;
  }
  return t.extract(lp);
}

std::vector<LpSolution> enumerate_optimal_vertices(const LinearProgram& lp,
                                                   std::size_t max_bases) {
  Tableau root;
  if (solve_to_tableau(lp, root) != LpStatus::Optimal) return {};

  std::vector<LpSolution> vertices;
  std::set<std::vector<Rat>> seen_points;
  std::set<std::vector<int>> seen_bases;
  std::queue<Tableau> frontier;

  auto admit = [&](const Tableau& t) {
    std::vector<int> key = t.basis;
    std::sort(key.begin(), key.end());
    if (!seen_bases.insert(key).second) return;
    LpSolution sol = t.extract(lp);
    if (seen_points.insert(sol.x).second) vertices.push_back(std::move(sol));
    frontier.push(t);
  };
  admit(root);

  while (!frontier.empty() && seen_bases.size() < max_bases) {
    Tableau t = std::move(frontier.front());
    frontier.pop();

    std::vector<char> basic(t.n_total, 0);
    for (int bj : t.basis) basic[bj] = 1;

    for (std::size_t j = 0; j < t.n_total; ++j) {
      if (basic[j] || t.artificial[j] || t.z[j] != 0) continue;
      // Ratio test: every argmin row yields an adjacent optimal basis.
      bool has_positive = false;
      Rat best_ratio;
      for (std::size_t i = 0; i < t.m(); ++i) {
        if (t.a[i][j] <= 0) continue;
        Rat ratio = t.b[i] / t.a[i][j];
        if (!has_positive || ratio < best_ratio) best_ratio = ratio;
        has_positive = true;
      }
      if (!has_positive) continue;  // unbounded edge of the optimal face
      for (std::size_t i = 0; i < t.m(); ++i) {
        if (t.a[i][j] <= 0 || t.b[i] / t.a[i][j] != best_ratio) continue;
        Tableau next = t;
        next.pivot(i, j);
        admit(next);
      }
    }
  }
  return vertices;
}

}  // namespace carpool
