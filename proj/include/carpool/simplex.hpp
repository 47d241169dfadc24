#pragma once

#include "carpool/rational.hpp"

#include <vector>

namespace carpool {

enum class Sense { LE, GE, EQ };

// maximize objective . x  subject to rows, x >= 0
struct LinearProgram {
  std::vector<Rat> objective;
  std::vector<std::vector<Rat>> rows;
  std::vector<Rat> rhs;
  std::vector<Sense> senses;

  std::size_t num_vars() const { return objective.size(); }
  void add_row(std::vector<Rat> coeffs, Sense sense, Rat rhs_value);
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  Rat value;
  std::vector<Rat> x;
  std::vector<Rat> duals;  // one multiplier per row
};

// Dense two-phase tableau simplex over exact rationals, Bland's rule
// throughout, so results are deterministic.
LpSolution solve_lp(const LinearProgram& lp);

// All distinct optimal vertices (in original variables), found by walking
// zero-reduced-cost pivots between optimal bases. Intended for small LPs;
// stops after visiting max_bases bases.
std::vector<LpSolution> enumerate_optimal_vertices(const LinearProgram& lp,
                                                   std::size_t max_bases = 50000);

}  // namespace carpool
