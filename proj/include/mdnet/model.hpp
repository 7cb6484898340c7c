#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "mdnet/graph.hpp"
#include "mdnet/rational.hpp"

namespace mdnet {

enum class VarKind { Binary, Continuous };
enum class Sense { LessEqual, GreaterEqual, Equal };

struct Variable {
  std::string name;
  VarKind kind = VarKind::Continuous;
  Rational lower;
  Rational upper;
};

struct Term {
  std::size_t var;
  Rational coef;
};

struct Constraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::Equal;
  Rational rhs;
};

/// Range of the per-community density variable alpha_l.
struct AlphaBounds {
  Rational lower;
  Rational upper;
};

/// Valid bounds on every community density reachable by the model.
///
/// Without a weak constraint the lower bound is -k_max (a singleton holding
/// the highest-degree vertex attains it). With weak constraint L the
/// numerator 4e - K is at least L and a community has at most n - 1 members,
/// giving L / (n - 1). The upper bound is n - 1 in both cases.
AlphaBounds alpha_bounds(const Graph& g, std::optional<int> weak_L);

struct ModelOptions {
  int m = 2;
  std::optional<int> weak_L;
  bool symmetry_break = false;
};

/// Solver-agnostic mixed-integer linear program.
///
/// Variables are laid out as x (vertex-major), w (edge input order, then
/// community), alpha, y (vertex-major). Constraints: assignment, size,
/// Fortet, McCormick, link, and optionally weak rows, in that order.
struct LinearModel {
  Vertex n = 0;
  int m = 0;
  std::size_t num_edges = 0;
  std::optional<int> weak_L;
  bool symmetry_break = false;
  AlphaBounds bounds;

  std::vector<Variable> variables;
  std::vector<Constraint> constraints;
  std::vector<Term> objective;  // maximized

  std::size_t x(Vertex i, int l) const { return static_cast<std::size_t>((i - 1) * m + (l - 1)); }
  std::size_t w(std::size_t edge, int l) const { return x_count() + edge * static_cast<std::size_t>(m) + (l - 1); }
  std::size_t alpha(int l) const { return x_count() + w_count() + static_cast<std::size_t>(l - 1); }
  std::size_t y(Vertex i, int l) const { return x_count() + w_count() + static_cast<std::size_t>(m) + x(i, l); }

  std::size_t x_count() const { return static_cast<std::size_t>(n) * static_cast<std::size_t>(m); }
  std::size_t w_count() const { return num_edges * static_cast<std::size_t>(m); }
};

/// Linearized modularity-density model for a fixed community count.
/// Requires 2 <= m <= n - 1.
LinearModel build_model(const Graph& g, const ModelOptions& options);

using Assignment = std::vector<Rational>;

/// Variable values implied by `p`: x from membership, w = x*x, alpha = d_l,
/// y = alpha*x. Throws Error("partition infeasible for these bounds") when a
/// community density lies outside the alpha range.
Assignment induced_solution(const LinearModel& model, const Graph& g, const Partition& p);

/// Names of violated bounds, integrality requirements and rows (empty when feasible).
std::vector<std::string> violations(const LinearModel& model, const Assignment& values);
Rational objective_value(const LinearModel& model, const Assignment& values);

/// CPLEX LP text. Byte-deterministic for a given model.
std::string emit_lp(const LinearModel& model);

/// Maps every x variable name to its (vertex, community) pair.
nlohmann::json variable_sidecar(const LinearModel& model);

}  // namespace mdnet
