#include "mdnet/model.hpp"

#include <numeric>
#include <sstream>

#include "mdnet/metrics.hpp"

namespace mdnet {

namespace {

std::string vname(const char* prefix, std::initializer_list<long long> idx) {
  std::string s = prefix;
  for (long long i : idx) s += "_" + std::to_string(i);
  return s;
}

bool terminates(std::int64_t den) {
  while (den % 2 == 0) den /= 2;
  while (den % 5 == 0) den /= 5;
  return den == 1;
}

int decimal_places(std::int64_t den) {
  int twos = 0;
  int fives = 0;
  while (den % 2 == 0) {
    den /= 2;
    ++twos;
  }
  while (den % 5 == 0) {
    den /= 5;
    ++fives;
  }
  return std::max(twos, fives);
}

// Exact decimal for a terminating rational, e.g. -33/2 -> "-16.5".
std::string exact_decimal(const Rational& r) {
  return to_fixed(r, decimal_places(r.den()));
}

// Decimal for a bound; non-terminating values are rounded away from the feasible interior.
std::string bound_decimal(const Rational& r, bool is_lower) {
  if (terminates(r.den())) return exact_decimal(r);
  constexpr std::int64_t kScale = 1'000'000'000'000;
  __int128 scaled = static_cast<__int128>(r.num()) * kScale;
  __int128 q = scaled / r.den();
  if (is_lower && scaled < 0 && q * r.den() != scaled) --q;
  if (!is_lower && scaled > 0 && q * r.den() != scaled) ++q;
  return to_fixed(Rational(static_cast<std::int64_t>(q), kScale), 12);
}

const char* sense_token(Sense s) {
  switch (s) {
    case Sense::LessEqual: return "<=";
    case Sense::GreaterEqual: return ">=";
    case Sense::Equal: return "=";
  }
  return "=";
}

void write_expression(std::ostringstream& os, const LinearModel& model, const std::vector<Term>& terms,
                      const Rational& scale) {
  constexpr int kTermsPerLine = 8;
  int on_line = 0;
  bool first = true;
  for (const auto& t : terms) {
    Rational c = t.coef * scale;
    if (c.num() == 0) continue;
    if (on_line == kTermsPerLine) {
      os << "\n  ";
      on_line = 0;
    }
    bool neg = c < Rational(0);
    Rational mag = neg ? -c : c;
    if (first) {
      if (neg) os << "- ";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (mag != Rational(1)) os << exact_decimal(mag) << " ";
    os << model.variables[t.var].name;
    first = false;
    ++on_line;
  }
  if (first) os << "0 " << model.variables.front().name;
}

}  // namespace

AlphaBounds alpha_bounds(const Graph& g, std::optional<int> weak_L) {
  if (g.n() < 2) throw Error("alpha bounds need at least two vertices");
  AlphaBounds b;
  b.upper = Rational(g.n() - 1);
  if (weak_L) {
    if (*weak_L != 0 && *weak_L != 1) throw Error("weak constraint L must be 0 or 1");
    b.lower = Rational(*weak_L, g.n() - 1);
  } else {
    b.lower = Rational(-g.max_degree());
  }
  return b;
}

LinearModel build_model(const Graph& g, const ModelOptions& opt) {
  const Vertex n = g.n();
  const int m = opt.m;
  if (m < 2 || m > n - 1) {
    throw Error("community count m=" + std::to_string(m) + " outside 2.." + std::to_string(n - 1));
  }
  LinearModel model;
  model.n = n;
  model.m = m;
  model.num_edges = g.num_edges();
  model.weak_L = opt.weak_L;
  model.symmetry_break = opt.symmetry_break;
  model.bounds = alpha_bounds(g, opt.weak_L);
  const Rational lo = model.bounds.lower;
  const Rational hi = model.bounds.upper;

  auto& vars = model.variables;
  for (Vertex i = 1; i <= n; ++i) {
    for (int l = 1; l <= m; ++l) {
      Rational ub = (opt.symmetry_break && l > i) ? Rational(0) : Rational(1);
      vars.push_back({vname("x", {i, l}), VarKind::Binary, 0, ub});
    }
  }
  for (const auto& e : g.edges()) {
    for (int l = 1; l <= m; ++l) vars.push_back({vname("w", {e.u, e.v, l}), VarKind::Continuous, 0, 1});
  }
  for (int l = 1; l <= m; ++l) vars.push_back({vname("a", {l}), VarKind::Continuous, lo, hi});
  const Rational y_lo = std::min(lo, Rational(0));
  const Rational y_hi = std::max(hi, Rational(0));
  for (Vertex i = 1; i <= n; ++i) {
    for (int l = 1; l <= m; ++l) vars.push_back({vname("y", {i, l}), VarKind::Continuous, y_lo, y_hi});
  }

  auto& rows = model.constraints;
  for (Vertex i = 1; i <= n; ++i) {
    Constraint c{vname("assign", {i}), {}, Sense::Equal, 1};
    for (int l = 1; l <= m; ++l) c.terms.push_back({model.x(i, l), 1});
    rows.push_back(std::move(c));
  }
  for (int l = 1; l <= m; ++l) {
    Constraint lower{vname("size_lo", {l}), {}, Sense::GreaterEqual, 1};
    for (Vertex i = 1; i <= n; ++i) lower.terms.push_back({model.x(i, l), 1});
    Constraint upper = lower;
    upper.name = vname("size_hi", {l});
    upper.sense = Sense::LessEqual;
    upper.rhs = n - 1;
    rows.push_back(std::move(lower));
    rows.push_back(std::move(upper));
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    for (int l = 1; l <= m; ++l) {
      auto w = model.w(k, l);
      auto xi = model.x(e.u, l);
      auto xj = model.x(e.v, l);
      rows.push_back({vname("fortet_a", {e.u, e.v, l}), {{w, 1}, {xi, -1}}, Sense::LessEqual, 0});
      rows.push_back({vname("fortet_b", {e.u, e.v, l}), {{w, 1}, {xj, -1}}, Sense::LessEqual, 0});
      rows.push_back({vname("fortet_c", {e.u, e.v, l}), {{w, 1}, {xi, -1}, {xj, -1}}, Sense::GreaterEqual, -1});
    }
  }
  for (Vertex i = 1; i <= n; ++i) {
    for (int l = 1; l <= m; ++l) {
      auto y = model.y(i, l);
      auto x = model.x(i, l);
      auto a = model.alpha(l);
      // y <= hi x ; y >= lo x ; y <= a - lo (1 - x) ; y >= a - hi (1 - x)
      rows.push_back({vname("mc_up", {i, l}), {{y, 1}, {x, -hi}}, Sense::LessEqual, 0});
      rows.push_back({vname("mc_lo", {i, l}), {{y, 1}, {x, -lo}}, Sense::GreaterEqual, 0});
      rows.push_back({vname("mc_alo", {i, l}), {{y, 1}, {a, -1}, {x, -lo}}, Sense::LessEqual, -lo});
      rows.push_back({vname("mc_ahi", {i, l}), {{y, 1}, {a, -1}, {x, -hi}}, Sense::GreaterEqual, -hi});
    }
  }
  auto density_terms = [&](int l) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < g.edges().size(); ++k) terms.push_back({model.w(k, l), 4});
    for (Vertex i = 1; i <= n; ++i) {
      if (g.degree(i) > 0) terms.push_back({model.x(i, l), -g.degree(i)});
    }
    return terms;
  };
  for (int l = 1; l <= m; ++l) {
    Constraint c{vname("link", {l}), density_terms(l), Sense::Equal, 0};
    for (Vertex i = 1; i <= n; ++i) c.terms.push_back({model.y(i, l), -1});
    rows.push_back(std::move(c));
  }
  if (opt.weak_L) {
    for (int l = 1; l <= m; ++l) rows.push_back({vname("weak", {l}), density_terms(l), Sense::GreaterEqual, *opt.weak_L});
  }
  for (int l = 1; l <= m; ++l) model.objective.push_back({model.alpha(l), 1});
  return model;
}

Assignment induced_solution(const LinearModel& model, const Graph& g, const Partition& p) {
  if (p.n() != g.n() || g.n() != model.n) throw Error("partition, graph and model sizes differ");
  if (p.m() != model.m) {
    throw Error("partition has " + std::to_string(p.m()) + " communities, model expects " + std::to_string(model.m));
  }
  Assignment values(model.variables.size(), Rational(0));
  std::vector<Rational> density(static_cast<std::size_t>(model.m));
  auto stats = all_community_stats(g, p);
  for (int l = 1; l <= model.m; ++l) {
    density[l - 1] = stats[l - 1].density();
    if (density[l - 1] < model.bounds.lower || density[l - 1] > model.bounds.upper) {
      throw Error("partition infeasible for these bounds (community " + std::to_string(l) + " has density " +
                  density[l - 1].str() + ")");
    }
    values[model.alpha(l)] = density[l - 1];
  }
  for (Vertex i = 1; i <= g.n(); ++i) {
    int l = p.community_of(i);
    values[model.x(i, l)] = 1;
    values[model.y(i, l)] = density[l - 1];
  }
  for (std::size_t k = 0; k < g.edges().size(); ++k) {
    const auto& e = g.edges()[k];
    int l = p.community_of(e.u);
    if (l == p.community_of(e.v)) values[model.w(k, l)] = 1;
  }
  return values;
}

std::vector<std::string> violations(const LinearModel& model, const Assignment& values) {
  if (values.size() != model.variables.size()) throw Error("assignment size does not match model");
  std::vector<std::string> out;
  for (std::size_t v = 0; v < values.size(); ++v) {
    const auto& var = model.variables[v];
    if (values[v] < var.lower || values[v] > var.upper) out.push_back("bound:" + var.name);
    if (var.kind == VarKind::Binary && values[v].den() != 1) out.push_back("integrality:" + var.name);
  }
  for (const auto& c : model.constraints) {
    Rational lhs;
    for (const auto& t : c.terms) lhs += t.coef * values[t.var];
    bool ok = c.sense == Sense::LessEqual ? lhs <= c.rhs : c.sense == Sense::GreaterEqual ? lhs >= c.rhs : lhs == c.rhs;
    if (!ok) out.push_back(c.name);
  }
  return out;
}

Rational objective_value(const LinearModel& model, const Assignment& values) {
  Rational z;
  for (const auto& t : model.objective) z += t.coef * values[t.var];
  return z;
}

std::string emit_lp(const LinearModel& model) {
  std::ostringstream os;
  os << "\\ modularity density, n=" << model.n << " m=" << model.m;
  if (model.weak_L) os << " weak_L=" << *model.weak_L;
  if (model.symmetry_break) os << " symmetry_break";
  os << "\nMaximize\n obj: ";
  write_expression(os, model, model.objective, 1);
  os << "\nSubject To\n";
  for (const auto& c : model.constraints) {
    std::int64_t scale = 1;
    auto absorb = [&](const Rational& r) {
      if (!terminates(r.den())) scale = std::lcm(scale, r.den());
    };
    for (const auto& t : c.terms) absorb(t.coef);
    absorb(c.rhs);
    os << " " << c.name << ": ";
    write_expression(os, model, c.terms, scale);
    os << " " << sense_token(c.sense) << " " << exact_decimal(c.rhs * scale) << "\n";
  }
  os << "Bounds\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::Binary) {
      if (v.upper == Rational(0)) os << " " << v.name << " = 0\n";
      continue;
    }
    os << " " << bound_decimal(v.lower, true) << " <= " << v.name << " <= " << bound_decimal(v.upper, false) << "\n";
  }
  os << "Binary\n";
  for (const auto& v : model.variables) {
    if (v.kind == VarKind::Binary) os << " " << v.name << "\n";
  }
  os << "End\n";
  return os.str();
}

nlohmann::json variable_sidecar(const LinearModel& model) {
  nlohmann::json vars = nlohmann::json::object();
  for (Vertex i = 1; i <= model.n; ++i) {
    for (int l = 1; l <= model.m; ++l) {
      vars[model.variables[model.x(i, l)].name] = {{"vertex", i}, {"community", l}};
    }
  }
  nlohmann::json j;
  j["schema"] = "mdnet/1";
  j["n"] = model.n;
  j["m"] = model.m;
  j["weak_L"] = model.weak_L ? nlohmann::json(*model.weak_L) : nlohmann::json(nullptr);
  j["symmetry_break"] = model.symmetry_break;
  j["alpha_bounds"] = {{"lower", model.bounds.lower.str()}, {"upper", model.bounds.upper.str()}};
  j["num_variables"] = model.variables.size();
  j["num_constraints"] = model.constraints.size();
  j["variables"] = std::move(vars);
  return j;
}

}  // namespace mdnet
