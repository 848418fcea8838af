#include "ladder/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ladder/errors.hpp"

namespace ladder {

std::string to_string(SignChoice s) {
  switch (s) {
    case SignChoice::plus: return "plus";
    case SignChoice::minus: return "minus";
    case SignChoice::both: return "both";
  }
  return "?";
}

std::vector<Sign> signs_of(SignChoice s) {
  switch (s) {
    case SignChoice::plus: return {Sign::plus};
    case SignChoice::minus: return {Sign::minus};
    case SignChoice::both: return {Sign::plus, Sign::minus};
  }
  return {};
}

namespace {

std::string where(const YAML::Node& node) {
  const YAML::Mark m = node.Mark();
  if (m.is_null()) return "";
  std::ostringstream os;
  os << " (line " << m.line + 1 << ", column " << m.column + 1 << ")";
  return os.str();
}

/// Map section that remembers which keys were read and rejects the rest.
class Section {
 public:
  Section(YAML::Node node, std::string path) : node_(std::move(node)), path_(std::move(path)) {
    if (node_ && !node_.IsNull() && !node_.IsMap()) {
      throw ConfigError(path_ + " must be a mapping" + where(node_));
    }
  }

  bool has(const std::string& key) const {
    const YAML::Node& map = node_;
    return map && map.IsMap() && map[key];
  }

  YAML::Node get(const std::string& key) {
    seen_.insert(key);
    if (!node_ || !node_.IsMap()) return YAML::Node(YAML::NodeType::Undefined);
    const YAML::Node& map = node_;
    return map[key];
  }

  std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  template <class T>
  void read(const std::string& key, T& out) {
    YAML::Node n = get(key);
    if (!n) return;
    try {
      out = n.as<T>();
    } catch (const YAML::Exception&) {
      throw ConfigError(field(key) + " has the wrong type" + where(n));
    }
  }

  void finish() const {
    if (!node_ || !node_.IsMap()) return;
    for (const auto& kv : node_) {
      const std::string key = kv.first.as<std::string>();
      if (!seen_.count(key)) throw ConfigError("unknown key " + field(key) + where(kv.first));
    }
  }

 private:
  YAML::Node node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <class T>
std::vector<T> read_list(const YAML::Node& n, const std::string& field) {
  if (!n) return {};
  if (!n.IsSequence()) throw ConfigError(field + " must be a list" + where(n));
  std::vector<T> out;
  for (const auto& item : n) {
    try {
      out.push_back(item.as<T>());
    } catch (const YAML::Exception&) {
      throw ConfigError(field + " has an entry of the wrong type" + where(item));
    }
  }
  return out;
}

TermSum read_terms(const YAML::Node& n, const std::string& field) {
  if (!n) return {};
  if (!n.IsSequence()) throw ConfigError(field + " must be a list of terms" + where(n));
  std::vector<Term> terms;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const std::string tf = field + "[" + std::to_string(i) + "]";
    Section s(n[i], tf);
    Term t;
    s.read("coeff", t.coeff);
    YAML::Node fac = s.get("factors");
    if (fac) {
      if (!fac.IsSequence()) throw ConfigError(tf + ".factors must be a list" + where(fac));
      for (std::size_t j = 0; j < fac.size(); ++j) {
        Section fs(fac[j], tf + ".factors[" + std::to_string(j) + "]");
        Factor f;
        std::string fn = "poly", var = "u";
        fs.read("fn", fn);
        fs.read("var", var);
        fs.read("scale", f.scale);
        fs.read("shift", f.shift);
        fs.read("power", f.power);
        fs.finish();
        f.kind = factor_kind_from_string(fn);
        f.var = var_from_string(var);
        if (f.kind == FactorKind::poly && f.power < 0) {
          throw ConfigError(fs.field("power") + " must be nonnegative");
        }
        t.factors.push_back(f);
      }
    }
    s.finish();
    terms.push_back(std::move(t));
  }
  return TermSum(std::move(terms));
}

ProblemClass problem_from_string(const std::string& s) {
  if (s == "elliptic") return ProblemClass::elliptic;
  if (s == "convection") return ProblemClass::convection;
  if (s == "hamiltonian") return ProblemClass::hamiltonian;
  throw ConfigError("problem must be elliptic, convection or hamiltonian (got '" + s + "')");
}

SignChoice sign_choice_from_string(const std::string& s) {
  if (s == "plus") return SignChoice::plus;
  if (s == "minus") return SignChoice::minus;
  if (s == "both") return SignChoice::both;
  throw ConfigError("sign must be plus, minus or both (got '" + s + "')");
}

OracleIntegrator integrator_from_string(const std::string& s) {
  if (s == "rk4") return OracleIntegrator::rk4;
  if (s == "stencil") return OracleIntegrator::stencil;
  throw ConfigError("oracle.integrator must be rk4 or stencil (got '" + s + "')");
}

std::string to_string(OracleIntegrator i) { return i == OracleIntegrator::rk4 ? "rk4" : "stencil"; }

void read_inline(Section& s, InlineSpec& in) {
  s.read("name", in.name);
  in.f = read_terms(s.get("f"), s.field("f"));
  in.F = read_terms(s.get("F"), s.field("F"));
  in.K = read_terms(s.get("K"), s.field("K"));
  {
    Section l(s.get("ladder"), s.field("ladder"));
    in.mu = read_list<double>(l.get("mu"), l.field("mu"));
    in.eta = read_list<double>(l.get("eta"), l.field("eta"));
    in.beta = read_list<double>(l.get("beta"), l.field("beta"));
    in.gamma = read_list<double>(l.get("gamma"), l.field("gamma"));
    l.finish();
  }
  s.read("growth_c", in.growth_c);
  s.read("growth_r", in.growth_r);
  s.read("L1", in.L1);
  s.read("L2", in.L2);
  s.read("c1", in.c1);
  s.read("s", in.s);
  s.read("b1", in.b1);
  s.read("b2", in.b2);
  s.read("a", in.a);
  s.read("p", in.p);
}

RunConfig from_yaml(const YAML::Node& root) {
  if (!root || !root.IsMap()) throw ConfigError("config must be a mapping at the top level");
  RunConfig c;
  Section top(root, "");
  std::string problem = "elliptic";
  top.read("problem", problem);
  c.problem = problem_from_string(problem);

  {
    Section s(top.get("spec"), "spec");
    s.read("builtin", c.spec.builtin);
    YAML::Node params = s.get("params");
    if (params) {
      if (!params.IsMap()) throw ConfigError("spec.params must be a mapping" + where(params));
      for (const auto& kv : params) {
        const std::string key = kv.first.as<std::string>();
        try {
          c.spec.params[key] = kv.second.as<double>();
        } catch (const YAML::Exception&) {
          throw ConfigError("spec.params." + key + " must be a number" + where(kv.second));
        }
      }
    }
    s.read("empirical", c.spec.empirical);
    s.read("zero_tol", c.spec.zero_tol);
    YAML::Node in = s.get("inline");
    if (in) {
      c.spec.is_inline = true;
      Section is(in, "spec.inline");
      read_inline(is, c.spec.inline_spec);
      is.finish();
    }
    s.finish();
  }

  {
    Section g(top.get("grid"), "grid");
    std::string kind = to_string(c.grid.kind);
    g.read("kind", kind);
    c.grid.kind = grid_kind_from_string(kind);
    g.read("x_lo", c.grid.x_lo);
    g.read("x_hi", c.grid.x_hi);
    g.read("y_lo", c.grid.y_lo);
    g.read("y_hi", c.grid.y_hi);
    g.read("cells_x", c.grid.cells_x);
    g.read("cells_y", c.grid.cells_y);
    if (g.has("k_list")) c.grid.k_list = read_list<int>(g.get("k_list"), "grid.k_list");
    else g.get("k_list");
    g.read("period", c.grid.period);
    g.read("cells_per_period", c.grid.cells_per_period);
    g.read("compact_a", c.grid.compact_a);
    g.read("compact_b", c.grid.compact_b);
    g.finish();
  }

  {
    Section w(top.get("windows"), "windows");
    w.read("count", c.windows.count);
    c.windows.schedule = read_list<int>(w.get("schedule"), "windows.schedule");
    w.finish();
  }

  std::string sign = to_string(c.sign);
  top.read("sign", sign);
  c.sign = sign_choice_from_string(sign);
  std::string seed = to_string(c.seed_profile);
  top.read("seed_profile", seed);
  c.seed_profile = seed_profile_from_string(seed);

  {
    Section t(top.get("tolerances"), "tolerances");
    auto& x = c.tolerances;
    t.read("grad_tol", x.grad_tol);
    t.read("max_iters", x.max_iters);
    t.read("initial_step", x.initial_step);
    t.read("shrink", x.shrink);
    t.read("sufficient_decrease", x.sufficient_decrease);
    t.read("max_halvings", x.max_halvings);
    t.read("plateau_ramp_fraction", x.plateau_ramp_fraction);
    t.read("memory", x.memory);
    t.read("window_tol_factor", x.window_tol_factor);
    t.read("nontrivial_tol_factor", x.nontrivial_tol_factor);
    t.read("picard_tol", x.picard_tol);
    t.read("max_outer", x.max_outer);
    t.read("ratio_slack", x.ratio_slack);
    t.read("t_samples", x.t_samples);
    t.read("fd_slack", x.fd_slack);
    t.read("validation_samples", x.validation_samples);
    t.read("validation_depth", x.validation_depth);
    t.finish();
  }

  {
    Section o(top.get("oracle"), "oracle");
    auto& x = c.oracle;
    o.read("slope_lo", x.slope_lo);
    o.read("slope_hi", x.slope_hi);
    o.read("slope_samples", x.slope_samples);
    o.read("steps", x.steps);
    std::string integ = to_string(x.integrator);
    o.read("integrator", integ);
    x.integrator = integrator_from_string(integ);
    o.read("oracle_tol", x.oracle_tol);
    o.read("match_tol", x.match_tol);
    o.finish();
  }

  {
    Section o(top.get("output"), "output");
    o.read("directory", c.output.directory);
    if (o.has("formats")) c.output.formats = read_list<std::string>(o.get("formats"), "output.formats");
    else o.get("formats");
    o.finish();
  }
  top.finish();
  validate_config(c);
  return c;
}

nlohmann::json terms_json(const TermSum& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& term : t.terms()) {
    nlohmann::json fs = nlohmann::json::array();
    for (const auto& f : term.factors) {
      fs.push_back({{"fn", to_string(f.kind)},
                    {"var", to_string(f.var)},
                    {"scale", f.scale},
                    {"shift", f.shift},
                    {"power", f.power}});
    }
    arr.push_back({{"coeff", term.coeff}, {"factors", fs}});
  }
  return arr;
}

}  // namespace

void validate_config(const RunConfig& c) {
  const bool periodic = c.grid.kind == GridKind::periodic_1d;
  if ((c.problem == ProblemClass::hamiltonian) != periodic) {
    throw ConfigError("grid.kind must be periodic-1d exactly when problem is hamiltonian");
  }
  if (c.spec.is_inline == !c.spec.builtin.empty()) {
    throw ConfigError("spec needs exactly one of spec.builtin or spec.inline");
  }
  if (!c.spec.is_inline && !c.spec.params.empty() && c.spec.builtin.empty()) {
    throw ConfigError("spec.params only apply to builtin specs");
  }
  if (!c.spec.builtin.empty()) {
    const std::string& b = c.spec.builtin;
    const bool known = b == "sine-elliptic" || b == "tanh-convection" || b == "sinusoidal-hamiltonian";
    if (!known) throw ConfigError("spec.builtin '" + b + "' does not exist");
    const bool matches = (b == "sine-elliptic" && c.problem == ProblemClass::elliptic) ||
                         (b == "tanh-convection" && c.problem == ProblemClass::convection) ||
                         (b == "sinusoidal-hamiltonian" && c.problem == ProblemClass::hamiltonian);
    if (!matches) throw ConfigError("spec.builtin '" + b + "' does not fit problem " + to_string(c.problem));
  }
  if (c.spec.empirical && c.problem != ProblemClass::convection) {
    throw ConfigError("spec.empirical only applies to convection problems");
  }
  if (!(c.spec.zero_tol > 0.0)) throw ConfigError("spec.zero_tol must be positive");
  if (c.spec.is_inline) {
    const auto& in = c.spec.inline_spec;
    if (c.problem == ProblemClass::hamiltonian) {
      if (in.K.empty() || in.F.empty()) throw ConfigError("spec.inline needs K and F for hamiltonian problems");
    } else if (in.f.empty()) {
      throw ConfigError("spec.inline.f must not be empty");
    }
    if (c.problem == ProblemClass::elliptic && (in.f.depends_on(Var::xi) || in.F.depends_on(Var::xi))) {
      throw ConfigError("spec.inline.f of an elliptic problem cannot depend on xi");
    }
    if (in.mu.empty() || in.eta.empty() || in.beta.empty() || in.gamma.empty()) {
      throw ConfigError("spec.inline.ladder needs mu, eta, beta and gamma");
    }
  }

  const auto& g = c.grid;
  if (periodic) {
    if (g.k_list.empty()) throw ConfigError("grid.k_list must not be empty");
    for (std::size_t i = 0; i < g.k_list.size(); ++i) {
      if (g.k_list[i] < 1) throw ConfigError("grid.k_list entries must be positive");
      if (i > 0 && g.k_list[i] <= g.k_list[i - 1]) throw ConfigError("grid.k_list must be strictly increasing");
    }
    if (!(g.period > 0.0)) throw ConfigError("grid.period must be positive");
    if (g.cells_per_period < 2) throw ConfigError("grid.cells_per_period must be at least 2");
    const double lim = g.k_list.front() * g.period;
    if (!(g.compact_a < g.compact_b) || g.compact_a < -lim || g.compact_b > lim) {
      throw ConfigError("grid.compact_a/compact_b must satisfy -k T <= a < b <= k T for the smallest k");
    }
  } else {
    if (!(g.x_hi > g.x_lo)) throw ConfigError("grid.x_hi must exceed grid.x_lo");
    if (g.cells_x < 4) throw ConfigError("grid.cells_x must be at least 4");
    if (g.kind == GridKind::dirichlet_2d) {
      if (!(g.y_hi > g.y_lo)) throw ConfigError("grid.y_hi must exceed grid.y_lo");
      if (g.cells_y < 4) throw ConfigError("grid.cells_y must be at least 4");
    }
  }

  if (c.windows.count < 1) throw ConfigError("windows.count must be positive");
  if (!c.windows.schedule.empty()) {
    if (c.problem == ProblemClass::hamiltonian) {
      throw ConfigError("windows.schedule is not supported for hamiltonian problems");
    }
    validate_schedule(c.windows.schedule);
  }
  if (c.seed_profile == SeedProfile::custom) {
    throw ConfigError("seed_profile custom is only available through the library API");
  }

  const auto& t = c.tolerances;
  auto positive = [](double v, const char* name) {
    if (!(v > 0.0)) throw ConfigError(std::string("tolerances.") + name + " must be positive");
  };
  positive(t.grad_tol, "grad_tol");
  positive(t.picard_tol, "picard_tol");
  positive(t.window_tol_factor, "window_tol_factor");
  positive(t.nontrivial_tol_factor, "nontrivial_tol_factor");
  positive(t.initial_step, "initial_step");
  positive(t.fd_slack, "fd_slack");
  if (t.ratio_slack < 0.0) throw ConfigError("tolerances.ratio_slack must be nonnegative");
  if (t.max_iters < 1) throw ConfigError("tolerances.max_iters must be positive");
  if (t.max_outer < 1) throw ConfigError("tolerances.max_outer must be positive");
  if (t.t_samples < 1) throw ConfigError("tolerances.t_samples must be positive");
  if (t.validation_samples < 1) throw ConfigError("tolerances.validation_samples must be positive");
  if (t.validation_depth < 1) throw ConfigError("tolerances.validation_depth must be positive");
  minimize_options(c).validate();

  const auto& o = c.oracle;
  if (!(o.slope_lo < o.slope_hi)) throw ConfigError("oracle.slope_lo must be below oracle.slope_hi");
  if (o.slope_samples < 2) throw ConfigError("oracle.slope_samples must be at least 2");
  if (o.steps < 4) throw ConfigError("oracle.steps must be at least 4");
  positive(o.oracle_tol, "oracle_tol");
  positive(o.match_tol, "match_tol");

  for (const auto& f : c.output.formats) {
    if (f != "report" && f != "table") throw ConfigError("output.formats entries must be report or table");
  }
}

RunConfig parse_config_string(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    std::ostringstream os;
    os << "config parse error at line " << e.mark.line + 1 << ", column " << e.mark.column + 1
       << ": " << e.msg;
    throw ConfigError(os.str());
  }
  return from_yaml(root);
}

RunConfig parse_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_string(ss.str());
}

std::string config_echo(const RunConfig& c) {
  nlohmann::json j;
  j["problem"] = to_string(c.problem);
  nlohmann::json spec;
  if (c.spec.is_inline) {
    const auto& in = c.spec.inline_spec;
    spec["inline"] = {{"name", in.name},
                      {"f", terms_json(in.f)},
                      {"F", terms_json(in.F)},
                      {"K", terms_json(in.K)},
                      {"ladder", {{"mu", in.mu}, {"eta", in.eta}, {"beta", in.beta}, {"gamma", in.gamma}}},
                      {"growth_c", in.growth_c},
                      {"growth_r", in.growth_r},
                      {"L1", in.L1},
                      {"L2", in.L2},
                      {"c1", in.c1},
                      {"s", in.s},
                      {"b1", in.b1},
                      {"b2", in.b2},
                      {"a", in.a},
                      {"p", in.p}};
  } else {
    spec["builtin"] = c.spec.builtin;
    spec["params"] = nlohmann::json::object();
    for (const auto& [k, v] : c.spec.params) spec["params"][k] = v;
  }
  spec["empirical"] = c.spec.empirical;
  spec["zero_tol"] = c.spec.zero_tol;
  j["spec"] = spec;
  const auto& g = c.grid;
  j["grid"] = {{"kind", to_string(g.kind)},     {"x_lo", g.x_lo},
               {"x_hi", g.x_hi},                {"y_lo", g.y_lo},
               {"y_hi", g.y_hi},                {"cells_x", g.cells_x},
               {"cells_y", g.cells_y},          {"k_list", g.k_list},
               {"period", g.period},            {"cells_per_period", g.cells_per_period},
               {"compact_a", g.compact_a},      {"compact_b", g.compact_b}};
  j["windows"] = {{"count", c.windows.count}, {"schedule", c.windows.schedule}};
  j["sign"] = to_string(c.sign);
  j["seed_profile"] = to_string(c.seed_profile);
  const auto& t = c.tolerances;
  j["tolerances"] = {{"grad_tol", t.grad_tol},
                     {"max_iters", t.max_iters},
                     {"initial_step", t.initial_step},
                     {"shrink", t.shrink},
                     {"sufficient_decrease", t.sufficient_decrease},
                     {"max_halvings", t.max_halvings},
                     {"plateau_ramp_fraction", t.plateau_ramp_fraction},
                     {"memory", t.memory},
                     {"window_tol_factor", t.window_tol_factor},
                     {"nontrivial_tol_factor", t.nontrivial_tol_factor},
                     {"picard_tol", t.picard_tol},
                     {"max_outer", t.max_outer},
                     {"ratio_slack", t.ratio_slack},
                     {"t_samples", t.t_samples},
                     {"fd_slack", t.fd_slack},
                     {"validation_samples", t.validation_samples},
                     {"validation_depth", t.validation_depth}};
  const auto& o = c.oracle;
  j["oracle"] = {{"slope_lo", o.slope_lo},       {"slope_hi", o.slope_hi},
                 {"slope_samples", o.slope_samples}, {"steps", o.steps},
                 {"integrator", to_string(o.integrator)}, {"oracle_tol", o.oracle_tol},
                 {"match_tol", o.match_tol}};
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  return j.dump(2);
}

MinimizeOptions minimize_options(const RunConfig& c) {
  MinimizeOptions m;
  const auto& t = c.tolerances;
  m.grad_tol = t.grad_tol;
  m.max_iters = t.max_iters;
  m.line_search.initial_step = t.initial_step;
  m.line_search.shrink = t.shrink;
  m.line_search.sufficient_decrease = t.sufficient_decrease;
  m.line_search.max_halvings = t.max_halvings;
  m.seed_profile = c.seed_profile;
  m.plateau_ramp_fraction = t.plateau_ramp_fraction;
  m.memory = t.memory;
  m.window_tol_factor = t.window_tol_factor;
  m.nontrivial_tol_factor = t.nontrivial_tol_factor;
  return m;
}

Grid dirichlet_grid(const RunConfig& c) {
  GridSpec s;
  s.kind = c.grid.kind;
  s.x_lo = c.grid.x_lo;
  s.x_hi = c.grid.x_hi;
  s.y_lo = c.grid.y_lo;
  s.y_hi = c.grid.y_hi;
  s.cells_x = c.grid.cells_x;
  s.cells_y = c.grid.cells_y;
  if (s.kind == GridKind::periodic_1d) throw UsageError("dirichlet_grid: config describes a periodic grid");
  return build_grid(s);
}

namespace {

ZeroLadder inline_ladder(const InlineSpec& in) { return ZeroLadder(in.mu, in.eta, in.beta, in.gamma); }

Vars vars_of(Point p, double u, double xi) { return Vars{p.x, p.y, u, xi}; }

}  // namespace

NonlinearitySpec build_elliptic_spec(const RunConfig& c) {
  NonlinearitySpec s;
  if (!c.spec.is_inline) {
    s = load_sine_elliptic(c.spec.params);
  } else {
    const auto& in = c.spec.inline_spec;
    s.name = in.name;
    s.f = [f = in.f](Point p, double t) { return f(vars_of(p, t, 0.0)); };
    if (!in.F.empty()) s.F = [F = in.F](Point p, double t) { return F(vars_of(p, t, 0.0)); };
    s.ladder = inline_ladder(in);
    s.growth = {in.growth_c, in.growth_r};
  }
  s.zero_tol = c.spec.zero_tol;
  return s;
}

ConvectionSpec build_convection_spec(const RunConfig& c) {
  ConvectionSpec s;
  if (!c.spec.is_inline) {
    s = load_tanh_convection(c.spec.params, c.spec.empirical);
  } else {
    const auto& in = c.spec.inline_spec;
    s.name = in.name;
    s.f = [f = in.f](Point p, double t, const Xi& xi) { return f(vars_of(p, t, magnitude(xi))); };
    if (!in.F.empty()) {
      s.F = [F = in.F](Point p, double t, const Xi& xi) { return F(vars_of(p, t, magnitude(xi))); };
    }
    s.ladder = inline_ladder(in);
    s.L1 = in.L1;
    s.L2 = in.L2;
    s.c1 = in.c1;
    s.s = in.s;
    s.empirical = c.spec.empirical;
  }
  s.zero_tol = c.spec.zero_tol;
  return s;
}

HamiltonianSpec build_hamiltonian_spec(const RunConfig& c) {
  HamiltonianSpec s;
  if (!c.spec.is_inline) {
    Parameters params = c.spec.params;
    auto it = params.find("T");
    if (it == params.end()) {
      params["T"] = c.grid.period;
    } else if (std::abs(it->second - c.grid.period) > 1e-12 * c.grid.period) {
      throw ConfigError("spec.params.T differs from grid.period");
    }
    s = load_sinusoidal_hamiltonian(params);
  } else {
    const auto& in = c.spec.inline_spec;
    s.name = in.name;
    s.K = [K = in.K](double t, double u) { return K(Vars{t, 0.0, u, 0.0}); };
    s.K_u = [K = in.K](double t, double u) { return K.d_du(Vars{t, 0.0, u, 0.0}); };
    s.F = [F = in.F](double t, double u) { return F(Vars{t, 0.0, u, 0.0}); };
    s.F_u = [F = in.F](double t, double u) { return F.d_du(Vars{t, 0.0, u, 0.0}); };
    s.ladder = inline_ladder(in);
    s.b1 = in.b1;
    s.b2 = in.b2;
    s.period = c.grid.period;
    s.a = in.a;
    s.p = in.p;
  }
  s.zero_tol = c.spec.zero_tol;
  return s;
}

}  // namespace ladder
