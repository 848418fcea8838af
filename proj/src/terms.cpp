#include "ladder/terms.hpp"

#include <cmath>

#include "ladder/errors.hpp"

namespace ladder {

std::string to_string(Var v) {
  switch (v) {
    case Var::x: return "x";
    case Var::y: return "y";
    case Var::u: return "u";
    case Var::xi: return "xi";
  }
  return "?";
}

Var var_from_string(const std::string& name) {
  if (name == "x" || name == "t") return Var::x;
  if (name == "y") return Var::y;
  if (name == "u") return Var::u;
  if (name == "xi") return Var::xi;
  throw ConfigError("unknown term variable '" + name + "' (expected x, t, y, u or xi)");
}

std::string to_string(FactorKind k) {
  switch (k) {
    case FactorKind::poly: return "poly";
    case FactorKind::sin: return "sin";
    case FactorKind::cos: return "cos";
    case FactorKind::tanh: return "tanh";
    case FactorKind::sech2: return "sech2";
  }
  return "?";
}

FactorKind factor_kind_from_string(const std::string& name) {
  if (name == "poly") return FactorKind::poly;
  if (name == "sin") return FactorKind::sin;
  if (name == "cos") return FactorKind::cos;
  if (name == "tanh") return FactorKind::tanh;
  if (name == "sech2") return FactorKind::sech2;
  throw ConfigError("unknown term function '" + name + "' (expected poly, sin, cos, tanh, sech2)");
}

namespace {

double pick(const Vars& v, Var var) {
  switch (var) {
    case Var::x: return v.x;
    case Var::y: return v.y;
    case Var::u: return v.u;
    case Var::xi: return v.xi;
  }
  return 0.0;
}

double ipow(double z, int p) {
  double r = 1.0;
  for (int i = 0; i < p; ++i) r *= z;
  return r;
}

double eval_factor(const Factor& f, double z) {
  switch (f.kind) {
    case FactorKind::poly: return ipow(z, f.power);
    case FactorKind::sin: return std::sin(z);
    case FactorKind::cos: return std::cos(z);
    case FactorKind::tanh: return std::tanh(z);
    case FactorKind::sech2: {
      const double c = std::cosh(z);
      return 1.0 / (c * c);
    }
  }
  return 0.0;
}

// d/dz of the factor's function.
double eval_factor_prime(const Factor& f, double z) {
  switch (f.kind) {
    case FactorKind::poly: return f.power == 0 ? 0.0 : f.power * ipow(z, f.power - 1);
    case FactorKind::sin: return std::cos(z);
    case FactorKind::cos: return -std::sin(z);
    case FactorKind::tanh: {
      const double c = std::cosh(z);
      return 1.0 / (c * c);
    }
    case FactorKind::sech2: {
      const double c = std::cosh(z);
      return -2.0 * std::tanh(z) / (c * c);
    }
  }
  return 0.0;
}

}  // namespace

double TermSum::operator()(const Vars& v) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    double prod = t.coeff;
    for (const auto& f : t.factors) prod *= eval_factor(f, f.scale * pick(v, f.var) + f.shift);
    total += prod;
  }
  return total;
}

double TermSum::d_du(const Vars& v) const {
  double total = 0.0;
  for (const auto& t : terms_) {
    for (std::size_t k = 0; k < t.factors.size(); ++k) {
      if (t.factors[k].var != Var::u) continue;
      double prod = t.coeff;
      for (std::size_t j = 0; j < t.factors.size(); ++j) {
        const auto& f = t.factors[j];
        const double z = f.scale * pick(v, f.var) + f.shift;
        prod *= j == k ? f.scale * eval_factor_prime(f, z) : eval_factor(f, z);
      }
      total += prod;
    }
  }
  return total;
}

bool TermSum::depends_on(Var var) const {
  for (const auto& t : terms_) {
    for (const auto& f : t.factors) {
      if (f.var == var) return true;
    }
  }
  return false;
}

}  // namespace ladder
