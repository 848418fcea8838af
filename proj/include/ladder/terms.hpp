#pragma once

#include <string>
#include <vector>

namespace ladder {

/// Variables an inline term may depend on. On periodic grids the time
/// variable is spelled `t` in configs and stored as `x`.
enum class Var { x, y, u, xi };

std::string to_string(Var v);
Var var_from_string(const std::string& name);

enum class FactorKind { poly, sin, cos, tanh, sech2 };

std::string to_string(FactorKind k);
FactorKind factor_kind_from_string(const std::string& name);

/// One factor g(scale * v + shift); `power` is the exponent of poly factors
/// (a nonnegative integer), ignored otherwise.
struct Factor {
  FactorKind kind = FactorKind::poly;
  Var var = Var::u;
  double scale = 1.0;
  double shift = 0.0;
  int power = 1;

  friend bool operator==(const Factor&, const Factor&) = default;
};

struct Term {
  double coeff = 1.0;
  std::vector<Factor> factors;

  friend bool operator==(const Term&, const Term&) = default;
};

struct Vars {
  double x = 0.0;
  double y = 0.0;
  double u = 0.0;
  double xi = 0.0;
};

/// Sum of products of elementary factors with affine arguments.
class TermSum {
 public:
  TermSum() = default;
  explicit TermSum(std::vector<Term> terms) : terms_(std::move(terms)) {}

  bool empty() const noexcept { return terms_.empty(); }
  const std::vector<Term>& terms() const noexcept { return terms_; }

  double operator()(const Vars& v) const;
  /// Exact partial derivative with respect to u.
  double d_du(const Vars& v) const;
  bool depends_on(Var var) const;

  friend bool operator==(const TermSum&, const TermSum&) = default;

 private:
  std::vector<Term> terms_;
};

}  // namespace ladder
