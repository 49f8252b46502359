#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probcf/ast.hpp"
#include "probcf/distributions.hpp"
#include "probcf/eval.hpp"

namespace probcf {

/// sum(coeff * var) + constant
struct Linear {
  std::map<VarId, double> coeffs;
  double constant = 0.0;

  bool is_constant() const { return coeffs.empty(); }
  double coeff(VarId v) const;
  Linear& operator+=(const Linear& o);
  Linear& operator*=(double k);
};

Linear operator-(Linear a, const Linear& b);

/// Linear view of a numeric expression (booleans count as 0/1).
std::optional<Linear> linearize(const Expr& e);

/// Bounds, equalities and excluded points on one linear form. The form's
/// leading coefficient is +1 and it carries no constant term.
struct FormConstraint {
  std::vector<std::pair<VarId, double>> terms;
  double lo = -kInf;
  double hi = kInf;
  bool lo_strict = false;
  bool hi_strict = false;
  std::vector<double> excluded;

  bool mentions(VarId v) const;
  double coeff(VarId v) const;
  bool is_equality() const { return lo == hi; }
  bool single_var(VarId v) const { return terms.size() == 1 && terms[0].first == v; }
  bool infeasible() const;
  Linear form() const;
  ExprPtr to_expr() const;
};

/// Product of a constant scale, linear sharp constraints, opaque sharp atoms
/// and opaque fuzzy factors. The currency of condition propagation.
class SymbolicPredicate {
 public:
  static SymbolicPredicate one() { return {}; }
  static SymbolicPredicate zero();
  /// Indicator of a boolean formula.
  static SymbolicPredicate from_formula(const ExprPtr& phi);
  /// A numeric fuzzy predicate; indicators and products are split.
  static SymbolicPredicate from_factor(const ExprPtr& f);

  bool is_false() const { return false_ || scale_ == 0.0; }
  bool is_one() const;
  bool is_sharp() const { return fuzzy_.empty() && scale_ == 1.0; }
  bool mentions(VarId v) const;
  double scale() const { return scale_; }
  const std::vector<FormConstraint>& forms() const { return forms_; }
  const std::vector<ExprPtr>& sharp_atoms() const { return sharp_; }
  const std::vector<ExprPtr>& fuzzy_factors() const { return fuzzy_; }

  void conjoin(const SymbolicPredicate& other);
  void add_constraint(const Linear& lhs, BinaryOp op);  // lhs op 0
  void add_form(const FormConstraint& c);
  void add_sharp(const ExprPtr& phi);
  void add_fuzzy(const ExprPtr& f);
  void multiply(double k);

  /// this[e / x], re-simplifying linear atoms.
  SymbolicPredicate substitute(VarId x, const ExprPtr& e) const;
  /// Replaces every variable known in env by its value.
  SymbolicPredicate fold(const ConstEnv& env) const;

  /// Conjunction of the sharp parts as a boolean formula.
  ExprPtr sharp_formula() const;
  /// Whole predicate as a numeric fuzzy predicate.
  ExprPtr to_expr() const;
  double eval(const MemoryState& sigma) const;

 private:
  void set_false();

  bool false_ = false;
  double scale_ = 1.0;
  std::vector<FormConstraint> forms_;
  std::vector<ExprPtr> sharp_;
  std::vector<ExprPtr> fuzzy_;
};

/// Product semantics: eval(conjoin(f, g)) = f * g.
SymbolicPredicate conjoin(const ExprPtr& f, const SymbolicPredicate& g);

/// Sharp formula over the other variables implied by (exists x in supp(d).
/// f > 0): Fourier-Motzkin elimination of x from the linear constraints,
/// with the support bounds treated as closed. Falls back to true for parts
/// outside the linear fragment. A null d means an unknown support.
SymbolicPredicate derive_psi(const SymbolicPredicate& f, VarId x, const Distribution* d);

/// Admitted set for x when f's constraints on x alone are constant bounds.
/// Continuous draws use bounds only; discrete draws also honour equalities
/// and excluded points.
std::optional<IntervalSet> derive_xi(const SymbolicPredicate& f, VarId x, bool discrete);

}  // namespace probcf
