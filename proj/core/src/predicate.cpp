#include "probcf/predicate.hpp"

#include <algorithm>
#include <cmath>

#include "probcf/errors.hpp"

namespace probcf {

namespace {

constexpr double kCoeffEps = 1e-12;

BinaryOp negate(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Ge;
    case BinaryOp::Le: return BinaryOp::Gt;
    case BinaryOp::Gt: return BinaryOp::Le;
    case BinaryOp::Ge: return BinaryOp::Lt;
    case BinaryOp::Eq: return BinaryOp::Ne;
    case BinaryOp::Ne: return BinaryOp::Eq;
    default: return op;
  }
}

BinaryOp flip(BinaryOp op) {
  switch (op) {
    case BinaryOp::Lt: return BinaryOp::Gt;
    case BinaryOp::Le: return BinaryOp::Ge;
    case BinaryOp::Gt: return BinaryOp::Lt;
    case BinaryOp::Ge: return BinaryOp::Le;
    default: return op;
  }
}

bool compare(BinaryOp op, double a, double b) {
  switch (op) {
    case BinaryOp::Lt: return a < b;
    case BinaryOp::Le: return a <= b;
    case BinaryOp::Gt: return a > b;
    case BinaryOp::Ge: return a >= b;
    case BinaryOp::Eq: return a == b;
    case BinaryOp::Ne: return a != b;
    default: return false;
  }
}

ExprPtr number(double v) {
  bool integral = std::isfinite(v) && v == std::floor(v) && std::fabs(v) < 9.0e15;
  return make_const(v, integral ? Type::Int : Type::Double);
}

ExprPtr conj(ExprPtr a, ExprPtr b) {
  if (!a) return b;
  return make_binary(BinaryOp::And, std::move(a), std::move(b));
}

ExprPtr times(ExprPtr a, ExprPtr b) {
  if (!a) return b;
  return make_binary(BinaryOp::Mul, std::move(a), std::move(b));
}

}  // namespace

double Linear::coeff(VarId v) const {
  auto it = coeffs.find(v);
  return it == coeffs.end() ? 0.0 : it->second;
}

Linear& Linear::operator+=(const Linear& o) {
  for (auto [v, c] : o.coeffs) {
    double& slot = coeffs[v];
    slot += c;
    if (slot == 0.0) coeffs.erase(v);
  }
  constant += o.constant;
  return *this;
}

Linear& Linear::operator*=(double k) {
  if (k == 0.0) {
    coeffs.clear();
    constant = 0.0;
    return *this;
  }
  for (auto& [v, c] : coeffs) c *= k;
  constant *= k;
  return *this;
}

Linear operator-(Linear a, const Linear& b) {
  Linear nb = b;
  nb *= -1.0;
  a += nb;
  return a;
}

std::optional<Linear> linearize(const Expr& e) {
  if (auto* v = e.as_var()) {
    Linear l;
    l.coeffs[v->id] = 1.0;
    return l;
  }
  if (auto* c = e.as_const()) {
    Linear l;
    l.constant = c->value;
    return l;
  }
  if (auto* u = e.as_unary()) {
    if (u->op != UnaryOp::Neg) return std::nullopt;
    auto l = linearize(*u->operand);
    if (l) *l *= -1.0;
    return l;
  }
  auto* b = e.as_binary();
  if (!is_arithmetic(b->op)) return std::nullopt;
  auto l = linearize(*b->lhs);
  if (!l) return std::nullopt;
  auto r = linearize(*b->rhs);
  if (!r) return std::nullopt;
  switch (b->op) {
    case BinaryOp::Add:
      *l += *r;
      return l;
    case BinaryOp::Sub:
      return *l - *r;
    case BinaryOp::Mul:
      if (l->is_constant()) {
        *r *= l->constant;
        return r;
      }
      if (r->is_constant()) {
        *l *= r->constant;
        return l;
      }
      return std::nullopt;
    case BinaryOp::Div:
      if (!r->is_constant() || r->constant == 0.0) return std::nullopt;
      *l *= 1.0 / r->constant;
      return l;
    default:
      return std::nullopt;
  }
}

bool FormConstraint::mentions(VarId v) const {
  return std::any_of(terms.begin(), terms.end(), [v](const auto& t) { return t.first == v; });
}

double FormConstraint::coeff(VarId v) const {
  for (const auto& [id, c] : terms)
    if (id == v) return c;
  return 0.0;
}

bool FormConstraint::infeasible() const {
  if (lo > hi) return true;
  if (lo == hi) {
    if (lo_strict || hi_strict) return true;
    return std::find(excluded.begin(), excluded.end(), lo) != excluded.end();
  }
  return false;
}

Linear FormConstraint::form() const {
  Linear l;
  for (const auto& [v, c] : terms) l.coeffs[v] = c;
  return l;
}

ExprPtr FormConstraint::to_expr() const {
  ExprPtr f;
  for (const auto& [v, c] : terms) {
    double mag = std::fabs(c);
    ExprPtr term = mag == 1.0 ? make_var(v) : make_binary(BinaryOp::Mul, number(mag), make_var(v));
    if (!f) {
      f = c < 0 ? make_unary(UnaryOp::Neg, term) : term;
    } else {
      f = make_binary(c < 0 ? BinaryOp::Sub : BinaryOp::Add, f, term);
    }
  }
  if (is_equality()) return make_binary(BinaryOp::Eq, f, number(lo));
  ExprPtr out;
  if (lo > -kInf) out = conj(out, make_binary(lo_strict ? BinaryOp::Lt : BinaryOp::Le, number(lo), f));
  if (hi < kInf) out = conj(out, make_binary(hi_strict ? BinaryOp::Lt : BinaryOp::Le, f, number(hi)));
  for (double e : excluded) out = conj(out, make_binary(BinaryOp::Ne, f, number(e)));
  return out ? out : make_bool(true);
}

SymbolicPredicate SymbolicPredicate::zero() {
  SymbolicPredicate p;
  p.set_false();
  return p;
}

void SymbolicPredicate::set_false() {
  false_ = true;
  scale_ = 0.0;
  forms_.clear();
  sharp_.clear();
  fuzzy_.clear();
}

bool SymbolicPredicate::is_one() const {
  return !false_ && scale_ == 1.0 && forms_.empty() && sharp_.empty() && fuzzy_.empty();
}

bool SymbolicPredicate::mentions(VarId v) const {
  for (const auto& f : forms_)
    if (f.mentions(v)) return true;
  for (const auto& s : sharp_)
    if (probcf::mentions(*s, v)) return true;
  for (const auto& s : fuzzy_)
    if (probcf::mentions(*s, v)) return true;
  return false;
}

void SymbolicPredicate::multiply(double k) {
  if (is_false()) return;
  scale_ *= k;
  if (scale_ == 0.0) set_false();
}

void SymbolicPredicate::add_constraint(const Linear& lhs, BinaryOp op) {
  if (is_false()) return;
  Linear l = lhs;
  for (auto it = l.coeffs.begin(); it != l.coeffs.end();) {
    if (std::fabs(it->second) < kCoeffEps) {
      it = l.coeffs.erase(it);
    } else {
      ++it;
    }
  }
  if (l.is_constant()) {
    if (!compare(op, l.constant, 0.0)) set_false();
    return;
  }
  double k = l.coeffs.begin()->second;
  FormConstraint c;
  for (auto [v, coef] : l.coeffs) c.terms.emplace_back(v, coef / k);
  c.terms.front().second = 1.0;
  double v = -l.constant / k;
  if (v == 0.0) v = 0.0;  // drop negative zero
  if (k < 0) op = flip(op);
  switch (op) {
    case BinaryOp::Lt:
      c.hi = v;
      c.hi_strict = true;
      break;
    case BinaryOp::Le:
      c.hi = v;
      break;
    case BinaryOp::Gt:
      c.lo = v;
      c.lo_strict = true;
      break;
    case BinaryOp::Ge:
      c.lo = v;
      break;
    case BinaryOp::Eq:
      c.lo = c.hi = v;
      break;
    case BinaryOp::Ne:
      c.excluded.push_back(v);
      break;
    default:
      return;
  }
  add_form(c);
}

void SymbolicPredicate::add_form(const FormConstraint& in) {
  if (is_false()) return;
  FormConstraint* slot = nullptr;
  for (auto& f : forms_) {
    if (f.terms == in.terms) {
      slot = &f;
      break;
    }
  }
  if (!slot) {
    forms_.push_back(FormConstraint{in.terms, -kInf, kInf, false, false, {}});
    slot = &forms_.back();
  }
  FormConstraint& c = *slot;
  if (in.lo > c.lo || (in.lo == c.lo && in.lo_strict)) {
    c.lo = in.lo;
    c.lo_strict = in.lo_strict;
  }
  if (in.hi < c.hi || (in.hi == c.hi && in.hi_strict)) {
    c.hi = in.hi;
    c.hi_strict = in.hi_strict;
  }
  for (double e : in.excluded) {
    if (std::find(c.excluded.begin(), c.excluded.end(), e) == c.excluded.end()) c.excluded.push_back(e);
  }
  // Excluded points at a bound tighten it; points outside the bounds vanish.
  std::vector<double> kept;
  for (double e : c.excluded) {
    if (c.lo != c.hi) {
      if (e == c.lo) {
        c.lo_strict = true;
        continue;
      }
      if (e == c.hi) {
        c.hi_strict = true;
        continue;
      }
    }
    if (e < c.lo || e > c.hi) continue;
    kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end());
  c.excluded = std::move(kept);
  if (c.infeasible()) {
    set_false();
    return;
  }
  if (c.lo == -kInf && c.hi == kInf && c.excluded.empty()) {
    forms_.erase(forms_.begin() + (slot - forms_.data()));
  }
}

void SymbolicPredicate::add_sharp(const ExprPtr& phi) {
  if (is_false()) return;
  for (const auto& s : sharp_)
    if (structurally_equal(*s, *phi)) return;
  sharp_.push_back(phi);
}

void SymbolicPredicate::add_fuzzy(const ExprPtr& f) {
  if (is_false()) return;
  fuzzy_.push_back(f);
}

namespace {

void decompose(SymbolicPredicate& p, const ExprPtr& phi, bool negated) {
  if (p.is_false()) return;
  if (auto* c = phi->as_const()) {
    if ((c->value != 0.0) == negated) p.multiply(0.0);
    return;
  }
  if (auto* v = phi->as_var()) {
    Linear l;
    l.coeffs[v->id] = 1.0;
    p.add_constraint(l, negated ? BinaryOp::Eq : BinaryOp::Ne);
    return;
  }
  if (auto* u = phi->as_unary()) {
    if (u->op == UnaryOp::Not) {
      decompose(p, u->operand, !negated);
      return;
    }
  } else if (auto* b = phi->as_binary()) {
    if (b->op == BinaryOp::And && !negated) {
      decompose(p, b->lhs, false);
      decompose(p, b->rhs, false);
      return;
    }
    if (b->op == BinaryOp::Or && negated) {
      decompose(p, b->lhs, true);
      decompose(p, b->rhs, true);
      return;
    }
    if (is_comparison(b->op)) {
      auto l = linearize(*b->lhs);
      auto r = linearize(*b->rhs);
      if (l && r) {
        p.add_constraint(*l - *r, negated ? negate(b->op) : b->op);
        return;
      }
    }
  }
  p.add_sharp(negated ? make_not(phi) : phi);
}

void factor_into(SymbolicPredicate& p, const ExprPtr& f) {
  if (p.is_false()) return;
  if (auto* c = f->as_const()) {
    p.multiply(c->value);
    return;
  }
  if (auto* u = f->as_unary(); u && u->op == UnaryOp::Indicator) {
    decompose(p, u->operand, false);
    return;
  }
  if (auto* b = f->as_binary(); b && b->op == BinaryOp::Mul) {
    factor_into(p, b->lhs);
    factor_into(p, b->rhs);
    return;
  }
  p.add_fuzzy(f);
}

}  // namespace

SymbolicPredicate SymbolicPredicate::from_formula(const ExprPtr& phi) {
  SymbolicPredicate p;
  decompose(p, simplify(phi), false);
  return p;
}

SymbolicPredicate SymbolicPredicate::from_factor(const ExprPtr& f) {
  SymbolicPredicate p;
  factor_into(p, simplify(f));
  return p;
}

void SymbolicPredicate::conjoin(const SymbolicPredicate& other) {
  if (is_false()) return;
  if (other.is_false()) {
    set_false();
    return;
  }
  multiply(other.scale_);
  for (const auto& f : other.forms_) add_form(f);
  for (const auto& s : other.sharp_) add_sharp(s);
  for (const auto& f : other.fuzzy_) add_fuzzy(f);
}

namespace {

/// Re-adds the bounds of c, expressed over a new linear form.
void add_bounds(SymbolicPredicate& p, const Linear& form, const FormConstraint& c) {
  auto shifted = [&](double v) {
    Linear l = form;
    l.constant -= v;
    return l;
  };
  if (c.is_equality()) {
    p.add_constraint(shifted(c.lo), BinaryOp::Eq);
    return;
  }
  if (c.lo > -kInf) p.add_constraint(shifted(c.lo), c.lo_strict ? BinaryOp::Gt : BinaryOp::Ge);
  if (c.hi < kInf) p.add_constraint(shifted(c.hi), c.hi_strict ? BinaryOp::Lt : BinaryOp::Le);
  for (double e : c.excluded) p.add_constraint(shifted(e), BinaryOp::Ne);
}

}  // namespace

SymbolicPredicate SymbolicPredicate::substitute(VarId x, const ExprPtr& e) const {
  if (is_false()) return zero();
  SymbolicPredicate out;
  out.scale_ = scale_;
  std::optional<Linear> le;
  bool le_done = false;
  for (const auto& c : forms_) {
    if (!c.mentions(x)) {
      out.add_form(c);
      continue;
    }
    if (!le_done) {
      le = linearize(*simplify(e));
      le_done = true;
    }
    if (le) {
      Linear f = c.form();
      double a = f.coeff(x);
      f.coeffs.erase(x);
      Linear repl = *le;
      repl *= a;
      f += repl;
      add_bounds(out, f, c);
    } else {
      decompose(out, simplify(probcf::substitute(c.to_expr(), x, e)), false);
    }
  }
  for (const auto& s : sharp_) {
    ExprPtr t = probcf::mentions(*s, x) ? simplify(probcf::substitute(s, x, e)) : s;
    decompose(out, t, false);
  }
  for (const auto& f : fuzzy_) {
    if (probcf::mentions(*f, x)) {
      factor_into(out, simplify(probcf::substitute(f, x, e)));
    } else {
      out.add_fuzzy(f);
    }
  }
  return out;
}

SymbolicPredicate SymbolicPredicate::fold(const ConstEnv& env) const {
  SymbolicPredicate out = *this;
  for (VarId v = 0; v < env.size(); ++v) {
    if (env[v] && out.mentions(v)) out = out.substitute(v, make_const(*env[v]));
  }
  return out;
}

ExprPtr SymbolicPredicate::sharp_formula() const {
  if (is_false()) return make_bool(false);
  ExprPtr out;
  for (const auto& c : forms_) out = conj(out, c.to_expr());
  for (const auto& s : sharp_) out = conj(out, s);
  return out ? out : make_bool(true);
}

ExprPtr SymbolicPredicate::to_expr() const {
  if (is_false()) return make_const(0.0);
  ExprPtr out;
  if (scale_ != 1.0) out = number(scale_);
  if (!forms_.empty() || !sharp_.empty()) out = times(out, make_indicator(sharp_formula()));
  for (const auto& f : fuzzy_) out = times(out, f);
  return out ? out : number(1.0);
}

double SymbolicPredicate::eval(const MemoryState& sigma) const {
  if (is_false()) return 0.0;
  for (const auto& c : forms_) {
    double v = 0.0;
    for (const auto& [id, k] : c.terms) v += k * sigma.at(id);
    if (v < c.lo || (v == c.lo && c.lo_strict)) return 0.0;
    if (v > c.hi || (v == c.hi && c.hi_strict)) return 0.0;
    if (std::find(c.excluded.begin(), c.excluded.end(), v) != c.excluded.end()) return 0.0;
  }
  for (const auto& s : sharp_)
    if (!eval_bool(*s, sigma)) return 0.0;
  double w = scale_;
  for (const auto& f : fuzzy_) w *= eval_expr(*f, sigma);
  return w;
}

SymbolicPredicate conjoin(const ExprPtr& f, const SymbolicPredicate& g) {
  SymbolicPredicate p = SymbolicPredicate::from_factor(f);
  p.conjoin(g);
  return p;
}

SymbolicPredicate derive_psi(const SymbolicPredicate& f, VarId x, const Distribution* d) {
  if (f.is_false()) return SymbolicPredicate::zero();
  SymbolicPredicate psi;
  struct Bound {
    Linear value;
    bool strict;
  };
  std::vector<Bound> lower, upper;
  for (const auto& c : f.forms()) {
    if (!c.mentions(x)) {
      psi.add_form(c);
      continue;
    }
    double a = c.coeff(x);
    Linear rest = c.form();
    rest.coeffs.erase(x);
    // lo <= a*x + rest <= hi, bounds on x are (bound - rest) / a.
    auto bound_at = [&](double v) {
      Linear l = rest;
      l *= -1.0;
      l.constant += v;
      l *= 1.0 / a;
      return l;
    };
    if (c.lo > -kInf) (a > 0 ? lower : upper).push_back(Bound{bound_at(c.lo), c.lo_strict});
    if (c.hi < kInf) (a > 0 ? upper : lower).push_back(Bound{bound_at(c.hi), c.hi_strict});
  }
  for (const auto& s : f.sharp_atoms()) {
    if (!mentions(*s, x)) psi.add_sharp(s);
  }
  if (d) {
    Interval r = d->support().range;
    if (r.lo > -kInf) lower.push_back(Bound{Linear{{}, r.lo}, false});
    if (r.hi < kInf) upper.push_back(Bound{Linear{{}, r.hi}, false});
  }
  for (const auto& lo : lower) {
    for (const auto& hi : upper) {
      psi.add_constraint(hi.value - lo.value, lo.strict || hi.strict ? BinaryOp::Gt : BinaryOp::Ge);
      if (psi.is_false()) return psi;
    }
  }
  return psi;
}

std::optional<IntervalSet> derive_xi(const SymbolicPredicate& f, VarId x, bool discrete) {
  if (f.is_false()) return IntervalSet{};
  IntervalSet xi = IntervalSet::everything();
  bool captured = false;
  for (const auto& c : f.forms()) {
    if (!c.single_var(x)) continue;
    if (!discrete && c.is_equality()) continue;
    Interval bounds{c.lo, c.hi, c.lo_strict, c.hi_strict};
    IntervalSet piece;
    if (discrete && !c.excluded.empty()) {
      double from = c.lo;
      bool from_open = c.lo_strict;
      for (double e : c.excluded) {
        piece.add(Interval{from, e, from_open, true});
        from = e;
        from_open = true;
      }
      piece.add(Interval{from, c.hi, from_open, c.hi_strict});
    } else {
      piece.add(bounds);
    }
    xi = xi.intersect(piece);
    captured = true;
  }
  if (!captured) return std::nullopt;
  return xi;
}

}  // namespace probcf
