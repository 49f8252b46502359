#include "probcf/condprop.hpp"

#include <fmt/format.h>

#include "probcf/errors.hpp"

namespace probcf {

std::vector<ConstEnv> propagate_constants(const StraightLineProgram& s) {
  std::vector<ConstEnv> out;
  out.reserve(s.steps.size() + 1);
  ConstEnv env(s.sigma_init.begin(), s.sigma_init.end());
  out.push_back(env);
  for (const SlpStep& st : s.steps) {
    if (auto* a = st.as_assign()) {
      env[a->var] = try_fold(a->value, &env);
    } else if (auto* smp = st.as_sample()) {
      env[smp->var] = std::nullopt;
    }
    out.push_back(env);
  }
  return out;
}

namespace {

DistPtr constant_distribution(const SlpStep::Sample& smp, const ConstEnv& env, std::vector<std::string>& diags,
                              const VarTable& vars) {
  std::vector<double> params;
  for (const auto& a : smp.args) {
    auto v = try_fold(a, &env);
    if (!v) return nullptr;
    params.push_back(*v);
  }
  try {
    return make_distribution(smp.family, params);
  } catch (const DistributionError& e) {
    diags.push_back(fmt::format("draw of {}: {}", vars[smp.var].name, e.what()));
    return nullptr;
  }
}

/// Forms fully described by the admitted set.
bool captured(const FormConstraint& c, VarId x, bool discrete) {
  if (!c.single_var(x)) return false;
  return discrete || (!c.is_equality() && c.excluded.empty());
}

}  // namespace

PropagationResult cdpg_full(const StraightLineProgram& s) {
  PropagationResult res;
  std::vector<ConstEnv> consts = propagate_constants(s);
  std::vector<SlpStep> rev;
  SymbolicPredicate f = SymbolicPredicate::one();

  for (std::size_t i = s.steps.size(); i-- > 0;) {
    f = f.fold(consts[i + 1]);
    const SlpStep& st = s.steps[i];
    if (auto* a = st.as_assign()) {
      f = f.substitute(a->var, a->value);
      rev.push_back(st);
      continue;
    }
    if (auto* w = st.as_weight()) {
      f = conjoin(w->factor, f);
      continue;
    }
    const auto& smp = *st.as_sample();
    VarId x = smp.var;
    if (f.is_false() || !f.mentions(x)) {
      rev.push_back(st);
      continue;
    }

    DistPtr d = smp.restricted ? smp.restricted->base_ptr() : constant_distribution(smp, consts[i], res.diagnostics, s.vars);
    bool discrete = d && d->discrete();
    std::optional<IntervalSet> xi;
    if (d && !smp.restricted) xi = derive_xi(f, x, discrete);
    SymbolicPredicate psi = derive_psi(f, x, d.get());

    SymbolicPredicate residual;
    for (const auto& c : f.forms()) {
      if (!c.mentions(x)) continue;
      if (xi && captured(c, x, discrete)) continue;
      if (!discrete && c.single_var(x) && c.is_equality())
        res.diagnostics.push_back(fmt::format("equality on continuous {} kept as a runtime observation",
                                              s.vars[x].name));
      residual.add_form(c);
    }
    for (const auto& a : f.sharp_atoms()) {
      if (mentions(*a, x)) residual.add_sharp(a);
    }
    for (const auto& g : f.fuzzy_factors()) residual.add_fuzzy(g);

    SlpStep::Sample out = smp;
    double mass = 1.0;
    if (xi) {
      auto r = std::make_shared<const RestrictedDist>(d, *xi);
      mass = r->mass();
      out.restricted = std::move(r);
    }
    if (!residual.is_one()) rev.push_back(SlpStep{SlpStep::Weight{residual.to_expr(), WeightOrigin::Propagated}});
    if (xi) rev.push_back(SlpStep{SlpStep::Weight{make_const(mass), WeightOrigin::Restriction}});
    rev.push_back(SlpStep{std::move(out)});

    psi.multiply(f.scale());
    if (xi && mass == 0.0) psi.multiply(0.0);
    f = std::move(psi);
  }

  f = f.fold(consts[0]);
  if (!f.is_one()) rev.push_back(SlpStep{SlpStep::Weight{f.to_expr(), WeightOrigin::Propagated}});

  res.program.vars = s.vars;
  res.program.sigma_init = s.sigma_init;
  res.program.ret = s.ret;
  res.program.steps.assign(rev.rbegin(), rev.rend());
  res.continuation = std::move(f);
  return res;
}

StraightLineProgram cdpg(const StraightLineProgram& s) { return cdpg_full(s).program; }

bool is_blacklisted(const StraightLineProgram& s) {
  for (const SlpStep& st : s.steps) {
    if (auto* w = st.as_weight()) {
      auto v = try_fold(w->factor);
      if (v && *v == 0.0) return true;
    } else if (auto* smp = st.as_sample()) {
      if (smp->restricted && smp->restricted->mass() == 0.0) return true;
    }
  }
  return false;
}

}  // namespace probcf
