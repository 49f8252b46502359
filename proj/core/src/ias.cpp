#include "probcf/ias.hpp"

#include <cmath>

namespace probcf {

double epsilon(std::size_t t, std::size_t k_known) {
  if (t <= 1) return 0.0;
  double td = static_cast<double>(t);
  double e = std::cbrt(static_cast<double>(k_known) * std::log(td) / td);
  return e > 1.0 ? 1.0 : e;
}

std::size_t ArmRegistry::add_arm(std::size_t id) {
  arms_.push_back(ArmState{id, 0.0, 0, 0.0});
  return arms_.size() - 1;
}

double ArmRegistry::current_epsilon() const {
  return epsilon_override_ ? *epsilon_override_ : epsilon(t_, arms_.size());
}

Decision ArmRegistry::decide(Rng& rng) const {
  double limit = std::pow(static_cast<double>(t_), 2.0 / 3.0);
  if (fresh_available() && static_cast<double>(arms_.size()) < limit) return Decision{DecisionKind::Expand, 0};
  return exploit(rng);
}

Decision ArmRegistry::exploit(Rng& rng) const {
  if (arms_.empty()) return Decision{DecisionKind::Idle, 0};
  if (rng.uniform01() < current_epsilon()) return Decision{DecisionKind::Random, rng.below(arms_.size())};
  double total = 0.0;
  for (const auto& a : arms_) total += a.p_hat;
  if (!(total > 0.0)) return Decision{DecisionKind::Proportional, rng.below(arms_.size())};
  double target = rng.uniform01() * total;
  for (std::size_t i = 0; i < arms_.size(); ++i) {
    target -= arms_[i].p_hat;
    if (target < 0.0) return Decision{DecisionKind::Proportional, i};
  }
  // Rounding left a sliver: pick the last arm with positive p_hat.
  for (std::size_t i = arms_.size(); i-- > 0;) {
    if (arms_[i].p_hat > 0.0) return Decision{DecisionKind::Proportional, i};
  }
  return Decision{DecisionKind::Proportional, arms_.size() - 1};
}

void ArmRegistry::update(std::size_t index, double p) {
  ArmState& a = arms_.at(index);
  a.sum += p;
  ++a.pulls;
  a.p_hat = a.sum / static_cast<double>(a.pulls);
  ++t_;
}

std::vector<std::size_t> run_finite(const std::vector<ArmOracle>& arms, std::size_t T, Rng& rng) {
  ArmRegistry reg(false);
  for (std::size_t k = 0; k < arms.size(); ++k) reg.add_arm(k);
  std::vector<std::size_t> seq;
  seq.reserve(T);
  for (std::size_t round = 0; round < T && !arms.empty(); ++round) {
    Decision d = reg.exploit(rng);
    double p = arms[d.arm](rng);
    reg.update(d.arm, p);
    seq.push_back(d.arm);
  }
  return seq;
}

}  // namespace probcf
