#include "probcf/distributions.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <fmt/format.h>

#include "probcf/errors.hpp"

namespace probcf {

namespace bm = boost::math;

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && lo_open) return false;
  if (x == hi && hi_open) return false;
  return true;
}

bool Interval::empty() const {
  if (std::isnan(lo) || std::isnan(hi)) return true;
  if (lo > hi) return true;
  return lo == hi && (lo_open || hi_open);
}

IntervalSet::IntervalSet(Interval i) { add(i); }

IntervalSet IntervalSet::everything() { return IntervalSet(Interval{}); }

void IntervalSet::add(Interval i) {
  if (i.empty()) return;
  parts_.push_back(i);
  std::sort(parts_.begin(), parts_.end(), [](const Interval& a, const Interval& b) {
    if (a.lo != b.lo) return a.lo < b.lo;
    return !a.lo_open && b.lo_open;
  });
  std::vector<Interval> merged;
  for (const Interval& p : parts_) {
    if (!merged.empty()) {
      Interval& last = merged.back();
      bool touches = p.lo < last.hi || (p.lo == last.hi && !(p.lo_open && last.hi_open));
      if (touches) {
        if (p.hi > last.hi || (p.hi == last.hi && !p.hi_open)) {
          last.hi = p.hi;
          last.hi_open = p.hi_open;
        }
        continue;
      }
    }
    merged.push_back(p);
  }
  parts_ = std::move(merged);
}

IntervalSet IntervalSet::intersect(const Interval& i) const {
  IntervalSet out;
  for (const Interval& p : parts_) {
    Interval r;
    if (p.lo > i.lo) {
      r.lo = p.lo;
      r.lo_open = p.lo_open;
    } else if (p.lo < i.lo) {
      r.lo = i.lo;
      r.lo_open = i.lo_open;
    } else {
      r.lo = p.lo;
      r.lo_open = p.lo_open || i.lo_open;
    }
    if (p.hi < i.hi) {
      r.hi = p.hi;
      r.hi_open = p.hi_open;
    } else if (p.hi > i.hi) {
      r.hi = i.hi;
      r.hi_open = i.hi_open;
    } else {
      r.hi = p.hi;
      r.hi_open = p.hi_open || i.hi_open;
    }
    out.add(r);
  }
  return out;
}

IntervalSet IntervalSet::intersect(const IntervalSet& other) const {
  IntervalSet out;
  for (const Interval& i : other.parts_) {
    for (const Interval& p : intersect(i).parts_) out.add(p);
  }
  return out;
}

bool IntervalSet::contains(double x) const {
  return std::any_of(parts_.begin(), parts_.end(), [x](const Interval& p) { return p.contains(x); });
}

std::string IntervalSet::to_string() const {
  if (parts_.empty()) return "{}";
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& p = parts_[i];
    if (i) out += " u ";
    out += fmt::format("{}{}, {}{}", p.lo_open ? '(' : '[', p.lo, p.hi, p.hi_open ? ')' : ']');
  }
  return out;
}

namespace {

[[noreturn]] void bad_param(std::string_view family, const std::string& what) {
  throw DistributionError(fmt::format("{}: {}", family, what));
}

void check_u(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw DistributionError(fmt::format("probability {} outside [0,1]", u));
}

/// Integer range [kmin, kmax] covered by an interval.
std::pair<double, double> integer_range(const Interval& i) {
  double kmin = i.lo_open ? std::floor(i.lo) + 1.0 : std::ceil(i.lo);
  double kmax = i.hi_open ? std::ceil(i.hi) - 1.0 : std::floor(i.hi);
  return {kmin, kmax};
}

class Uniform final : public Distribution {
 public:
  Uniform(double lo, double hi) : lo_(lo), hi_(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) bad_param("uniform", "requires lo < hi");
  }
  std::string_view family() const override { return "uniform"; }
  std::vector<double> params() const override { return {lo_, hi_}; }
  SupportInterval support() const override { return {Interval{lo_, hi_, false, false}, false}; }
  double density(double x) const override { return x >= lo_ && x <= hi_ ? 1.0 / (hi_ - lo_) : 0.0; }
  double cdf(double x) const override {
    if (x <= lo_) return 0.0;
    if (x >= hi_) return 1.0;
    return (x - lo_) / (hi_ - lo_);
  }
  double survival(double x) const override {
    if (x <= lo_) return 1.0;
    if (x >= hi_) return 0.0;
    return (hi_ - x) / (hi_ - lo_);
  }
  double quantile(double u) const override {
    check_u(u);
    return lo_ + u * (hi_ - lo_);
  }
  double quantile_complement(double q) const override {
    check_u(q);
    return hi_ - q * (hi_ - lo_);
  }
  double interval_mass(const Interval& i) const override {
    double a = std::max(i.lo, lo_);
    double b = std::min(i.hi, hi_);
    if (!(a < b)) return 0.0;
    return (b - a) / (hi_ - lo_);
  }

 private:
  double lo_, hi_;
};

/// Continuous family backed by a Boost.Math distribution object.
template <class BoostDist>
class BoostContinuous : public Distribution {
 public:
  BoostContinuous(std::string name, std::vector<double> params, BoostDist dist, Interval range)
      : name_(std::move(name)), params_(std::move(params)), dist_(dist), range_(range) {}

  std::string_view family() const override { return name_; }
  std::vector<double> params() const override { return params_; }
  SupportInterval support() const override { return {range_, false}; }

  double density(double x) const override {
    if (!range_.contains(x) && !(x == range_.hi && std::isfinite(x))) return 0.0;
    if (!std::isfinite(x)) return 0.0;
    return bm::pdf(dist_, x);
  }
  double cdf(double x) const override {
    if (x <= range_.lo) return 0.0;
    if (x >= range_.hi) return 1.0;
    return bm::cdf(dist_, x);
  }
  double survival(double x) const override {
    if (x <= range_.lo) return 1.0;
    if (x >= range_.hi) return 0.0;
    return bm::cdf(bm::complement(dist_, x));
  }
  double quantile(double u) const override {
    check_u(u);
    if (u == 0.0) return range_.lo;
    if (u == 1.0) return range_.hi;
    return bm::quantile(dist_, u);
  }
  double quantile_complement(double q) const override {
    check_u(q);
    if (q == 0.0) return range_.hi;
    if (q == 1.0) return range_.lo;
    return bm::quantile(bm::complement(dist_, q));
  }

 private:
  std::string name_;
  std::vector<double> params_;
  BoostDist dist_;
  Interval range_;
};

class Bernoulli final : public Distribution {
 public:
  explicit Bernoulli(double p) : p_(p) {
    if (!(p >= 0.0 && p <= 1.0)) bad_param("bernoulli", "requires p in [0,1]");
  }
  std::string_view family() const override { return "bernoulli"; }
  std::vector<double> params() const override { return {p_}; }
  SupportInterval support() const override { return {Interval{0.0, 1.0, false, false}, true}; }
  double density(double x) const override {
    if (x == 1.0) return p_;
    if (x == 0.0) return 1.0 - p_;
    return 0.0;
  }
  double cdf(double x) const override {
    if (x < 0.0) return 0.0;
    if (x < 1.0) return 1.0 - p_;
    return 1.0;
  }
  double survival(double x) const override {
    if (x < 0.0) return 1.0;
    if (x < 1.0) return p_;
    return 0.0;
  }
  double quantile(double u) const override {
    check_u(u);
    return u <= 1.0 - p_ ? 0.0 : 1.0;
  }
  double sample(Rng& rng) const override { return rng.uniform01() < p_ ? 1.0 : 0.0; }

 private:
  double p_;
};

class Poisson final : public Distribution {
 public:
  explicit Poisson(double rate) : rate_(rate), dist_(rate > 0 && std::isfinite(rate) ? rate : 1.0) {
    if (!(rate > 0.0) || !std::isfinite(rate)) bad_param("poisson", "requires rate > 0");
  }
  std::string_view family() const override { return "poisson"; }
  std::vector<double> params() const override { return {rate_}; }
  SupportInterval support() const override { return {Interval{0.0, kInf, false, false}, true}; }
  double density(double x) const override {
    if (x < 0.0 || x != std::floor(x) || !std::isfinite(x)) return 0.0;
    return bm::pdf(dist_, x);
  }
  double cdf(double x) const override {
    if (x < 0.0) return 0.0;
    if (!std::isfinite(x)) return 1.0;
    return bm::cdf(dist_, std::floor(x));
  }
  double survival(double x) const override {
    if (x < 0.0) return 1.0;
    if (!std::isfinite(x)) return 0.0;
    return bm::cdf(bm::complement(dist_, std::floor(x)));
  }
  double quantile(double u) const override {
    check_u(u);
    if (u == 1.0) return kInf;
    // Linear scan over the cumulative pmf.
    double k = 0.0;
    double pmf = std::exp(-rate_);
    double acc = pmf;
    while (acc < u) {
      k += 1.0;
      pmf *= rate_ / k;
      if (pmf == 0.0) break;
      acc += pmf;
    }
    return k;
  }
  double quantile_complement(double q) const override {
    check_u(q);
    if (q == 0.0) return kInf;
    double k = 0.0;
    while (survival(k) >= q) k += 1.0;
    return k;
  }

 private:
  double rate_;
  bm::poisson_distribution<double> dist_;
};

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

DistPtr make_normal(const std::vector<double>& p) {
  if (!std::isfinite(p[0]) || !(p[1] > 0.0) || !std::isfinite(p[1])) bad_param("normal", "requires sigma > 0");
  return std::make_shared<BoostContinuous<bm::normal_distribution<double>>>(
      "normal", p, bm::normal_distribution<double>(p[0], p[1]), Interval{-kInf, kInf, true, true});
}

DistPtr make_beta(const std::vector<double>& p) {
  if (!(p[0] > 0.0) || !(p[1] > 0.0) || !std::isfinite(p[0]) || !std::isfinite(p[1]))
    bad_param("beta", "requires a > 0 and b > 0");
  // Half-open support [0,1).
  return std::make_shared<BoostContinuous<bm::beta_distribution<double>>>(
      "beta", p, bm::beta_distribution<double>(p[0], p[1]), Interval{0.0, 1.0, false, true});
}

DistPtr make_gamma(const std::vector<double>& p) {
  if (!(p[0] > 0.0) || !(p[1] > 0.0) || !std::isfinite(p[0]) || !std::isfinite(p[1]))
    bad_param("gamma", "requires shape > 0 and rate > 0");
  return std::make_shared<BoostContinuous<bm::gamma_distribution<double>>>(
      "gamma", p, bm::gamma_distribution<double>(p[0], 1.0 / p[1]), Interval{0.0, kInf, false, true});
}

}  // namespace

double Distribution::interval_mass(const Interval& i) const {
  SupportInterval s = support();
  if (s.discrete) {
    auto [kmin, kmax] = integer_range(i);
    kmin = std::max(kmin, s.range.lo);
    kmax = std::min(kmax, s.range.hi);
    if (kmin > kmax) return 0.0;
    double below = cdf(kmin - 1.0);
    if (below > 0.5 || !std::isfinite(kmax)) {
      double m = survival(kmin - 1.0) - (std::isfinite(kmax) ? survival(kmax) : 0.0);
      return std::max(m, 0.0);
    }
    return std::max(cdf(kmax) - below, 0.0);
  }
  double a = std::max(i.lo, s.range.lo);
  double b = std::min(i.hi, s.range.hi);
  if (!(a < b)) return 0.0;
  double ca = cdf(a);
  if (ca > 0.5) return std::max(survival(a) - survival(b), 0.0);
  return std::max(cdf(b) - ca, 0.0);
}

double Distribution::mass(const IntervalSet& s) const {
  double total = 0.0;
  for (const Interval& p : s.parts()) total += interval_mass(p);
  return total;
}

double Distribution::sample(Rng& rng) const {
  double u = rng.uniform01();
  if (!discrete() && u > 0.5) return quantile_complement(1.0 - u);
  return quantile(u);
}

std::string Distribution::describe() const {
  return fmt::format("{}({})", family(), fmt::join(params(), ", "));
}

FamilyRegistry::FamilyRegistry() {
  add({"uniform", 2, false, false, [](const std::vector<double>& p) -> DistPtr {
         return std::make_shared<Uniform>(p[0], p[1]);
       }},
      {"unif"});
  add({"normal", 2, false, false, make_normal}, {"gaussian"});
  add({"bernoulli", 1, true, true, [](const std::vector<double>& p) -> DistPtr {
         return std::make_shared<Bernoulli>(p[0]);
       }},
      {"flip"});
  add({"poisson", 1, true, false, [](const std::vector<double>& p) -> DistPtr {
         return std::make_shared<Poisson>(p[0]);
       }});
  add({"beta", 2, false, false, make_beta});
  add({"gamma", 2, false, false, make_gamma});
}

FamilyRegistry& FamilyRegistry::global() {
  static FamilyRegistry registry;
  return registry;
}

void FamilyRegistry::add(FamilySpec spec, const std::vector<std::string>& aliases) {
  std::size_t slot = specs_.size();
  index_.emplace_back(lower(spec.name), slot);
  for (const std::string& a : aliases) index_.emplace_back(lower(a), slot);
  specs_.push_back(std::move(spec));
}

const FamilySpec* FamilyRegistry::find(std::string_view name) const {
  std::string key = lower(name);
  // Later registrations shadow earlier ones.
  for (auto it = index_.rbegin(); it != index_.rend(); ++it) {
    if (it->first == key) return &specs_[it->second];
  }
  return nullptr;
}

std::vector<std::string> FamilyRegistry::names() const {
  std::vector<std::string> out;
  for (const FamilySpec& s : specs_) out.push_back(s.name);
  return out;
}

DistPtr make_distribution(std::string_view family, const std::vector<double>& params) {
  const FamilySpec* spec = FamilyRegistry::global().find(family);
  if (!spec) throw DistributionError(fmt::format("unknown distribution family '{}'", family));
  if (params.size() != spec->arity)
    throw DistributionError(
        fmt::format("{} expects {} parameters, got {}", spec->name, spec->arity, params.size()));
  for (double p : params) {
    if (std::isnan(p)) throw DistributionError(fmt::format("{}: NaN parameter", spec->name));
  }
  return spec->make(params);
}

RestrictedDist::RestrictedDist(DistPtr base, IntervalSet admitted) : base_(std::move(base)) {
  admitted_ = admitted.intersect(base_->support().range);
  for (const Interval& p : admitted_.parts()) {
    double m = base_->interval_mass(p);
    piece_mass_.push_back(m);
    mass_ += m;
  }
}

double RestrictedDist::sample(Rng& rng) const {
  if (!(mass_ > 0.0))
    throw InfeasibleRestriction(
        fmt::format("{} restricted to {} has zero mass", base_->describe(), admitted_.to_string()));
  double target = rng.uniform01() * mass_;
  std::size_t idx = 0;
  for (; idx + 1 < piece_mass_.size(); ++idx) {
    if (target < piece_mass_[idx]) break;
    target -= piece_mass_[idx];
  }
  while (piece_mass_[idx] <= 0.0 && idx > 0) --idx;
  return sample_piece(admitted_.parts()[idx], piece_mass_[idx], rng);
}

double RestrictedDist::sample_piece(const Interval& piece, double piece_mass, Rng& rng) const {
  const Distribution& d = *base_;
  if (d.discrete()) {
    auto [kmin, kmax] = integer_range(piece);
    double target = rng.uniform01() * piece_mass;
    double k = kmin;
    double acc = d.density(k);
    while (acc < target && k < kmax) {
      k += 1.0;
      double pmf = d.density(k);
      if (pmf == 0.0 && k > d.quantile(0.5)) break;
      acc += pmf;
    }
    return k;
  }
  for (int attempt = 0; attempt < 64; ++attempt) {
    double v = rng.uniform01();
    double x;
    double ca = d.cdf(piece.lo);
    if (ca > 0.5) {
      double sa = d.survival(piece.lo);
      double sb = d.survival(piece.hi);
      x = d.quantile_complement(std::clamp(sb + v * (sa - sb), 0.0, 1.0));
    } else {
      double cb = d.cdf(piece.hi);
      x = d.quantile(std::clamp(ca + v * (cb - ca), 0.0, 1.0));
    }
    x = std::clamp(x, piece.lo, piece.hi);
    if (piece.contains(x)) return x;
  }
  // Rounding kept landing on an excluded endpoint.
  double lo = piece.lo_open ? std::nextafter(piece.lo, piece.hi) : piece.lo;
  double hi = piece.hi_open ? std::nextafter(piece.hi, piece.lo) : piece.hi;
  return std::isfinite(lo) ? lo : hi;
}

RestrictedDist restrict(DistPtr d, const IntervalSet& xi) { return RestrictedDist(std::move(d), xi); }

}  // namespace probcf
