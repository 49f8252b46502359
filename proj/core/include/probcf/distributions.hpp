#pragma once

#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "probcf/rng.hpp"

namespace probcf {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// One closed-or-open interval of the real line. For discrete families only
/// the integers inside it count.
struct Interval {
  double lo = -kInf;
  double hi = kInf;
  bool lo_open = false;
  bool hi_open = false;

  bool contains(double x) const;
  bool empty() const;
};

struct SupportInterval {
  Interval range;
  bool discrete = false;
};

/// Finite union of intervals, kept sorted and disjoint.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(Interval i);
  static IntervalSet everything();

  void add(Interval i);
  IntervalSet intersect(const IntervalSet& other) const;
  IntervalSet intersect(const Interval& i) const;
  bool contains(double x) const;
  bool empty() const { return parts_.empty(); }
  const std::vector<Interval>& parts() const { return parts_; }
  std::string to_string() const;

 private:
  std::vector<Interval> parts_;
};

class Distribution {
 public:
  virtual ~Distribution() = default;

  virtual std::string_view family() const = 0;
  virtual std::vector<double> params() const = 0;
  virtual SupportInterval support() const = 0;
  bool discrete() const { return support().discrete; }

  virtual double density(double x) const = 0;
  /// P(X <= x)
  virtual double cdf(double x) const = 0;
  /// P(X > x), accurate in the upper tail.
  virtual double survival(double x) const { return 1.0 - cdf(x); }
  /// Smallest x with cdf(x) >= u. Throws DistributionError for u outside [0,1].
  virtual double quantile(double u) const = 0;
  /// x with survival(x) = q; used for upper-tail draws.
  virtual double quantile_complement(double q) const { return quantile(1.0 - q); }

  /// Measure of an interval. Continuous families treat endpoints as closed;
  /// discrete families honour openness.
  virtual double interval_mass(const Interval& i) const;
  double mass(const IntervalSet& s) const;

  virtual double sample(Rng& rng) const;

  std::string describe() const;
};

using DistPtr = std::shared_ptr<const Distribution>;

struct FamilySpec {
  std::string name;
  std::size_t arity = 0;
  bool discrete = false;
  bool boolean_valued = false;  // may initialise a bool variable
  std::function<DistPtr(const std::vector<double>&)> make;
};

/// Name to constructor table. Lookup is case-insensitive and honours aliases.
class FamilyRegistry {
 public:
  static FamilyRegistry& global();

  void add(FamilySpec spec, const std::vector<std::string>& aliases = {});
  const FamilySpec* find(std::string_view name) const;
  std::vector<std::string> names() const;

 private:
  FamilyRegistry();
  std::vector<FamilySpec> specs_;
  std::vector<std::pair<std::string, std::size_t>> index_;
};

/// Throws DistributionError on an unknown family, wrong arity or illegal
/// parameters.
DistPtr make_distribution(std::string_view family, const std::vector<double>& params);

/// A distribution conditioned on an admitted set, sampled by inverse transform
/// over the admitted pieces.
class RestrictedDist {
 public:
  RestrictedDist(DistPtr base, IntervalSet admitted);

  const Distribution& base() const { return *base_; }
  const DistPtr& base_ptr() const { return base_; }
  const IntervalSet& admitted() const { return admitted_; }
  double mass() const { return mass_; }

  /// Throws InfeasibleRestriction when the admitted mass is zero.
  double sample(Rng& rng) const;

 private:
  double sample_piece(const Interval& piece, double piece_mass, Rng& rng) const;

  DistPtr base_;
  IntervalSet admitted_;
  std::vector<double> piece_mass_;
  double mass_ = 0.0;
};

RestrictedDist restrict(DistPtr d, const IntervalSet& xi);

}  // namespace probcf
