#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "probcf/sample_io.hpp"

namespace probcf {

struct Summary {
  double mean = 0.0;
  double std = 0.0;
  double total_weight = 0.0;
};

/// Weighted mean and standard deviation. Throws std::invalid_argument when
/// the total weight is not positive.
Summary summarize(const std::vector<WeightedSample>& samples);

/// Shared binning: exact categories for discrete domains, otherwise edges
/// whose first and last bins extend to -inf and +inf.
class Binning {
 public:
  static Binning categories(std::vector<double> values);
  static Binning edges(std::vector<double> edges);

  bool categorical() const { return categorical_; }
  std::size_t size() const { return categorical_ ? values_.size() : edges_.size() - 1; }
  std::optional<std::size_t> index(double v) const;
  const std::vector<double>& values() const { return values_; }
  const std::vector<double>& edge_list() const { return edges_; }

 private:
  bool categorical_ = true;
  std::vector<double> values_;
  std::vector<double> edges_;
};

/// Per-bin weight normalised by the total weight; weight falling outside
/// every bin still counts in the total.
std::vector<double> empirical_masses(const std::vector<WeightedSample>& samples, const Binning& b);

/// sum p_i ln(p_i / q_i) over bins with p_i > 0. With smoothing_eps > 0,
/// q_i = 0 is replaced by smoothing_eps; otherwise the result is +inf.
double kl_divergence(const std::vector<double>& p, const std::vector<double>& q, double smoothing_eps);

/// Reference distribution for KL comparisons.
class GroundTruth {
 public:
  static GroundTruth categorical(std::vector<double> values, std::vector<double> probs);
  static GroundTruth continuous(std::function<double(double)> cdf, std::function<double(double)> quantile);
  static GroundTruth reference(std::vector<WeightedSample> samples);

  /// Categories for discrete truths; for continuous truths `bins`
  /// equal-width bins between the 0.1% and 99.9% quantiles.
  Binning binning(std::size_t bins) const;
  std::vector<double> masses(const Binning& b) const;

  bool discrete() const { return kind_ != Kind::Continuous && discrete_values_; }
  std::string name;

 private:
  enum class Kind { Categorical, Continuous, Reference };
  Kind kind_ = Kind::Categorical;
  bool discrete_values_ = true;
  std::vector<double> values_;
  std::vector<double> probs_;
  std::function<double(double)> cdf_;
  std::function<double(double)> quantile_;
  std::vector<WeightedSample> reference_;
};

/// KL(ground truth || samples). Smoothing uses eps = 1 / (2 N) for N samples.
double kl_divergence(const GroundTruth& gt, const std::vector<WeightedSample>& samples, std::size_t bins = 64,
                     bool smoothing = true);

}  // namespace probcf
