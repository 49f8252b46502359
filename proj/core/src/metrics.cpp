#include "probcf/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace probcf {

Summary summarize(const std::vector<WeightedSample>& samples) {
  Summary s;
  double wx = 0.0;
  for (const auto& x : samples) {
    s.total_weight += x.weight;
    wx += x.weight * x.value;
  }
  if (!(s.total_weight > 0.0)) throw std::invalid_argument("summarize: total weight is zero");
  s.mean = wx / s.total_weight;
  double m2 = 0.0;
  for (const auto& x : samples) {
    if (x.weight == 0.0) continue;
    double d = x.value - s.mean;
    m2 += x.weight * d * d;
  }
  s.std = std::sqrt(m2 / s.total_weight);
  return s;
}

Binning Binning::categories(std::vector<double> values) {
  Binning b;
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  b.values_ = std::move(values);
  return b;
}

Binning Binning::edges(std::vector<double> edges) {
  if (edges.size() < 2) throw std::invalid_argument("Binning: need at least two edges");
  Binning b;
  b.categorical_ = false;
  edges.front() = -std::numeric_limits<double>::infinity();
  edges.back() = std::numeric_limits<double>::infinity();
  b.edges_ = std::move(edges);
  return b;
}

std::optional<std::size_t> Binning::index(double v) const {
  if (std::isnan(v)) return std::nullopt;
  if (categorical_) {
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return std::nullopt;
    return static_cast<std::size_t>(it - values_.begin());
  }
  // Bins are (e_i, e_{i+1}].
  auto it = std::lower_bound(edges_.begin() + 1, edges_.end(), v);
  if (it == edges_.end()) return edges_.size() - 2;
  return static_cast<std::size_t>(it - edges_.begin()) - 1;
}

std::vector<double> empirical_masses(const std::vector<WeightedSample>& samples, const Binning& b) {
  std::vector<double> m(b.size(), 0.0);
  double total = 0.0;
  for (const auto& s : samples) {
    total += s.weight;
    if (auto i = b.index(s.value)) m[*i] += s.weight;
  }
  if (!(total > 0.0)) throw std::invalid_argument("empirical_masses: total weight is zero");
  for (double& x : m) x /= total;
  return m;
}

double kl_divergence(const std::vector<double>& p, const std::vector<double>& q, double smoothing_eps) {
  if (p.size() != q.size()) throw std::invalid_argument("kl_divergence: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    double qi = q[i];
    if (qi <= 0.0) {
      if (smoothing_eps <= 0.0) return std::numeric_limits<double>::infinity();
      qi = smoothing_eps;
    }
    kl += p[i] * std::log(p[i] / qi);
  }
  return std::max(kl, 0.0);
}

GroundTruth GroundTruth::categorical(std::vector<double> values, std::vector<double> probs) {
  if (values.size() != probs.size()) throw std::invalid_argument("GroundTruth: size mismatch");
  GroundTruth g;
  g.kind_ = Kind::Categorical;
  double total = std::accumulate(probs.begin(), probs.end(), 0.0);
  for (double& p : probs) p /= total;
  g.values_ = std::move(values);
  g.probs_ = std::move(probs);
  return g;
}

GroundTruth GroundTruth::continuous(std::function<double(double)> cdf, std::function<double(double)> quantile) {
  GroundTruth g;
  g.kind_ = Kind::Continuous;
  g.discrete_values_ = false;
  g.cdf_ = std::move(cdf);
  g.quantile_ = std::move(quantile);
  return g;
}

GroundTruth GroundTruth::reference(std::vector<WeightedSample> samples) {
  GroundTruth g;
  g.kind_ = Kind::Reference;
  samples.erase(std::remove_if(samples.begin(), samples.end(), [](const auto& s) { return !(s.weight > 0.0); }),
                samples.end());
  if (samples.empty()) throw std::invalid_argument("GroundTruth: empty reference sample");
  g.discrete_values_ = std::all_of(samples.begin(), samples.end(), [](const auto& s) {
    return std::isfinite(s.value) && s.value == std::floor(s.value);
  });
  std::sort(samples.begin(), samples.end(), [](const auto& a, const auto& b) { return a.value < b.value; });
  g.reference_ = std::move(samples);
  return g;
}

namespace {

std::vector<double> equal_width_edges(double lo, double hi, std::size_t bins) {
  if (!(hi > lo)) hi = lo + 1.0;
  std::vector<double> e(bins + 1);
  for (std::size_t i = 0; i <= bins; ++i) e[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(bins);
  return e;
}

}  // namespace

Binning GroundTruth::binning(std::size_t bins) const {
  bins = std::max<std::size_t>(bins, 1);
  switch (kind_) {
    case Kind::Categorical:
      return Binning::categories(values_);
    case Kind::Continuous:
      return Binning::edges(equal_width_edges(quantile_(0.001), quantile_(0.999), bins));
    case Kind::Reference: {
      if (discrete_values_) {
        std::vector<double> v;
        for (const auto& s : reference_) v.push_back(s.value);
        return Binning::categories(std::move(v));
      }
      double total = 0.0;
      for (const auto& s : reference_) total += s.weight;
      auto weighted_quantile = [&](double u) {
        double acc = 0.0;
        for (const auto& s : reference_) {
          acc += s.weight;
          if (acc >= u * total) return s.value;
        }
        return reference_.back().value;
      };
      return Binning::edges(equal_width_edges(weighted_quantile(0.001), weighted_quantile(0.999), bins));
    }
  }
  return Binning::categories({});
}

std::vector<double> GroundTruth::masses(const Binning& b) const {
  std::vector<double> m(b.size(), 0.0);
  switch (kind_) {
    case Kind::Categorical:
      for (std::size_t i = 0; i < values_.size(); ++i) {
        if (auto k = b.index(values_[i])) m[*k] += probs_[i];
      }
      return m;
    case Kind::Continuous: {
      const auto& e = b.edge_list();
      for (std::size_t i = 0; i + 1 < e.size(); ++i) {
        double lo = std::isinf(e[i]) ? 0.0 : cdf_(e[i]);
        double hi = std::isinf(e[i + 1]) ? 1.0 : cdf_(e[i + 1]);
        m[i] = std::max(hi - lo, 0.0);
      }
      return m;
    }
    case Kind::Reference:
      return empirical_masses(reference_, b);
  }
  return m;
}

double kl_divergence(const GroundTruth& gt, const std::vector<WeightedSample>& samples, std::size_t bins,
                     bool smoothing) {
  if (samples.empty()) throw std::invalid_argument("kl_divergence: no samples");
  Binning b = gt.binning(bins);
  std::vector<double> p = gt.masses(b);
  std::vector<double> q = empirical_masses(samples, b);
  double eps = smoothing ? 1.0 / (2.0 * static_cast<double>(samples.size())) : 0.0;
  return kl_divergence(p, q, eps);
}

}  // namespace probcf
