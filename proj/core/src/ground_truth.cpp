#include "probcf/ground_truth.hpp"

#include <boost/math/distributions/gamma.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/poisson.hpp>
#include <boost/math/tools/roots.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

#include "probcf/baselines.hpp"
#include "probcf/programs.hpp"

namespace probcf {

namespace {

constexpr double kTail = 1e-15;

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

double arg(const ProgramSpec& ps, std::size_t i) {
  if (i < ps.args.size()) return ps.args[i];
  for (const auto& b : builtin_programs()) {
    if (lower(b.name) == lower(ps.name)) return b.defaults.at(i);
  }
  throw std::invalid_argument("missing argument for " + ps.name);
}

GroundTruth coin() { return GroundTruth::categorical({0.0, 1.0}, {0.5, 0.5}); }

GroundTruth unif_cd(double t0) {
  double hi = std::ldexp(1.0, -static_cast<int>(std::max(t0, 1.0) - 1.0));
  return GroundTruth::continuous([hi](double x) { return std::clamp(x / hi, 0.0, 1.0); },
                                 [hi](double u) { return u * hi; });
}

GroundTruth geom_it(double r, double x0) {
  std::vector<double> v, p;
  double k0 = std::max(0.0, std::ceil(x0));
  double mass = std::pow(r, k0) * (1.0 - r);
  for (double k = k0; mass > kTail * (1.0 - r) || k == k0; ++k) {
    v.push_back(k);
    p.push_back(mass);
    mass *= r;
    if (r == 0.0) break;
  }
  return GroundTruth::categorical(std::move(v), std::move(p));
}

GroundTruth pois_cd(double lambda, double x0) {
  boost::math::poisson_distribution<> d(lambda);
  std::vector<double> v, p;
  double k0 = std::max(0.0, std::ceil(x0));
  double tail = k0 > 0 ? boost::math::cdf(boost::math::complement(d, k0 - 1)) : 1.0;
  if (!(tail > 0.0)) throw std::domain_error("poisCd: conditioning event has zero probability");
  double covered = 0.0;
  for (double k = k0; covered < tail * (1.0 - kTail) && k < k0 + 100000; ++k) {
    double m = boost::math::pdf(d, k);
    v.push_back(k);
    p.push_back(m);
    covered += m;
  }
  return GroundTruth::categorical(std::move(v), std::move(p));
}

GroundTruth mixed(double thr) {
  boost::math::normal_distribution<> x(0, 1), hi(10, 2);
  boost::math::gamma_distribution<> lo(3, 1.0 / 3.0);
  double w_hi = boost::math::cdf(boost::math::complement(x, thr));
  auto cdf = [=](double y) {
    double g = y > 0.0 ? boost::math::cdf(lo, y) : 0.0;
    return w_hi * boost::math::cdf(hi, y) + (1.0 - w_hi) * g;
  };
  auto quantile = [=](double u) {
    auto f = [&](double y) { return cdf(y) - u; };
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    auto r = boost::math::tools::bisect(f, -40.0, 60.0, tol, it);
    return 0.5 * (r.first + r.second);
  };
  return GroundTruth::continuous(cdf, quantile);
}

}  // namespace

bool has_closed_form(std::string_view spec) {
  if (!is_builtin(spec)) return false;
  std::string n = lower(parse_program_spec(spec).name);
  return n == "coin" || n == "unifcd" || n == "geomit" || n == "poiscd" || n == "mixed";
}

GroundTruth ground_truth(std::string_view spec, const ReferenceOptions& opt) {
  std::string s(spec);
  GroundTruth gt;
  if (s.size() > 4 && lower(s.substr(s.size() - 4)) == ".csv") {
    gt = GroundTruth::reference(read_samples_csv(s));
  } else {
    ProgramSpec ps = parse_program_spec(s);
    std::string n = lower(ps.name);
    if (n == "coin") {
      gt = coin();
    } else if (n == "unifcd") {
      gt = unif_cd(arg(ps, 0));
    } else if (n == "geomit") {
      gt = geom_it(arg(ps, 0), arg(ps, 1));
    } else if (n == "poiscd") {
      gt = pois_cd(arg(ps, 0), arg(ps, 1));
    } else if (n == "mixed") {
      gt = mixed(arg(ps, 0));
    } else {
      Pcfg g = load_program(s);
      Rng rng(opt.seed);
      RejectionResult r = rejection_reference(g, opt.accepted, opt.max_attempts, rng, opt.step_cap);
      if (r.samples.empty()) throw std::runtime_error("rejection oracle accepted no samples for " + s);
      gt = GroundTruth::reference(std::move(r.samples));
    }
  }
  gt.name = s;
  return gt;
}

}  // namespace probcf
