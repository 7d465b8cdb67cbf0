#include "zonoshape/gibbs.hpp"

#include <cmath>
#include <map>

#include <boost/math/special_functions/gamma.hpp>

#include "zonoshape/cap.hpp"
#include "zonoshape/count.hpp"
#include "zonoshape/latt.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

namespace zonoshape {

namespace {

// Geometric multiplicity with failure probability q: P[omega >= i] = q^i.
inline std::int64_t draw_geometric(SplitMix64& rng, double q, double log_q) {
  const double u = rng.uniform_open0();
  if (u > q) return 0;
  return static_cast<std::int64_t>(std::floor(std::log(u) / log_q));
}

}  // namespace

GibbsModel make_gibbs_model(const PolyhedralCone& cone, const IntVec& k, std::int64_t n,
                            double t_max, double beta_override) {
  require(n >= 1, ErrorKind::InvalidArgument, "gibbs: n must be >= 1");
  require(t_max > 0, ErrorKind::InvalidArgument, "gibbs: t_max must be positive");
  const int d = cone.dimension();
  GibbsModel m{cone, k, n};
  m.t_max = t_max;
  m.zeta_d = zeta(d);
  m.zeta_d1 = zeta(d + 1);
  m.beta = beta_override > 0
               ? beta_override
               : std::pow(m.zeta_d1 / (m.zeta_d * static_cast<double>(n)), 1.0 / (d + 1));
  m.sigma = std::pow(static_cast<double>(n), (d + 2.0) / (2.0 * d + 2.0));
  const CapSolution cap = solve_cap(cone, RatVec(k.begin(), k.end()));
  m.u = cap.u_laplace;
  m.lambda_u = laplace(cone, m.u).value;

  TruncatedConeQuery q{&m.cone, m.u, t_max / m.beta, true};
  for_each_point(q, [&](const IntVec& x) {
    const double e = m.beta * dot(m.u, x);
    m.keys.push_back(x);
    m.weight.push_back(std::exp(-e));
    m.log_weight.push_back(-e);
  });

  // Dropped mass: E[omega] <= 2 e^{-beta u.x} once that is below 1/2, and the
  // primitive lattice sum beyond the cut behaves like its integral.
  double width = 0.0;
  for (double c : m.u) width += std::abs(c);
  m.tail_bound = 2.0 * m.lambda_u * std::pow(m.beta, -d) / m.zeta_d *
                 boost::math::gamma_q(static_cast<double>(d), t_max) *
                 std::exp(m.beta * width);
  require(m.tail_bound < kTailTolerance, ErrorKind::InvalidArgument,
          "gibbs: truncation tail exceeds tolerance; increase t_max");
  return m;
}

GeneratorMultiset sample(const GibbsModel& model, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GeneratorMultiset w;
  for (std::size_t i = 0; i < model.keys.size(); ++i) {
    const auto m = draw_geometric(rng, model.weight[i], model.log_weight[i]);
    if (m > 0) w.entries.emplace_hint(w.entries.end(), model.keys[i], m);
  }
  return w;
}

SampleSummary sample_summary(const GibbsModel& model, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const int d = model.dimension();
  SampleSummary s{IntVec(d, 0), 0};
  for (std::size_t i = 0; i < model.keys.size(); ++i) {
    const auto m = draw_geometric(rng, model.weight[i], model.log_weight[i]);
    if (m == 0) continue;
    ++s.generators;
    for (int j = 0; j < d; ++j) s.endpoint[j] += m * model.keys[i][j];
  }
  return s;
}

Moments moments(const GibbsModel& model, std::uint64_t replicas, std::uint64_t seed) {
  require(replicas >= 2, ErrorKind::InvalidArgument, "moments: need at least 2 replicas");
  const int d = model.dimension();
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(d, d);
  double gsum = 0.0, gsq = 0.0;
  // Centre on n k before accumulating to keep the variance sums well conditioned.
  Eigen::VectorXd centre(d);
  for (int j = 0; j < d; ++j) centre[j] = static_cast<double>(model.n * model.k[j]);
  for (std::uint64_t r = 0; r < replicas; ++r) {
    const auto s = sample_summary(model, replica_seed(seed, r));
    Eigen::VectorXd x(d);
    for (int j = 0; j < d; ++j) x[j] = static_cast<double>(s.endpoint[j]) - centre[j];
    sum += x;
    outer += x * x.transpose();
    const double g = static_cast<double>(s.generators);
    gsum += g;
    gsq += g * g;
  }
  const double n = static_cast<double>(replicas);
  Moments m;
  m.replicas = replicas;
  const Eigen::VectorXd mc = sum / n;
  m.mean = mc + centre;
  m.cov = (outer - n * mc * mc.transpose()) / (n - 1);
  m.mean_se = (m.cov.diagonal() / n).cwiseSqrt();
  m.gen_count_mean = gsum / n;
  m.gen_count_se = std::sqrt(std::max(0.0, (gsq / n - m.gen_count_mean * m.gen_count_mean) / n));

  const auto lap = laplace(model.cone, model.u);
  m.mean_ref = centre;
  const double scale = std::pow(static_cast<double>(model.n), (d + 2.0) / (d + 1.0));
  m.cov_ref = scale * lap.hessian;
  m.cov_ref_series = m.cov_ref * std::pow(model.zeta_d / model.zeta_d1, 1.0 / (d + 1));
  m.gen_ref = model.lambda_u / (model.zeta_d * std::pow(model.beta, d));
  return m;
}

std::int64_t generators_in_hyperplane(const GeneratorMultiset& w, const IntVec& h) {
  require(gcd_of(h) != 0, ErrorKind::InvalidArgument, "hyperplane normal must be nonzero");
  std::int64_t c = 0;
  for (const auto& [x, m] : w.entries)
    if (dot128(h, x) == 0) ++c;
  return c;
}

std::int64_t max_generators_in_hyperplane(const GeneratorMultiset& w, int d) {
  if (w.entries.empty()) return 0;
  if (d == 2) return 1;  // distinct primitive keys of a pointed cone are never parallel
  require(d == 3, ErrorKind::Budget, "hyperplane enumeration is limited to d <= 3");
  std::vector<IntVec> keys;
  for (const auto& [x, m] : w.entries) keys.push_back(x);
  if (keys.size() < 2) return static_cast<std::int64_t>(keys.size());
  // Pairs sharing a plane: a plane with m keys is hit by m(m-1)/2 pairs.
  std::map<IntVec, std::int64_t> pairs;
  for (std::size_t i = 0; i < keys.size(); ++i)
    for (std::size_t j = i + 1; j < keys.size(); ++j) {
      IntVec nrm = orthogonal_complement({keys[i], keys[j]});
      for (auto v : nrm)
        if (v != 0) {
          if (v < 0)
            for (auto& t : nrm) t = -t;
          break;
        }
      ++pairs[nrm];
    }
  std::int64_t best = 2;
  for (const auto& [nrm, p] : pairs) {
    const auto m = static_cast<std::int64_t>(std::llround((1 + std::sqrt(1.0 + 8.0 * p)) / 2));
    best = std::max(best, m);
  }
  return best;
}

bool is_epsilon_typical(const GeneratorMultiset& w, const GibbsModel& model, double eps) {
  require(eps > 0 && eps < 1, ErrorKind::InvalidArgument, "eps must lie in (0, 1)");
  const int d = model.dimension();
  const double lam_beta = std::pow(model.beta, -d) * model.lambda_u;
  if (static_cast<double>(w.distinct()) < (1 - eps) * lam_beta / model.zeta_d) return false;
  return static_cast<double>(max_generators_in_hyperplane(w, d)) <= eps * lam_beta;
}

UniformSampler::UniformSampler(const GibbsModel& model) {
  const int d = model.dimension();
  target_.resize(d);
  for (int j = 0; j < d; ++j) target_[j] = model.n * model.k[j];
  for (auto& x : partition_parts(model.cone, target_, true)) {
    const double e = model.beta * dot(model.u, x);
    keys_.push_back(std::move(x));
    weight_.push_back(std::exp(-e));
    log_weight_.push_back(-e);
  }
}

UniformSample UniformSampler::operator()(std::uint64_t max_attempts, std::uint64_t seed) const {
  SplitMix64 rng(seed);
  const std::size_t d = target_.size();
  UniformSample out;
  IntVec x(d);
  std::vector<std::int64_t> mult(keys_.size());
  while (out.attempts < max_attempts) {
    ++out.attempts;
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      mult[i] = draw_geometric(rng, weight_[i], log_weight_[i]);
      if (mult[i] == 0) continue;
      for (std::size_t j = 0; j < d; ++j) x[j] += mult[i] * keys_[i][j];
    }
    if (x != target_) continue;
    for (std::size_t i = 0; i < keys_.size(); ++i)
      if (mult[i] > 0) out.w.entries.emplace(keys_[i], mult[i]);
    return out;
  }
  throw TimeoutError("sample_uniform: no accepted draw within max_attempts", out.attempts);
}

UniformSample sample_uniform(const GibbsModel& model, std::uint64_t max_attempts,
                             std::uint64_t seed) {
  return UniformSampler(model)(max_attempts, seed);
}

LogPartition log_partition(const GibbsModel& model) {
  const int d = model.dimension();
  LogPartition lp;
  for (double q : model.weight) lp.value -= std::log1p(-q);
  // -log(1 - q) <= q / (1 - q): the dropped terms are bounded like the E[omega] tail.
  lp.tail_bound = model.tail_bound;
  lp.reference = model.zeta_d1 / model.zeta_d * std::pow(model.beta, -d) * model.lambda_u;
  return lp;
}

}  // namespace zonoshape
