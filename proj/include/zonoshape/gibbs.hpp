#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "zonoshape/cone.hpp"
#include "zonoshape/multiset.hpp"

namespace zonoshape {

inline constexpr double kDefaultTruncation = 40.0;
inline constexpr double kTailTolerance = 1e-6;

/// Boltzmann model P_n: independent geometric multiplicities with failure
/// probability exp(-beta u . x) on primitive x of C with beta u . x <= t_max.
struct GibbsModel {
  PolyhedralCone cone;
  IntVec k;
  std::int64_t n = 0;
  RealVec u{};  // minimizer of Lambda(v) + v . k, so -grad Lambda(u) = k
  double beta = 0.0;
  double t_max = kDefaultTruncation;
  double sigma = 0.0;  // n^{(d+2)/(2d+2)}
  double zeta_d = 0.0;
  double zeta_d1 = 0.0;
  double lambda_u = 0.0;   // Lambda(u)
  double tail_bound = 0.0;  // estimate of sum of E[omega(x)] over dropped keys

  // Support in lexicographic order; weight[i] = exp(-beta u . keys[i]).
  std::vector<IntVec> keys{};
  std::vector<double> weight{};
  std::vector<double> log_weight{};

  int dimension() const { return cone.dimension(); }
};

/// beta_n = (zeta(d+1) / (zeta(d) n))^{1/(d+1)} unless `beta_override` > 0.
GibbsModel make_gibbs_model(const PolyhedralCone& cone, const IntVec& k, std::int64_t n,
                            double t_max = kDefaultTruncation, double beta_override = 0.0);

/// One draw from P_n; identical (model, seed) give identical multisets.
GeneratorMultiset sample(const GibbsModel& model, std::uint64_t seed);

/// Fast path: endpoint and number of distinct generators only.
struct SampleSummary {
  IntVec endpoint;
  std::int64_t generators = 0;
};
SampleSummary sample_summary(const GibbsModel& model, std::uint64_t seed);

struct Moments {
  std::uint64_t replicas = 0;
  Eigen::VectorXd mean;
  Eigen::VectorXd mean_se;
  Eigen::MatrixXd cov;
  double gen_count_mean = 0.0;
  double gen_count_se = 0.0;
  Eigen::VectorXd mean_ref;  // n k
  Eigen::MatrixXd cov_ref;   // n^{(d+2)/(d+1)} Hess Lambda(u)
  // Same with the factor (zeta(d)/zeta(d+1))^{1/(d+1)} that the series expansion produces.
  Eigen::MatrixXd cov_ref_series;
  double gen_ref = 0.0;  // Lambda(u) / (zeta(d) beta^d)
};

/// Monte Carlo over replicas with seeds base + i.
Moments moments(const GibbsModel& model, std::uint64_t replicas, std::uint64_t seed);

/// Distinct support keys x with h . x = 0.
std::int64_t generators_in_hyperplane(const GeneratorMultiset& w, const IntVec& h);

/// Largest generators_in_hyperplane over hyperplanes spanned by d-1 support
/// keys (d = 2 or 3).
std::int64_t max_generators_in_hyperplane(const GeneratorMultiset& w, int d);

bool is_epsilon_typical(const GeneratorMultiset& w, const GibbsModel& model, double eps);

struct UniformSample {
  GeneratorMultiset w;
  std::uint64_t attempts = 0;
};

/// Exact uniform draw from the zonotopes with endpoint n k by rejection from
/// P_n. Only keys in the order interval [0, n k] can appear in an accepted
/// draw, so sampling is restricted to them; the conditional law is unchanged.
/// Throws TimeoutError after max_attempts.
UniformSample sample_uniform(const GibbsModel& model, std::uint64_t max_attempts,
                             std::uint64_t seed);

/// Rejection sampler with its key set prepared once, for repeated draws.
class UniformSampler {
 public:
  explicit UniformSampler(const GibbsModel& model);
  UniformSample operator()(std::uint64_t max_attempts, std::uint64_t seed) const;

 private:
  IntVec target_;
  std::vector<IntVec> keys_;
  std::vector<double> weight_;
  std::vector<double> log_weight_;
};

struct LogPartition {
  double value = 0.0;      // sum over support of -log(1 - exp(-beta u . x))
  double tail_bound = 0.0;
  double reference = 0.0;  // zeta(d+1)/zeta(d) beta^{-d} Lambda(u)
};
LogPartition log_partition(const GibbsModel& model);

}  // namespace zonoshape
