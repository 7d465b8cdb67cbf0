#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "zonoshape/cap.hpp"
#include "zonoshape/gibbs.hpp"
#include "zonoshape/multiset.hpp"

namespace zonoshape {

inline constexpr int kDefaultNet2 = 4096;
inline constexpr int kDefaultNet3 = 65536;

/// Unit directions: uniform angles at d = 2, Fibonacci sphere at d = 3.
std::vector<RealVec> direction_net(int d, int size);

/// Largest angular gap of a net, so |h_net - h| <= diam * mesh.
double net_mesh(int d, int size);

struct SupportProfile {
  std::vector<RealVec> directions;
  std::vector<double> values;
  std::string body_id;
};

/// Boundary point of the limit zonoid with outer normal v:
/// t(v) = lambda^{d+1} int_{C(u <= 1) cap {v . x >= 0}} x dx, so t(v) = k on C°
/// and 0 on -C°.
RealVec zonoid_boundary(const CapSolution& cap, const RealVec& v);

/// Same in exact arithmetic; needs the rational unit cap (simplicial cone,
/// rational k).
RatVec zonoid_boundary_exact(const CapSolution& cap, const RatVec& v);

/// h_{T0}(v) = v . t(v).
double zonoid_support(const CapSolution& cap, const RealVec& v);

SupportProfile zonoid_profile(const CapSolution& cap, const std::vector<RealVec>& net);

struct BoundaryCheck {
  int checked = 0;
  int skipped = 0;  // points outside the region where the closed form applies
  double max_residual = 0.0;
};

/// Orthant with k = (1, ..., 1). d = 2: both arcs x + y = 2 sqrt(y) and
/// x + y = 2 sqrt(x) on `grid` parameters each. d = 3: x + y + z = 3 cbrt(yz)
/// on a grid x grid parameter square and its two cyclic relabelings; points
/// failing x - 2y + z >= 0, x + y - 2z >= 0 are skipped.
BoundaryCheck boundary_equation_check(int d, int grid);

/// h_T(v) = sum omega(x) max(x . v, 0).
double zonotope_support(const GeneratorMultiset& w, const RealVec& v);
Rational zonotope_support(const GeneratorMultiset& w, const RatVec& v);

/// Profile of T / scale.
SupportProfile zonotope_profile(const GeneratorMultiset& w, const std::vector<RealVec>& net,
                                double scale);

/// max over the shared net of |h_a - h_b|.
double hausdorff(const SupportProfile& a, const SupportProfile& b);

/// h_{Q0}(v) = (1/2) int_{t O^d} |x . v| dx with t^{d+1} = (d+1)! 2^{1-d},
/// O^d the cross-polytope; d = 2 or 3.
double cube_zonoid_support(int d, const RealVec& v);
Rational cube_zonoid_support(int d, const RatVec& v);

struct LimitShapeRow {
  std::int64_t n = 0;
  std::uint64_t replicas = 0;
  double median = 0.0;
  double quantile90 = 0.0;
  double deviation_probability = 0.0;  // P[|h_{T/n}(v) - h_{T0}(v)| > eps] at the probe
  double mean_support = 0.0;           // mean of h_{T/n}(v) at the probe
  double support_se = 0.0;
  double limit_support = 0.0;          // h_{T0}(v) at the probe
};

struct LimitShapeConfig {
  const PolyhedralCone* cone = nullptr;
  IntVec k;
  std::vector<std::int64_t> ns;
  std::uint64_t replicas = 200;
  std::uint64_t seed = 0;
  int net = 0;  // 0 picks the default for d
  RealVec probe{};  // empty picks (1, -1, 0, ...)/|.|
  double eps = 0.05;
};

/// Samples T under P_n (replica r uses seed + r) and compares T/n with T0.
std::vector<LimitShapeRow> limit_shape_experiment(const LimitShapeConfig& config);

}  // namespace zonoshape
