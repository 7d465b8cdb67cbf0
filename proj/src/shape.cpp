#include "zonoshape/shape.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

namespace zonoshape {

namespace {

template <class Scalar>
std::vector<Scalar> clipped_moment(const Polytope<Scalar>& cap, const std::vector<Scalar>& v) {
  return moment_integral(clip(cap, v, Scalar(0)));
}

// Quantile with linear interpolation between order statistics.
double quantile(std::vector<double> xs, double p) {
  std::sort(xs.begin(), xs.end());
  const double pos = p * static_cast<double>(xs.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, xs.size() - 1);
  return xs[lo] + (pos - static_cast<double>(lo)) * (xs[hi] - xs[lo]);
}

template <class Scalar>
Scalar cube_support_impl(int d, const std::vector<Scalar>& v) {
  require(d == 2 || d == 3, ErrorKind::Unsupported, "cube_zonoid_support: d must be 2 or 3");
  require(static_cast<int>(v.size()) == d, ErrorKind::DimensionMismatch,
          "cube_zonoid_support: dimension mismatch");
  // h = int_{O cap {v.x >= 0}} v . x since int_O v . x = 0; O split into the
  // 2^d orthant simplices conv(0, +-e_i), evaluated at t = 1 and rescaled.
  Polytope<Scalar> o;
  o.dim = d;
  for (int mask = 0; mask < (1 << d); ++mask) {
    typename Polytope<Scalar>::Simplex s{std::vector<Scalar>(d, Scalar(0))};
    for (int i = 0; i < d; ++i) {
      std::vector<Scalar> e(d, Scalar(0));
      e[i] = (mask >> i) & 1 ? Scalar(-1) : Scalar(1);
      s.push_back(std::move(e));
    }
    o.simplices.push_back(std::move(s));
  }
  const auto m = clipped_moment(o, v);
  Scalar h = 0;
  for (int j = 0; j < d; ++j) h += v[j] * m[j];
  Scalar scale = d == 2 ? Scalar(3) : Scalar(6);  // (d+1)! 2^{1-d}
  return h * scale;
}

}  // namespace

std::vector<RealVec> direction_net(int d, int size) {
  require(size >= 1, ErrorKind::InvalidArgument, "direction_net: size must be positive");
  std::vector<RealVec> net;
  net.reserve(size);
  if (d == 2) {
    for (int i = 0; i < size; ++i) {
      const double a = 2 * std::numbers::pi * i / size;
      net.push_back({std::cos(a), std::sin(a)});
    }
    return net;
  }
  require(d == 3, ErrorKind::Unsupported, "direction_net: d must be 2 or 3");
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < size; ++i) {
    const double z = 1.0 - (2.0 * i + 1.0) / size;
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double a = golden * i;
    net.push_back({r * std::cos(a), r * std::sin(a), z});
  }
  return net;
}

double net_mesh(int d, int size) {
  if (d == 2) return std::numbers::pi / size;
  // Fibonacci nets have covering radius close to sqrt(4 pi / N) in practice.
  return std::sqrt(4 * std::numbers::pi / size);
}

RealVec zonoid_boundary(const CapSolution& cap, const RealVec& v) {
  const int d = cap.cap_unit.dim;
  require(static_cast<int>(v.size()) == d, ErrorKind::DimensionMismatch,
          "zonoid_boundary: dimension mismatch");
  require(std::any_of(v.begin(), v.end(), [](double x) { return x != 0; }),
          ErrorKind::InvalidArgument, "zonoid_boundary: v must be nonzero");
  RealVec m = clipped_moment(cap.cap_unit, v);
  const double scale = (d + 1.0) / (d * cap.vol_unit);  // lambda^{d+1}
  for (auto& x : m) x *= scale;
  return m;
}

RatVec zonoid_boundary_exact(const CapSolution& cap, const RatVec& v) {
  require(cap.cap_unit_exact.has_value() && cap.vol_unit_exact.has_value(),
          ErrorKind::Unsupported, "zonoid_boundary_exact: no exact cap available");
  const int d = cap.cap_unit_exact->dim;
  require(static_cast<int>(v.size()) == d, ErrorKind::DimensionMismatch,
          "zonoid_boundary: dimension mismatch");
  require(std::any_of(v.begin(), v.end(), [](const Rational& x) { return x != 0; }),
          ErrorKind::InvalidArgument, "zonoid_boundary: v must be nonzero");
  RatVec m = clipped_moment(*cap.cap_unit_exact, v);
  const Rational scale = Rational(d + 1) / (d * *cap.vol_unit_exact);
  for (auto& x : m) x *= scale;
  return m;
}

double zonoid_support(const CapSolution& cap, const RealVec& v) {
  return dot(v, zonoid_boundary(cap, v));
}

SupportProfile zonoid_profile(const CapSolution& cap, const std::vector<RealVec>& net) {
  SupportProfile p{net, {}, "T0"};
  p.values.reserve(net.size());
  for (const auto& v : net) p.values.push_back(zonoid_support(cap, v));
  return p;
}

BoundaryCheck boundary_equation_check(int d, int grid) {
  require(d == 2 || d == 3, ErrorKind::Unsupported, "boundary_equation_check: d must be 2 or 3");
  require(grid >= 1, ErrorKind::InvalidArgument, "boundary_equation_check: grid must be positive");
  IntVec k(d, 1);
  std::vector<IntVec> gens;
  for (int i = 0; i < d; ++i) {
    IntVec e(d, 0);
    e[i] = 1;
    gens.push_back(e);
  }
  const auto cone = PolyhedralCone::from_generators(gens);
  const CapSolution cap = solve_cap(cone, RatVec(k.begin(), k.end()));
  BoundaryCheck out;
  auto record = [&](double r) {
    ++out.checked;
    out.max_residual = std::max(out.max_residual, std::abs(r));
  };

  if (d == 2) {
    for (int i = 1; i <= grid; ++i) {
      const Rational t(i, grid + 1);
      // v = (t, -(1-t)) traces x + y = 2 sqrt(y); the mirror arc swaps roles.
      const auto p = to_double(zonoid_boundary_exact(cap, {t, t - 1}));
      record(p[0] + p[1] - 2 * std::sqrt(p[1]));
      const auto q = to_double(zonoid_boundary_exact(cap, {t - 1, t}));
      record(q[0] + q[1] - 2 * std::sqrt(q[0]));
    }
    return out;
  }

  for (int i = 1; i <= grid; ++i)
    for (int j = 1; j <= grid; ++j) {
      const Rational t(i, grid + 1), s(j, grid + 1);
      // Normal (1, -(1-t)/t, -(1-s)/s) scaled by t s.
      const RatVec base{t * s, (t - 1) * s, (s - 1) * t};
      for (int shift = 0; shift < 3; ++shift) {
        RatVec v(3);
        for (int c = 0; c < 3; ++c) v[(c + shift) % 3] = base[c];
        const auto pr = zonoid_boundary_exact(cap, v);
        if (pr[0] - 2 * pr[1] + pr[2] < 0 || pr[0] + pr[1] - 2 * pr[2] < 0) {
          ++out.skipped;
          continue;
        }
        const auto p = to_double(pr);
        record(p[0] + p[1] + p[2] - 3 * std::cbrt(p[1] * p[2]));
      }
    }
  return out;
}

double zonotope_support(const GeneratorMultiset& w, const RealVec& v) {
  double h = 0.0;
  for (const auto& [x, m] : w.entries) {
    const double s = dot(v, x);
    if (s > 0) h += static_cast<double>(m) * s;
  }
  return h;
}

Rational zonotope_support(const GeneratorMultiset& w, const RatVec& v) {
  Rational h = 0;
  for (const auto& [x, m] : w.entries) {
    Rational s = 0;
    for (std::size_t j = 0; j < x.size(); ++j) s += v[j] * x[j];
    if (s > 0) h += m * s;
  }
  return h;
}

SupportProfile zonotope_profile(const GeneratorMultiset& w, const std::vector<RealVec>& net,
                                double scale) {
  SupportProfile p{net, std::vector<double>(net.size(), 0.0), "T"};
  for (const auto& [x, m] : w.entries) {
    const double weight = static_cast<double>(m) / scale;
    for (std::size_t i = 0; i < net.size(); ++i) {
      const double s = dot(net[i], x);
      if (s > 0) p.values[i] += weight * s;
    }
  }
  return p;
}

double hausdorff(const SupportProfile& a, const SupportProfile& b) {
  require(a.directions == b.directions && a.values.size() == b.values.size(),
          ErrorKind::InvalidArgument, "hausdorff: profiles use different nets");
  double h = 0.0;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    h = std::max(h, std::abs(a.values[i] - b.values[i]));
  return h;
}

double cube_zonoid_support(int d, const RealVec& v) { return cube_support_impl(d, v); }

Rational cube_zonoid_support(int d, const RatVec& v) { return cube_support_impl(d, v); }

std::vector<LimitShapeRow> limit_shape_experiment(const LimitShapeConfig& config) {
  require(config.cone != nullptr, ErrorKind::InvalidArgument, "limit_shape_experiment: no cone");
  const int d = config.cone->dimension();
  require(d == 2 || d == 3, ErrorKind::Unsupported, "limit_shape_experiment: d must be 2 or 3");
  require(config.replicas >= 1, ErrorKind::InvalidArgument, "limit_shape_experiment: no replicas");
  const int size = config.net > 0 ? config.net : (d == 2 ? kDefaultNet2 : kDefaultNet3);
  const auto net = direction_net(d, size);
  const CapSolution cap = solve_cap(*config.cone, RatVec(config.k.begin(), config.k.end()));
  const auto limit = zonoid_profile(cap, net);

  RealVec probe = config.probe;
  if (probe.empty()) {
    probe.assign(d, 0.0);
    probe[0] = 1;
    probe[1] = -1;
  }
  const double pn = std::sqrt(dot(probe, probe));
  for (auto& x : probe) x /= pn;
  const double h0 = zonoid_support(cap, probe);

  std::vector<LimitShapeRow> rows;
  for (const auto n : config.ns) {
    const auto model = make_gibbs_model(*config.cone, config.k, n);
    std::vector<double> dist, probe_vals;
    for (std::uint64_t r = 0; r < config.replicas; ++r) {
      const auto w = sample(model, replica_seed(config.seed, r));
      dist.push_back(hausdorff(zonotope_profile(w, net, static_cast<double>(n)), limit));
      probe_vals.push_back(zonotope_support(w, probe) / static_cast<double>(n));
    }
    LimitShapeRow row;
    row.n = n;
    row.replicas = config.replicas;
    row.median = quantile(dist, 0.5);
    row.quantile90 = quantile(dist, 0.9);
    row.limit_support = h0;
    double sum = 0, sq = 0;
    std::uint64_t dev = 0;
    for (double h : probe_vals) {
      sum += h;
      sq += h * h;
      if (std::abs(h - h0) > config.eps) ++dev;
    }
    const double cnt = static_cast<double>(probe_vals.size());
    row.mean_support = sum / cnt;
    row.support_se =
        cnt > 1 ? std::sqrt(std::max(0.0, (sq - cnt * row.mean_support * row.mean_support) /
                                               (cnt - 1) / cnt))
                : 0.0;
    row.deviation_probability = static_cast<double>(dev) / cnt;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace zonoshape
