#include "zonoshape/cap.hpp"

#include <cmath>

#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"

namespace zonoshape {

namespace {

// Fills lambda, q, cap_unit from u and vol_unit.
void finish(const PolyhedralCone& cone, CapSolution& sol) {
  const int d = cone.dimension();
  sol.lambda = std::pow((d + 1.0) / (d * sol.vol_unit), 1.0 / (d + 1));
  sol.q = q_from_unit_volume(d, sol.vol_unit);
  sol.cap_unit = cap_polytope(cone, sol.u, 1.0);
}

double unit_volume(const PolyhedralCone& cone, const RealVec& u) {
  const int d = cone.dimension();
  double vol = 0.0;
  const auto& gens = cone.generators();
  for (std::size_t s = 0; s < cone.simplices().size(); ++s) {
    double piece = cone.simplex_volumes()[s];
    for (int gi : cone.simplices()[s]) piece /= dot(u, gens[gi]);
    vol += piece;
  }
  return vol / static_cast<double>(factorial(d));
}

CapSolution solve_exact_simplicial(const PolyhedralCone& cone, const RatVec& a) {
  const int d = cone.dimension();
  const auto& gens = cone.generators();
  // a = sum alpha_i g_i
  std::vector<RatVec> gt(d, RatVec(d));
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) gt[i][j] = gens[j][i];
  const RatVec alpha = solve(gt, a);
  for (const auto& x : alpha)
    require(x > 0, ErrorKind::InvalidArgument, "solve_cap: a is not in the interior of the cone");

  // u . g_i = 1 / (d alpha_i)
  std::vector<RatVec> g(d, RatVec(d));
  RatVec rhs(d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) g[i][j] = gens[i][j];
    rhs[i] = Rational(1) / (d * alpha[i]);
  }
  RatVec u = solve(g, rhs);

  BigInt det = determinant(gens);
  if (det < 0) det = -det;
  Rational vol(det);
  for (int i = 0; i < d; ++i) vol /= rhs[i];
  vol /= factorial(d);

  CapSolution sol;
  sol.a = to_double(a);
  sol.u = to_double(u);
  sol.cap_unit_exact = cap_polytope(cone, u, Rational(1));
  sol.u_exact = u;
  sol.vol_unit_exact = vol;
  sol.vol_unit = to_double(vol);
  const double scale = std::pow(d * static_cast<double>(factorial(d)) * sol.vol_unit, 1.0 / (d + 1));
  for (double x : sol.u) sol.u_laplace.push_back(x * scale);
  finish(cone, sol);
  return sol;
}

CapSolution solve_newton(const PolyhedralCone& cone, const RealVec& a) {
  const int d = cone.dimension();
  require(contains_strictly(cone, a), ErrorKind::InvalidArgument,
          "solve_cap: a is not in the interior of the cone");
  const Eigen::Map<const Eigen::VectorXd> av(a.data(), d);
  const double anorm = av.norm();

  // Start on the ray of the summed facet normals, at the minimizer along that ray.
  RealVec v(cone.interior_dual().begin(), cone.interior_dual().end());
  {
    const double lam = laplace(cone, v).value;
    const double s = std::pow(d * lam / dot(v, a), 1.0 / (d + 1));
    for (double& x : v) x *= s;
  }

  auto objective = [&](const LaplaceValue& L, const RealVec& x) { return L.value + dot(x, a); };
  LaplaceValue cur = laplace(cone, v);
  Eigen::VectorXd grad = cur.gradient + av;
  int it = 0;
  while (grad.norm() > kNewtonTolerance * anorm) {
    if (it == kNewtonMaxIterations)
      throw Error(ErrorKind::NonConvergence,
                  "solve_cap: Newton did not converge, residual " +
                      std::to_string(grad.norm() / anorm));
    ++it;
    const Eigen::VectorXd step = -cur.hessian.ldlt().solve(grad);
    const double f0 = objective(cur, v);
    const double slope = grad.dot(step);
    double t = 1.0;
    for (;;) {
      require(t > 1e-30, ErrorKind::NonConvergence, "solve_cap: line search failed");
      RealVec trial(d);
      for (int j = 0; j < d; ++j) trial[j] = v[j] + t * step[j];
      try {
        LaplaceValue next = laplace(cone, trial);
        const Eigen::VectorXd next_grad = next.gradient + av;
        if (objective(next, trial) <= f0 + 1e-4 * t * slope || next_grad.norm() < grad.norm()) {
          v = std::move(trial);
          cur = std::move(next);
          grad = next_grad;
          break;
        }
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Divergence && e.kind() != ErrorKind::Conditioning) throw;
      }
      t *= 0.5;
    }
  }

  CapSolution sol;
  sol.a = a;
  sol.u_laplace = v;
  sol.iterations = it;
  sol.residual = grad.norm() / anorm;
  const double va = dot(v, a);
  for (double x : v) sol.u.push_back(x / va);
  sol.vol_unit = unit_volume(cone, sol.u);
  finish(cone, sol);
  return sol;
}

}  // namespace

double q_from_unit_volume(int d, double vol_unit) {
  return std::pow(std::pow(1.0 + 1.0 / d, d) * vol_unit, 1.0 / (d + 1));
}

CapSolution solve_cap(const PolyhedralCone& cone, const RatVec& a) {
  require(static_cast<int>(a.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "solve_cap: dimension mismatch");
  if (static_cast<int>(cone.generators().size()) == cone.dimension())
    return solve_exact_simplicial(cone, a);
  return solve_newton(cone, to_double(a));
}

CapSolution solve_cap(const PolyhedralCone& cone, const RealVec& a) {
  require(static_cast<int>(a.size()) == cone.dimension(), ErrorKind::DimensionMismatch,
          "solve_cap: dimension mismatch");
  if (static_cast<int>(cone.generators().size()) == cone.dimension()) {
    RatVec exact;
    for (double x : a) exact.emplace_back(x);
    return solve_exact_simplicial(cone, exact);
  }
  return solve_newton(cone, a);
}

double q_value(const PolyhedralCone& cone, const RatVec& a) { return solve_cap(cone, a).q; }
double q_value(const PolyhedralCone& cone, const RealVec& a) { return solve_cap(cone, a).q; }

Polytope<Rational> cap_polytope(const PolyhedralCone& cone, const RatVec& u, const Rational& t) {
  require(dual_contains(cone, u), ErrorKind::Divergence,
          "cap_polytope: u is not in the open dual, the cap is unbounded");
  const int d = cone.dimension();
  Polytope<Rational> p;
  p.dim = d;
  for (const auto& s : cone.simplices()) {
    Polytope<Rational>::Simplex simplex;
    simplex.push_back(RatVec(d, Rational(0)));
    for (int gi : s) {
      const auto& g = cone.generators()[gi];
      const Rational scale = t / dot(u, g);
      RatVec x(d);
      for (int j = 0; j < d; ++j) x[j] = scale * g[j];
      simplex.push_back(std::move(x));
    }
    p.simplices.push_back(std::move(simplex));
  }
  return p;
}

Polytope<double> cap_polytope(const PolyhedralCone& cone, const RealVec& u, double t) {
  require(dual_contains(cone, u), ErrorKind::Divergence,
          "cap_polytope: u is not in the open dual, the cap is unbounded");
  const int d = cone.dimension();
  Polytope<double> p;
  p.dim = d;
  for (const auto& s : cone.simplices()) {
    Polytope<double>::Simplex simplex;
    simplex.push_back(RealVec(d, 0.0));
    for (int gi : s) {
      const auto& g = cone.generators()[gi];
      const double scale = t / dot(u, g);
      RealVec x(d);
      for (int j = 0; j < d; ++j) x[j] = scale * static_cast<double>(g[j]);
      simplex.push_back(std::move(x));
    }
    p.simplices.push_back(std::move(simplex));
  }
  return p;
}

RealVec section_centroid(const PolyhedralCone& cone, const RealVec& u) {
  // The section of each piece is the facet of its cap simplex opposite 0;
  // weight = (d-1)-volume, proportional to the piece's d-volume at unit height.
  const Polytope<double> cap = cap_polytope(cone, u, 1.0);
  const int d = cone.dimension();
  RealVec c(d, 0.0);
  double total = 0.0;
  for (const auto& s : cap.simplices) {
    const double w = simplex_volume<double>(s);
    total += w;
    for (std::size_t i = 1; i < s.size(); ++i)
      for (int j = 0; j < d; ++j) c[j] += w * s[i][j] / d;
  }
  for (double& x : c) x /= total;
  return c;
}

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass:
      return "pass";
    case CheckStatus::Fail:
      return "fail";
    case CheckStatus::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

CapRoundtrip max_cap_roundtrip(const PolyhedralCone& cone, const RatVec& w, const Rational& s,
                               double tolerance) {
  const Polytope<Rational> cap = cap_polytope(cone, w, s);
  const RatVec a_w = moment_integral(cap);
  CapRoundtrip r;
  r.volume = to_double(volume(cap));
  r.q = q_value(cone, a_w);
  r.relative_error = std::abs(r.volume - r.q) / r.q;
  r.status = r.relative_error <= tolerance ? CheckStatus::Pass : CheckStatus::Fail;
  return r;
}

NonCapCheck max_cap_noncap(const PolyhedralCone& cone, const RealVec& w, double s,
                           const RealVec& w2, double s2, std::uint64_t samples,
                           std::uint64_t seed, double sigmas) {
  const int d = cone.dimension();
  const PolytopeSampler sampler(cap_polytope(cone, w, s));
  const double vcap = sampler.volume();
  SplitMix64 rng(seed);

  // Y = vcap * (1_S, x 1_S); its mean estimates (Vol S, int_S x).
  const int m = d + 1;
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(m);
  Eigen::MatrixXd outer = Eigen::MatrixXd::Zero(m, m);
  Eigen::VectorXd y(m);
  for (std::uint64_t i = 0; i < samples; ++i) {
    const RealVec x = sampler(rng);
    if (dot(w2, x) > s2) continue;
    y[0] = vcap;
    for (int j = 0; j < d; ++j) y[j + 1] = vcap * x[j];
    sum += y;
    outer += y * y.transpose();
  }
  const double n = static_cast<double>(samples);
  const Eigen::VectorXd mean = sum / n;
  const Eigen::MatrixXd cov = (outer / n - mean * mean.transpose()) / n;

  NonCapCheck out;
  out.volume = mean[0];
  RealVec a(mean.data() + 1, mean.data() + m);
  out.q = q_value(cone, a);
  out.margin = out.q - out.volume;

  // Delta method for D(V, a) = q(a) - V.
  Eigen::VectorXd grad(m);
  grad[0] = -1.0;
  for (int j = 0; j < d; ++j) {
    const double h = 1e-4 * std::sqrt(dot(a, a));
    RealVec ap = a, am = a;
    ap[j] += h;
    am[j] -= h;
    grad[j + 1] = (q_value(cone, ap) - q_value(cone, am)) / (2 * h);
  }
  out.standard_error = std::sqrt(std::max(0.0, grad.dot(cov * grad)));
  if (out.margin > sigmas * out.standard_error)
    out.status = CheckStatus::Pass;
  else if (out.margin < -sigmas * out.standard_error)
    out.status = CheckStatus::Fail;
  else
    out.status = CheckStatus::Inconclusive;
  return out;
}

}  // namespace zonoshape
