#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>
#include <variant>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "acceptance.hpp"
#include "zonoshape/cap.hpp"
#include "zonoshape/count.hpp"
#include "zonoshape/faces.hpp"
#include "zonoshape/gibbs.hpp"
#include "zonoshape/latt.hpp"
#include "zonoshape/numeric.hpp"
#include "zonoshape/rng.hpp"
#include "zonoshape/shape.hpp"

namespace zonoshape::cli {

namespace {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Cell = std::variant<std::int64_t, double, std::string, BigInt, RealVec, IntVec>;

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows{};

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("table row width");
    rows.push_back(std::move(row));
  }
};

enum class Format { Text, Csv, Json };

std::string number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

template <class V, class F>
std::string tuple(const V& v, F&& f) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
  return s + ")";
}

std::string plain(const Cell& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return number(x);
        else if constexpr (std::is_same_v<T, std::string>) return x;
        else if constexpr (std::is_same_v<T, BigInt>) return x.str();
        else if constexpr (std::is_same_v<T, RealVec>) return tuple(x, number);
        else return tuple(x, [](std::int64_t v) { return std::to_string(v); });
      },
      c);
}

std::string csv_cell(const Cell& c) {
  std::string s = plain(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

std::string json_number(double x) { return std::isfinite(x) ? number(x) : "null"; }

std::string json_cell(const Cell& c) {
  return std::visit(
      [](const auto& x) -> std::string {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(x);
        else if constexpr (std::is_same_v<T, double>) return json_number(x);
        else if constexpr (std::is_same_v<T, std::string>) return nlohmann::json(x).dump();
        else if constexpr (std::is_same_v<T, BigInt>) return x.str();
        else if constexpr (std::is_same_v<T, RealVec>) {
          std::string s = "[";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + json_number(x[i]);
          return s + "]";
        } else {
          std::string s = "[";
          for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
          return s + "]";
        }
      },
      c);
}

void emit(const Table& t, Format format, const std::string& invocation, std::ostream& os) {
  switch (format) {
    case Format::Text:
      for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j)
          os << (j ? " " : "") << t.columns[j] << "=" << plain(row[j]);
        os << "\n";
      }
      break;
    case Format::Csv:
      os << "# " << invocation << "\n";
      for (std::size_t j = 0; j < t.columns.size(); ++j) os << (j ? "," : "") << t.columns[j];
      os << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << csv_cell(row[j]);
        os << "\n";
      }
      break;
    case Format::Json:
      os << "{\"invocation\":" << nlohmann::json(invocation).dump() << ",\"rows\":[";
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        os << (i ? ",\n" : "\n") << "{";
        for (std::size_t j = 0; j < t.columns.size(); ++j)
          os << (j ? "," : "") << nlohmann::json(t.columns[j]).dump() << ":"
             << json_cell(t.rows[i][j]);
        os << "}";
      }
      os << "\n]}\n";
      break;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ' ' || ch == '(' || ch == ')' || ch == '\t') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

RealVec parse_real_vector(const std::string& text) {
  RealVec v;
  for (const auto& t : split_tokens(text)) {
    std::size_t used = 0;
    double x = 0;
    try {
      x = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ConfigError("not a number: '" + t + "'");
    v.push_back(x);
  }
  if (v.empty()) throw ConfigError("empty vector '" + text + "'");
  return v;
}

// Integers and p/q fractions parse exactly; returns nullopt on any decimal.
std::optional<RatVec> parse_rational_vector(const std::string& text) {
  static const std::regex exact(R"(-?[0-9]+(/[0-9]*[1-9][0-9]*)?)");
  RatVec v;
  for (const auto& t : split_tokens(text)) {
    if (!std::regex_match(t, exact)) return std::nullopt;
    v.emplace_back(t);
  }
  if (v.empty()) return std::nullopt;
  return v;
}

void check_sorted(const std::vector<std::int64_t>& ns, const char* what) {
  if (ns.empty()) throw ConfigError(std::string(what) + ": empty n-list");
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] <= 0) throw ConfigError(std::string(what) + ": n must be positive");
    if (i && ns[i] <= ns[i - 1])
      throw ConfigError(std::string(what) + ": n-list must be strictly ascending");
  }
}

IntVec default_k(const PolyhedralCone& cone, const std::string& k) {
  if (!k.empty()) return parse_int_vector(k);
  return IntVec(cone.dimension(), 1);
}

std::string multiset_text(const GeneratorMultiset& w) {
  std::string s;
  for (const auto& [x, m] : w.entries) {
    if (!s.empty()) s += " ";
    s += tuple(x, [](std::int64_t v) { return std::to_string(v); });
    if (m != 1) s += "x" + std::to_string(m);
  }
  return s;
}

HomogeneousFn parse_fn(const std::string& name) {
  if (name == "one") return {HomogeneousFn::Kind::One};
  if (name == "norm") return {HomogeneousFn::Kind::Norm};
  if (name == "norm3") return {HomogeneousFn::Kind::NormCubed};
  if (name.rfind("x", 0) == 0 && name.size() > 1)
    return {HomogeneousFn::Kind::Coordinate, std::stoi(name.substr(1))};
  throw ConfigError("unknown function '" + name + "' (one, norm, norm3, x<i>)");
}

// Everything a subcommand needs once the arguments are parsed.
struct Options {
  std::uint64_t seed = 0;
  int threads = 1;
  std::string out;
  std::string format;
  std::string cone = "orthant2";
  std::string k;
  std::string a;
  std::string generators;
  std::int64_t n = 1000;
  std::vector<std::int64_t> ns;
  std::uint64_t replicas = 0;
  int n_max = 0;
  bool non_strict = false;
  bool oracle = false;
  std::uint64_t state_budget = kDefaultStateBudget;
  std::uint64_t max_attempts = 1'000'000;
  std::uint64_t accepted = 10000;
  std::uint64_t trials = 100;
  int d = 2;
  std::int64_t big_n = 1000;
  int net = 0;
  int grid = 100;
  int r = 3;
  double eps = 0.05;
  std::string u;
  std::vector<double> betas;
  std::string fn = "one";
  std::vector<int> criteria;
  std::vector<int> expect_fail;
};

// Result of a subcommand: the table and whether its own checks held.
struct Outcome {
  Table table;
  bool ok = true;
};

Outcome cmd_cap(const Options& o) {
  const auto cone = parse_cone(o.cone);
  if (o.a.empty()) throw ConfigError("cap: --a is required");
  const auto exact = parse_rational_vector(o.a);
  const auto s = exact ? solve_cap(cone, *exact) : solve_cap(cone, parse_real_vector(o.a));
  Outcome out{{{"a", "u", "u_exact", "lambda", "vol_unit", "q", "iterations"}}};
  std::string ue = "-";
  if (s.u_exact) ue = tuple(*s.u_exact, [](const Rational& q) { return q.str(); });
  out.table.add({s.a, s.u, ue, s.lambda, s.vol_unit, s.q, std::int64_t{s.iterations}});
  return out;
}

Outcome cmd_count(const Options& o) {
  const auto cone = parse_cone(o.cone);
  if (o.k.empty()) throw ConfigError("count: --k is required");
  const auto k = parse_int_vector(o.k);
  const bool strict = !o.non_strict;
  Outcome out;
  if (o.n_max <= 0) {
    const auto c = count_partitions(cone, k, strict, o.state_budget);
    out.table.columns = {"k", "strict", "p", "parts"};
    out.table.add({k, std::int64_t{strict}, c.count, static_cast<std::int64_t>(c.parts_used)});
    return out;
  }
  const auto seq = growth_sequence(cone, k, o.n_max, strict, o.state_budget);
  out.table.columns = {"n", "p", "a_n", "limit"};
  for (const auto& r : seq.rows) out.table.add({std::int64_t{r.n}, r.count, r.a_n, seq.limit});
  return out;
}

Outcome cmd_latt_density(const Options& o) {
  if (o.d < 1) throw ConfigError("latt density: --d must be positive");
  if (o.big_n < 1) throw ConfigError("latt density: --N must be positive");
  Outcome out{{{"d", "N", "density", "reference"}}};
  out.table.add({std::int64_t{o.d}, o.big_n, primitive_density(o.big_n, o.d), 1 / zeta(o.d)});
  return out;
}

Outcome cmd_latt_cubature(const Options& o) {
  SplitMix64 rng(o.seed);
  const HomogeneousFn fs[] = {{HomogeneousFn::Kind::One},
                              {HomogeneousFn::Kind::Coordinate, 0},
                              {HomogeneousFn::Kind::Norm}};
  const double lip[] = {0.0, 1.0, 1.0};
  Outcome out{{{"trial", "d", "points", "f", "lhs", "bound", "pass"}}};
  for (std::uint64_t t = 0; t < o.trials;) {
    const int d = 2 + static_cast<int>(t % 2);
    std::vector<IntVec> pts, diffs;
    for (int i = 0; i < 6 + static_cast<int>(t % 5); ++i) {
      IntVec p(d);
      for (auto& c : p) c = static_cast<std::int64_t>(rng.next() % 15) - 7;
      pts.push_back(p);
    }
    for (const auto& p : pts) {
      IntVec q(d);
      for (int j = 0; j < d; ++j) q[j] = p[j] - pts[0][j];
      diffs.push_back(q);
    }
    if (rank(diffs) != d) continue;
    for (int f = 0; f < 3; ++f) {
      const auto r = cubature_check(pts, fs[f], lip[f]);
      out.ok = out.ok && r.pass;
      out.table.add({static_cast<std::int64_t>(t), std::int64_t{d},
                     static_cast<std::int64_t>(pts.size()), fs[f].name(), r.lhs, r.bound,
                     std::int64_t{r.pass}});
    }
    ++t;
  }
  return out;
}

Outcome cmd_latt_gap(const Options& o) {
  const auto cone = parse_cone(o.cone);
  const RealVec u = o.u.empty() ? RealVec(cone.dimension(), 1.0) : parse_real_vector(o.u);
  const auto f = parse_fn(o.fn);
  const std::vector<double> betas = o.betas.empty() ? std::vector<double>{0.2, 0.1, 0.05}
                                                    : o.betas;
  Outcome out{{{"beta", "sum", "integral", "scaled_gap", "gap_over_beta", "points"}}};
  for (double b : betas) {
    if (!(b > 0)) throw ConfigError("latt gap: beta must be positive");
    const auto g = weighted_sum_vs_integral(cone, u, b, f);
    out.table.add({b, g.sum, g.integral, g.scaled_gap, g.scaled_gap / b,
                   static_cast<std::int64_t>(g.points)});
  }
  return out;
}

Outcome cmd_gibbs_sample(const Options& o) {
  const auto cone = parse_cone(o.cone);
  const auto k = default_k(cone, o.k);
  if (o.n <= 0) throw ConfigError("gibbs sample: --n must be positive");
  const auto model = make_gibbs_model(cone, k, o.n);
  const auto m = moments(model, o.replicas ? o.replicas : 1000, o.seed);
  const int d = cone.dimension();
  Outcome out{{{"quantity", "i", "j", "value", "se", "reference"}}};
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (int i = 0; i < d; ++i)
    out.table.add({std::string("mean"), std::int64_t{i}, std::int64_t{-1}, m.mean[i], m.mean_se[i],
                   m.mean_ref[i]});
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      out.table.add({std::string("cov"), std::int64_t{i}, std::int64_t{j}, m.cov(i, j), nan,
                     m.cov_ref(i, j)});
  out.table.add({std::string("generators"), std::int64_t{-1}, std::int64_t{-1}, m.gen_count_mean,
                 m.gen_count_se, m.gen_ref});
  out.table.add({std::string("beta"), std::int64_t{-1}, std::int64_t{-1}, model.beta, nan, nan});
  return out;
}

Outcome cmd_gibbs_uniform(const Options& o) {
  const auto cone = parse_cone(o.cone);
  if (o.k.empty()) throw ConfigError("gibbs uniform: --nk is required");
  const auto nk = parse_int_vector(o.k);
  const auto support = enumerate_partitions(cone, nk, true);
  if (support.empty()) throw ConfigError("gibbs uniform: no strict partition of nk");
  const auto model = make_gibbs_model(cone, nk, 1);
  const UniformSampler draw(model);
  std::map<std::map<IntVec, std::int64_t>, std::uint64_t> freq;
  std::uint64_t attempts = 0;
  for (std::uint64_t i = 0; i < o.accepted; ++i) {
    const auto s = draw(o.max_attempts, replica_seed(o.seed, i));
    attempts += s.attempts;
    ++freq[s.w.entries];
  }
  Outcome out{{{"partition", "count", "frequency", "expected", "attempts"}}};
  const double total = static_cast<double>(o.accepted);
  std::uint64_t seen = 0;
  for (const auto& w : support) {
    const auto it = freq.find(w.entries);
    const std::uint64_t c = it == freq.end() ? 0 : it->second;
    seen += c;
    out.table.add({multiset_text(w), static_cast<std::int64_t>(c), c / total,
                   1.0 / static_cast<double>(support.size()), static_cast<std::int64_t>(attempts)});
  }
  out.ok = seen == o.accepted;  // every sample lies in the enumerated support
  return out;
}

Outcome cmd_shape_t0(const Options& o) {
  const auto cone = parse_cone(o.cone);
  const auto k = default_k(cone, o.k);
  RatVec a(k.begin(), k.end());
  const auto cap = solve_cap(cone, a);
  const int d = cone.dimension();
  const int size = o.net > 0 ? o.net : (d == 2 ? kDefaultNet2 : kDefaultNet3);
  const auto prof = zonoid_profile(cap, direction_net(d, size));
  Outcome out{{{"v", "h"}}};
  for (std::size_t i = 0; i < prof.values.size(); ++i)
    out.table.add({prof.directions[i], prof.values[i]});
  return out;
}

Outcome cmd_shape_converge(const Options& o) {
  const auto cone = parse_cone(o.cone);
  check_sorted(o.ns, "shape converge");
  LimitShapeConfig cfg;
  cfg.cone = &cone;
  cfg.k = default_k(cone, o.k);
  cfg.ns = o.ns;
  cfg.replicas = o.replicas ? o.replicas : 200;
  cfg.seed = o.seed;
  cfg.net = o.net;
  cfg.eps = o.eps;
  Outcome out{{{"n", "replicas", "median", "quantile90", "deviation_probability", "mean_support",
                "support_se", "limit_support"}}};
  for (const auto& r : limit_shape_experiment(cfg))
    out.table.add({r.n, static_cast<std::int64_t>(r.replicas), r.median, r.quantile90,
                   r.deviation_probability, r.mean_support, r.support_se, r.limit_support});
  return out;
}

Outcome cmd_shape_boundary(const Options& o) {
  const auto b = boundary_equation_check(o.d, o.grid);
  Outcome out{{{"d", "checked", "skipped", "max_residual"}}};
  out.table.add({std::int64_t{o.d}, std::int64_t{b.checked}, std::int64_t{b.skipped},
                 b.max_residual});
  out.ok = b.max_residual < 1e-9;
  return out;
}

Outcome cmd_faces_count(const Options& o) {
  if (o.generators.empty()) throw ConfigError("faces count: --generators is required");
  const auto j = nlohmann::json::parse(read_file(o.generators));
  std::vector<IntVec> vs;
  int d = 0;
  const auto& list = j.is_array() ? j : j.at("generators");
  for (const auto& g : list) vs.push_back(g.get<IntVec>());
  if (j.is_object() && j.contains("d")) d = j.at("d").get<int>();
  if (d == 0 && !vs.empty()) d = static_cast<int>(vs.front().size());
  const auto w = canonicalize(vs);
  Outcome out{{{"method", "f", "towers"}}};
  const auto fc = face_counts(w, d);
  out.table.add({to_string(fc.method), fc.f, fc.towers});
  if (o.oracle) {
    const auto ho = hull_oracle(w, d);
    out.table.add({to_string(ho.method), ho.f, ho.towers});
    out.ok = ho == fc;
  }
  return out;
}

Outcome cmd_faces_ar(const Options& o) {
  const auto a = a_r_cells(o.r);
  Outcome out{{{"r", "planes", "rays", "sectors", "chambers", "towers"}}};
  out.table.add({std::int64_t{o.r}, a.planes, a.cells[1], a.cells[2], a.cells[3], a.towers});
  return out;
}

Outcome cmd_faces_experiment(const Options& o) {
  const auto cone = parse_cone(o.cone);
  check_sorted(o.ns, "faces experiment");
  FaceStatisticsConfig cfg;
  cfg.cone = &cone;
  cfg.k = default_k(cone, o.k);
  cfg.ns = o.ns;
  cfg.replicas = o.replicas ? o.replicas : 100;
  cfg.seed = o.seed;
  Outcome out{{{"n", "replicas", "scale", "ratio_mean", "f0_ratio_min", "f0_ratio_max",
                "generators_mean"}}};
  for (const auto& r : face_statistics_experiment(cfg))
    out.table.add({r.n, static_cast<std::int64_t>(r.replicas), r.scale, r.ratio_mean,
                   r.f0_ratio_min, r.f0_ratio_max, r.generators_mean});
  return out;
}

Outcome cmd_verify(const Options& o, Format format, std::ostream& os) {
  std::vector<int> ids = o.criteria;
  if (ids.empty())
    for (int i = 1; i <= acceptance::kCriteria; ++i) ids.push_back(i);
  const std::set<int> allowed(o.expect_fail.begin(), o.expect_fail.end());
  Outcome out{{{"id", "name", "status", "seconds", "limit_seconds", "detail"}}};
  for (int id : ids) {
    const auto r = acceptance::run_criterion(id, o.seed);
    if (format == Format::Text) os << acceptance::format(r) << "\n" << std::flush;
    out.table.add({std::int64_t{id}, r.name, std::string(r.pass ? "PASS" : "FAIL"), r.seconds,
                   r.limit_seconds, r.detail});
    if (!r.pass && !allowed.count(id)) out.ok = false;
  }
  return out;
}

}  // namespace

IntVec parse_int_vector(const std::string& text) {
  IntVec v;
  for (const auto& t : split_tokens(text)) {
    std::size_t used = 0;
    long long x = 0;
    try {
      x = std::stoll(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw ConfigError("not an integer: '" + t + "'");
    v.push_back(x);
  }
  if (v.empty()) throw ConfigError("empty vector '" + text + "'");
  return v;
}

PolyhedralCone parse_cone(const std::string& spec) {
  if (spec.rfind("orthant", 0) == 0 && spec.size() > 7) {
    const int d = std::stoi(spec.substr(7));
    if (d < 1 || d > 9) throw ConfigError("orthant dimension must lie in 1..9");
    return orthant(d);
  }
  if (spec.rfind("circ3:", 0) == 0) {
    const int facets = std::stoi(spec.substr(6));
    if (facets < 3) throw ConfigError("circ3 needs at least 3 facets");
    return regular_cone_approx(std::numbers::pi / 4, facets);
  }
  if (spec.rfind("wedge:", 0) == 0) {
    std::vector<IntVec> gens;
    std::string body = spec.substr(6);
    std::size_t pos = 0;
    while ((pos = body.find('(', pos)) != std::string::npos) {
      const auto end = body.find(')', pos);
      if (end == std::string::npos) throw ConfigError("wedge: unbalanced parentheses");
      gens.push_back(parse_int_vector(body.substr(pos + 1, end - pos - 1)));
      pos = end + 1;
    }
    if (gens.empty()) throw ConfigError("wedge: no generators");
    return PolyhedralCone::from_generators(std::move(gens));
  }
  return cone_from_json(read_file(spec));
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"zonoshape: minimal caps, partition counts, random lattice zonotopes"};
  app.name("zonoshape");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--seed", o.seed, "base seed (default 0)");
  app.add_option("--threads", o.threads, "worker cap")->check(CLI::PositiveNumber);
  app.add_option("--out", o.out, "output file (default stdout)");
  app.add_option("--format", o.format, "text, csv or json")
      ->check(CLI::IsMember({"text", "csv", "json"}));

  std::string csv_out;
  auto add_csv = [&](CLI::App* c) { c->add_option("--csv", csv_out, "write CSV to this file"); };
  auto add_cone = [&](CLI::App* c) {
    c->add_option("--cone", o.cone, "preset or JSON cone file (default orthant2)");
  };
  auto n_list = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--n", o.ns, "n values, ascending")->delimiter(',');
    if (required) opt->required();
  };

  auto* cap = app.add_subcommand("cap", "minimal cap Q(C, a)");
  add_cone(cap);
  cap->add_option("--a", o.a, "moment vector, e.g. 1,1")->required();
  cap->add_flag_callback("--json", [&] { o.format = "json"; }, "same as --format json");

  auto* count = app.add_subcommand("count", "strict vector partitions p(C, k)");
  add_cone(count);
  count->add_option("--k", o.k, "endpoint")->required();
  count->add_option("--n-max", o.n_max, "tabulate p(C, n k) for n = 1..n-max");
  count->add_flag("--non-strict", o.non_strict, "count multisets instead of sets");
  count->add_option("--state-budget", o.state_budget)->check(CLI::PositiveNumber);
  add_csv(count);

  auto* latt = app.add_subcommand("latt", "lattice-point utilities");
  latt->require_subcommand(1);
  auto* density = latt->add_subcommand("density", "share of primitive points in [-N, N]^d");
  density->add_option("--d", o.d);
  density->add_option("--N", o.big_n);
  auto* cubature = latt->add_subcommand("cubature", "cubature inequality on random polytopes");
  cubature->add_option("--trials", o.trials)->check(CLI::PositiveNumber);
  add_csv(cubature);
  auto* gap = latt->add_subcommand("gap", "weighted lattice sum against its integral");
  add_cone(gap);
  gap->add_option("--u", o.u, "dual vector (default all ones)");
  gap->add_option("--beta", o.betas, "beta values")->delimiter(',');
  gap->add_option("--f", o.fn, "one, norm, norm3 or x<i>");
  add_csv(gap);

  auto* gibbs = app.add_subcommand("gibbs", "Boltzmann model of random zonotopes");
  gibbs->require_subcommand(1);
  auto* gsample = gibbs->add_subcommand("sample", "moments over replicas");
  add_cone(gsample);
  gsample->add_option("--k", o.k, "direction (default all ones)");
  gsample->add_option("--n", o.n, "scale")->check(CLI::PositiveNumber);
  gsample->add_option("--replicas", o.replicas)->check(CLI::PositiveNumber);
  add_csv(gsample);
  auto* guniform = gibbs->add_subcommand("uniform", "rejection-conditioned uniform sampling");
  add_cone(guniform);
  guniform->add_option("--nk", o.k, "endpoint")->required();
  guniform->add_option("--accepted", o.accepted)->check(CLI::PositiveNumber);
  guniform->add_option("--max-attempts", o.max_attempts)->check(CLI::PositiveNumber);
  add_csv(guniform);

  auto* shape = app.add_subcommand("shape", "limit shape");
  shape->require_subcommand(1);
  auto* t0 = shape->add_subcommand("t0", "support function of the limit zonoid");
  add_cone(t0);
  t0->add_option("--k", o.k, "direction (default all ones)");
  t0->add_option("--net", o.net, "number of directions")->check(CLI::PositiveNumber);
  add_csv(t0);
  auto* converge = shape->add_subcommand("converge", "Hausdorff distance of T/n to the limit");
  add_cone(converge);
  converge->add_option("--k", o.k, "direction (default all ones)");
  n_list(converge, true);
  converge->add_option("--replicas", o.replicas)->check(CLI::PositiveNumber);
  converge->add_option("--net", o.net)->check(CLI::PositiveNumber);
  converge->add_option("--eps", o.eps)->check(CLI::PositiveNumber);
  add_csv(converge);
  auto* boundary = shape->add_subcommand("boundary", "closed-form boundary residuals");
  boundary->add_option("--d", o.d)->check(CLI::Range(2, 3));
  boundary->add_option("--grid", o.grid)->check(CLI::PositiveNumber);

  auto* faces = app.add_subcommand("faces", "face counts of zonotopes");
  faces->require_subcommand(1);
  auto* fcount = faces->add_subcommand("count", "faces of the zonotope of a generator file");
  fcount->add_option("--generators", o.generators, "JSON file")->required();
  fcount->add_flag("--oracle", o.oracle, "compare with the subset-sum hull");
  auto* ar = faces->add_subcommand("ar", "cells of the arrangement A_r");
  ar->add_option("--r", o.r)->check(CLI::Range(1, 5));
  auto* fexp = faces->add_subcommand("experiment", "f0 / n^{d(d-1)/(d+1)} over replicas");
  add_cone(fexp);
  fexp->add_option("--k", o.k, "direction (default all ones)");
  n_list(fexp, true);
  fexp->add_option("--replicas", o.replicas)->check(CLI::PositiveNumber);
  add_csv(fexp);

  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--criterion", o.criteria, "criteria to run (default all)")
      ->delimiter(',')
      ->check(CLI::Range(1, acceptance::kCriteria));
  verify->add_option("--expect-fail", o.expect_fail, "criteria allowed to fail")->delimiter(',');

  std::string invocation = "zonoshape";
  for (const auto& a : args) invocation += " " + a;

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (!args.empty() && args.front().rfind("-", 0) != 0 && !app.got_subcommand(args.front()))
      err << "error: unknown subcommand '" << args.front() << "'\n\n" << app.help();
    else
      err << "error: " << e.what() << "\n\n" << app.help();
    return kExitConfig;
  }

  if (!csv_out.empty()) {
    o.out = csv_out;
    if (o.format.empty()) o.format = "csv";
  }
  Format format = Format::Text;
  if (o.format == "csv" || (o.format.empty() && !o.out.empty())) format = Format::Csv;
  if (o.format == "json") format = Format::Json;

  try {
    Outcome result;
    if (cap->parsed()) result = cmd_cap(o);
    else if (count->parsed()) result = cmd_count(o);
    else if (density->parsed()) result = cmd_latt_density(o);
    else if (cubature->parsed()) result = cmd_latt_cubature(o);
    else if (gap->parsed()) result = cmd_latt_gap(o);
    else if (gsample->parsed()) result = cmd_gibbs_sample(o);
    else if (guniform->parsed()) result = cmd_gibbs_uniform(o);
    else if (t0->parsed()) result = cmd_shape_t0(o);
    else if (converge->parsed()) result = cmd_shape_converge(o);
    else if (boundary->parsed()) result = cmd_shape_boundary(o);
    else if (fcount->parsed()) result = cmd_faces_count(o);
    else if (ar->parsed()) result = cmd_faces_ar(o);
    else if (fexp->parsed()) result = cmd_faces_experiment(o);
    else if (verify->parsed()) {
      // Text lines stream to stdout as criteria finish; tables go out at the end.
      result = cmd_verify(o, o.out.empty() ? format : Format::Csv, out);
      if (format == Format::Text && o.out.empty()) return result.ok ? kExitOk : kExitAssertion;
    }

    if (o.out.empty()) {
      emit(result.table, format, invocation, out);
    } else {
      std::ofstream file(o.out, std::ios::binary);
      if (!file) throw ConfigError("cannot write " + o.out);
      emit(result.table, format, invocation, file);
      if (!file.flush()) throw ConfigError("write failed: " + o.out);
    }
    if (!result.ok) {
      err << "error: check failed\n";
      return kExitAssertion;
    }
    return kExitOk;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::Budget:
      case ErrorKind::Timeout:
        return kExitBudget;
      case ErrorKind::NonConvergence:
        return kExitAssertion;
      default:
        return kExitConfig;
    }
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitConfig;
  }
}

}  // namespace zonoshape::cli
