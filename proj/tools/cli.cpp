#include "cli.hpp"

#include "circumcone/circumcone.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <random>
#include <regex>
#include <sstream>

namespace circumcone::cli {

namespace {

using json = nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20240607;

// Malformed input (as opposed to a well-formed input the math rejects).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------- parsing

Vector parse_vector(const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw UsageError("not a number: '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw UsageError("not a number: '" + item + "'");
    values.push_back(v);
  }
  if (values.empty()) throw UsageError("empty vector");
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

// Inline JSON when the argument starts with '{', a file path otherwise.
json load_json(const std::string& arg) {
  try {
    if (!arg.empty() && arg.front() == '{') return json::parse(arg);
    std::ifstream in(arg);
    if (!in) throw UsageError("cannot open " + arg);
    return json::parse(in);
  } catch (const json::exception& e) {
    throw UsageError("invalid JSON in " + arg + ": " + e.what());
  }
}

Vector vector_from_json(const json& j) {
  if (!j.is_array()) throw UsageError("expected an array of numbers");
  Vector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_number()) throw UsageError("expected an array of numbers");
    v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  }
  return v;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw UsageError("expected a nonempty nested array");
  const Vector first = vector_from_json(j[0]);
  Matrix m(static_cast<Eigen::Index>(j.size()), first.size());
  for (std::size_t r = 0; r < j.size(); ++r) {
    const Vector row = vector_from_json(j[r]);
    if (row.size() != m.cols()) throw UsageError("ragged matrix rows");
    m.row(static_cast<Eigen::Index>(r)) = row.transpose();
  }
  return m;
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw UsageError(std::string("missing field '") + key + "'");
  }
  return j.at(key);
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_integer()) throw UsageError(std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

double number_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number()) throw UsageError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

ConicBase base_from_json(const json& j) {
  const int n = int_field(j, "n");
  const json& list = field(j, "vectors");
  if (!list.is_array()) throw UsageError("'vectors' must be an array");
  std::vector<Vector> raw;
  for (const auto& item : list) {
    raw.push_back(vector_from_json(item));
    if (raw.back().size() != n) throw UsageError("vector length differs from n");
  }
  return build_base(raw);
}

ConeDescriptor cone_from_json(const json& j) {
  const std::string variant = field(j, "variant").get<std::string>();
  if (variant == "product") {
    std::vector<ConeDescriptor> blocks;
    for (const auto& b : field(j, "blocks")) blocks.push_back(cone_from_json(b));
    return ConeDescriptor::product(std::move(blocks));
  }
  if (variant == "polyhedral") return ConeDescriptor::polyhedral(base_from_json(field(j, "base")));
  const int n = int_field(j, "n");
  if (variant == "orthant") return ConeDescriptor::orthant(n);
  if (variant == "soc") return ConeDescriptor::soc(n);
  if (variant == "psd") return ConeDescriptor::psd(n);
  if (variant == "dnn") return ConeDescriptor::dnn(n);
  if (variant == "pcone") return ConeDescriptor::pcone(n, number_field(j, "p"));
  throw UsageError("unknown cone variant '" + variant + "'");
}

// Shorthand: orthant3, soc5, psd2, dnn3, pcone3:1.5. Anything else is JSON.
ConeDescriptor cone_from_arg(const std::string& arg) {
  static const std::regex shorthand(R"((orthant|soc|psd|dnn|pcone)(\d+)(?::([0-9.eE+-]+))?)");
  std::smatch m;
  if (std::regex_match(arg, m, shorthand)) {
    const std::string kind = m[1];
    const int n = std::stoi(m[2]);
    if (kind == "pcone") {
      if (!m[3].matched) throw UsageError("pcone shorthand needs ':p', e.g. pcone3:1.5");
      return ConeDescriptor::pcone(n, std::stod(m[3]));
    }
    if (m[3].matched) throw UsageError("only pcone takes ':p'");
    json j{{"variant", kind}, {"n", n}};
    return cone_from_json(j);
  }
  return cone_from_json(load_json(arg));
}

LegendreFunction legendre_from_json(const json& j) {
  const std::string family = field(j, "family").get<std::string>();
  if (family == "euclidean") return LegendreFunction::euclidean();
  if (family == "pnorm") return LegendreFunction::pnorm(number_field(j, "p"));
  if (family == "mahalanobis") return LegendreFunction::mahalanobis(matrix_from_json(field(j, "A")));
  throw UsageError("unknown Legendre family '" + family + "'");
}

using Problem = std::variant<LinfProblem, SocpProblem>;

Problem problem_from_json(const json& j) {
  const std::string type = field(j, "type").get<std::string>();
  if (type == "linf") {
    LinfProblem p;
    p.A = matrix_from_json(field(j, "A"));
    p.b = vector_from_json(field(j, "b"));
    p.C = matrix_from_json(field(j, "C"));
    p.dvec = vector_from_json(field(j, "d"));
    p.tau = number_field(j, "tau");
    p.validate();
    return p;
  }
  if (type == "socp") {
    SocpProblem p;
    p.Q = matrix_from_json(field(j, "Q"));
    p.q = vector_from_json(field(j, "q"));
    for (const auto& c : field(j, "constraints")) {
      SocConstraint s;
      s.A = matrix_from_json(field(c, "A"));
      s.b = vector_from_json(field(c, "b"));
      s.c = vector_from_json(field(c, "c"));
      s.delta = number_field(c, "delta");
      p.constraints.push_back(std::move(s));
    }
    p.validate();
    return p;
  }
  throw UsageError("unknown problem type '" + type + "'");
}

// ---------------------------------------------------------------- output

json to_json(const Vector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json to_json(const Extended& e) {
  if (e.is_infinite()) return "+inf";
  return e.value();
}

json to_json(const oracles::ProbeReport& r) {
  return {{"trials", r.trials},
          {"failures", r.failures},
          {"worst_margin", std::isfinite(r.worst_margin) ? json(r.worst_margin) : json("+inf")},
          {"seed", r.seed}};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Writes to --output when given, else to the result stream.
class Sink {
 public:
  Sink(std::ostream& out, const std::string& path) : out_(out), path_(path) {}

  void write(const std::string& text) {
    if (path_.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(path_);
    if (!file) throw UsageError("cannot write " + path_);
    file << text;
  }

 private:
  std::ostream& out_;
  std::string path_;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- commands

std::string route_name(CircumRoute r) {
  switch (r) {
    case CircumRoute::kGram: return "gram";
    case CircumRoute::kProjection: return "proj";
    case CircumRoute::kSystem: return "system";
  }
  return "unknown";
}

std::string cmd_circum(const std::string& base_arg, const std::string& route) {
  const ConicBase base = base_from_json(load_json(base_arg));
  CircumDirection c;
  if (route == "gram") {
    c = circum_via_gram(base);
  } else if (route == "proj") {
    c = circum_via_projection(base);
  } else if (route == "system") {
    c = circum_via_system(base);
  } else {
    c = circum(base);
  }
  const SpectralBounds bounds = spectral_bounds(gram(base));
  json out{{"d", to_json(c.d)},
           {"norm_sq", c.norm_sq},
           {"aperture", c.aperture},
           {"route", route_name(c.route)},
           {"spectral_lo", bounds.lo},
           {"spectral_hi", bounds.hi}};
  if (c.weights) out["weights"] = to_json(*c.weights);
  if (c.gram_condition) out["gram_condition"] = *c.gram_condition;
  return dump(out);
}

std::string cmd_depth(const std::string& base_arg, const std::string& cone_arg,
                      const std::string& dir) {
  const Vector w = parse_vector(dir);
  json out;
  if (!base_arg.empty()) {
    const ConicBase base = base_from_json(load_json(base_arg));
    const CircumDirection c = circum(base);
    const DepthResult r = directional_depth(base, c.norm_sq, w);
    out["rho"] = to_json(r.value);
    out["binding"] = r.binding_index ? json(*r.binding_index) : json(nullptr);
  } else {
    const ConeDescriptor cone = cone_from_arg(cone_arg);
    const ConeDepth r = directional_depth_np(cone, w);
    out["rho"] = to_json(r.value);
    out["binding"] = r.binding_index ? json(*r.binding_index) : json(nullptr);
    if (r.contact) out["contact"] = to_json(*r.contact);
  }
  return dump(out);
}

std::string cmd_step(const std::string& problem_arg, const std::string& point) {
  const Problem problem = problem_from_json(load_json(problem_arg));
  const Vector x = parse_vector(point);
  const StepOracle o = std::visit(
      [&](const auto& p) {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, LinfProblem>) {
          return linf_oracle(p, x);
        } else {
          return socp_oracle(p, x);
        }
      },
      problem);
  json out{{"w", to_json(o.w)}, {"sigma", to_json(o.sigma)}};
  out["active"] = o.cone ? json(o.cone->labels) : json::array();
  out["d"] = o.cone ? to_json(o.cone->circ.d) : json(nullptr);
  out["norm_sq"] = o.cone ? json(o.cone->circ.norm_sq) : json(nullptr);
  return dump(out);
}

std::string cmd_zoo(const std::string& cone_arg, bool hypothesis, int samples,
                    std::uint64_t seed) {
  const ConeDescriptor cone = cone_from_arg(cone_arg);
  json out{{"variant", cone.name()}, {"dim", cone.dim()}};
  if (const auto j = jordan_value(cone)) out["jordan"] = *j;
  if (hypothesis) {
    const auto pts = sample_extremal(cone, samples, seed);
    const HypothesisReport h = hypothesis_check(pts);
    out["hypothesis"] = {{"holds", h.holds},
                         {"distance", h.distance},
                         {"samples", pts.size()},
                         {"seed", seed}};
    // Without the hypothesis there is no direction to report.
    if (!h.holds) return dump(out);
  }
  const CircumDirection c = circum_direction(cone);
  out["d"] = to_json(c.d);
  out["norm_sq"] = c.norm_sq;
  out["aperture"] = c.aperture;
  return dump(out);
}

std::string cmd_bregman(const std::string& h_arg, const std::string& base_arg,
                        const std::string& dir) {
  const LegendreFunction h = legendre_from_json(load_json(h_arg));
  const ConicBase base = base_from_json(load_json(base_arg));
  const BregmanDirection bd = bregman_direction(h, base);
  json out{{"family", h.label()},
           {"c_h", to_json(bd.c_h)},
           {"d_h", to_json(bd.d_h)},
           {"kappa", bd.kappa}};
  if (!dir.empty()) out["sigma"] = to_json(sigma_star_h(bd, base, parse_vector(dir)));
  return dump(out);
}

std::string cmd_fcpg(const std::string& problem_arg, const std::string& x0_arg, int max_iter,
                     double tol) {
  const Problem problem = problem_from_json(load_json(problem_arg));
  FcpgParams params;
  params.max_iter = max_iter;
  params.tol = tol;
  const Vector x0 = parse_vector(x0_arg);
  const FcpgTrace trace =
      std::visit([&](const auto& p) { return run_fcpg(p, x0, params); }, problem);
  std::ostringstream csv;
  write_trace_csv(csv, trace);
  return csv.str();
}

// ---------------------------------------------------------------- verify

struct NamedReport {
  std::string name;
  oracles::ProbeReport report;
  /// "inside": every probe must pass. "outside": at least one must fail.
  std::string expect = "inside";

  bool ok() const {
    return expect == "inside" ? report.failures == 0 : report.failures > 0;
  }
};

Vector gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  return v;
}

ConeDescriptor random_polyhedral(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(2, 6);
  const int n = dim(rng);
  std::uniform_int_distribution<int> count(1, n);
  const int p = count(rng);
  std::vector<Vector> raw;
  for (int i = 0; i < p; ++i) raw.push_back(gaussian(n, rng));
  return ConeDescriptor::polyhedral(build_base(raw));
}

std::vector<std::pair<std::string, std::function<ConeDescriptor(std::mt19937_64&)>>>
depth_families() {
  return {
      {"orthant",
       [](std::mt19937_64& rng) {
         return ConeDescriptor::orthant(std::uniform_int_distribution<int>(1, 8)(rng));
       }},
      {"soc",
       [](std::mt19937_64& rng) {
         return ConeDescriptor::soc(std::uniform_int_distribution<int>(2, 8)(rng));
       }},
      {"psd",
       [](std::mt19937_64& rng) {
         return ConeDescriptor::psd(std::uniform_int_distribution<int>(1, 4)(rng));
       }},
      {"polyhedral", random_polyhedral},
  };
}

// Formula depth vs bisection on the exact polar predicate. A probe fails when
// the two disagree by more than 1e-6 (relative above 1).
std::vector<NamedReport> verify_depth(std::uint64_t seed, int trials) {
  std::vector<NamedReport> out;
  std::uint64_t family_index = 0;
  for (const auto& [name, make] : depth_families()) {
    oracles::ProbeReport r;
    r.seed = oracles::sub_seed(seed, family_index++);
    r.worst_margin = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trials; ++i) {
      std::mt19937_64 rng(oracles::sub_seed(r.seed, static_cast<std::uint64_t>(i)));
      const ConeDescriptor cone = make(rng);
      const Vector w = gaussian(cone.dim(), rng);
      const Vector d = circum_direction(cone).d;
      const Extended formula = directional_depth_np(cone, w).value;
      const Extended oracle = oracles::depth_by_bisection(
          oracles::from_margin(oracles::polar_margin(cone)), d, w);
      double slack = 0.0;
      if (oracle.is_infinite()) {
        slack = formula.as_double() >= oracles::kBisectionCap ? 1e-6 : -1.0;
      } else if (formula.is_infinite()) {
        slack = -1.0;
      } else {
        const double scale = std::max(1.0, std::abs(formula.value()));
        slack = 1e-6 - std::abs(formula.value() - oracle.value()) / scale;
      }
      ++r.trials;
      if (slack < 0.0) ++r.failures;
      r.worst_margin = std::min(r.worst_margin, slack);
    }
    out.push_back({"depth/" + name, r});
  }
  return out;
}

std::vector<NamedReport> verify_ball(std::uint64_t seed, int trials) {
  std::vector<std::pair<std::string, ConeDescriptor>> cones = {
      {"orthant3", ConeDescriptor::orthant(3)},
      {"soc3", ConeDescriptor::soc(3)},
      {"soc5", ConeDescriptor::soc(5)},
      {"psd3", ConeDescriptor::psd(3)},
      {"pcone3:2", ConeDescriptor::pcone(3, 2.0)},
      {"orthant2*soc3",
       ConeDescriptor::product({ConeDescriptor::orthant(2), ConeDescriptor::soc(3)})},
  };
  std::vector<NamedReport> out;
  std::uint64_t k = 0;
  for (const auto& [name, cone] : cones) {
    const std::uint64_t s = oracles::sub_seed(seed, k++);
    const CircumDirection c = circum_direction(cone);
    const auto margin = oracles::polar_margin(cone);
    out.push_back({"ball/" + name, oracles::ball_probe(margin, c.d, 0.999 * c.norm_sq, trials, s)});
    const auto dirs = sample_extremal(cone, 16, s);
    oracles::ProbeReport outer = oracles::directional_probe(margin, c.d, 1.001 * c.norm_sq, dirs);
    outer.seed = s;
    out.push_back({"ball-tight/" + name, outer, "outside"});
  }
  return out;
}

std::vector<NamedReport> verify_weyl(std::uint64_t seed, int trials) {
  std::vector<NamedReport> out;
  for (int n : {2, 3, 5}) {
    out.push_back({"weyl/n" + std::to_string(n),
                   oracles::weyl_check(n, trials, oracles::sub_seed(seed, static_cast<std::uint64_t>(n)))});
  }
  return out;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, int trials, Sink& sink) {
  std::vector<NamedReport> reports;
  auto append = [&](std::vector<NamedReport> more) {
    reports.insert(reports.end(), more.begin(), more.end());
  };
  if (suite == "all" || suite == "depth") append(verify_depth(seed, std::min(trials, 200)));
  if (suite == "all" || suite == "ball") append(verify_ball(seed, trials));
  if (suite == "all" || suite == "weyl") append(verify_weyl(seed, trials));

  json list = json::array();
  int failed = 0;
  for (const auto& r : reports) {
    json j = to_json(r.report);
    j["name"] = r.name;
    j["expect"] = r.expect;
    j["ok"] = r.ok();
    if (!r.ok()) ++failed;
    list.push_back(std::move(j));
  }
  sink.write(dump({{"suite", suite}, {"seed", seed}, {"reports", list}, {"failed", failed}}));
  return failed == 0 ? kExitOk : kExitDomain;
}

// ---------------------------------------------------------------- figures

class Csv {
 public:
  explicit Csv(const std::string& header) { out_ << header << "\n"; }

  void row(const std::string& series, std::initializer_list<double> values) {
    out_ << series;
    for (double v : values) out_ << "," << fmt(v);
    out_ << "\n";
  }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

// v-plane of the orthant example: the admissible set, the inscribed disc,
// contact points, the two arrows along the diagonal and the recession ray.
std::string figure_orthant() {
  const ConicBase base = build_base(std::vector<Vector>{Vector::Unit(2, 0), Vector::Unit(2, 1)});
  const CircumDirection c = circum(base);
  const double r = c.norm_sq;
  const double far = 3.0;
  Csv csv("series,x,y");
  csv.row("P_boundary", {-far, r});
  csv.row("P_boundary", {r, r});
  csv.row("P_boundary", {r, -far});
  constexpr int kArc = 180;
  for (int k = 0; k <= kArc; ++k) {
    const double a = 2.0 * std::numbers::pi * k / kArc;
    csv.row("ball", {r * std::cos(a), r * std::sin(a)});
  }
  for (const Vector& p : contact_points(base, r)) csv.row("contact", {p(0), p(1)});
  const Vector w = Vector::Ones(2) / std::sqrt(2.0);
  const double rho = directional_depth(base, r, w).value.value();
  csv.row("ball_arrow", {0.0, 0.0});
  csv.row("ball_arrow", {r * w(0), r * w(1)});
  csv.row("depth_arrow", {0.0, 0.0});
  csv.row("depth_arrow", {rho * w(0), rho * w(1)});
  for (int k = 0; k <= 10; ++k) {
    const double t = far * k / 10.0;
    csv.row("recession", {-t, -t});
  }
  return csv.str();
}

// (x1, x2, t) space for SOC(3): cone and polar rulings, the extremal circle,
// d, the inscribed ball's equator and the contact circle split into front
// (x2 <= 0) and back halves, and recession samples below d.
std::string figure_soc() {
  const ConeDescriptor cone = ConeDescriptor::soc(3);
  const CircumDirection c = circum_direction(cone);
  const double r = c.norm_sq;
  const double h = -c.d(2);
  Csv csv("series,x,y,z");
  constexpr int kArc = 180;
  auto circle = [&](const std::string& name, double radius, double height, bool split) {
    for (int k = 0; k <= kArc; ++k) {
      const double a = 2.0 * std::numbers::pi * k / kArc;
      const double x = radius * std::cos(a);
      const double y = radius * std::sin(a);
      std::string series = name;
      if (split) series += (y <= 0.0) ? "_front" : "_back";
      csv.row(series, {x, y, height});
    }
  };
  for (int k = 0; k < 12; ++k) {
    const double a = 2.0 * std::numbers::pi * k / 12;
    const std::string id = std::to_string(k);
    csv.row("K_ruling" + id, {0.0, 0.0, 0.0});
    csv.row("K_ruling" + id, {std::cos(a), std::sin(a), 1.0});
    csv.row("polar_ruling" + id, {0.0, 0.0, 0.0});
    csv.row("polar_ruling" + id, {std::cos(a), std::sin(a), -1.0});
  }
  circle("extremal", h, h, false);
  csv.row("d", {c.d(0), c.d(1), c.d(2)});
  circle("equator", r, c.d(2), true);
  // Contact points d + r u for u = (omega/sqrt2, 1/sqrt2).
  circle("contact", r * h, c.d(2) + r * h, true);
  for (int k = 0; k <= 10; ++k) csv.row("recession", {0.0, 0.0, c.d(2) - 0.2 * k});
  return csv.str();
}

std::uint64_t resolve_seed(std::uint64_t flag) {
  if (const char* env = std::getenv("CIRCUMCONE_SEED")) {
    try {
      std::size_t used = 0;
      const unsigned long long v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("CIRCUMCONE_SEED is not an unsigned integer");
  }
  return flag;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circumcentric directions, admissible sets and step oracles for convex cones",
               "circumcone"};
  app.require_subcommand(1, 1);

  std::string output;
  std::uint64_t seed = kDefaultSeed;
  std::string base_arg, cone_arg, dir, route = "auto", problem_arg, point, h_arg, x0, suite,
                                      name;
  bool hypothesis = false;
  int samples = 256;
  int max_iter = 200;
  int trials = 1000;
  double tol = 1e-8;

  auto* circum_cmd = app.add_subcommand("circum", "Circumcentric direction of a conic base");
  circum_cmd->add_option("--base", base_arg, "Base JSON {n, vectors}")->required();
  circum_cmd->add_option("--route", route, "auto|gram|proj|system")
      ->check(CLI::IsMember({"auto", "gram", "proj", "system"}));

  auto* depth_cmd = app.add_subcommand("depth", "Directional depth rho(w)");
  auto* depth_base = depth_cmd->add_option("--base", base_arg, "Base JSON");
  auto* depth_cone = depth_cmd->add_option("--cone", cone_arg, "Cone JSON or shorthand (soc3)");
  depth_base->excludes(depth_cone);
  depth_cmd->add_option("--dir", dir, "Direction w, comma separated")->required();

  auto* step_cmd = app.add_subcommand("step", "Active cone and sharp step at a point");
  step_cmd->add_option("--problem", problem_arg, "Problem JSON")->required();
  step_cmd->add_option("--point", point, "Point x, comma separated")->required();

  auto* zoo_cmd = app.add_subcommand("zoo", "Closed-form direction of a canonical cone");
  zoo_cmd->add_option("--cone", cone_arg, "Cone JSON or shorthand")->required();
  zoo_cmd->add_flag("--hypothesis", hypothesis, "Check the affine-hull hypothesis by sampling");
  zoo_cmd->add_option("--samples", samples, "Extremal samples")->check(CLI::PositiveNumber);
  zoo_cmd->add_option("--seed", seed, "Sampling seed");

  auto* bregman_cmd = app.add_subcommand("bregman", "Bregman direction d_h and margin kappa");
  // --h would collide with the default -h help flag.
  bregman_cmd->set_help_flag("--help", "Print this help message and exit");
  bregman_cmd->add_option("--h", h_arg, "Legendre JSON {family, p?, A?}")->required();
  bregman_cmd->add_option("--base", base_arg, "Base JSON")->required();
  bregman_cmd->add_option("--dir", dir, "Optional w for the Bregman sharp step");

  auto* fcpg_cmd = app.add_subcommand("fcpg", "Feasibility-corrected projected gradient trace");
  fcpg_cmd->add_option("--problem", problem_arg, "Problem JSON")->required();
  fcpg_cmd->add_option("--x0", x0, "Feasible start, comma separated")->required();
  fcpg_cmd->add_option("--max-iter", max_iter, "Iteration cap")->check(CLI::NonNegativeNumber);
  fcpg_cmd->add_option("--tol", tol, "Gradient-norm stopping tolerance");

  auto* verify_cmd = app.add_subcommand("verify", "Brute-force oracle suites");
  verify_cmd->add_option("--suite", suite, "all|depth|ball|weyl")
      ->required()
      ->check(CLI::IsMember({"all", "depth", "ball", "weyl"}));
  verify_cmd->add_option("--seed", seed, "Seed");
  verify_cmd->add_option("--trials", trials, "Trials per report")->check(CLI::PositiveNumber);

  auto* figure_cmd = app.add_subcommand("figure", "Point sets for the orthant and SOC pictures");
  figure_cmd->add_option("--name", name, "orthant|soc")
      ->required()
      ->check(CLI::IsMember({"orthant", "soc"}));

  for (auto* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->add_option("--output,-o", output, "Write the result here instead of stdout");
  }

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
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    seed = resolve_seed(seed);
    Sink sink(out, output);
    if (circum_cmd->parsed()) {
      sink.write(cmd_circum(base_arg, route));
    } else if (depth_cmd->parsed()) {
      if (base_arg.empty() == cone_arg.empty()) throw UsageError("give exactly one of --base, --cone");
      sink.write(cmd_depth(base_arg, cone_arg, dir));
    } else if (step_cmd->parsed()) {
      sink.write(cmd_step(problem_arg, point));
    } else if (zoo_cmd->parsed()) {
      sink.write(cmd_zoo(cone_arg, hypothesis, samples, seed));
    } else if (bregman_cmd->parsed()) {
      sink.write(cmd_bregman(h_arg, base_arg, dir));
    } else if (fcpg_cmd->parsed()) {
      sink.write(cmd_fcpg(problem_arg, x0, max_iter, tol));
    } else if (verify_cmd->parsed()) {
      return cmd_verify(suite, seed, trials, sink);
    } else if (figure_cmd->parsed()) {
      sink.write(name == "orthant" ? figure_orthant() : figure_soc());
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const json::exception& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace circumcone::cli
