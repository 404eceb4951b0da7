#include "circumcone/cone_zoo.hpp"

#include "circumcone/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace circumcone {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Vector random_unit(Eigen::Index m, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector v(m);
  double norm = 0.0;
  while (norm < 1e-12) {
    for (Eigen::Index i = 0; i < m; ++i) v(i) = gauss(rng);
    norm = v.norm();
  }
  return v / norm;
}

Eigen::Index svec_dim(Eigen::Index n) { return n * (n + 1) / 2; }

double lp_norm(const Vector& x, double p) {
  return std::pow(x.cwiseAbs().array().pow(p).sum(), 1.0 / p);
}

Vector pcone_point(const Vector& omega, double p) {
  const Eigen::Index m = omega.size();
  const double t = lp_norm(omega, p);
  Vector u(m + 1);
  u.head(m) = omega;
  u(m) = t;
  return u / std::sqrt(1.0 + t * t);
}

void check_dim(const ConeDescriptor& c, const Vector& w) {
  if (w.size() != c.dim()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "vector has dimension " + std::to_string(w.size()) + ", cone " + c.name() +
                    " lives in R^" + std::to_string(c.dim()));
  }
}

[[noreturn]] void unsupported(const std::string& name) {
  throw Error(ErrorKind::kUnsupportedExact,
              "no exact extremal support / polar oracle for " + name +
                  "; use the sampled variant");
}

CircumDirection closed_form(Vector d, double norm_sq) {
  CircumDirection out;
  out.d = std::move(d);
  out.norm_sq = norm_sq;
  out.aperture = std::acos(std::clamp(std::sqrt(norm_sq), 0.0, 1.0));
  out.route = CircumRoute::kProjection;
  return out;
}

struct Support {
  double value;
  Vector contact;
  std::optional<Eigen::Index> index;
};

Support support_with_contact(const ConeDescriptor& c, const Vector& w) {
  return std::visit(
      Overloaded{
          [&](const Orthant& o) -> Support {
            Eigen::Index best = 0;
            for (Eigen::Index i = 1; i < o.n; ++i) {
              if (w(i) > w(best)) best = i;
            }
            return {w(best), Vector::Unit(o.n, best), best};
          },
          [&](const SecondOrder& s) -> Support {
            const Eigen::Index m = s.n - 1;
            const double wx = w.head(m).norm();
            Vector u(s.n);
            u.head(m) = wx > 0.0 ? Vector(w.head(m) / wx) : Vector(Vector::Unit(m, 0));
            u.head(m) *= kInvSqrt2;
            u(m) = kInvSqrt2;
            return {(wx + w(m)) * kInvSqrt2, u, std::nullopt};
          },
          [&](const Psd& p) -> Support {
            const SymmetricEigen eig = jacobi_eigen(psd_unembed(w, p.n));
            const Vector top = eig.vectors.col(p.n - 1);
            return {eig.values(p.n - 1), psd_embed(top * top.transpose()), std::nullopt};
          },
          [&](const Dnn&) -> Support { unsupported("dnn"); },
          [&](const PCone&) -> Support { unsupported("pcone"); },
          [&](const Polyhedral& poly) -> Support {
            const Vector products = poly.base.generators().transpose() * w;
            Eigen::Index best = 0;
            for (Eigen::Index i = 1; i < products.size(); ++i) {
              if (products(i) > products(best)) best = i;
            }
            return {products(best), poly.base.generator(best), best};
          },
          [&](const Product& prod) -> Support {
            Support best{-std::numeric_limits<double>::infinity(), Vector(), std::nullopt};
            Eigen::Index offset = 0;
            for (const ConeDescriptor& block : prod.blocks) {
              const Eigen::Index k = block.dim();
              Support s = support_with_contact(block, w.segment(offset, k));
              if (s.value > best.value) {
                best.value = s.value;
                best.contact = Vector::Zero(c.dim());
                best.contact.segment(offset, k) = s.contact;
              }
              offset += k;
            }
            return best;
          },
      },
      c.variant());
}

}  // namespace

ConeDescriptor::ConeDescriptor(Variant v) : variant_(std::move(v)) {
  auto fail = [](const std::string& msg) { throw Error(ErrorKind::kConstruction, msg); };
  std::visit(Overloaded{
                 [&](const Orthant& o) {
                   if (o.n < 1) fail("orthant dimension must be >= 1");
                 },
                 [&](const SecondOrder& s) {
                   if (s.n < 2) fail("second-order cone dimension must be >= 2");
                 },
                 [&](const Psd& p) {
                   if (p.n < 1) fail("psd order must be >= 1");
                 },
                 [&](const Dnn& d) {
                   if (d.n < 1) fail("dnn order must be >= 1");
                 },
                 [&](const PCone& pc) {
                   if (pc.n < 3) fail("p-cone dimension must be >= 3");
                   if (!(pc.p > 1.0) || !std::isfinite(pc.p)) fail("p-cone needs 1 < p < inf");
                 },
                 [&](const Product& prod) {
                   if (prod.blocks.empty()) fail("product cone needs at least one block");
                 },
                 [&](const Polyhedral&) {},
             },
             variant_);
}

Eigen::Index ConeDescriptor::dim() const {
  return std::visit(Overloaded{
                        [](const Orthant& o) { return o.n; },
                        [](const SecondOrder& s) { return s.n; },
                        [](const Psd& p) { return svec_dim(p.n); },
                        [](const Dnn& d) { return svec_dim(d.n); },
                        [](const PCone& pc) { return pc.n; },
                        [](const Product& prod) {
                          Eigen::Index total = 0;
                          for (const auto& b : prod.blocks) total += b.dim();
                          return total;
                        },
                        [](const Polyhedral& poly) { return poly.base.dim(); },
                    },
                    variant_);
}

std::string ConeDescriptor::name() const {
  return std::visit(Overloaded{
                        [](const Orthant&) { return std::string("orthant"); },
                        [](const SecondOrder&) { return std::string("soc"); },
                        [](const Psd&) { return std::string("psd"); },
                        [](const Dnn&) { return std::string("dnn"); },
                        [](const PCone&) { return std::string("pcone"); },
                        [](const Product&) { return std::string("product"); },
                        [](const Polyhedral&) { return std::string("polyhedral"); },
                    },
                    variant_);
}

Vector psd_embed(const Matrix& x) {
  const Eigen::Index n = x.rows();
  Vector v(svec_dim(n));
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    v(k++) = x(i, i);
    for (Eigen::Index j = i + 1; j < n; ++j) v(k++) = std::numbers::sqrt2 * x(i, j);
  }
  return v;
}

Matrix psd_unembed(const Vector& v, Eigen::Index n) {
  if (v.size() != svec_dim(n)) {
    throw Error(ErrorKind::kDimensionMismatch, "half-vectorization has the wrong length");
  }
  Matrix x(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    x(i, i) = v(k++);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      x(i, j) = v(k++) / std::numbers::sqrt2;
      x(j, i) = x(i, j);
    }
  }
  return x;
}

CircumDirection circum_direction(const ConeDescriptor& c) {
  return std::visit(
      Overloaded{
          [](const Orthant& o) {
            const double inv = 1.0 / static_cast<double>(o.n);
            return closed_form(Vector::Constant(o.n, -inv), inv);
          },
          [](const SecondOrder& s) {
            Vector d = Vector::Zero(s.n);
            d(s.n - 1) = -kInvSqrt2;
            return closed_form(std::move(d), 0.5);
          },
          [](const Psd& p) {
            const double inv = 1.0 / static_cast<double>(p.n);
            return closed_form(-psd_embed(Matrix::Identity(p.n, p.n) * inv), inv);
          },
          [](const Dnn& d) {
            const double inv = 1.0 / static_cast<double>(d.n);
            return closed_form(-psd_embed(Matrix::Identity(d.n, d.n) * inv), inv);
          },
          [](const PCone& pc) {
            if (pc.p != 2.0) {
              std::ostringstream msg;
              msg << "p-cone with p = " << pc.p
                  << ": aff(E_K) is all of R^" << pc.n << " (distance 0)";
              throw Error(ErrorKind::kHypothesisFails, msg.str());
            }
            return circum_direction(ConeDescriptor::soc(pc.n));
          },
          [](const Product& prod) {
            std::vector<CircumDirection> parts;
            double resistance = 0.0;
            for (const auto& block : prod.blocks) {
              parts.push_back(circum_direction(block));
              resistance += 1.0 / parts.back().norm_sq;
            }
            Eigen::Index total = 0;
            for (const auto& part : parts) total += part.d.size();
            Vector d(total);
            Eigen::Index offset = 0;
            for (const auto& part : parts) {
              const double weight = (1.0 / part.norm_sq) / resistance;
              d.segment(offset, part.d.size()) = weight * part.d;
              offset += part.d.size();
            }
            return closed_form(std::move(d), 1.0 / resistance);
          },
          [](const Polyhedral& poly) {
            CircumDirection out = circum(poly.base);
            const double distance = std::sqrt(out.norm_sq);
            if (!(distance > kHypothesisTol)) {
              std::ostringstream msg;
              msg << "polyhedral base: aff(B_K) passes within " << distance << " of the origin";
              throw Error(ErrorKind::kHypothesisFails, msg.str());
            }
            return out;
          },
      },
      c.variant());
}

std::vector<Vector> sample_extremal(const ConeDescriptor& c, int count, std::uint64_t seed) {
  if (count < 1) throw Error(ErrorKind::kContractViolation, "sample count must be >= 1");
  std::mt19937_64 rng(splitmix64(seed));
  std::vector<Vector> out;
  std::visit(
      Overloaded{
          [&](const Orthant& o) {
            for (Eigen::Index i = 0; i < std::min<Eigen::Index>(count, o.n); ++i) {
              out.push_back(Vector::Unit(o.n, i));
            }
          },
          [&](const SecondOrder& s) {
            const Eigen::Index m = s.n - 1;
            for (int k = 0; k < count; ++k) {
              Vector u(s.n);
              u.head(m) = random_unit(m, rng) * kInvSqrt2;
              u(m) = kInvSqrt2;
              out.push_back(std::move(u));
            }
          },
          [&](const Psd& p) {
            for (int k = 0; k < count; ++k) {
              const Vector v = random_unit(p.n, rng);
              out.push_back(psd_embed(v * v.transpose()));
            }
          },
          [&](const Dnn& d) {
            for (int k = 0; k < count; ++k) {
              const Vector v = random_unit(d.n, rng).cwiseAbs();
              out.push_back(psd_embed(v * v.transpose()));
            }
          },
          [&](const PCone& pc) {
            const Eigen::Index m = pc.n - 1;
            std::vector<Vector> witnesses = {Vector::Unit(m, 0), -Vector::Unit(m, 0),
                                             Vector::Unit(m, 1), -Vector::Unit(m, 1),
                                             (Vector::Unit(m, 0) + Vector::Unit(m, 1)) *
                                                 kInvSqrt2};
            for (int k = 0; k < count; ++k) {
              const Vector omega = static_cast<std::size_t>(k) < witnesses.size()
                                       ? witnesses[static_cast<std::size_t>(k)]
                                       : random_unit(m, rng);
              out.push_back(pcone_point(omega, pc.p));
            }
          },
          [&](const Polyhedral& poly) {
            for (Eigen::Index i = 0; i < poly.base.size(); ++i) {
              out.push_back(poly.base.generator(i));
            }
          },
          [&](const Product& prod) {
            const Eigen::Index total = c.dim();
            Eigen::Index offset = 0;
            std::uint64_t block_seed = seed;
            for (const auto& block : prod.blocks) {
              block_seed = splitmix64(block_seed);
              for (const Vector& u : sample_extremal(block, count, block_seed)) {
                Vector e = Vector::Zero(total);
                e.segment(offset, u.size()) = u;
                out.push_back(std::move(e));
              }
              offset += block.dim();
            }
          },
      },
      c.variant());
  return out;
}

HypothesisReport hypothesis_check(std::span<const Vector> samples) {
  if (samples.empty()) {
    throw Error(ErrorKind::kContractViolation, "hypothesis check needs at least one sample");
  }
  Matrix points(samples.front().size(), static_cast<Eigen::Index>(samples.size()));
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].size() != points.rows()) {
      throw Error(ErrorKind::kDimensionMismatch, "samples have mixed dimensions");
    }
    points.col(static_cast<Eigen::Index>(i)) = samples[i];
  }
  const AffineProjection proj = project_origin_onto_affine_hull(points);
  HypothesisReport report;
  report.distance = proj.point.norm();
  report.holds = report.distance > kHypothesisTol;
  if (report.holds) report.witness = closed_form(-proj.point, proj.point.squaredNorm());
  return report;
}

double support_on_extremal(const ConeDescriptor& c, const Vector& w) {
  check_dim(c, w);
  return support_with_contact(c, w).value;
}

double support_sampled(const ConeDescriptor& c, const Vector& w, int count, std::uint64_t seed) {
  check_dim(c, w);
  double best = -std::numeric_limits<double>::infinity();
  for (const Vector& u : sample_extremal(c, count, seed)) best = std::max(best, w.dot(u));
  return best;
}

ConeDepth directional_depth_np(const ConeDescriptor& c, const Vector& w) {
  check_dim(c, w);
  if (w.isZero(0.0)) throw Error(ErrorKind::kZeroDirection, "directional depth of w = 0");
  const CircumDirection dir = circum_direction(c);
  Support s = support_with_contact(c, w);
  if (s.value <= 0.0) return {};
  return {Extended::finite(dir.norm_sq / s.value), std::move(s.contact), s.index};
}

bool polar_membership(const ConeDescriptor& c, const Vector& z) {
  check_dim(c, z);
  return std::visit(
      Overloaded{
          [&](const Orthant&) { return z.maxCoeff() <= kPolarTol; },
          [&](const SecondOrder& s) {
            return z.head(s.n - 1).norm() <= -z(s.n - 1) + kPolarTol;
          },
          [&](const Psd& p) { return max_eigenvalue(psd_unembed(z, p.n)) <= kPolarTol; },
          [&](const Dnn&) -> bool { unsupported("dnn"); },
          [&](const PCone& pc) {
            // The dual of the p-cone is the q-cone with 1/p + 1/q = 1.
            const double q = pc.p / (pc.p - 1.0);
            return lp_norm(z.head(pc.n - 1), q) <= -z(pc.n - 1) + kPolarTol;
          },
          [&](const Polyhedral& poly) {
            return (poly.base.generators().transpose() * z).maxCoeff() <= kPolarTol;
          },
          [&](const Product& prod) {
            Eigen::Index offset = 0;
            for (const auto& block : prod.blocks) {
              if (!polar_membership(block, z.segment(offset, block.dim()))) return false;
              offset += block.dim();
            }
            return true;
          },
      },
      c.variant());
}

bool polar_not_falsified(const ConeDescriptor& c, const Vector& z, int count,
                         std::uint64_t seed) {
  return support_sampled(c, z, count, seed) <= kPolarTol;
}

std::optional<double> jordan_value(const ConeDescriptor& c) {
  return std::visit(Overloaded{
                        [](const Orthant& o) -> std::optional<double> {
                          return 1.0 / static_cast<double>(o.n);
                        },
                        [](const SecondOrder&) -> std::optional<double> { return 0.5; },
                        [](const Psd& p) -> std::optional<double> {
                          return 1.0 / static_cast<double>(p.n);
                        },
                        [](const auto&) -> std::optional<double> { return std::nullopt; },
                    },
                    c.variant());
}

}  // namespace circumcone
