#include "circumcone/oracles.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace circumcone::oracles {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

Vector gaussian_unit(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Vector v(n);
  do {
    for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(rng);
  } while (v.norm() == 0.0);
  return v / v.norm();
}

// Symmetric matrix from its scaled upper-triangle vector, written out
// independently of the library's embedding.
Matrix svec_to_matrix(const Vector& z, Eigen::Index n) {
  Matrix m(n, n);
  Eigen::Index k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const double v = (i == j) ? z(k) : z(k) / std::sqrt(2.0);
      m(i, j) = v;
      m(j, i) = v;
      ++k;
    }
  }
  return m;
}

double dense_max_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

Margin margin_for(const ConeDescriptor& cone) {
  return std::visit(
      Overloaded{
          [](const Orthant&) -> Margin { return [](const Vector& z) { return -z.maxCoeff(); }; },
          [](const SecondOrder& s) -> Margin {
            const Eigen::Index m = s.n - 1;
            return [m](const Vector& z) { return -z(m) - z.head(m).norm(); };
          },
          [](const Psd& s) -> Margin {
            const Eigen::Index n = s.n;
            return [n](const Vector& z) { return -dense_max_eigenvalue(svec_to_matrix(z, n)); };
          },
          [](const Dnn&) -> Margin {
            throw Error(ErrorKind::kUnsupportedExact, "no exact polar test for DNN");
          },
          [](const PCone& s) -> Margin {
            const Eigen::Index m = s.n - 1;
            const double q = s.p / (s.p - 1.0);
            return [m, q](const Vector& z) {
              double acc = 0.0;
              for (Eigen::Index i = 0; i < m; ++i) acc += std::pow(std::abs(z(i)), q);
              return -z(m) - std::pow(acc, 1.0 / q);
            };
          },
          [](const Product& s) -> Margin {
            std::vector<std::pair<Eigen::Index, Margin>> parts;
            for (const auto& block : s.blocks) parts.emplace_back(block.dim(), margin_for(block));
            return [parts](const Vector& z) {
              double worst = std::numeric_limits<double>::infinity();
              Eigen::Index offset = 0;
              for (const auto& [size, f] : parts) {
                worst = std::min(worst, f(z.segment(offset, size)));
                offset += size;
              }
              return worst;
            };
          },
          [](const Polyhedral& s) -> Margin {
            const Matrix u = s.base.generators();
            return [u](const Vector& z) { return -(u.transpose() * z).maxCoeff(); };
          },
      },
      cone.variant());
}

void record(ProbeReport& report, double m, double tol) {
  ++report.trials;
  if (m < -tol) ++report.failures;
  report.worst_margin = std::min(report.worst_margin, m);
}

}  // namespace

std::uint64_t sub_seed(std::uint64_t seed, std::uint64_t counter) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (counter + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Extended depth_by_bisection(const Predicate& membership, const Vector& d, const Vector& w,
                            double t_max) {
  if (d.size() != w.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "d and w disagree in size");
  }
  if (!membership(d)) {
    throw Error(ErrorKind::kContractViolation, "bisection start d is not a member");
  }
  if (membership(d + t_max * w)) return Extended::infinity();
  double lo = 0.0;
  double hi = t_max;
  while (hi - lo > kBisectionWidth) {
    const double mid = 0.5 * (lo + hi);
    if (membership(d + mid * w)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return Extended::finite(0.5 * (lo + hi));
}

ProbeReport ball_probe(const Margin& margin, const Vector& d, double radius, int trials,
                       std::uint64_t seed, double tol) {
  if (!(radius > 0.0)) throw Error(ErrorKind::kContractViolation, "radius must be positive");
  ProbeReport report;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 rng(sub_seed(seed, static_cast<std::uint64_t>(i)));
    record(report, margin(d + radius * gaussian_unit(d.size(), rng)), tol);
  }
  return report;
}

ProbeReport directional_probe(const Margin& margin, const Vector& d, double radius,
                              std::span<const Vector> directions, double tol) {
  ProbeReport report;
  report.worst_margin = std::numeric_limits<double>::infinity();
  for (const Vector& e : directions) {
    if (e.size() != d.size()) {
      throw Error(ErrorKind::kDimensionMismatch, "probe direction does not match d");
    }
    record(report, margin(d + radius * e.normalized()), tol);
  }
  return report;
}

double weyl_margin(const Matrix& V) {
  const Eigen::Index n = V.rows();
  Matrix m = -V;
  m.diagonal().array() += 1.0 / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

ProbeReport weyl_check(int n, int trials, std::uint64_t seed) {
  if (n < 2) throw Error(ErrorKind::kContractViolation, "weyl_check needs n >= 2");
  ProbeReport report;
  report.seed = seed;
  report.worst_margin = std::numeric_limits<double>::infinity();
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  for (int i = 0; i < trials; ++i) {
    std::mt19937_64 rng(sub_seed(seed, static_cast<std::uint64_t>(i)));
    Matrix v(n, n);
    for (int r = 0; r < n; ++r) {
      for (int c = r; c < n; ++c) {
        v(r, c) = normal(rng);
        v(c, r) = v(r, c);
      }
    }
    // Every tenth trial sits exactly on the Frobenius sphere.
    const double scale = (i % 10 == 0) ? 1.0 : uniform(rng);
    v *= scale / (static_cast<double>(n) * v.norm());
    record(report, weyl_margin(v), 1e-12);
  }
  return report;
}

Margin polar_margin(const ConeDescriptor& cone) { return margin_for(cone); }

Predicate from_margin(Margin margin, double tol) {
  return [margin = std::move(margin), tol](const Vector& z) { return margin(z) >= -tol; };
}

}  // namespace circumcone::oracles
