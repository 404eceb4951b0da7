#include "circumcone/cone_zoo.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace circumcone {
namespace {

using testing::vec;

const double kRt2 = std::sqrt(2.0);

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no circumcone::Error thrown";
  return ErrorKind::kContractViolation;
}

// Embedded symmetric matrix written out by hand: diagonal entries, then
// off-diagonals times sqrt(2), row by row.
Vector embed2(double a, double b, double c) { return vec({a, kRt2 * b, c}); }

std::vector<ConeDescriptor> families_with_hypothesis() {
  return {ConeDescriptor::orthant(4),
          ConeDescriptor::soc(3),
          ConeDescriptor::soc(6),
          ConeDescriptor::psd(2),
          ConeDescriptor::psd(4),
          ConeDescriptor::dnn(3),
          ConeDescriptor::pcone(4, 2.0),
          ConeDescriptor::product({ConeDescriptor::soc(3), ConeDescriptor::psd(2)})};
}

TEST(Descriptor, ValidatesAndReportsDimension) {
  EXPECT_EQ(ConeDescriptor::psd(3).dim(), 6);
  EXPECT_EQ(ConeDescriptor::product({ConeDescriptor::orthant(2), ConeDescriptor::soc(3)}).dim(),
            5);
  EXPECT_EQ(kind_of([] { ConeDescriptor::orthant(0); }), ErrorKind::kConstruction);
  EXPECT_EQ(kind_of([] { ConeDescriptor::soc(1); }), ErrorKind::kConstruction);
  EXPECT_EQ(kind_of([] { ConeDescriptor::pcone(3, 1.0); }), ErrorKind::kConstruction);
  EXPECT_EQ(kind_of([] { ConeDescriptor::pcone(2, 3.0); }), ErrorKind::kConstruction);
  EXPECT_EQ(kind_of([] { ConeDescriptor::product({}); }), ErrorKind::kConstruction);
}

TEST(Embedding, IsIsometricRoundTrip) {
  auto rng = testing::make_rng(31);
  for (int n = 1; n <= 5; ++n) {
    Matrix a = testing::gaussian(n * n, rng).reshaped(n, n);
    a = (a + a.transpose()).eval();
    Matrix b = testing::gaussian(n * n, rng).reshaped(n, n);
    b = (b + b.transpose()).eval();
    EXPECT_NEAR(psd_embed(a).dot(psd_embed(b)), (a * b).trace(), 1e-12);
    EXPECT_LT((psd_unembed(psd_embed(a), n) - a).norm(), 1e-14);
  }
  EXPECT_EQ(psd_embed((Matrix(2, 2) << 1, 2, 2, 3).finished()), embed2(1, 2, 3));
}

TEST(CircumDirection, ClosedForms) {
  const CircumDirection soc = circum_direction(ConeDescriptor::soc(3));
  EXPECT_NEAR((soc.d - vec({0, 0, -1 / kRt2})).norm(), 0.0, 1e-15);
  EXPECT_EQ(soc.norm_sq, 0.5);

  const CircumDirection psd = circum_direction(ConeDescriptor::psd(2));
  EXPECT_NEAR((psd.d - embed2(-0.5, 0, -0.5)).norm(), 0.0, 1e-15);
  EXPECT_EQ(psd.norm_sq, 0.5);
  EXPECT_NEAR(psd.d.squaredNorm(), psd.norm_sq, 1e-15);

  const CircumDirection orth = circum_direction(ConeDescriptor::orthant(5));
  EXPECT_NEAR((orth.d + Vector::Constant(5, 0.2)).norm(), 0.0, 1e-15);

  const CircumDirection dnn = circum_direction(ConeDescriptor::dnn(3));
  EXPECT_NEAR(dnn.norm_sq, 1.0 / 3, 1e-15);

  EXPECT_EQ(kind_of([] { circum_direction(ConeDescriptor::pcone(3, 3.0)); }),
            ErrorKind::kHypothesisFails);
  EXPECT_EQ(circum_direction(ConeDescriptor::pcone(3, 2.0)).d, soc.d);
}

TEST(CircumDirection, ProductMatchesOrthant) {
  const auto prod = ConeDescriptor::product({ConeDescriptor::orthant(1), ConeDescriptor::orthant(2)});
  const CircumDirection c = circum_direction(prod);
  EXPECT_NEAR(c.norm_sq, 1.0 / 3, 1e-15);
  EXPECT_NEAR((c.d - circum_direction(ConeDescriptor::orthant(3)).d).norm(), 0.0, 1e-15);
}

TEST(CircumDirection, ParallelResistance) {
  auto rng = testing::make_rng(32);
  for (int trial = 0; trial < 100; ++trial) {
    const int blocks = testing::uniform_int(2, 4, rng);
    std::vector<ConeDescriptor> parts;
    double resistance = 0.0;
    for (int b = 0; b < blocks; ++b) {
      const int n = testing::uniform_int(2, 4, rng);
      switch (testing::uniform_int(0, 3, rng)) {
        case 0: parts.push_back(ConeDescriptor::orthant(n)); resistance += n; break;
        case 1: parts.push_back(ConeDescriptor::soc(n)); resistance += 2.0; break;
        case 2: parts.push_back(ConeDescriptor::psd(n)); resistance += n; break;
        default: {
          const ConicBase base = build_base(testing::random_raw(n + 1, n, rng));
          parts.push_back(ConeDescriptor::polyhedral(base));
          // Reference value from the projection, independent of the Gram route.
          resistance += 1.0 / testing::reference_projection(base.generators()).squaredNorm();
        }
      }
    }
    const CircumDirection c = circum_direction(ConeDescriptor::product(parts));
    EXPECT_NEAR(1.0 / c.norm_sq, resistance, 1e-12 * resistance);
    EXPECT_NEAR(c.d.squaredNorm(), c.norm_sq, 1e-12);
  }
}

TEST(CircumDirection, DegeneratePolyhedralRefused) {
  const ConicBase degen = build_base(
      std::vector<Vector>{vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, -1})});
  EXPECT_EQ(kind_of([&] { circum_direction(ConeDescriptor::polyhedral(degen)); }),
            ErrorKind::kHypothesisFails);
}

TEST(Sampling, Examples) {
  for (const Vector& u : sample_extremal(ConeDescriptor::soc(3), 50, 1)) {
    EXPECT_NEAR(u(2), 1 / kRt2, 1e-15);
    EXPECT_NEAR(u.norm(), 1.0, 1e-15);
  }
  for (const Vector& u : sample_extremal(ConeDescriptor::psd(2), 50, 2)) {
    EXPECT_NEAR(u(0) + u(2), 1.0, 1e-15);
    EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  }
  double lo = 1.0, hi = 0.0;
  for (const Vector& u : sample_extremal(ConeDescriptor::pcone(3, 4.0), 50, 3)) {
    lo = std::min(lo, u(2));
    hi = std::max(hi, u(2));
    EXPECT_NEAR(u.norm(), 1.0, 1e-14);
  }
  EXPECT_GT(hi - lo, 1e-3);
  EXPECT_EQ(sample_extremal(ConeDescriptor::orthant(3), 10, 4).size(), 3u);
  for (const Vector& u : sample_extremal(ConeDescriptor::dnn(3), 20, 5)) {
    EXPECT_GE(psd_unembed(u, 3).minCoeff(), 0.0);
  }
}

TEST(Sampling, DeterministicInSeed) {
  const auto c = ConeDescriptor::product({ConeDescriptor::soc(3), ConeDescriptor::psd(2)});
  const auto a = sample_extremal(c, 10, 99);
  const auto b = sample_extremal(c, 10, 99);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i], b[i]);
  EXPECT_NE(sample_extremal(c, 10, 100)[0], a[0]);
}

TEST(Hypothesis, Examples) {
  const auto soc = sample_extremal(ConeDescriptor::soc(3), 16, 7);
  const HypothesisReport h = hypothesis_check(soc);
  EXPECT_TRUE(h.holds);
  EXPECT_NEAR(h.distance, 1 / kRt2, 1e-8);
  ASSERT_TRUE(h.witness);
  EXPECT_NEAR((h.witness->d - vec({0, 0, -1 / kRt2})).norm(), 0.0, 1e-8);

  const std::vector<Vector> degen = {vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}),
                                     vec({1, 1, -1}) / std::sqrt(3.0)};
  const HypothesisReport d = hypothesis_check(degen);
  EXPECT_FALSE(d.holds);
  EXPECT_LT(d.distance, 1e-10);
  EXPECT_FALSE(d.witness);

  for (double p : {1.5, 3.0, 4.0}) {
    const HypothesisReport pc = hypothesis_check(sample_extremal(ConeDescriptor::pcone(3, p), 5, 8));
    EXPECT_FALSE(pc.holds) << p;
    EXPECT_LT(pc.distance, 1e-8) << p;
  }
}

TEST(Hypothesis, WitnessMatchesClosedForm) {
  for (const ConeDescriptor& c : families_with_hypothesis()) {
    const HypothesisReport h = hypothesis_check(sample_extremal(c, 200, 9));
    ASSERT_TRUE(h.holds) << c.name();
    EXPECT_NEAR((h.witness->d - circum_direction(c).d).norm(), 0.0, 1e-8) << c.name();
  }
}

TEST(Support, Examples) {
  EXPECT_NEAR(support_on_extremal(ConeDescriptor::soc(3), vec({0, 0, 1})), 1 / kRt2, 1e-15);
  EXPECT_NEAR(support_on_extremal(ConeDescriptor::psd(2), embed2(1, 0, 1)), 1.0, 1e-14);
  EXPECT_NEAR(support_on_extremal(ConeDescriptor::soc(3), vec({0, 0, -1 / kRt2})), -0.5, 1e-15);
  EXPECT_EQ(kind_of([] { support_on_extremal(ConeDescriptor::dnn(2), vec({1, 0, 1})); }),
            ErrorKind::kUnsupportedExact);
  EXPECT_EQ(kind_of([] { support_on_extremal(ConeDescriptor::soc(3), vec({1, 0})); }),
            ErrorKind::kDimensionMismatch);
}

TEST(Support, SampledExamples) {
  EXPECT_EQ(support_sampled(ConeDescriptor::orthant(3), vec({3, 1, 2}), 3, 1), 3.0);
  EXPECT_NEAR(support_sampled(ConeDescriptor::soc(3), vec({1, 0, 0}), 10000, 2), 1 / kRt2, 1e-3);
  const double dnn = support_sampled(ConeDescriptor::dnn(2), embed2(0, 1, 0), 10000, 3);
  EXPECT_LE(dnn, 1.0 + 1e-12);
  EXPECT_GT(dnn, 0.999);
}

TEST(Support, SampledIsLowerBoundOfExact) {
  auto rng = testing::make_rng(33);
  for (const ConeDescriptor& c : {ConeDescriptor::soc(4), ConeDescriptor::psd(3),
                                  ConeDescriptor::orthant(5)}) {
    for (int trial = 0; trial < 50; ++trial) {
      const Vector w = testing::gaussian(c.dim(), rng);
      EXPECT_LE(support_sampled(c, w, 100, static_cast<std::uint64_t>(trial)),
                support_on_extremal(c, w) + 1e-12);
    }
  }
}

TEST(DepthNp, Examples) {
  const ConeDepth a = directional_depth_np(ConeDescriptor::soc(3), vec({0, 0, 1}));
  EXPECT_NEAR(a.value.value(), 1 / kRt2, 1e-15);
  ASSERT_TRUE(a.contact);
  EXPECT_NEAR(a.contact->norm(), 1.0, 1e-15);

  const Vector u = sample_extremal(ConeDescriptor::soc(3), 1, 5).front();
  EXPECT_NEAR(directional_depth_np(ConeDescriptor::soc(3), u).value.value(), 0.5, 1e-15);

  EXPECT_NEAR(directional_depth_np(ConeDescriptor::psd(2), embed2(1, 0, 1)).value.value(), 0.5,
              1e-14);
  EXPECT_TRUE(directional_depth_np(ConeDescriptor::soc(3), vec({0, 0, -1})).value.is_infinite());
  EXPECT_EQ(kind_of([] { directional_depth_np(ConeDescriptor::soc(3), vec({0, 0, 0})); }),
            ErrorKind::kZeroDirection);
  EXPECT_EQ(kind_of([] { directional_depth_np(ConeDescriptor::pcone(3, 3.0), vec({0, 0, 1})); }),
            ErrorKind::kHypothesisFails);
}

TEST(Polar, Examples) {
  auto rng = testing::make_rng(34);
  const auto soc = ConeDescriptor::soc(3);
  const Vector d = circum_direction(soc).d;
  EXPECT_TRUE(polar_membership(soc, d + 0.49 * testing::unit(3, rng)));
  EXPECT_FALSE(polar_membership(ConeDescriptor::orthant(2), vec({0.1, -5})));

  for (int n : {2, 3, 5}) {
    Matrix v = testing::gaussian(n * n, rng).reshaped(n, n);
    v = (v + v.transpose()).eval();
    v *= (1.0 / n) / v.norm();
    const Matrix z = v - Matrix::Identity(n, n) / n;
    EXPECT_TRUE(polar_membership(ConeDescriptor::psd(n), psd_embed(z)));
  }
  EXPECT_EQ(kind_of([] { polar_membership(ConeDescriptor::dnn(2), vec({-1, 0, -1})); }),
            ErrorKind::kUnsupportedExact);
  EXPECT_TRUE(polar_not_falsified(ConeDescriptor::dnn(2), vec({-1, 0, -1}), 100, 1));
}

TEST(Polar, PConeUsesDualNorm) {
  // (1, 1, -t) is polar to the 3-cone iff ||(1,1)||_{3/2} <= t.
  const auto pc = ConeDescriptor::pcone(3, 3.0);
  const double t = std::pow(2.0, 2.0 / 3.0);
  EXPECT_TRUE(polar_membership(pc, vec({1, 1, -t})));
  EXPECT_FALSE(polar_membership(pc, vec({1, 1, -(t - 1e-6)})));
}

TEST(Properties, UniformIdentityBallSharpnessContact) {
  auto rng = testing::make_rng(35);
  for (const ConeDescriptor& c : families_with_hypothesis()) {
    const CircumDirection dir = circum_direction(c);
    const double ns = dir.norm_sq;
    const auto samples = sample_extremal(c, 1000, 11);
    for (const Vector& u : samples) {
      EXPECT_NEAR(dir.d.dot(u), -ns, 1e-10) << c.name();
    }
    if (c.name() == "dnn") continue;
    for (int i = 0; i < 1000; ++i) {
      const Vector v = testing::unit(c.dim(), rng) * ns * testing::uniform(0.0, 1.0, rng);
      EXPECT_TRUE(polar_membership(c, dir.d + v)) << c.name();
    }
    for (std::size_t i = 0; i < 50 && i < samples.size(); ++i) {
      const Vector& u = samples[i];
      EXPECT_FALSE(polar_membership(c, dir.d + 1.01 * ns * u)) << c.name();
      const Vector contact = ns * u;
      EXPECT_NEAR(contact.norm(), ns, 1e-12);
      if (c.name() == "pcone") continue;
      EXPECT_NEAR(support_on_extremal(c, dir.d + contact), 0.0, 1e-10) << c.name();
    }
  }
}

TEST(Jordan, Values) {
  EXPECT_EQ(jordan_value(ConeDescriptor::psd(4)), 0.25);
  EXPECT_EQ(jordan_value(ConeDescriptor::soc(9)), 0.5);
  EXPECT_NEAR(*jordan_value(ConeDescriptor::orthant(3)), 1.0 / 3, 1e-16);
  EXPECT_FALSE(jordan_value(ConeDescriptor::dnn(3)));
  for (const ConeDescriptor& c : {ConeDescriptor::orthant(6), ConeDescriptor::soc(4),
                                  ConeDescriptor::psd(3)}) {
    EXPECT_NEAR(*jordan_value(c), circum_direction(c).norm_sq, 1e-15);
  }
}

}  // namespace
}  // namespace circumcone
