#include "circumcone/admissible.hpp"
#include "circumcone/step.hpp"

#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

namespace circumcone {
namespace {

using testing::vec;

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no circumcone::Error thrown";
  return ErrorKind::kContractViolation;
}

ActiveCone cone_of(std::vector<Vector> grads) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < grads.size(); ++i) labels.push_back("g" + std::to_string(i));
  return build_active_cone(labels, grads);
}

// |x_i| <= 1 written as four smooth constraints.
std::vector<SmoothConstraint> unit_box() {
  std::vector<SmoothConstraint> out;
  for (int i = 0; i < 2; ++i) {
    for (double s : {1.0, -1.0}) {
      out.push_back({"x" + std::to_string(i + 1) + (s > 0 ? " upper" : " lower"),
                     [i, s](const Vector& x) {
                       return ValueGrad{s * x(i) - 1.0, s * Vector::Unit(2, i)};
                     }});
    }
  }
  return out;
}

LinfProblem box_problem() {
  LinfProblem p;
  p.A = Matrix::Identity(2, 2);
  p.b = vec({3, 4});
  p.C = Matrix::Identity(2, 2);
  p.dvec = Vector::Zero(2);
  p.tau = 1.0;
  return p;
}

// ||x + g|| <= 1: the unit ball centred at -g, active at 0 with gradient g.
SocConstraint ball_through_origin(const Vector& g) {
  SocConstraint s;
  s.A = Matrix::Identity(g.size(), g.size());
  s.b = -g;
  s.c = Vector::Zero(g.size());
  s.delta = 1.0;
  return s;
}

SocpProblem two_ball_problem(double rho, const Vector& q) {
  SocpProblem p;
  p.Q = Matrix::Zero(2, 2);
  p.q = q;
  p.constraints = {ball_through_origin(vec({1, 0})),
                   ball_through_origin(vec({rho, std::sqrt(1 - rho * rho)}))};
  return p;
}

TEST(ActiveSet, BoxExamples) {
  const auto box = unit_box();
  EXPECT_EQ(active_set(box, vec({1, 0})), (std::vector<std::size_t>{0}));
  EXPECT_TRUE(active_set(box, vec({0.2, -0.3})).empty());
  EXPECT_EQ(active_set(box, vec({1, 1})), (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(kind_of([&] { active_set(box, vec({1.1, 0})); }), ErrorKind::kInfeasiblePoint);
}

TEST(ActiveSet, GradientsMatchFiniteDifferences) {
  auto rng = testing::make_rng(41);
  SocConstraint s;
  s.A = testing::gaussian(6, rng).reshaped(3, 2);
  s.b = testing::gaussian(3, rng);
  s.c = testing::gaussian(2, rng);
  s.delta = 0.5;
  for (int trial = 0; trial < 100; ++trial) {
    const Vector x = testing::gaussian(2, rng);
    const double h = 1e-6;
    Vector fd(2);
    for (int i = 0; i < 2; ++i) {
      fd(i) = (s.value(x + h * Vector::Unit(2, i)) - s.value(x - h * Vector::Unit(2, i))) / (2 * h);
    }
    EXPECT_LT((fd - s.gradient(x)).norm(), 1e-6 * std::max(1.0, s.gradient(x).norm()));
  }
}

TEST(BuildActiveCone, Examples) {
  const ActiveCone a = cone_of({vec({2, 0}), vec({0, 3})});
  EXPECT_EQ(a.base.generators(), Matrix::Identity(2, 2));
  EXPECT_NEAR(a.circ.norm_sq, 0.5, 1e-15);
  EXPECT_NEAR(cone_of({vec({0, 5})}).circ.norm_sq, 1.0, 1e-15);
  for (double rho : {-0.5, 0.0, 0.7}) {
    EXPECT_NEAR(cone_of({vec({1, 0}), vec({rho, std::sqrt(1 - rho * rho)})}).circ.norm_sq,
                (1 + rho) / 2, 1e-12);
  }
}

TEST(BuildActiveCone, MergesDuplicatesAndRejectsBadInput) {
  const ActiveCone a = cone_of({vec({1, 0}), vec({2, 0}), vec({0, 1})});
  EXPECT_EQ(a.base.size(), 2);
  EXPECT_EQ(a.labels, (std::vector<std::string>{"g0", "g2"}));
  EXPECT_EQ(kind_of([] { cone_of({}); }), ErrorKind::kEmptyActiveSet);
  EXPECT_EQ(kind_of([] { cone_of({vec({1, 0}), vec({0, 0})}); }), ErrorKind::kConstruction);
}

TEST(SigmaStar, Examples) {
  const ActiveCone a = cone_of({vec({1, 0}), vec({0, 1})});
  EXPECT_NEAR(sigma_star(a, vec({1, 1}) / std::sqrt(2.0)).value(), 1 / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(sigma_star(a, vec({-1, -1})).is_infinite());
  EXPECT_EQ(kind_of([&] { sigma_star(a, vec({0, 0})); }), ErrorKind::kZeroDirection);
}

TEST(SigmaStar, ConservativeFallbackIsBelowSharpValue) {
  auto rng = testing::make_rng(42);
  const ActiveCone a = cone_of(testing::random_raw(4, 3, rng));
  for (int trial = 0; trial < 1000; ++trial) {
    const Vector w = testing::gaussian(4, rng);
    EXPECT_LE(a.circ.norm_sq / w.norm(), sigma_star(a, w).as_double() * (1 + 1e-15));
  }
}

TEST(SigmaStar, BoundaryHomogeneityAndGeometryAgreement) {
  auto rng = testing::make_rng(43);
  int checked = 0;
  while (checked < 200) {
    const int n = testing::uniform_int(2, 8, rng);
    const int p = testing::uniform_int(1, n, rng);
    const ActiveCone a = cone_of(testing::random_raw(n, p, rng));
    const Vector w = testing::gaussian(n, rng);
    const Extended s = sigma_star(a, w);
    EXPECT_EQ(s, directional_depth(a.base, a.circ.norm_sq, w).value);
    if (s.is_infinite()) continue;
    ++checked;
    const Matrix& u = a.base.generators();
    EXPECT_LT((u.transpose() * (a.circ.d + (1 - 1e-6) * s.value() * w)).maxCoeff(), 0.0);
    EXPECT_GT((u.transpose() * (a.circ.d + (1 + 1e-6) * s.value() * w)).maxCoeff(), 0.0);
    EXPECT_EQ(sigma_star(a, 0.5 * w).value() * 0.5, s.value());
    EXPECT_EQ(sigma_star(a, 2.0 * w).value() * 2.0, s.value());
    EXPECT_NEAR(sigma_star(a, 10.0 * w).value() * 10.0, s.value(), 1e-12 * s.value());
  }
}

TEST(Mfcq, Examples) {
  const auto w = mfcq_witness(cone_of({vec({1, 0}), vec({0, 1})}));
  ASSERT_TRUE(w);
  EXPECT_NEAR((*w - vec({-0.5, -0.5})).norm(), 0.0, 1e-15);
  EXPECT_FALSE(mfcq_witness(
      cone_of({vec({1, 0, 0}), vec({0, 1, 0}), vec({0, 0, 1}), vec({1, 1, -1})})));
  const Vector u = vec({0.6, 0.8});
  EXPECT_NEAR((*mfcq_witness(cone_of({u})) + u).norm(), 0.0, 1e-15);
}

TEST(LinfOracle, VertexActiveExample) {
  const LinfProblem p = box_problem();
  const StepOracle o = linf_oracle(p, vec({1, 1}));
  ASSERT_TRUE(o.cone);
  EXPECT_EQ(o.cone->labels, (std::vector<std::string>{"row0+", "row1+"}));
  EXPECT_NEAR(o.cone->circ.norm_sq, 0.5, 1e-15);
  EXPECT_NEAR((o.cone->circ.d - vec({-0.5, -0.5})).norm(), 0.0, 1e-15);
  EXPECT_EQ(o.w, vec({2, 3}));  // -(x - b)
  EXPECT_EQ(sigma_star(*o.cone, vec({1, 2})).value(), 0.25);
  EXPECT_TRUE(sigma_star(*o.cone, vec({-1, -3})).is_infinite());
  EXPECT_EQ(o.sigma, directional_depth(o.cone->base, o.cone->circ.norm_sq, o.w).value);
}

TEST(LinfOracle, SignedRowsAndErrors) {
  const LinfProblem p = box_problem();
  const StepOracle lower = linf_oracle(p, vec({-1, 0.5}));
  EXPECT_EQ(lower.cone->base.generators().col(0), vec({-1, 0}));
  EXPECT_FALSE(linf_oracle(p, vec({0.5, 0.5})).cone);
  EXPECT_EQ(kind_of([&] { linf_oracle(p, vec({1.5, 0})); }), ErrorKind::kInfeasiblePoint);

  LinfProblem thin = p;
  thin.tau = 1e-12;
  EXPECT_EQ(kind_of([&] { linf_oracle(thin, vec({0, 0})); }), ErrorKind::kDegenerateBox);

  LinfProblem zero_row = p;
  zero_row.C(1, 0) = zero_row.C(1, 1) = 0.0;
  EXPECT_THROW(zero_row.validate(), Error);
}

TEST(SocpOracle, Examples) {
  SocpProblem one = two_ball_problem(0.0, vec({-2, -1}));
  one.constraints.pop_back();
  const StepOracle a = socp_oracle(one, Vector::Zero(2));
  EXPECT_NEAR(a.cone->circ.norm_sq, 1.0, 1e-15);
  EXPECT_NEAR(a.sigma.value(), 1.0 / a.w.dot(a.cone->base.generator(0)), 1e-15);

  const StepOracle b = socp_oracle(two_ball_problem(0.0, vec({-1, -1})), Vector::Zero(2));
  EXPECT_NEAR(b.cone->circ.norm_sq, 0.5, 1e-15);

  // Both active products equal 1, so sigma = (1 + rho)/2.
  const double rho = 0.5;
  const Vector u2 = vec({rho, std::sqrt(1 - rho * rho)});
  const Matrix lhs = (Matrix(2, 2) << 1, 0, u2(0), u2(1)).finished();
  const Vector w = lhs.partialPivLu().solve(vec({1, 1}));
  const StepOracle c = socp_oracle(two_ball_problem(rho, -w), Vector::Zero(2));
  EXPECT_NEAR(c.cone->circ.norm_sq, 0.75, 1e-12);
  EXPECT_NEAR(c.sigma.value(), 0.75, 1e-12);
  EXPECT_EQ(c.sigma, directional_depth(c.cone->base, c.cone->circ.norm_sq, c.w).value);
}

TEST(SocpOracle, TwoActiveInterpolation) {
  for (double rho : {-0.9, -0.3, 0.0, 0.4, 0.95}) {
    const StepOracle o = socp_oracle(two_ball_problem(rho, vec({-0.3, -1.1})), Vector::Zero(2));
    EXPECT_NEAR(o.cone->circ.norm_sq, (1 + rho) / 2, 1e-12) << rho;
  }
}

TEST(SocpOracle, ApexAndInfeasible) {
  SocpProblem p;
  p.Q = Matrix::Identity(2, 2);
  p.q = Vector::Zero(2);
  SocConstraint cone;  // ||x|| <= x_2, active at its apex x = 0
  cone.A = Matrix::Identity(2, 2);
  cone.b = Vector::Zero(2);
  cone.c = vec({0, 1});
  cone.delta = 0.0;
  p.constraints = {cone};
  EXPECT_EQ(kind_of([&] { socp_oracle(p, Vector::Zero(2)); }), ErrorKind::kApex);
  EXPECT_EQ(kind_of([&] { socp_oracle(p, vec({1, 0})); }), ErrorKind::kInfeasiblePoint);

  SocpProblem bad = p;
  bad.Q(0, 0) = -1.0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(FcpgStep, Examples) {
  const ActiveCone a = cone_of({vec({1, 0}), vec({0, 1})});
  const Vector w = vec({1, 1}) / std::sqrt(2.0);
  const double sharp = sigma_star(a, w).value();
  const Vector x = fcpg_step(a, Vector::Zero(2), w, 0.5 * sharp, 1.0);
  EXPECT_LT((a.base.generators().transpose() * x).maxCoeff(), 0.0);
  EXPECT_EQ(kind_of([&] { fcpg_step(a, Vector::Zero(2), w, sharp, 1.0); }),
            ErrorKind::kStepTooLong);
  const Vector polar = fcpg_step(a, Vector::Zero(2), vec({-1, -2}), 100.0, 0.1);
  EXPECT_LT((a.base.generators().transpose() * polar).maxCoeff(), 0.0);
  EXPECT_THROW(fcpg_step(a, Vector::Zero(2), w, 0.1, 0.0), Error);
}

TEST(RunFcpg, LinfStaysFeasible) {
  const LinfProblem p = box_problem();
  const FcpgTrace trace = run_fcpg(p, vec({0, 0}));
  ASSERT_GT(trace.rows.size(), 1u);
  for (const TraceRow& r : trace.rows) EXPECT_GE(r.margin, -1e-10);
  // The minimizer over the box is the corner (1, 1).
  EXPECT_LT((trace.x - vec({1, 1})).norm(), 1e-3);
}

TEST(RunFcpg, RandomLinfInstance) {
  auto rng = testing::make_rng(44);
  LinfProblem p;
  p.A = testing::gaussian(50, rng).reshaped(10, 5);
  p.b = 5.0 * testing::gaussian(10, rng);
  p.C = testing::gaussian(25, rng).reshaped(5, 5);
  const Vector x0 = testing::gaussian(5, rng);
  p.dvec = p.C * x0;
  p.tau = 0.5;
  const FcpgTrace trace = run_fcpg(p, x0);
  for (const TraceRow& r : trace.rows) EXPECT_GE(r.margin, -1e-10);
  EXPECT_LE(p.constraint_values(trace.x).maxCoeff(), 1e-10);
  EXPECT_LT(trace.rows.back().objective, trace.rows.front().objective);
}

TEST(RunFcpg, SocpSlaterStartIsMonotone) {
  SocpProblem p;
  p.Q = Matrix::Identity(2, 2);
  p.q = Vector::Zero(2);
  SocConstraint disc;  // ||x - (1, 0)|| <= 1.2
  disc.A = Matrix::Identity(2, 2);
  disc.b = vec({1, 0});
  disc.c = Vector::Zero(2);
  disc.delta = 1.2;
  p.constraints = {disc};
  const FcpgTrace trace = run_fcpg(p, vec({2, 0.3}));
  EXPECT_TRUE(trace.converged);
  for (std::size_t i = 1; i < trace.rows.size(); ++i) {
    EXPECT_LE(trace.rows[i].objective, trace.rows[i - 1].objective);
    EXPECT_GE(trace.rows[i].margin, -1e-10);
  }
}

TEST(RunFcpg, SocpBoundaryOptimumStaysFeasible) {
  SocpProblem p = two_ball_problem(0.2, vec({0.0, 0.0}));
  p.Q = Matrix::Identity(2, 2);
  p.q = vec({-1.0, 2.0});
  const Vector x0 = vec({-0.5, -0.3});
  ASSERT_LT(p.constraint_values(x0).maxCoeff(), 0.0);
  const FcpgTrace trace = run_fcpg(p, x0);
  for (const TraceRow& r : trace.rows) EXPECT_GE(r.margin, -1e-10);
}

TEST(RunFcpg, StopsAtStationaryStartAndRejectsInfeasible) {
  LinfProblem p = box_problem();
  p.b = vec({0.2, 0.1});
  const FcpgTrace trace = run_fcpg(p, vec({0.2, 0.1}));
  EXPECT_TRUE(trace.converged);
  EXPECT_EQ(trace.rows.size(), 1u);
  EXPECT_EQ(kind_of([&] { run_fcpg(p, vec({2, 0})); }), ErrorKind::kInfeasiblePoint);
}

TEST(RunFcpg, TraceCsv) {
  const FcpgTrace trace = run_fcpg(box_problem(), vec({0, 0}), {.max_iter = 3});
  std::ostringstream out;
  write_trace_csv(out, trace);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "iter,objective,margin,active_count,norm_sq,sigma,t");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, static_cast<int>(trace.rows.size()));
}

}  // namespace
}  // namespace circumcone
