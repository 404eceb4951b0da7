#include "circumcone/step.hpp"

#include "circumcone/admissible.hpp"
#include "circumcone/jacobi.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace circumcone {

namespace {

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void require_dim(const Vector& x, Eigen::Index n, const char* what) {
  if (x.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, std::string(what) + " has dimension " +
                                                   std::to_string(x.size()) + ", expected " +
                                                   std::to_string(n));
  }
}

// Shared driver for both problem classes.
template <class Problem, class Oracle>
FcpgTrace fcpg_loop(const Problem& problem, const Vector& x0, const FcpgParams& params,
                    Oracle oracle) {
  auto max_violation = [&](const Vector& x) {
    const Vector g = problem.constraint_values(x);
    return g.size() == 0 ? -std::numeric_limits<double>::infinity() : g.maxCoeff();
  };
  if (!(max_violation(x0) <= 0.0)) {
    throw Error(ErrorKind::kInfeasiblePoint, "run_fcpg needs a feasible starting point");
  }

  FcpgTrace trace;
  Vector x = x0;
  {
    const StepOracle start = oracle(x);
    TraceRow row;
    row.objective = problem.objective(x);
    row.margin = -max_violation(x);
    if (start.cone) {
      row.active_count = static_cast<std::size_t>(start.cone->base.size());
      row.norm_sq = start.cone->circ.norm_sq;
    }
    trace.rows.push_back(row);
  }

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    if (problem.gradient(x).norm() < params.tol) {
      trace.converged = true;
      break;
    }
    const StepOracle step = oracle(x);
    TraceRow row;
    row.iter = iter;

    Vector direction;
    if (step.cone) {
      const ActiveCone& cone = *step.cone;
      double sigma;
      if (step.sigma.is_finite()) {
        if (!(step.sigma.value() > 0.0)) {
          throw Error(ErrorKind::kStepFailure,
                      "sigma* = 0: the active cone has d = 0 and w leaves the polar cone");
        }
        sigma = 0.5 * step.sigma.value();
      } else {
        sigma = cone.circ.norm_sq > 0.0 ? cone.circ.norm_sq / step.w.norm() : 1.0;
      }
      direction = cone.circ.d + sigma * step.w;
      row.active_count = static_cast<std::size_t>(cone.base.size());
      row.norm_sq = cone.circ.norm_sq;
      row.sigma = sigma;
      // Validates sigma < sigma* and strict interiority of the direction.
      (void)fcpg_step(cone, x, step.w, sigma, 1.0);
    } else {
      direction = step.w;
    }

    double t = 1.0;
    bool accepted = false;
    Vector trial;
    for (int h = 0; h <= params.max_halvings; ++h) {
      trial = x + t * direction;
      if (max_violation(trial) <= 0.0) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) {
      throw Error(ErrorKind::kStepFailure, "no feasible step after " +
                                               std::to_string(params.max_halvings) +
                                               " halvings at iteration " + std::to_string(iter));
    }
    x = trial;
    row.objective = problem.objective(x);
    row.margin = -max_violation(x);
    row.t = t;
    trace.rows.push_back(row);
  }
  if (!trace.converged && problem.gradient(x).norm() < params.tol) trace.converged = true;
  trace.x = x;
  return trace;
}

}  // namespace

std::vector<std::size_t> active_set(std::span<const SmoothConstraint> constraints,
                                    const Vector& x, double tol) {
  std::vector<std::size_t> active;
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const double value = constraints[j].eval(x).value;
    if (value > tol) {
      throw Error(ErrorKind::kInfeasiblePoint, "constraint '" + constraints[j].label +
                                                   "' is violated: g = " + format_number(value));
    }
    if (value >= -tol) active.push_back(j);
  }
  return active;
}

ActiveCone build_active_cone(std::span<const std::string> labels,
                             std::span<const Vector> gradients) {
  if (labels.size() != gradients.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "one label per gradient expected");
  }
  if (gradients.empty()) {
    throw Error(ErrorKind::kEmptyActiveSet,
                "no active constraint: sigma* is vacuous, every direction is interior");
  }
  std::vector<std::string> kept_labels;
  std::vector<Vector> kept;
  for (std::size_t j = 0; j < gradients.size(); ++j) {
    const double norm = gradients[j].norm();
    if (!(norm > 0.0)) {
      throw Error(ErrorKind::kConstruction, "gradient of '" + labels[j] + "' is zero");
    }
    const Vector u = gradients[j] / norm;
    bool duplicate = false;
    for (const Vector& other : kept) {
      if (other.size() == u.size() && (other - u).norm() <= kDuplicateTol) {
        duplicate = true;
        break;
      }
    }
    if (!duplicate) {
      kept.push_back(u);
      kept_labels.push_back(labels[j]);
    }
  }
  ConicBase base = ConicBase::build(kept);
  CircumDirection circ = circum(base);
  return {std::move(kept_labels), std::move(base), std::move(circ)};
}

Extended sigma_star(const ActiveCone& cone, const Vector& w) {
  return directional_depth(cone.base, cone.circ.norm_sq, w).value;
}

std::optional<Vector> mfcq_witness(const ActiveCone& cone) {
  if (cone.circ.norm_sq > 1e-12) return cone.circ.d;
  return std::nullopt;
}

void LinfProblem::validate() const {
  if (A.rows() != b.size()) throw Error(ErrorKind::kDimensionMismatch, "A and b disagree");
  if (C.rows() != dvec.size()) throw Error(ErrorKind::kDimensionMismatch, "C and d disagree");
  if (A.cols() != C.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "A and C have different column counts");
  }
  if (!(tau > 0.0)) throw Error(ErrorKind::kConstruction, "tau must be positive");
  for (Eigen::Index j = 0; j < C.rows(); ++j) {
    if (C.row(j).isZero(0.0)) {
      throw Error(ErrorKind::kConstruction, "row " + std::to_string(j) + " of C is zero");
    }
  }
}

double LinfProblem::objective(const Vector& x) const { return 0.5 * (A * x - b).squaredNorm(); }

Vector LinfProblem::gradient(const Vector& x) const { return A.transpose() * (A * x - b); }

Vector LinfProblem::constraint_values(const Vector& x) const {
  return (C * x - dvec).cwiseAbs().array() - tau;
}

double SocConstraint::value(const Vector& x) const {
  return (A * x - b).norm() - c.dot(x) - delta;
}

Vector SocConstraint::gradient(const Vector& x) const {
  const Vector r = A * x - b;
  return A.transpose() * r / r.norm() - c;
}

void SocpProblem::validate() const {
  const Eigen::Index n = Q.rows();
  if (Q.cols() != n || q.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "Q must be n x n and q of length n");
  }
  if ((Q - Q.transpose()).cwiseAbs().maxCoeff() > 1e-10) {
    throw Error(ErrorKind::kConstruction, "Q is not symmetric");
  }
  if (n > 0 && min_eigenvalue(Q) < -1e-10) {
    throw Error(ErrorKind::kConstruction, "Q is not positive semidefinite");
  }
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    const SocConstraint& con = constraints[j];
    if (con.A.cols() != n || con.A.rows() != con.b.size() || con.c.size() != n) {
      throw Error(ErrorKind::kDimensionMismatch,
                  "SOC constraint " + std::to_string(j) + " has inconsistent shapes");
    }
  }
}

double SocpProblem::objective(const Vector& x) const { return 0.5 * x.dot(Q * x) + q.dot(x); }

Vector SocpProblem::gradient(const Vector& x) const { return Q * x + q; }

Vector SocpProblem::constraint_values(const Vector& x) const {
  Vector g(static_cast<Eigen::Index>(constraints.size()));
  for (std::size_t j = 0; j < constraints.size(); ++j) {
    g(static_cast<Eigen::Index>(j)) = constraints[j].value(x);
  }
  return g;
}

StepOracle linf_oracle(const LinfProblem& problem, const Vector& x, double tol) {
  require_dim(x, problem.C.cols(), "point");
  const Vector residual = problem.C * x - problem.dvec;
  std::vector<std::string> labels;
  std::vector<Vector> gradients;
  for (Eigen::Index j = 0; j < residual.size(); ++j) {
    const double r = residual(j);
    const double slack = tol * (1.0 + std::abs(r));
    if (std::abs(r) - problem.tau > slack) {
      throw Error(ErrorKind::kInfeasiblePoint,
                  "row " + std::to_string(j) + " violates the box: |c_j x - d_j| = " +
                      format_number(std::abs(r)));
    }
    const bool upper = r >= problem.tau - slack;
    const bool lower = r <= -problem.tau + slack;
    if (upper && lower) {
      throw Error(ErrorKind::kDegenerateBox,
                  "both signs of row " + std::to_string(j) + " are active (tau within tolerance)");
    }
    if (upper || lower) {
      const double sign = upper ? 1.0 : -1.0;
      labels.push_back("row" + std::to_string(j) + (upper ? "+" : "-"));
      gradients.push_back(sign * problem.C.row(j).transpose());
    }
  }
  StepOracle out;
  out.w = -problem.gradient(x);
  if (!gradients.empty()) {
    out.cone = build_active_cone(labels, gradients);
    if (!out.w.isZero(0.0)) out.sigma = sigma_star(*out.cone, out.w);
  }
  return out;
}

StepOracle socp_oracle(const SocpProblem& problem, const Vector& x, double tol) {
  require_dim(x, problem.Q.rows(), "point");
  std::vector<std::string> labels;
  std::vector<Vector> gradients;
  for (std::size_t j = 0; j < problem.constraints.size(); ++j) {
    const SocConstraint& con = problem.constraints[j];
    const double norm = (con.A * x - con.b).norm();
    const double rhs = con.c.dot(x) + con.delta;
    const double g = norm - rhs;
    const double slack = tol * (1.0 + norm + std::abs(rhs));
    if (g > slack) {
      throw Error(ErrorKind::kInfeasiblePoint,
                  "SOC constraint " + std::to_string(j) + " is violated: g = " + format_number(g));
    }
    if (g >= -slack) {
      if (!(norm > 1e-10)) {
        throw Error(ErrorKind::kApex, "active SOC constraint " + std::to_string(j) +
                                          " sits at its apex (A x = b)");
      }
      labels.push_back("soc" + std::to_string(j));
      gradients.push_back(con.gradient(x));
    }
  }
  StepOracle out;
  out.w = -problem.gradient(x);
  if (!gradients.empty()) {
    out.cone = build_active_cone(labels, gradients);
    if (!out.w.isZero(0.0)) out.sigma = sigma_star(*out.cone, out.w);
  }
  return out;
}

Vector fcpg_step(const ActiveCone& cone, const Vector& x, const Vector& w, double sigma,
                 double t) {
  if (!(t > 0.0)) throw Error(ErrorKind::kContractViolation, "step size t must be positive");
  if (!(sigma > 0.0)) throw Error(ErrorKind::kContractViolation, "sigma must be positive");
  const Extended limit = sigma_star(cone, w);
  if (limit.is_finite() && sigma >= limit.value()) {
    throw Error(ErrorKind::kStepTooLong, "sigma = " + format_number(sigma) +
                                             " is not below sigma* = " +
                                             format_number(limit.value()));
  }
  const Vector direction = cone.circ.d + sigma * w;
  const double worst = (cone.base.generators().transpose() * direction).maxCoeff();
  if (!(worst < 0.0)) {
    throw Error(ErrorKind::kStepTooLong,
                "corrected direction is not interior to the polar cone (max <., u> = " +
                    format_number(worst) + ")");
  }
  return x + t * direction;
}

FcpgTrace run_fcpg(const LinfProblem& problem, const Vector& x0, const FcpgParams& params) {
  problem.validate();
  require_dim(x0, problem.C.cols(), "x0");
  return fcpg_loop(problem, x0, params,
                   [&](const Vector& x) { return linf_oracle(problem, x, params.activity_tol); });
}

FcpgTrace run_fcpg(const SocpProblem& problem, const Vector& x0, const FcpgParams& params) {
  problem.validate();
  require_dim(x0, problem.Q.rows(), "x0");
  return fcpg_loop(problem, x0, params,
                   [&](const Vector& x) { return socp_oracle(problem, x, params.activity_tol); });
}

void write_trace_csv(std::ostream& out, const FcpgTrace& trace) {
  out << "iter,objective,margin,active_count,norm_sq,sigma,t\n";
  for (const TraceRow& row : trace.rows) {
    out << row.iter << ',' << format_number(row.objective) << ',' << format_number(row.margin)
        << ',' << row.active_count << ',' << (row.norm_sq ? format_number(*row.norm_sq) : "nan")
        << ',' << (row.sigma ? format_number(*row.sigma) : "nan") << ','
        << format_number(row.t) << '\n';
  }
}

}  // namespace circumcone
