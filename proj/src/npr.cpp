#include "nprclust/npr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>
#include <Eigen/SparseLU>

namespace nprc {

void NprConfig::validate(Vertex n) const {
  auto bad = [](const std::string& what) { throw Error(ErrorCode::InvalidArgument, what); };
  if (!(beta > 0.0 && beta < 1.0)) bad("beta must lie in (0,1)");
  if (zeta < 0.0 || !std::isfinite(zeta)) bad("zeta must be positive (or 0 for the default)");
  if (p_schedule.empty()) bad("p schedule is empty");
  for (std::size_t i = 0; i < p_schedule.size(); ++i) {
    const double p = p_schedule[i];
    if (!(p > 1.0 && p <= 2.0)) bad("p values must lie in (1,2]");
    if (i > 0 && !(p < p_schedule[i - 1])) bad("p schedule must be strictly decreasing");
  }
  if (seed_vertex < 0 || seed_vertex >= n) bad("seed vertex out of range");
  if (!(grad_tol > 0.0) || !(step_tol > 0.0)) bad("tolerances must be positive");
  if (max_iters <= 0) bad("max_iters must be positive");
  if (!(lambda0_factor > 0.0)) bad("lambda0_factor must be positive");
  if (!std::isfinite(fixed_value)) bad("fixed_value must be finite");
}

double default_zeta(Vertex n) { return n >= 10000 ? 1e-6 : 1e-11; }

double NprConfig::zeta_for(Vertex n) const { return zeta > 0.0 ? zeta : default_zeta(n); }

const char* to_string(LmStatus s) {
  switch (s) {
    case LmStatus::Converged: return "converged";
    case LmStatus::IterationCap: return "iteration_cap";
    case LmStatus::StallFailure: return "stall_failure";
  }
  return "unknown";
}

const char* to_string(LmStop s) {
  switch (s) {
    case LmStop::GradientTolerance: return "gradient_tolerance";
    case LmStop::StepTolerance: return "step_tolerance";
    case LmStop::IterationCap: return "iteration_cap";
    case LmStop::Stall: return "stall";
  }
  return "unknown";
}

int LmTrace::accepted_steps() const {
  return static_cast<int>(std::count_if(iterations.begin(), iterations.end(),
                                        [](const LmIteration& it) { return it.accepted; }));
}

double LmTrace::final_psi() const {
  return iterations.empty() ? initial_psi : iterations.back().psi;
}

double LmTrace::final_grad_norm() const {
  return iterations.empty() ? initial_grad_norm : iterations.back().grad_norm;
}

// ---------------------------------------------------------------------------

Vector k_diag(const Vector& z, double p, double zeta) {
  Vector k(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double s = z[i] * z[i] + zeta;
    k[i] = std::pow(s, 0.5 * (p - 2.0)) + (p - 2.0) * z[i] * z[i] * std::pow(s, 0.5 * (p - 4.0));
  }
  return k;
}

Vector hadamard_flux(const Vector& z, double p, double zeta) {
  Vector h(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i)
    h[i] = std::pow(z[i] * z[i] + zeta, 0.5 * (p - 2.0)) * z[i];
  return h;
}

Vector f_nonlinear(const Operators& ops, const Vector& x, double p, double zeta) {
  return ops.pinv_B(hadamard_flux(ops.B(x), p, zeta));
}

Vector f_nonlinear(const Operators& ops, const Vector& x, double p, double zeta,
                   const std::vector<std::int8_t>& signs) {
  const auto& g = ops.graph();
  Vector h = hadamard_flux(apply_B(g, x, signs), p, zeta);
  // B_s^T B_s = B^T B for any sign pattern, so the grounded factorization is shared.
  return ops.laplacian_solver().solve(apply_Bt(g, h, signs));
}

Matrix dense_reweighted_laplacian(const Graph& g, const Vector& k) {
  const Eigen::Index n = g.num_vertices();
  Matrix lk = Matrix::Zero(n, n);
  for (std::size_t e = 0; e < g.num_edges(); ++e) {
    const auto u = g.edges()[e].u;
    const auto v = g.edges()[e].v;
    lk(u, u) += k[e];
    lk(v, v) += k[e];
    lk(u, v) -= k[e];
    lk(v, u) -= k[e];
  }
  return lk;
}

ReducedJacobian reduce_full_rank(const Matrix& J, Vertex pinned) {
  const Eigen::Index n = J.cols();
  if (pinned < 0 || pinned >= n)
    throw Error(ErrorCode::InvalidArgument, "pinned vertex out of range");
  ReducedJacobian out;
  out.pinned = pinned;
  out.J.resize(J.rows(), n - 1);
  out.J.leftCols(pinned) = J.leftCols(pinned);
  out.J.rightCols(n - 1 - pinned) = J.rightCols(n - 1 - pinned);
  out.columns.reserve(n - 1);
  for (Vertex v = 0; v < n; ++v)
    if (v != pinned) out.columns.push_back(v);
  return out;
}

Vector embed_reduced(const Vector& reduced, Vertex pinned, double fixed_value) {
  const Eigen::Index n = reduced.size() + 1;
  Vector full(n);
  full.head(pinned) = reduced.head(pinned);
  full[pinned] = fixed_value;
  full.tail(n - 1 - pinned) = reduced.tail(n - 1 - pinned);
  return full;
}

Vector strip_pinned(const Vector& full, Vertex pinned) {
  const Eigen::Index n = full.size();
  Vector r(n - 1);
  r.head(pinned) = full.head(pinned);
  r.tail(n - 1 - pinned) = full.tail(n - 1 - pinned);
  return r;
}

// ---------------------------------------------------------------------------

namespace {

Vector indicator(Vertex n, Vertex s) {
  Vector r = Vector::Zero(n);
  r[s] = 1.0;
  return r;
}

// Removes row and column `pinned` from a symmetric matrix.
Matrix strip_symmetric(const Matrix& a, Vertex pinned) {
  const Eigen::Index n = a.rows();
  const Eigen::Index tail = n - 1 - pinned;
  Matrix r(n - 1, n - 1);
  r.topLeftCorner(pinned, pinned) = a.topLeftCorner(pinned, pinned);
  r.topRightCorner(pinned, tail) = a.topRightCorner(pinned, tail);
  r.bottomLeftCorner(tail, pinned) = a.bottomLeftCorner(tail, pinned);
  r.bottomRightCorner(tail, tail) = a.bottomRightCorner(tail, tail);
  return r;
}

}  // namespace

NprProblem::NprProblem(const Graph& g, NprConfig cfg)
    : g_(&g), cfg_(std::move(cfg)), ops_(g, cfg_.beta) {
  cfg_.validate(g.num_vertices());
  r_ = indicator(g.num_vertices(), cfg_.seed_vertex);
  pinned_ = furthest_vertex(g, cfg_.seed_vertex, cfg_.pin_length);
  zeta_ = cfg_.zeta_for(g.num_vertices());
}

NprProblem::NprProblem(const Graph& g, NprConfig cfg, Vector teleport, Vertex pinned)
    : g_(&g), cfg_(std::move(cfg)), ops_(g, cfg_.beta), r_(std::move(teleport)), pinned_(pinned) {
  cfg_.validate(g.num_vertices());
  if (r_.size() != g.num_vertices())
    throw Error(ErrorCode::DimensionMismatch, "teleport vector must have one entry per vertex");
  if (pinned < 0 || pinned >= g.num_vertices())
    throw Error(ErrorCode::InvalidArgument, "pinned vertex out of range");
  zeta_ = cfg_.zeta_for(g.num_vertices());
}

Vector NprProblem::f(const Vector& x, double p) const { return f_nonlinear(ops_, x, p, zeta_); }

Vector NprProblem::residual(const Vector& x, double p) const {
  return cfg_.beta * r_ - ops_.T(f(x, p));
}

double NprProblem::merit(const Vector& x, double p) const {
  return 0.5 * residual(x, p).squaredNorm();
}

Matrix NprProblem::jacobian(const Vector& x, double p) const {
  if (g_->num_vertices() > cfg_.dense_limit)
    throw Error(ErrorCode::SizeExceeded,
                "graph has " + std::to_string(g_->num_vertices()) +
                    " vertices; the dense Jacobian path is limited to " +
                    std::to_string(cfg_.dense_limit));
  // B^+ K B = (B^T B)^+ B^T K B, so one grounded solve per column of L_K.
  Vector k = k_diag(ops_.B(x), p, zeta_);
  Matrix m = ops_.laplacian_solver().solve(dense_reweighted_laplacian(*g_, k));
  SparseMatrix t = ops_.T_matrix();
  Matrix j = t * m;
  j *= -1.0;
  return j;
}

Vector NprProblem::initial_iterate() const {
  Vector x = min_norm_p2_init(ops_, r_);
  x.array() += cfg_.fixed_value - x[pinned_];
  return x;
}

NprSolution NprProblem::lm_solve(double p, Vector x) const {
  const Vertex n = g_->num_vertices();
  if (x.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "initial iterate must have one entry per vertex");
  if (!(p > 1.0 && p <= 2.0)) throw Error(ErrorCode::InvalidArgument, "p must lie in (1,2]");
  x[pinned_] = cfg_.fixed_value;

  NprSolution sol;
  sol.p = p;
  auto& trace = sol.trace;

  Vector g = residual(x, p);
  double psi = 0.5 * g.squaredNorm();

  // Normal-equation pieces on the reduced unknowns.
  Matrix jtj;
  Vector grad;
  auto linearize = [&] {
    Matrix j = jacobian(x, p);
    if (!j.allFinite()) throw Error(ErrorCode::LinearSolveFailure, "Jacobian has non-finite entries");
    Matrix full = Matrix::Zero(n, n);
    full.selfadjointView<Eigen::Lower>().rankUpdate(j.transpose());
    full.triangularView<Eigen::StrictlyUpper>() = full.transpose();
    jtj = strip_symmetric(full, pinned_);
    grad = strip_pinned(j.transpose() * g, pinned_);
  };
  linearize();

  trace.initial_psi = psi;
  trace.initial_grad_norm = grad.lpNorm<Eigen::Infinity>();

  double lambda = cfg_.lambda0_factor * jtj.diagonal().maxCoeff();
  if (!(lambda > 0.0)) lambda = cfg_.lambda0_factor;
  double nu = 2.0;
  double grad_norm = trace.initial_grad_norm;

  for (int iter = 1;; ++iter) {
    if (grad_norm <= cfg_.grad_tol) {
      trace.status = LmStatus::Converged;
      trace.stop = LmStop::GradientTolerance;
      break;
    }
    if (iter > cfg_.max_iters) {
      trace.status = LmStatus::IterationCap;
      trace.stop = LmStop::IterationCap;
      break;
    }
    if (!std::isfinite(lambda) || lambda > 1e300) {
      trace.status = LmStatus::StallFailure;
      trace.stop = LmStop::Stall;
      break;
    }

    Matrix h_mat = jtj;
    h_mat.diagonal().array() += lambda;
    Eigen::LLT<Matrix> llt(h_mat);
    LmIteration rec;
    rec.iter = iter;
    rec.lambda = lambda;
    if (llt.info() != Eigen::Success) {
      // Only reachable through round-off; treat as a rejected trial.
      rec.psi = psi;
      rec.grad_norm = grad_norm;
      rec.rho = 0.0;
      trace.iterations.push_back(rec);
      lambda *= nu;
      nu *= 2.0;
      continue;
    }
    Vector step = llt.solve(-grad);

    const double xnorm = std::max(x.norm(), 1e-30);
    if (step.norm() <= cfg_.step_tol * xnorm) {
      trace.status = LmStatus::Converged;
      trace.stop = LmStop::StepTolerance;
      break;
    }

    Vector xt = x + embed_reduced(step, pinned_, 0.0);
    Vector gt = residual(xt, p);
    const double psi_t = 0.5 * gt.squaredNorm();
    const double pred = -0.5 * step.dot(grad);
    const double rho = std::isfinite(psi_t) && pred > 0.0 ? (psi - psi_t) / pred
                                                          : -std::numeric_limits<double>::infinity();
    rec.rho = std::isfinite(rho) ? rho : -1.0;

    if (rho > 0.0) {
      x = std::move(xt);
      g = std::move(gt);
      psi = psi_t;
      linearize();
      grad_norm = grad.lpNorm<Eigen::Infinity>();
      lambda *= std::max(1.0 / 3.0, 1.0 - std::pow(2.0 * rho - 1.0, 3));
      nu = 2.0;
      rec.accepted = true;
    } else {
      lambda *= nu;
      nu *= 2.0;
    }
    rec.psi = psi;
    rec.grad_norm = grad_norm;
    trace.iterations.push_back(rec);
  }

  sol.x = std::move(x);
  return sol;
}

// ---------------------------------------------------------------------------

std::vector<NprSolution> continuation(const NprProblem& problem) {
  std::vector<NprSolution> out;
  Vector x = problem.initial_iterate();
  for (double p : problem.config().p_schedule) {
    out.push_back(problem.lm_solve(p, x));
    x = out.back().x;
  }
  return out;
}

std::vector<NprSolution> continuation(const Graph& g, const NprConfig& cfg) {
  NprProblem problem(g, cfg);
  return continuation(problem);
}

Vector solve_linear_pagerank(const Graph& g, double beta, Vertex seed) {
  if (seed < 0 || seed >= g.num_vertices())
    throw Error(ErrorCode::InvalidArgument, "seed vertex out of range");
  Operators ops(g, beta);
  SparseMatrix t = ops.T_matrix();
  t.makeCompressed();
  Eigen::SparseLU<SparseMatrix> lu(t);
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "factorization of T failed");
  Vector x = lu.solve(beta * indicator(g.num_vertices(), seed));
  if (lu.info() != Eigen::Success) throw Error(ErrorCode::SolverFailure, "solve with T failed");
  return x;
}

}  // namespace nprc
