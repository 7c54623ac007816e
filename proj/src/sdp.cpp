#include "cfl/sdp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <vector>

namespace cfl::sdp {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kRoot2 = 1.4142135623730951;

double frob(const MatrixXd& a, const MatrixXd& b) {
  return (a.cwiseProduct(b)).sum();
}

MatrixXd sym(const MatrixXd& m) { return 0.5 * (m + m.transpose()); }

void require_symmetric(const MatrixXd& m, const char* what) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::ShapeMismatch, std::string(what) + " is not square");
  }
  if (m.size() == 0) return;
  const double scale = 1.0 + m.cwiseAbs().maxCoeff();
  if ((m - m.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(Errc::NotSymmetric, std::string(what) + " is not symmetric");
  }
}

// Isometric vectorization: svec(X)'svec(Y) = <X, Y> for symmetric X, Y.
VectorXd svec(const MatrixXd& x) {
  const int s = static_cast<int>(x.rows());
  VectorXd v(s * (s + 1) / 2);
  int k = 0;
  for (int c = 0; c < s; ++c) {
    v[k++] = x(c, c);
    for (int r = c + 1; r < s; ++r) v[k++] = kRoot2 * x(r, c);
  }
  return v;
}

MatrixXd unsvec(const VectorXd& v, int s) {
  MatrixXd x(s, s);
  int k = 0;
  for (int c = 0; c < s; ++c) {
    x(c, c) = v[k++];
    for (int r = c + 1; r < s; ++r) {
      x(r, c) = v[k] / kRoot2;
      x(c, r) = x(r, c);
      ++k;
    }
  }
  return x;
}

struct SqrtPair {
  MatrixXd half;
  double min_eig = 0.0;
};

SqrtPair symmetric_sqrt(const MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(m));
  SqrtPair out;
  out.min_eig = es.eigenvalues().minCoeff();
  const VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  out.half = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  return out;
}

// Largest alpha keeping M + alpha*D positive definite (up to 1e30). M is
// positive definite in exact arithmetic but may be numerically singular at
// tiny duality gaps; a small escalating shift keeps the factorization alive
// (the fraction-to-boundary backoff absorbs the slight overestimate).
double max_step_psd(const MatrixXd& m, const MatrixXd& d) {
  const MatrixXd base = sym(m);
  const int s = static_cast<int>(base.rows());
  Eigen::LLT<MatrixXd> llt(base);
  if (llt.info() != Eigen::Success) {
    const double unit = 1e-14 * (1.0 + base.cwiseAbs().maxCoeff());
    for (double shift = unit; shift <= 1e8 * unit; shift *= 100.0) {
      llt.compute(base + shift * MatrixXd::Identity(s, s));
      if (llt.info() == Eigen::Success) break;
    }
    if (llt.info() != Eigen::Success) return 0.0;
  }
  MatrixXd b = llt.matrixL().solve(sym(d));
  b = llt.matrixL().solve(b.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(b), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues().minCoeff();
  if (lmin >= 0.0) return 1e30;
  return -1.0 / lmin;
}

// NT scaling in factored form. With W the scaling point (W Z W = S) and
// P = W^{1/2}, the common scaled matrix lambda = P^{-1} S P^{-1} = P Z P has
// condition ~sqrt(cond(S)/cond(Z)'s product), which is what makes the
// preconditioned Newton system solvable at tiny duality gaps.
struct Scaling {
  MatrixXd p_inv;       // W^{-1/2}
  MatrixXd lambda;      // P^{-1} S P^{-1}
  MatrixXd lambda_inv;  // lambda^{-1}
  bool ok = true;
};

Scaling nt_scaling(const MatrixXd& s, const MatrixXd& z) {
  Scaling out;
  const SqrtPair sh = symmetric_sqrt(s);
  if (sh.min_eig <= 0.0) {
    out.ok = false;
    return out;
  }
  const MatrixXd inner = sym(sh.half * z * sh.half);
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(inner);
  if (es.eigenvalues().minCoeff() <= 0.0) {
    out.ok = false;
    return out;
  }
  VectorXd inv_root(es.eigenvalues().size());
  for (Eigen::Index i = 0; i < inv_root.size(); ++i) {
    inv_root[i] = 1.0 / std::sqrt(es.eigenvalues()[i]);
  }
  const MatrixXd w = sym(sh.half * es.eigenvectors() * inv_root.asDiagonal() *
                         es.eigenvectors().transpose() * sh.half);

  Eigen::SelfAdjointEigenSolver<MatrixXd> ew(w);
  if (ew.eigenvalues().minCoeff() <= 0.0) {
    out.ok = false;
    return out;
  }
  VectorXd w_inv_root(ew.eigenvalues().size());
  for (Eigen::Index i = 0; i < w_inv_root.size(); ++i) {
    w_inv_root[i] = 1.0 / std::sqrt(ew.eigenvalues()[i]);
  }
  out.p_inv = sym(ew.eigenvectors() * w_inv_root.asDiagonal() *
                  ew.eigenvectors().transpose());
  out.lambda = sym(out.p_inv * s * out.p_inv);

  Eigen::SelfAdjointEigenSolver<MatrixXd> el(out.lambda);
  if (el.eigenvalues().minCoeff() <= 0.0) {
    out.ok = false;
    return out;
  }
  out.lambda_inv = sym(el.eigenvectors() *
                       el.eigenvalues().cwiseInverse().asDiagonal() *
                       el.eigenvectors().transpose());
  return out;
}

struct Direction {
  VectorXd dy;
  VectorXd dlam;
  double dtau = 0.0;
  double dkappa = 0.0;
  std::vector<MatrixXd> dS;
  std::vector<MatrixXd> dZ;
  bool ok = true;
};

}  // namespace

void Problem::validate() const {
  const int m = num_vars();
  if (m < 1) throw Error(Errc::ShapeMismatch, "problem has no variables");
  if (blocks.empty()) {
    throw Error(Errc::ShapeMismatch, "problem has no blocks");
  }
  for (const Block& blk : blocks) {
    require_symmetric(blk.F0, "block constant matrix");
    if (static_cast<int>(blk.F.size()) != m) {
      throw Error(Errc::ShapeMismatch,
                  "block has a coefficient count different from c");
    }
    for (const MatrixXd& fi : blk.F) {
      require_symmetric(fi, "block coefficient matrix");
      if (fi.rows() != blk.F0.rows()) {
        throw Error(Errc::ShapeMismatch,
                    "block coefficient size differs from the constant term");
      }
    }
  }
  if (A.rows() > 0 && A.cols() != m) {
    throw Error(Errc::ShapeMismatch, "equality matrix column count != vars");
  }
  if (b.size() != A.rows()) {
    throw Error(Errc::ShapeMismatch, "equality rhs length != equality rows");
  }
}

double min_eigenvalue(const MatrixXd& M) {
  require_symmetric(M, "matrix");
  if (M.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(sym(M), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Solution solve(const Problem& prob, const SolveOptions& opts) {
  prob.validate();

  const int m = prob.num_vars();
  const int p = prob.num_eq();
  const int nblk = static_cast<int>(prob.blocks.size());
  const double tol = opts.tol;
  const double feas_tol = std::min(tol, 1e-8);
  const double frac = std::clamp(opts.step_fraction, 0.5, 0.999);

  double side_sum = 0.0;
  for (const Block& blk : prob.blocks) side_sum += blk.size();
  const double nu = side_sum + 1.0;

  // Static layout of the augmented Newton system over
  // (dy, dlam, dtau, svec(dZ_j) per block). Keeping dZ as unknowns instead
  // of eliminating it through a Schur complement preserves the small pivots
  // that decide dtau when the scaling degenerates near an optimal face.
  std::vector<int> tdim(nblk), zoff(nblk);
  int dim = m + p + 1;
  for (int j = 0; j < nblk; ++j) {
    const int s = prob.blocks[j].size();
    tdim[j] = s * (s + 1) / 2;
    zoff[j] = dim;
    dim += tdim[j];
  }
  const int tau_col = m + p;

  // With eta_j = svec(P_j dZ_j P_j) the Newton system reads
  //   R1 (m): sum_j ftil_j' eta_j + A' dlam - c dtau                = -rd
  //   R2 (p): A dy - b dtau                                         = -rA
  //   R3 (1): c' dy - b' dlam - (kappa/tau) dtau + sum ftil0_j' eta = -rg - rtk/tau
  //   R4 (t_j): ftil_j dy + ftil0_j dtau + eta_j = svec(P^-1 (Rc - Rp) P^-1)
  // where ftil_i = svec(P^-1 F_i P^-1). The eta-diagonal is the identity.
  MatrixXd Kbase = MatrixXd::Zero(dim, dim);
  for (int j = 0; j < nblk; ++j) {
    Kbase.block(zoff[j], zoff[j], tdim[j], tdim[j]).setIdentity();
  }
  Kbase.block(0, tau_col, m, 1) = -prob.c;
  Kbase.block(m + p, 0, 1, m) = prob.c.transpose();
  if (p > 0) {
    Kbase.block(0, m, m, p) = prob.A.transpose();
    Kbase.block(m, 0, p, m) = prob.A;
    Kbase.block(m, tau_col, p, 1) = -prob.b;
    Kbase.block(m + p, m, 1, p) = -prob.b.transpose();
  }

  VectorXd y = VectorXd::Zero(m);
  VectorXd lam = VectorXd::Zero(p);
  double tau = 1.0;
  double kappa = 1.0;
  std::vector<MatrixXd> S, Z;
  S.reserve(nblk);
  Z.reserve(nblk);
  for (const Block& blk : prob.blocks) {
    S.push_back(MatrixXd::Identity(blk.size(), blk.size()));
    Z.push_back(MatrixXd::Identity(blk.size(), blk.size()));
  }

  const double b_inf = p > 0 ? prob.b.cwiseAbs().maxCoeff() : 0.0;
  const double c_inf = prob.c.cwiseAbs().maxCoeff();
  std::vector<double> f0_norm(nblk);
  for (int j = 0; j < nblk; ++j) f0_norm[j] = prob.blocks[j].F0.norm();

  const double mu0 = 1.0;
  double mu = mu0;
  double best_err = std::numeric_limits<double>::infinity();
  int stagnant = 0;

  std::vector<MatrixXd> Rp(nblk);
  VectorXd rA(p), rd(m);
  double rg = 0.0;

  const auto compute_residuals = [&]() {
    for (int j = 0; j < nblk; ++j) {
      const Block& blk = prob.blocks[j];
      MatrixXd acc = tau * blk.F0 - S[j];
      for (int i = 0; i < m; ++i) acc += y[i] * blk.F[i];
      Rp[j] = acc;
    }
    if (p > 0) rA = prob.A * y - tau * prob.b;
    for (int i = 0; i < m; ++i) {
      double acc = -prob.c[i] * tau;
      for (int j = 0; j < nblk; ++j) acc += frob(prob.blocks[j].F[i], Z[j]);
      rd[i] = acc;
    }
    if (p > 0) rd += prob.A.transpose() * lam;
    rg = prob.c.dot(y) + kappa;
    if (p > 0) rg -= prob.b.dot(lam);
    for (int j = 0; j < nblk; ++j) rg += frob(prob.blocks[j].F0, Z[j]);

    double comp = tau * kappa;
    for (int j = 0; j < nblk; ++j) comp += frob(S[j], Z[j]);
    mu = comp / nu;
  };

  const bool trace = std::getenv("CFL_SDP_TRACE") != nullptr;

  // Abnormal exits still hand back the current normalized iterate: callers
  // doing feasibility work can often salvage a primal point whose own
  // invariants (residual, eigenvalues) certify it even when optimality was
  // never reached.
  const auto bail = [&](Status st, int iters, const std::string& msg) {
    Solution sol;
    sol.status = st;
    sol.iterations = iters;
    sol.message = msg;
    if (!(tau > 1e-300) || !std::isfinite(tau)) return sol;
    sol.y = y / tau;
    if (!sol.y.allFinite()) {
      sol.y.resize(0);
      return sol;
    }
    sol.eq_multipliers = lam / tau;
    sol.objective = prob.c.dot(sol.y);
    double comp_blocks = 0.0;
    for (int j = 0; j < nblk; ++j) comp_blocks += frob(S[j], Z[j]);
    sol.gap = comp_blocks / (tau * tau);
    sol.slack_blocks.resize(nblk);
    sol.dual_blocks.resize(nblk);
    for (int j = 0; j < nblk; ++j) {
      const Block& blk = prob.blocks[j];
      MatrixXd fy = blk.F0;
      for (int i = 0; i < m; ++i) fy += sol.y[i] * blk.F[i];
      sol.slack_blocks[j] = sym(fy);
      sol.dual_blocks[j] = Z[j] / tau;
    }
    return sol;
  };

  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    compute_residuals();

    double pinf = p > 0 ? rA.cwiseAbs().maxCoeff() / (tau * (1.0 + b_inf)) : 0.0;
    for (int j = 0; j < nblk; ++j) {
      pinf = std::max(pinf, Rp[j].norm() / (tau * (1.0 + f0_norm[j])));
    }
    const double dinf = rd.cwiseAbs().maxCoeff() / (tau * (1.0 + c_inf));
    double comp_blocks = 0.0;
    for (int j = 0; j < nblk; ++j) comp_blocks += frob(S[j], Z[j]);
    const double gap_abs = comp_blocks / (tau * tau);

    if (pinf <= feas_tol && dinf <= feas_tol && gap_abs <= tol) {
      Solution sol;
      sol.status = Status::Optimal;
      sol.y = y / tau;
      sol.eq_multipliers = lam / tau;
      sol.objective = prob.c.dot(sol.y);
      sol.gap = gap_abs;
      sol.iterations = iter;
      sol.slack_blocks.resize(nblk);
      sol.dual_blocks.resize(nblk);
      for (int j = 0; j < nblk; ++j) {
        const Block& blk = prob.blocks[j];
        MatrixXd fy = blk.F0;
        for (int i = 0; i < m; ++i) fy += sol.y[i] * blk.F[i];
        sol.slack_blocks[j] = sym(fy);
        sol.dual_blocks[j] = Z[j] / tau;
      }
      sol.message = "converged";
      return sol;
    }

    // Infeasibility through the embedding: tau collapses, kappa survives,
    // and the remaining (lam, Z) ray certifies it.
    if (tau <= 1e-8 * std::max(1e-2, kappa) && mu <= 1e-8 * mu0) {
      double ray_scale = lam.size() > 0 ? lam.cwiseAbs().maxCoeff() : 0.0;
      for (int j = 0; j < nblk; ++j) ray_scale = std::max(ray_scale, Z[j].norm());
      ray_scale = std::max(ray_scale, 1e-12);
      double cert = 0.0;
      if (p > 0) cert += prob.b.dot(lam);
      for (int j = 0; j < nblk; ++j) cert -= frob(prob.blocks[j].F0, Z[j]);
      const double ray_resid = rd.cwiseAbs().maxCoeff() / ray_scale;
      if (cert / ray_scale > 1e-9 && ray_resid < 1e-6) {
        Solution sol;
        sol.status = Status::Infeasible;
        sol.y = y;
        sol.eq_multipliers = lam / ray_scale;
        sol.dual_blocks.resize(nblk);
        for (int j = 0; j < nblk; ++j) sol.dual_blocks[j] = Z[j] / ray_scale;
        sol.iterations = iter;
        sol.gap = mu;
        sol.message = "infeasibility certificate from the self-dual ray";
        return sol;
      }
      const double unb = prob.c.dot(y);
      if (unb < -1e-9 * std::max(1.0, y.cwiseAbs().maxCoeff())) {
        return bail(Status::NumericalFailure, iter,
                    "problem appears unbounded below (dual infeasible)");
      }
      return bail(Status::NumericalFailure, iter,
                  "homogeneous model collapsed without a clean certificate");
    }

    // Progress guard: scaled optimality error falls on solvable instances,
    // mu + tau falls on infeasible ones.
    const double err = std::min(std::max({pinf, dinf, gap_abs}), mu + tau);
    if (err < best_err * 0.9999) {
      best_err = err;
      stagnant = 0;
    } else if (++stagnant > 12) {
      return bail(Status::NumericalFailure, iter,
                  "no progress over 12 iterations (residual " +
                      std::to_string(err) + ")");
    }

    std::vector<Scaling> scal(nblk);
    for (int j = 0; j < nblk; ++j) {
      scal[j] = nt_scaling(S[j], Z[j]);
      if (!scal[j].ok) {
        return bail(Status::NumericalFailure, iter,
                    "scaling point lost positive definiteness");
      }
    }

    // Transformed data matrices and residuals for this iteration's scaling.
    std::vector<MatrixXd> ftil(nblk);
    std::vector<VectorXd> ftil0(nblk);
    std::vector<MatrixXd> rp_til(nblk);
    for (int j = 0; j < nblk; ++j) {
      const Block& blk = prob.blocks[j];
      const MatrixXd& pi = scal[j].p_inv;
      ftil[j].resize(tdim[j], m);
      for (int i = 0; i < m; ++i) {
        ftil[j].col(i) = svec(sym(pi * blk.F[i] * pi));
      }
      ftil0[j] = svec(sym(pi * blk.F0 * pi));
      rp_til[j] = sym(pi * Rp[j] * pi);
    }

    MatrixXd K = Kbase;
    K(m + p, tau_col) = -kappa / tau;
    for (int j = 0; j < nblk; ++j) {
      K.block(0, zoff[j], m, tdim[j]) = ftil[j].transpose();
      K.block(m + p, zoff[j], 1, tdim[j]) = ftil0[j].transpose();
      K.block(zoff[j], 0, tdim[j], m) = ftil[j];
      K.block(zoff[j], tau_col, tdim[j], 1) = ftil0[j];
    }
    if (!K.allFinite()) {
      return bail(Status::NumericalFailure, iter, "Newton matrix is not finite");
    }

    // Ruiz equilibration: the scaling blocks span many orders of magnitude
    // near convergence, so balance rows and columns before pivoting.
    VectorXd row_scale = VectorXd::Ones(dim), col_scale = VectorXd::Ones(dim);
    MatrixXd Ks = K;
    for (int pass = 0; pass < 3; ++pass) {
      for (int r = 0; r < dim; ++r) {
        const double s = Ks.row(r).cwiseAbs().maxCoeff();
        if (s > 0.0) {
          const double f = 1.0 / std::sqrt(s);
          Ks.row(r) *= f;
          row_scale[r] *= f;
        }
      }
      for (int c = 0; c < dim; ++c) {
        const double s = Ks.col(c).cwiseAbs().maxCoeff();
        if (s > 0.0) {
          const double f = 1.0 / std::sqrt(s);
          Ks.col(c) *= f;
          col_scale[c] *= f;
        }
      }
    }
    Eigen::FullPivLU<MatrixXd> klu(Ks);
    if (!klu.isInvertible()) {
      bool recovered = false;
      for (double delta = 1e-12; delta <= 1e-4; delta *= 100.0) {
        MatrixXd Kd = Ks;
        Kd.diagonal().array() += delta * (1.0 + Ks.cwiseAbs().maxCoeff());
        klu.compute(Kd);
        if (klu.isInvertible()) {
          recovered = true;
          break;
        }
      }
      if (!recovered) {
        return bail(Status::NumericalFailure, iter, "Newton system is singular");
      }
    }
    const auto kkt_solve = [&](const VectorXd& rhs) {
      VectorXd x = col_scale.asDiagonal() *
                   klu.solve((row_scale.asDiagonal() * rhs).eval()).eval();
      // One round of refinement against the unscaled matrix.
      x += col_scale.asDiagonal() *
           klu.solve((row_scale.asDiagonal() * (rhs - K * x)).eval()).eval();
      return x;
    };

    // Rc_til holds the centering target already conjugated by P^-1.
    const auto solve_direction = [&](const std::vector<MatrixXd>& Rc_til,
                                     double rtk) {
      VectorXd rhs = VectorXd::Zero(dim);
      rhs.head(m) = -rd;
      if (p > 0) rhs.segment(m, p) = -rA;
      rhs[m + p] = -rg - rtk / tau;
      for (int j = 0; j < nblk; ++j) {
        rhs.segment(zoff[j], tdim[j]) = svec(Rc_til[j] - rp_til[j]);
      }

      const VectorXd x = kkt_solve(rhs);

      Direction dir;
      dir.ok = x.allFinite();
      dir.dy = x.head(m);
      dir.dlam = x.segment(m, p);
      dir.dtau = x[tau_col];
      dir.dkappa = (rtk - kappa * dir.dtau) / tau;
      dir.dS.resize(nblk);
      dir.dZ.resize(nblk);
      for (int j = 0; j < nblk; ++j) {
        const Block& blk = prob.blocks[j];
        MatrixXd ds = dir.dtau * blk.F0 + Rp[j];
        for (int i = 0; i < m; ++i) ds += dir.dy[i] * blk.F[i];
        dir.dS[j] = sym(ds);
        const MatrixXd eta = unsvec(x.segment(zoff[j], tdim[j]), blk.size());
        dir.dZ[j] = sym(scal[j].p_inv * eta * scal[j].p_inv);
      }
      return dir;
    };

    const auto max_step = [&](const Direction& dir) {
      double alpha = 1e30;
      if (dir.dtau < 0.0) alpha = std::min(alpha, -tau / dir.dtau);
      if (dir.dkappa < 0.0) alpha = std::min(alpha, -kappa / dir.dkappa);
      for (int j = 0; j < nblk; ++j) {
        alpha = std::min(alpha, max_step_psd(S[j], dir.dS[j]));
        alpha = std::min(alpha, max_step_psd(Z[j], dir.dZ[j]));
      }
      return alpha;
    };

    // Predictor (affine scaling): Rc = -S conjugates to -lambda.
    std::vector<MatrixXd> Rc_aff(nblk);
    for (int j = 0; j < nblk; ++j) Rc_aff[j] = -scal[j].lambda;
    const Direction aff = solve_direction(Rc_aff, -tau * kappa);
    if (!aff.ok) {
      return bail(Status::NumericalFailure, iter,
                  "search direction is not finite");
    }
    const double alpha_aff = std::min(1.0, 0.99 * max_step(aff));

    double comp_aff =
        (tau + alpha_aff * aff.dtau) * (kappa + alpha_aff * aff.dkappa);
    for (int j = 0; j < nblk; ++j) {
      comp_aff +=
          frob(S[j] + alpha_aff * aff.dS[j], Z[j] + alpha_aff * aff.dZ[j]);
    }
    const double mu_aff = std::max(comp_aff / nu, 0.0);
    const double ratio = mu_aff / mu;
    const double sigma = std::clamp(ratio * ratio * ratio, 1e-8, 1.0 - 1e-8);

    // Corrector: recenter toward sigma*mu. In scaled coordinates the target
    // sigma*mu*Z^{-1} - S becomes sigma*mu*lambda^{-1} - lambda.
    std::vector<MatrixXd> Rc(nblk);
    for (int j = 0; j < nblk; ++j) {
      Rc[j] = sym(sigma * mu * scal[j].lambda_inv - scal[j].lambda);
    }
    const double rtk = sigma * mu - tau * kappa - aff.dtau * aff.dkappa;
    const Direction dir = solve_direction(Rc, rtk);
    if (!dir.ok) {
      return bail(Status::NumericalFailure, iter,
                  "search direction is not finite");
    }
    const double alpha = std::min(1.0, frac * max_step(dir));

    if (trace) {
      std::fprintf(stderr,
                   "[sdp] it=%3d mu=%9.3e tau=%9.3e kappa=%9.3e pinf=%9.3e "
                   "dinf=%9.3e gap=%9.3e sigma=%6.2e alpha=%6.2e dtau=%9.3e\n",
                   iter, mu, tau, kappa, pinf, dinf, gap_abs, sigma, alpha,
                   dir.dtau);
    }

    if (!(alpha > 1e-9) || !std::isfinite(alpha)) {
      return bail(Status::NumericalFailure, iter, "step size collapsed to zero");
    }

    y += alpha * dir.dy;
    if (p > 0) lam += alpha * dir.dlam;
    tau += alpha * dir.dtau;
    kappa += alpha * dir.dkappa;
    for (int j = 0; j < nblk; ++j) {
      S[j] = sym(S[j] + alpha * dir.dS[j]);
      Z[j] = sym(Z[j] + alpha * dir.dZ[j]);
    }
    if (!(tau > 0.0) || !(kappa > 0.0) || !std::isfinite(tau)) {
      return bail(Status::NumericalFailure, iter,
                  "homogenizing variables left the positive orthant");
    }
  }

  return bail(Status::MaxIterations, iter,
              "iteration limit reached before convergence");
}

}  // namespace cfl::sdp
