#include "cfl/cayley_bacharach.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "cfl/tolerances.hpp"

namespace cfl::cb {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

int rhs_count(const CayleyBacharachConfig& cfg) {
  return static_cast<int>(cfg.real_points.size()) - (cfg.complex_pair ? 0 : 1);
}

void require_consistent(const CayleyBacharachConfig& cfg) {
  if (!((cfg.n == 4 && cfg.tensor_order == 2) || (cfg.n == 3 && cfg.tensor_order == 3)))
    throw Error(Errc::ShapeMismatch, "supported kinds: quartic (n=4, order 2), sextic (n=3, order 3)");
  if (!cfg.complex_pair && cfg.real_points.empty())
    throw Error(Errc::ShapeMismatch, "real kind needs a distinguished point");
  if (cfg.complex_pair && cfg.complex_point.size() != cfg.n)
    throw Error(Errc::ShapeMismatch, "complex point dimension != n");
  for (const auto& v : cfg.real_points)
    if (v.size() != cfg.n) throw Error(Errc::ShapeMismatch, "point dimension != n");
  if (static_cast<int>(cfg.signs.size()) != rhs_count(cfg))
    throw Error(Errc::ShapeMismatch, "one sign per right-hand point expected");
  for (int s : cfg.signs)
    if (s != 1 && s != -1) throw Error(Errc::ShapeMismatch, "signs must be +1 or -1");
}

// Outer power of a real vector, flattened: order 2 gives v v', order 3 the
// cube v_a v_b v_c laid out as n^3 consecutive entries.
VectorXd outer_power(const VectorXd& v, int order) {
  const int n = static_cast<int>(v.size());
  if (order == 2) {
    VectorXd out(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(a * n + b) = v(a) * v(b);
    return out;
  }
  VectorXd out(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) out((a * n + b) * n + c) = v(a) * v(b) * v(c);
  return out;
}

// z z' + conj pair (order 2) or the cube analogue: twice the real part.
VectorXd outer_power_pair(const Eigen::VectorXcd& z, int order) {
  const int n = static_cast<int>(z.size());
  if (order == 2) {
    VectorXd out(n * n);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) out(a * n + b) = 2.0 * (z(a) * z(b)).real();
    return out;
  }
  VectorXd out(n * n * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) out((a * n + b) * n + c) = 2.0 * (z(a) * z(b) * z(c)).real();
  return out;
}

// Right-hand side values p(v_i), clamped at zero, with the negativity floor
// enforced; lhs evaluation is the caller's business.
double sqrt_sum_squared(const Form<double>& p, const CayleyBacharachConfig& cfg) {
  double acc = 0.0;
  const size_t first = cfg.complex_pair ? 0 : 1;
  for (size_t i = first; i < cfg.real_points.size(); ++i) {
    const double val = evaluate(p, cfg.real_points[i]);
    if (val < tol::kNegativityThreshold)
      throw Error(Errc::NegativeEvaluation, "form is negative at a certificate point");
    acc += std::sqrt(std::max(val, 0.0));
  }
  return acc * acc;
}

void require_form_matches(const Form<double>& p, const CayleyBacharachConfig& cfg) {
  require_consistent(cfg);
  if (p.vars() != cfg.n)
    throw Error(Errc::DimensionMismatch, "form variable count != configuration dimension");
  if (p.degree() != 2 * cfg.tensor_order)
    throw Error(Errc::ShapeMismatch, "form degree does not match the tensor order");
}

}  // namespace

double check_relation(const CayleyBacharachConfig& cfg) {
  require_consistent(cfg);
  VectorXd lhs = cfg.complex_pair ? outer_power_pair(cfg.complex_point, cfg.tensor_order)
                                  : outer_power(cfg.real_points[0], cfg.tensor_order);
  const size_t first = cfg.complex_pair ? 0 : 1;
  for (size_t i = first; i < cfg.real_points.size(); ++i)
    lhs -= cfg.signs[i - first] * outer_power(cfg.real_points[i], cfg.tensor_order);
  return lhs.norm();
}

void require_certificate_counts(const CayleyBacharachConfig& cfg) {
  require_consistent(cfg);
  const int expected = (cfg.tensor_order == 2 ? 8 : 9) - (cfg.complex_pair ? 2 : 0);
  if (static_cast<int>(cfg.real_points.size()) != expected) {
    std::ostringstream os;
    os << "certificate needs " << expected << " real points, got " << cfg.real_points.size();
    throw Error(Errc::ShapeMismatch, os.str());
  }
}

ConditionResult check_real_condition(const Form<double>& p, const CayleyBacharachConfig& cfg) {
  require_form_matches(p, cfg);
  if (cfg.complex_pair) throw Error(Errc::ShapeMismatch, "real-kind configuration expected");
  ConditionResult out;
  out.lhs = evaluate(p, cfg.real_points[0]);
  if (out.lhs < tol::kNegativityThreshold)
    throw Error(Errc::NegativeEvaluation, "form is negative at the distinguished point");
  out.rhs = sqrt_sum_squared(p, cfg);
  out.pass = out.lhs <= out.rhs + tol::kInequalitySlack;
  return out;
}

ConditionResult check_complex_condition(const Form<double>& p, const CayleyBacharachConfig& cfg) {
  require_form_matches(p, cfg);
  if (!cfg.complex_pair) throw Error(Errc::ShapeMismatch, "complex-pair configuration expected");
  ConditionResult out;
  const std::complex<double> pz = evaluate(p, cfg.complex_point);
  out.lhs = 2.0 * (std::abs(pz) + pz.real());
  out.rhs = sqrt_sum_squared(p, cfg);
  out.pass = out.lhs <= out.rhs + tol::kInequalitySlack;
  return out;
}

std::pair<Form<Rational>, CayleyBacharachConfig> example_nonsos_quartic() {
  Form<Rational> p(4, 4);
  for (int i = 0; i < 4; ++i) {
    Exponents e(4, 0);
    e[i] = 4;
    p.accumulate(e, Rational(1));
  }
  // sum over distinct (i, j, k) of x_i^2 x_j x_k: each unordered pair {j, k}
  // appears in both orders, hence coefficient 2.
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      for (int k = j + 1; k < 4; ++k) {
        if (j == i || k == i) continue;
        Exponents e(4, 0);
        e[i] = 2;
        e[j] += 1;
        e[k] += 1;
        p.accumulate(e, Rational(2));
      }
  p.accumulate(Exponents{1, 1, 1, 1}, Rational(4));

  // V = {+-1}^3 x {1}; the halves with an even/odd number of negative
  // entries each sum to 4I, so the signed relation vanishes identically.
  CayleyBacharachConfig cfg;
  cfg.n = 4;
  cfg.tensor_order = 2;
  std::vector<VectorXd> plus, minus;
  for (int mask = 0; mask < 8; ++mask) {
    VectorXd v(4);
    int negatives = 0;
    for (int b = 0; b < 3; ++b) {
      v(b) = (mask >> b) & 1 ? -1.0 : 1.0;
      negatives += (mask >> b) & 1;
    }
    v(3) = 1.0;
    (negatives % 2 == 0 ? plus : minus).push_back(v);
  }
  // v1 = (1,1,1,1) goes first; the rest of its half enters with sign -1,
  // the odd half with sign +1.
  cfg.real_points.push_back(plus[0]);
  for (size_t i = 1; i < plus.size(); ++i) {
    cfg.real_points.push_back(plus[i]);
    cfg.signs.push_back(-1);
  }
  for (const auto& v : minus) {
    cfg.real_points.push_back(v);
    cfg.signs.push_back(1);
  }
  return {p, cfg};
}

double holder_closed_form(const Eigen::VectorXd& xs) {
  double acc = 0.0;
  for (int i = 0; i < xs.size(); ++i) {
    if (xs(i) < 0.0) throw Error(Errc::NegativeInput, "needs nonnegative entries");
    acc += std::sqrt(xs(i));
  }
  return acc * acc;
}

double holder_complex(std::complex<double> z) { return 2.0 * (std::abs(z) + z.real()); }

gcs::CheckReport verify_holder(int samples, std::uint64_t seed) {
  if (samples < 1) throw Error(Errc::BadInput, "needs at least one sample");
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x243F6A88ULL);
  std::uniform_int_distribution<int> dims(2, 8);
  std::uniform_real_distribution<double> unit(0.25, 4.0);
  std::uniform_real_distribution<double> theta(-1.5, 1.5);
  std::normal_distribution<double> gauss(0.0, 1.0);

  double real_viol = 0.0, real_gap = 0.0, cplx_viol = 0.0, cplx_gap = 0.0;
  for (int s = 0; s < samples; ++s) {
    const int m = dims(rng);
    VectorXd xs(m), u(m);
    for (int i = 0; i < m; ++i) {
      xs(i) = unit(rng);
      u(i) = unit(rng);
    }
    const double bound = holder_closed_form(xs);

    // Random feasible multipliers: a_i = (sum u) / u_i has sum 1/a_i = 1.
    double value = 0.0;
    for (int i = 0; i < m; ++i) value += u.sum() / u(i) * xs(i);
    real_viol = std::max(real_viol, value - bound);

    // The stated optimizer a_i = (sum sqrt x_j) / sqrt(x_i) attains it.
    double opt = 0.0;
    double root_sum = 0.0;
    for (int i = 0; i < m; ++i) root_sum += std::sqrt(xs(i));
    for (int i = 0; i < m; ++i) opt += root_sum / std::sqrt(xs(i)) * xs(i);
    real_gap = std::max(real_gap, std::abs(opt - bound) / (1.0 + bound));

    // Complex side: every feasible a is 2 cos(t) e^{it}.
    const std::complex<double> z(gauss(rng), gauss(rng));
    const double cbound = holder_complex(z);
    const double t = theta(rng);
    const std::complex<double> a = 2.0 * std::cos(t) * std::exp(std::complex<double>(0.0, t));
    cplx_viol = std::max(cplx_viol, 2.0 * (a * z).real() - cbound);

    const double tstar = -std::arg(z) / 2.0;
    const std::complex<double> astar =
        2.0 * std::cos(tstar) * std::exp(std::complex<double>(0.0, tstar));
    cplx_gap = std::max(cplx_gap, std::abs(2.0 * (astar * z).real() - cbound) / (1.0 + cbound));
  }

  // Hand values: seven ones, z = 1, z = i.
  const double spot = std::max({std::abs(holder_closed_form(VectorXd::Ones(7)) - 49.0),
                                std::abs(holder_complex({1.0, 0.0}) - 4.0),
                                std::abs(holder_complex({0.0, 1.0}) - 2.0)});

  gcs::CheckReport report;
  const double slack = tol::kInequalitySlack;
  report.checks.push_back({"real_bound", real_viol <= slack, std::max(0.0, real_viol)});
  report.checks.push_back({"real_optimizer_attains", real_gap <= slack, real_gap});
  report.checks.push_back({"complex_bound", cplx_viol <= slack, std::max(0.0, cplx_viol)});
  report.checks.push_back({"complex_optimizer_attains", cplx_gap <= slack, cplx_gap});
  report.checks.push_back({"spot_values", spot == 0.0, spot});
  return report;
}

PipelineReport main_theorem_pipeline(const Form<double>& p, int samples,
                                     const std::vector<CayleyBacharachConfig>& configs,
                                     std::uint64_t seed) {
  if (p.vars() != 4 || p.degree() != 4)
    throw Error(Errc::BadInput, "pipeline expects a quaternary quartic");

  PipelineReport report;
  report.gcs_checks = gcs::gcs_property_check(p, samples, 1.0, 1.0, seed);

  int index = 0;
  for (const auto& cfg : configs) {
    require_consistent(cfg);
    const std::string tag = "config_" + std::to_string(index++);
    const double relation = check_relation(cfg);
    report.config_checks.push_back(
        {tag + "_relation", relation <= tol::kRelationResidual, relation});

    // Values and pairwise biforms on the right-hand points.
    const size_t first = cfg.complex_pair ? 0 : 1;
    std::vector<double> values;
    double pair_viol = 0.0;
    double expansion = 0.0;
    for (size_t i = first; i < cfg.real_points.size(); ++i) {
      values.push_back(evaluate(p, cfg.real_points[i]));
      for (size_t j = first; j < cfg.real_points.size(); ++j) {
        const double q = biform(p, cfg.real_points[i], cfg.real_points[j]);
        expansion += cfg.signs[i - first] * cfg.signs[j - first] * q;
        const double vi = std::max(values.back(), 0.0);
        const double vj = std::max(evaluate(p, cfg.real_points[j]), 0.0);
        pair_viol = std::max(pair_viol, std::abs(q) - std::sqrt(vi * vj));
      }
    }

    // The squared relation turns the signed biform sum into the left side.
    double lhs_exact;
    gcs::CrossCheck condition;
    if (cfg.complex_pair) {
      const std::complex<double> pz = evaluate(p, cfg.complex_point);
      const double herm = hermitian_biform(p, cfg.complex_point);
      lhs_exact = 2.0 * pz.real() + 2.0 * herm;
      pair_viol = std::max(pair_viol, std::abs(pz) - herm);
      const ConditionResult c = check_complex_condition(p, cfg);
      condition = {tag + "_complex_condition", c.pass, std::max(0.0, c.lhs - c.rhs)};
    } else {
      lhs_exact = evaluate(p, cfg.real_points[0]);
      const ConditionResult c = check_real_condition(p, cfg);
      condition = {tag + "_real_condition", c.pass, std::max(0.0, c.lhs - c.rhs)};
    }
    const double scale = 1.0 + std::abs(lhs_exact);
    report.config_checks.push_back(
        {tag + "_biform_expansion", std::abs(expansion - lhs_exact) / scale <= 1e-6,
         std::abs(expansion - lhs_exact) / scale});
    report.config_checks.push_back(
        {tag + "_pairwise_gcs", pair_viol <= tol::kInequalitySlack, std::max(0.0, pair_viol)});
    report.config_checks.push_back(condition);
  }

  report.sos = is_sos(p);
  return report;
}

CayleyBacharachConfig generate_cb_config(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 0x9E3779B97F4A7C15ULL + 0x13198A2EULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);

  for (int attempt = 0; attempt < 24; ++attempt) {
    std::vector<VectorXd> pts(7, VectorXd(4));
    std::vector<int> signs(7);
    for (auto& v : pts) {
      for (int i = 0; i < 4; ++i) v(i) = gauss(rng);
      v.normalize();
    }
    for (auto& s : signs) s = coin(rng) ? 1 : -1;

    // Gauss-Newton: drive M = sum a_i v_i v_i' onto the rank-one PSD cone.
    // Each step projects M onto the cone (top eigenpair) and solves the
    // linearized correction sum a_i (dv v' + v dv') = target in least squares.
    bool converged = false;
    for (int iter = 0; iter < 500 && !converged; ++iter) {
      MatrixXd M = MatrixXd::Zero(4, 4);
      for (int i = 0; i < 7; ++i) M += signs[i] * pts[i] * pts[i].transpose();
      Eigen::SelfAdjointEigenSolver<MatrixXd> es(M);
      const double lead = es.eigenvalues()(3);
      if (lead <= 1e-8) break;  // wrong signature; restart with fresh points
      const VectorXd u = es.eigenvectors().col(3);
      MatrixXd R = lead * u * u.transpose() - M;
      const double res = R.norm();
      if (res <= 1e-12 * std::max(1.0, M.norm())) {
        converged = true;
        break;
      }

      // svec layout with sqrt(2) off-diagonals keeps the Frobenius metric.
      const double rt2 = std::sqrt(2.0);
      auto svec = [&](const MatrixXd& S) {
        VectorXd v(10);
        int k = 0;
        for (int a = 0; a < 4; ++a)
          for (int b = a; b < 4; ++b) v(k++) = a == b ? S(a, b) : rt2 * S(a, b);
        return v;
      };
      MatrixXd J(10, 28);
      for (int i = 0; i < 7; ++i)
        for (int c = 0; c < 4; ++c) {
          MatrixXd E = MatrixXd::Zero(4, 4);
          E.col(c) += pts[i];
          E.row(c) += pts[i].transpose();
          J.col(4 * i + c) = signs[i] * svec(E);
        }
      const VectorXd delta =
          J.completeOrthogonalDecomposition().solve(svec(R));
      double step = 1.0;
      if (delta.norm() > 2.0) step = 2.0 / delta.norm();
      for (int i = 0; i < 7; ++i) pts[i] += step * delta.segment(4 * i, 4);
    }
    if (!converged) continue;

    MatrixXd M = MatrixXd::Zero(4, 4);
    for (int i = 0; i < 7; ++i) M += signs[i] * pts[i] * pts[i].transpose();
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(M);

    CayleyBacharachConfig cfg;
    cfg.n = 4;
    cfg.tensor_order = 2;
    cfg.real_points.push_back(std::sqrt(es.eigenvalues()(3)) * es.eigenvectors().col(3));
    for (const auto& v : pts) cfg.real_points.push_back(v);
    cfg.signs = signs;
    if (check_relation(cfg) <= 1e-10) return cfg;
  }
  throw Error(Errc::GenerationFailed, "no rank-one configuration within the retry budget");
}

}  // namespace cfl::cb
