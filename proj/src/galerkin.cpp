#include "nkpde/galerkin.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace nkpde {

namespace {

Vec to_ivec(const RealVec& u) {
  Vec r(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) r[i] = to_interval(u[i]);
  return r;
}

Eigen::VectorXd pack(const RealVec& u, std::size_t n) {
  Eigen::VectorXd x(static_cast<Eigen::Index>(u.size() * n));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t k = 0; k < n; ++k)
      x(static_cast<Eigen::Index>(i * n + k)) = u[i].get(k);
  return x;
}

RealVec unpack(const Eigen::VectorXd& x, std::size_t dim, std::size_t n) {
  RealVec u(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    u[i] = RealSeq::zeros(n);
    for (std::size_t k = 0; k < n; ++k)
      u[i].c[k] = x(static_cast<Eigen::Index>(i * n + k));
  }
  return u;
}

Eigen::VectorXd packed_residual(const Problem& p, const RealVec& u, std::size_t n) {
  Vec f = residual_F(p, to_ivec(u));
  const std::size_t d = f.size();
  Eigen::VectorXd r(static_cast<Eigen::Index>(d * n));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < n; ++k)
      r(static_cast<Eigen::Index>(i * n + k)) = midpoint(f[i].get(k));
  return r;
}

Eigen::MatrixXd mid_matrix(const FiniteOpMatrix& m) {
  Eigen::MatrixXd a(static_cast<Eigen::Index>(m.rows), static_cast<Eigen::Index>(m.cols));
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = midpoint(m.at(i, j));
  return a;
}

double l1_norm(const Eigen::VectorXd& r) { return r.lpNorm<1>(); }

void require_solve_ok(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu, const Eigen::VectorXd& x) {
  if (!x.allFinite()) throw SingularJacobian();
  if ((lu.matrixLU().diagonal().array() == 0.0).any()) throw SingularJacobian();
}

}  // namespace

double projected_residual_norm(const Problem& p, const RealVec& u, std::size_t n) {
  return l1_norm(packed_residual(p, u, n));
}

RealVec solve_newton(const Problem& p, std::size_t n, const RealVec& guess,
                     const NewtonConfig& cfg, NewtonLog* log) {
  if (n < 1) throw std::invalid_argument("solve_newton: n must be positive");
  if (!(cfg.residual_tol > 0.0)) throw std::invalid_argument("solve_newton: residual_tol <= 0");
  if (!(cfg.damping > 0.0 && cfg.damping <= 1.0))
    throw std::invalid_argument("solve_newton: damping outside (0,1]");
  const std::size_t d = dim_of(p);
  if (guess.size() != d) throw std::invalid_argument("solve_newton: guess dimension mismatch");
  for (const RealSeq& comp : guess)
    for (std::size_t k = n; k < comp.len(); ++k)
      if (comp.c[k] != 0.0) throw std::invalid_argument("solve_newton: guess has modes >= N");

  RealVec u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = pad(project(guess[i], n), n);

  Eigen::VectorXd r = packed_residual(p, u, n);
  double rn = l1_norm(r);
  if (log) {
    log->residuals.clear();
    log->residuals.push_back(rn);
    log->quad_fit_c = 0.0;
    log->quad_window_seen = false;
  }

  for (std::size_t it = 0; it < cfg.max_iters; ++it) {
    if (rn <= cfg.residual_tol) return u;

    Eigen::MatrixXd j = mid_matrix(jacobian_matrix(p, to_ivec(u), n));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
    Eigen::VectorXd step = lu.solve(-r);
    require_solve_ok(lu, step);

    Eigen::VectorXd x = pack(u, n);
    double t = cfg.damping;
    RealVec best_u = u;
    Eigen::VectorXd best_r = r;
    double best_rn = rn;
    bool improved = false;
    for (int halve = 0; halve <= 8; ++halve) {
      RealVec cand = unpack(x + t * step, d, n);
      Eigen::VectorXd cr = packed_residual(p, cand, n);
      double crn = l1_norm(cr);
      if (crn < best_rn) {
        best_u = std::move(cand);
        best_r = std::move(cr);
        best_rn = crn;
        improved = true;
        break;
      }
      t *= 0.5;
    }
    if (!improved) throw NonConvergence("newton stalled: no descent after 8 halvings");

    if (log) {
      if (rn < 1e-4 && rn >= 1e-10) {
        double c = best_rn / (rn * rn);
        log->quad_window_seen = true;
        if (c > log->quad_fit_c) log->quad_fit_c = c;
      }
      log->residuals.push_back(best_rn);
    }
    u = std::move(best_u);
    r = std::move(best_r);
    rn = best_rn;
  }
  if (rn <= cfg.residual_tol) return u;
  throw NonConvergence("newton: iteration cap reached with residual above tolerance");
}

namespace {

// Reciprocal defect for the scalar-type families: || 1 - wbar * phi ||_nu.
Interval scalar_defect(const RealSeq& wbar, const CosSeq& phi, const Weight& w) {
  CosSeq prod = conv(to_interval(wbar), phi);
  return norm_l1nu(sub(CosSeq::unit(), prod), w);
}

}  // namespace

WbarResult compute_wbar(const Problem& p, const RealVec& u, std::size_t n, const Weight& w) {
  const Family fam = family_of(p);
  Linearization lin = linearize(p, to_ivec(u));
  WbarResult out;

  if (fam == Family::scalar || fam == Family::dae) {
    const CosSeq& phi = lin.dphi[0][0];
    Eigen::MatrixXd m = mid_matrix(mult_op_matrix(phi, n, n));
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    Eigen::VectorXd e0 = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
    e0(0) = 1.0;
    Eigen::VectorXd x = lu.solve(e0);
    if (!x.allFinite() || (lu.matrixLU().diagonal().array() == 0.0).any())
      throw SingularMultiplication();
    out.wbar = {{unpack(x, 1, n)[0]}};
    out.defect = scalar_defect(out.wbar[0][0], phi, w);
  } else {
    // Left reciprocal of the 2x2 diffusion derivative: block system with the
    // transposed block layout, one factorization, one solve per row of wbar.
    const std::size_t big = 2 * n;
    Eigen::MatrixXd m(static_cast<Eigen::Index>(big), static_cast<Eigen::Index>(big));
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k) {
        Eigen::MatrixXd blk = mid_matrix(mult_op_matrix(lin.dphi[k][j], n, n));
        m.block(static_cast<Eigen::Index>(j * n), static_cast<Eigen::Index>(k * n),
                static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n)) = blk;
      }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    if ((lu.matrixLU().diagonal().array() == 0.0).any()) throw SingularMultiplication();
    out.wbar.assign(2, std::vector<RealSeq>(2));
    for (std::size_t i = 0; i < 2; ++i) {
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(big));
      rhs(static_cast<Eigen::Index>(i * n)) = 1.0;
      Eigen::VectorXd x = lu.solve(rhs);
      if (!x.allFinite()) throw SingularMultiplication();
      RealVec rows = unpack(x, 2, n);
      out.wbar[i][0] = rows[0];
      out.wbar[i][1] = rows[1];
    }
    // Defect matrix D_ij = || (I - wbar ** DPhi)_ij ||_nu; block norm is the
    // max column sum.
    Interval dm[2][2];
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) {
        CosSeq acc;
        for (std::size_t k = 0; k < 2; ++k)
          acc = add(acc, conv(to_interval(out.wbar[i][k]), lin.dphi[k][j]));
        if (i == j) acc = sub(CosSeq::unit(), acc);
        else acc = scale(acc, Interval(-1.0));
        dm[i][j] = norm_l1nu(acc, w);
      }
    Interval c0 = dm[0][0] + dm[1][0];
    Interval c1 = dm[0][1] + dm[1][1];
    out.defect = max(c0, c1);
  }
  out.warn = !(out.defect.hi < 0.5);
  return out;
}

SigmaResult compute_sigma(const RealSeq& wbar, const RealSeq& u1, double gamma, std::size_t n,
                          const Weight& w) {
  CosSeq shifted = pad(to_interval(u1), 1);
  shifted.c[0] = shifted.c[0] + Interval(gamma);
  CosSeq full = conv(to_interval(wbar), shifted);
  SigmaResult out;
  out.sigma = project(midpoints(full), n);
  out.trunc_defect = norm_l1nu(tail_part(full, n), w);
  return out;
}

FiniteOpMatrix compute_Abar(const Problem& p, const RealVec& u, std::size_t n,
                            double pad_factor) {
  if (!(pad_factor >= 1.0)) throw std::invalid_argument("compute_Abar: pad_factor < 1");
  const std::size_t d = dim_of(p);
  const std::size_t pn = static_cast<std::size_t>(std::lround(pad_factor * static_cast<double>(n)));
  Eigen::MatrixXd j = mid_matrix(jacobian_matrix(p, to_ivec(u), pn));
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(j);
  if ((lu.matrixLU().diagonal().array() == 0.0).any()) throw SingularJacobian();
  Eigen::MatrixXd inv = lu.inverse();
  if (!inv.allFinite()) throw SingularJacobian();
  FiniteOpMatrix out(d * n, d * n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t jj = 0; jj < d; ++jj)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t m = 0; m < n; ++m)
          out.at(i * n + k, jj * n + m) =
              Interval(inv(static_cast<Eigen::Index>(i * pn + k),
                           static_cast<Eigen::Index>(jj * pn + m)));
  return out;
}

RealVec make_guess(const Problem& p, const GuessRecipe& r, std::size_t n) {
  const std::size_t d = dim_of(p);
  RealVec u(d);
  for (std::size_t i = 0; i < d; ++i) u[i] = RealSeq::zeros(n);

  double base[2] = {0.0, 0.0};
  switch (r.base) {
    case BaseState::zero: break;
    case BaseState::constant:
      base[0] = r.constant1;
      base[1] = r.constant2;
      if (family_of(p) == Family::dae) {
        double g = midpoint(std::get<RationalDiffusionProblem>(p).gamma);
        base[1] = base[0] / (g + base[0]);
      }
      break;
    case BaseState::coexistence:
    case BaseState::extinction1:
    case BaseState::extinction2: {
      const auto& q = std::get<SKTProblem>(p);
      HomogeneousStates h = homogeneous_states(q);
      const Interval* s = r.base == BaseState::coexistence  ? h.coexistence
                          : r.base == BaseState::extinction1 ? h.extinction1
                                                              : h.extinction2;
      base[0] = midpoint(s[0]);
      base[1] = midpoint(s[1]);
      break;
    }
  }
  for (std::size_t i = 0; i < d; ++i) u[i].c[0] = base[i];
  for (const auto& [comp, mode, amp] : r.modes) {
    if (comp >= d) throw std::invalid_argument("make_guess: component out of range");
    if (mode >= n) throw std::invalid_argument("make_guess: mode index >= N");
    u[comp].c[mode] += amp;
  }
  return u;
}

Problem set_param(const Problem& p, const std::string& name, double value) {
  Problem q = p;
  Interval v(value);
  bool ok = std::visit(
      [&](auto& fam) -> bool {
        using T = std::decay_t<decltype(fam)>;
        if constexpr (std::is_same_v<T, ScalarQuadraticProblem>) {
          if (name == "alpha") fam.alpha = v;
          else if (name == "beta") fam.beta = v;
          else return false;
          return true;
        } else if constexpr (std::is_same_v<T, SKTProblem>) {
          if (name == "d1") fam.d1 = v;
          else if (name == "d2") fam.d2 = v;
          else if (name == "d11") fam.d11 = v;
          else if (name == "d12") fam.d12 = v;
          else if (name == "d21") fam.d21 = v;
          else if (name == "d22") fam.d22 = v;
          else if (name == "r1") fam.r1 = v;
          else if (name == "r2") fam.r2 = v;
          else if (name == "a1") fam.a1 = v;
          else if (name == "a2") fam.a2 = v;
          else if (name == "b1") fam.b1 = v;
          else if (name == "b2") fam.b2 = v;
          else return false;
          return true;
        } else {
          if (name == "gamma") fam.gamma = v;
          else if (name == "alpha") fam.alpha = v;
          else if (name == "beta") fam.beta = v;
          else return false;
          return true;
        }
      },
      q);
  if (!ok) throw std::invalid_argument("set_param: unknown parameter " + name);
  return q;
}

ContinuationResult continuation_run(const Problem& p, const ParamPath& path, std::size_t n,
                                    const RealVec& guess, const NewtonConfig& cfg) {
  ContinuationResult out;
  if (path.steps < 1) {
    out.message = "empty path";
    return out;
  }
  RealVec seed = guess;
  for (std::size_t s = 0; s < path.steps; ++s) {
    double t = path.steps == 1 ? 1.0
                               : static_cast<double>(s) / static_cast<double>(path.steps - 1);
    double value = path.start + t * (path.end - path.start);
    Problem q = set_param(p, path.name, value);
    try {
      RealVec u = solve_newton(q, n, seed, cfg);
      out.values.push_back(value);
      out.states.push_back(u);
      seed = std::move(u);
    } catch (const NonConvergence& e) {
      out.message = "step " + std::to_string(s) + " (value " + std::to_string(value) +
                    "): " + e.what();
      return out;
    }
  }
  out.completed = true;
  return out;
}

}  // namespace nkpde
