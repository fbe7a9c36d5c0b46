#include "oracle.hpp"

#include <cmath>
#include <random>

namespace oracle {

bigrat xi_rat(const bigrat& nu, unsigned n) {
  if (n == 0) return bigrat(1);
  bigrat p = 2;
  for (unsigned i = 0; i < n; ++i) p *= nu;
  return p;
}

std::vector<bigrat> conv_rat(const std::vector<bigrat>& u, const std::vector<bigrat>& v) {
  if (u.empty() || v.empty()) return {};
  const long lu = static_cast<long>(u.size());
  const long lv = static_cast<long>(v.size());
  // symmetric extensions indexed by offset arrays centered at lu-1 / lv-1
  std::vector<bigrat> f(2 * lu - 1), g(2 * lv - 1);
  for (long i = -(lu - 1); i <= lu - 1; ++i) f[i + lu - 1] = u[std::labs(i)];
  for (long i = -(lv - 1); i <= lv - 1; ++i) g[i + lv - 1] = v[std::labs(i)];
  std::vector<bigrat> h(f.size() + g.size() - 1);
  for (std::size_t i = 0; i < f.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) h[i + j] += f[i] * g[j];
  const long center = (lu - 1) + (lv - 1);
  std::vector<bigrat> out(lu + lv - 1);
  for (long n = 0; n < lu + lv - 1; ++n) out[n] = h[center + n];
  return out;
}

bigrat norm_rat(const std::vector<bigrat>& u, const bigrat& nu) {
  bigrat s = 0;
  for (std::size_t n = 0; n < u.size(); ++n) {
    bigrat a = u[n] < 0 ? bigrat(-u[n]) : u[n];
    s += a * xi_rat(nu, static_cast<unsigned>(n));
  }
  return s;
}

std::vector<bigrat> to_rat(const nkpde::RealSeq& u) {
  std::vector<bigrat> r(u.len());
  for (std::size_t i = 0; i < u.len(); ++i) r[i] = bigrat(u.c[i]);
  return r;
}

double opnorm_lower_bound(const nkpde::FiniteOpMatrix& m, double nu, int trials,
                          unsigned seed) {
  if (m.rows == 0 || m.cols == 0) return 0.0;
  std::vector<double> md(m.rows * m.cols);
  for (std::size_t i = 0; i < md.size(); ++i) md[i] = m.a[i].mid();
  std::vector<double> xi(std::max(m.rows, m.cols));
  xi[0] = 1.0;
  double p = 1.0;
  for (std::size_t n = 1; n < xi.size(); ++n) {
    p *= nu;
    xi[n] = 2.0 * p;
  }
  auto ratio = [&](const std::vector<double>& v) {
    double nv = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) nv += std::fabs(v[j]) * xi[j];
    if (nv == 0.0) return 0.0;
    double nr = 0.0;
    for (std::size_t i = 0; i < m.rows; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < m.cols; ++j) s += md[i * m.cols + j] * v[j];
      nr += std::fabs(s) * xi[i];
    }
    return nr / nv;
  };
  double best = 0.0;
  std::vector<double> v(m.cols, 0.0);
  for (std::size_t j = 0; j < m.cols; ++j) {
    v[j] = 1.0;
    best = std::fmax(best, ratio(v));
    v[j] = 0.0;
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    for (auto& x : v) x = d(rng);
    best = std::fmax(best, ratio(v));
  }
  return best;
}

double opnorm_lower_bound(
    const std::function<nkpde::RealVec(const nkpde::RealVec&)>& apply,
    std::size_t dim, std::size_t modes, double nu, int trials, unsigned seed) {
  if (dim == 0 || modes == 0) return 0.0;
  auto xnorm = [&](const nkpde::RealVec& v) {
    double s = 0.0;
    for (const auto& c : v) s += nkpde::norm_l1nu(c, nu);
    return s;
  };
  auto ratio = [&](const nkpde::RealVec& v) {
    double nv = xnorm(v);
    if (nv == 0.0) return 0.0;
    return xnorm(apply(v)) / nv;
  };
  double best = 0.0;
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t n = 0; n < modes; ++n) {
      nkpde::RealVec e(dim, nkpde::RealSeq::zeros(1));
      e[i] = nkpde::RealSeq::zeros(n + 1);
      e[i].c[n] = 1.0;
      best = std::fmax(best, ratio(e));
    }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (int t = 0; t < trials; ++t) {
    nkpde::RealVec v(dim, nkpde::RealSeq::zeros(modes));
    for (auto& c : v)
      for (auto& x : c.c) x = d(rng);
    best = std::fmax(best, ratio(v));
  }
  return best;
}

double fd_residual(const nkpde::Problem& p,
                   const std::vector<std::vector<double>>& node_values,
                   double h) {
  const std::size_t d = nkpde::dim_of(p);
  if (node_values.size() != d) throw std::invalid_argument("fd_residual: dim");
  const std::size_t k = node_values[0].size();
  if (k < 3 || h <= 0.0) throw std::invalid_argument("fd_residual: grid");
  // phi[i][j]: diffusion sample of component i at node j; rest[i][j]: the
  // non-diffusive part of equation i there.
  std::vector<std::vector<double>> phi(d, std::vector<double>(k)),
      rest(d, std::vector<double>(k));
  std::vector<bool> has_lap(d, true);
  for (std::size_t j = 0; j < k; ++j) {
    const double x = static_cast<double>(j) * h;
    if (const auto* s = std::get_if<nkpde::ScalarQuadraticProblem>(&p)) {
      const double u = node_values[0][j];
      phi[0][j] = u * u;
      rest[0][j] = s->alpha.mid() * u - s->beta.mid() * u * u +
                   nkpde::eval_at(s->g, x);
    } else if (const auto* s = std::get_if<nkpde::SKTProblem>(&p)) {
      const double u1 = node_values[0][j], u2 = node_values[1][j];
      phi[0][j] = (s->d1.mid() + s->d11.mid() * u1 + s->d12.mid() * u2) * u1;
      phi[1][j] = (s->d2.mid() + s->d21.mid() * u1 + s->d22.mid() * u2) * u2;
      rest[0][j] = (s->r1.mid() - s->a1.mid() * u1 - s->b1.mid() * u2) * u1;
      rest[1][j] = (s->r2.mid() - s->b2.mid() * u1 - s->a2.mid() * u2) * u2;
    } else {
      const auto& q = std::get<nkpde::RationalDiffusionProblem>(p);
      const double u = node_values[0][j], v = node_values[1][j];
      has_lap[0] = false;
      phi[0][j] = 0.0;
      rest[0][j] = u - q.gamma.mid() * v - u * v;
      phi[1][j] = v;
      rest[1][j] = q.alpha.mid() * u - q.beta.mid() * u * u +
                   nkpde::eval_at(q.g, x);
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      double lap = 0.0;
      if (has_lap[i]) {
        if (j == 0)
          lap = 2.0 * (phi[i][1] - phi[i][0]) / (h * h);
        else if (j == k - 1)
          lap = 2.0 * (phi[i][k - 2] - phi[i][k - 1]) / (h * h);
        else
          lap = (phi[i][j - 1] - 2.0 * phi[i][j] + phi[i][j + 1]) / (h * h);
      }
      worst = std::fmax(worst, std::fabs(lap + rest[i][j]));
    }
  return worst;
}

double fd_residual(const nkpde::Problem& p, const nkpde::RealVec& u,
                   std::size_t points) {
  if (points < 3) throw std::invalid_argument("fd_residual: grid");
  const double h = 1.0 / static_cast<double>(points - 1);
  std::vector<std::vector<double>> vals(u.size(), std::vector<double>(points));
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = 0; j < points; ++j)
      vals[i][j] = nkpde::eval_at(u[i], static_cast<double>(j) * h);
  return fd_residual(p, vals, h);
}

}  // namespace oracle
